from .fixtures import (
    DATA_DIR,
    AppendixRow,
    Fixture,
    appendix_rows,
    conjectured_b_fixtures,
    conjectured_r_fixtures,
    printed_tolerance,
    tables,
    threshold_fixtures,
)
from .verify import SCOPES, CheckResult, VerificationReport, verify

__all__ = [
    "DATA_DIR",
    "AppendixRow",
    "Fixture",
    "appendix_rows",
    "conjectured_b_fixtures",
    "conjectured_r_fixtures",
    "printed_tolerance",
    "tables",
    "threshold_fixtures",
    "SCOPES",
    "CheckResult",
    "VerificationReport",
    "verify",
]
