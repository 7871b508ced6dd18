"""Decide g(t) = 0 or g(t) != 0 from loadings alone, when a threshold allows it."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

from ..combinatorics.kronecker import Triple
from ..errors import DomainError, InconsistentThresholdsError
from ..loadings.loadings import LoadingTable, triple_loading
from .scan import Thresholds


class VerdictKind(str, Enum):
    PROVABLY_ZERO = "provably_zero"
    PROVABLY_NONZERO = "provably_nonzero"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Witness:
    """Which rule fired (``r_below_r_star``, ``b_below_b_star`` or None) and by how much."""
    rule: Optional[str]
    r: float
    b: float
    r_star: Optional[float]
    b_star: Optional[float]
    margin: Optional[float]
    advisory: bool
    threshold_mode: str = ""
    loadings_mode: str = ""

    @property
    def mode_mismatch(self) -> bool:
        return bool(
            self.threshold_mode
            and self.loadings_mode
            and self.threshold_mode != self.loadings_mode
        )


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    triple: Triple
    witness: Witness

    def describe(self) -> str:
        w = self.witness
        if w.rule == "r_below_r_star":
            reason = f"r(t) = {w.r:.4f} < r* = {w.r_star:.4f}"
        elif w.rule == "b_below_b_star":
            reason = f"b(t) = {w.b:.4f} < b* = {w.b_star:.4f}"
        else:
            reason = f"r(t) = {w.r:.4f}, b(t) = {w.b:.4f}; no threshold applies"
        if w.mode_mismatch:
            reason += f" (thresholds from {w.threshold_mode} loadings, these are {w.loadings_mode}: advisory only)"
        elif w.advisory:
            reason += " (conjectured thresholds: advisory only)"
        return f"{self.kind.value}: {reason}"

    def to_dict(self) -> Dict[str, object]:
        w = self.witness
        return {
            "verdict": self.kind.value,
            "triple": [str(p) for p in self.triple],
            "rule": w.rule,
            "r": round(w.r, 4),
            "b": round(w.b, 4),
            "r_star": None if w.r_star is None else round(w.r_star, 4),
            "b_star": None if w.b_star is None else round(w.b_star, 4),
            "margin": None if w.margin is None else round(w.margin, 4),
            "advisory": w.advisory,
            "threshold_mode": w.threshold_mode,
            "loadings_mode": w.loadings_mode,
        }


def classify(t: Triple, th: Thresholds, loadings: LoadingTable) -> Verdict:
    """
    provably_zero if r(t) < r*, provably_nonzero if b(t) < b*, else unknown.

    A threshold that is None disables its rule. Verdicts from conjectured
    thresholds are flagged advisory, and so are verdicts whose thresholds
    were computed under a different iteration mode than ``loadings``.

    Raises:
        DomainError: on a size mismatch
        InconsistentThresholdsError: if both rules fire
    """
    if t.n != th.n or t.n != loadings.n:
        raise DomainError(
            f"size mismatch: triple of {t.n}, thresholds for {th.n}, loadings for {loadings.n}"
        )
    tl = triple_loading(t, loadings)
    zero = th.r_star is not None and tl.r < th.r_star
    nonzero = th.b_star is not None and tl.b < th.b_star
    if zero and nonzero:
        raise InconsistentThresholdsError(
            f"both rules fire for {t}: r(t) = {tl.r:.4f} < r* = {th.r_star:.4f} "
            f"and b(t) = {tl.b:.4f} < b* = {th.b_star:.4f}"
        )

    mismatch = bool(th.mode and loadings.mode and th.mode != loadings.mode)
    advisory = not th.is_exhaustive or mismatch
    if zero:
        kind, rule, margin = VerdictKind.PROVABLY_ZERO, "r_below_r_star", th.r_star - tl.r
    elif nonzero:
        kind, rule, margin = VerdictKind.PROVABLY_NONZERO, "b_below_b_star", th.b_star - tl.b
    else:
        kind, rule, margin = VerdictKind.UNKNOWN, None, None
    return Verdict(
        kind=kind,
        triple=t,
        witness=Witness(
            rule, tl.r, tl.b, th.r_star, th.b_star, margin, advisory, th.mode, loadings.mode
        ),
    )
