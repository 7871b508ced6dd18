"""Command-line interface.

Every command resolves its inputs through ``KronloadApp`` so character
tables, loadings and thresholds are shared through the cache. Results go to
stdout; diagnostics go to the log and errors to stderr as
``error[<code>]: <message>``.
"""

import argparse
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from .app import KronloadApp
from .combinatorics.kronecker import Triple, kron
from .combinatorics.partitions import (
    count_partitions,
    enumerate_partitions,
    format_partition,
    parse_partition,
)
from .config import Config
from .errors import CharacterTableError, KronloadError, UsageError, VerificationError
from .loadings.power_iteration import Converge, Fixed, IterationMode
from .plots import render_histogram_svg
from .stats.fits import fit_gamma, fit_normal
from .stats.histogram import Auto, fixed_grid, histogram, is_unimodal, triple_histogram
from .stats.moments import moments, triple_moments
from .storage.export import (
    dumps,
    export_scan,
    loadings_rows,
    scan_to_dict,
    write_histogram_csv,
    write_loadings_csv,
)
from .thresholds.classify import classify
from .thresholds.conjectures import conjectured_b_star, conjectured_b_star_pairs, conjectured_r_star
from .thresholds.scan import triple_to_list
from .verification.verify import SCOPES, verify

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_common(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """Flags accepted both before and after the command.

    Subcommand copies default to SUPPRESS so that an omitted flag keeps the
    value parsed at the top level.
    """
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--cache", metavar="DIR", default=default(None),
                        help="Cache directory (default: $KRONLOAD_CACHE or ~/.cache/kronload)")
    parser.add_argument("--no-cache", action="store_true", default=default(False),
                        help="Neither read nor write the cache")
    parser.add_argument("--threads", type=int, default=default(None), metavar="T",
                        help="Worker processes (default: all cores)")
    parser.add_argument("--format", choices=["csv", "json"], default=default("csv"), help="Output format")
    parser.add_argument("--long", action="store_true", default=default(False),
                        help="Unlock computations above the default budget")
    parser.add_argument("--iters", type=int, default=default(None), metavar="K",
                        help="Run exactly K power iterations from e1")
    parser.add_argument("--tol", type=float, default=default(None), metavar="T",
                        help="Iterate until the residual drops below T")
    parser.add_argument("--compat", action="store_true", default=default(False),
                        help="Fixed iteration count from the config (compat_iterations, default 21)")
    parser.add_argument("--seed", type=int, default=default(None), help="Accepted and ignored")
    parser.add_argument("-v", "--verbose", action="count", default=default(0), help="-v for INFO, -vv for DEBUG")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    return common


def _add_n(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="Size of the partitions")


def _add_triple(parser: argparse.ArgumentParser) -> None:
    _add_n(parser)
    parser.add_argument("--lambda", dest="lam", required=True, metavar="PARTITION", help="e.g. 4,2^2,1")
    parser.add_argument("--mu", required=True, metavar="PARTITION")
    parser.add_argument("--nu", required=True, metavar="PARTITION")


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(
        prog="kronload",
        description="Loadings of partitions and threshold tests for Kronecker coefficients.",
    )
    _add_common(parser)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("partitions", parents=[common], help="List the partitions of n in descending lex order")
    _add_n(p)
    p.add_argument("--count", action="store_true", help="Print p(n) only")

    p = sub.add_parser("chartable", parents=[common], help="Character table of S_n")
    _add_n(p)

    p = sub.add_parser("kron", parents=[common], help="Exact Kronecker coefficient g(lambda, mu, nu)")
    _add_triple(p)

    p = sub.add_parser("loadings", parents=[common], help="r- and b-loadings of every partition of n")
    _add_n(p)
    p.add_argument("--out", metavar="FILE", default=None, help="Also write the table to FILE")

    p = sub.add_parser("scan", parents=[common], help="Exhaustive r*, b* and class counts for n")
    _add_n(p)
    p.add_argument("--out", metavar="DIR", default=None, help="Write scan JSON, histogram CSVs and SVGs to DIR")

    p = sub.add_parser("classify", parents=[common], help="Decide g(t) from the loadings when a threshold allows it")
    _add_triple(p)

    p = sub.add_parser("thresholds", parents=[common], help="Exhaustive r* and b*, stored for classify")
    p.add_argument("--n", type=int, default=None, help="Size of the partitions")
    p.add_argument("--list", action="store_true", help="List stored thresholds")

    p = sub.add_parser("conjecture", parents=[common], help="Thresholds from the conjectured attaining triples")
    _add_n(p)
    p.add_argument("--kind", choices=["r", "b", "b-pairs"], required=True)

    p = sub.add_parser("stats", parents=[common], help="Loading histograms, moments and fitted curves")
    _add_n(p)
    p.add_argument("--out", metavar="DIR", required=True, help="Directory for the CSV and SVG files")
    p.add_argument("--classes", action="store_true",
                   help="Split triple histograms by g(t) (runs an exhaustive scan)")

    p = sub.add_parser("verify", parents=[common], help="Check the build against the tabulated values")
    p.add_argument("--scope", choices=list(SCOPES), default="quick")

    p = sub.add_parser("cache", parents=[common], help="Inspect or clear the cache")
    p.add_argument("--clear", action="store_true", help="Delete cached files")
    p.add_argument("--kind", choices=["chartable", "loadings", "thresholds"], default=None)
    p.add_argument("--n", type=int, default=None)

    return parser


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _iteration_mode(args, config: Config) -> Optional[IterationMode]:
    chosen = [flag for flag, value in (("--iters", args.iters), ("--tol", args.tol), ("--compat", args.compat or None))
              if value is not None]
    if len(chosen) > 1:
        raise UsageError(f"{' and '.join(chosen)} are mutually exclusive")
    if args.compat:
        return Fixed(config.compat_iterations)
    if args.iters is not None:
        if args.iters < 1:
            raise UsageError(f"--iters must be positive, got {args.iters}")
        return Fixed(args.iters)
    if args.tol is not None:
        if args.tol <= 0:
            raise UsageError(f"--tol must be positive, got {args.tol}")
        return Converge(args.tol, config.max_iterations)
    return None


def _make_app(args) -> KronloadApp:
    config = Config()
    if args.threads is not None and args.threads < 1:
        raise UsageError(f"--threads must be positive, got {args.threads}")
    return KronloadApp(
        config=config,
        cache_dir=args.cache,
        threads=args.threads,
        mode=_iteration_mode(args, config),
        allow_long=args.long,
        show_progress=args.verbose > 0,
        use_cache=not args.no_cache,
    )


def _triple(args) -> Triple:
    return Triple(
        parse_partition(args.lam, args.n),
        parse_partition(args.mu, args.n),
        parse_partition(args.nu, args.n),
    )


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.4f}"


def _print_rows(rows: List[List[str]]) -> None:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    sys.stdout.write(buffer.getvalue())


def _cmd_partitions(args, app: KronloadApp) -> int:
    if args.count:
        print(count_partitions(args.n))
        return 0
    names = [format_partition(p) for p in enumerate_partitions(args.n)]
    if args.format == "json":
        sys.stdout.write(dumps({"n": args.n, "partitions": names}))
    else:
        print("\n".join(names))
    return 0


def _cmd_chartable(args, app: KronloadApp) -> int:
    table = app.character_table(args.n)
    names = [format_partition(p) for p in table.order]
    if args.format == "json":
        sys.stdout.write(dumps({
            "n": table.n,
            "order": names,
            "rows": [[int(v) for v in row] for row in table.values],
        }))
    else:
        _print_rows([["partition"] + names] + [
            [name] + [str(int(v)) for v in row] for name, row in zip(names, table.values)
        ])
    return 0


def _cmd_kron(args, app: KronloadApp) -> int:
    t = _triple(args)
    print(kron(t, app.character_table(args.n)))
    return 0


def _cmd_loadings(args, app: KronloadApp) -> int:
    table = app.loadings(args.n)
    rows = loadings_rows(table)
    if args.format == "json":
        sys.stdout.write(dumps({
            "n": table.n,
            "mode": table.mode,
            "iterations": list(table.iterations_used),
            "loadings": [dict(zip(rows[0], row)) for row in rows[1:]],
        }))
    else:
        _print_rows(rows)
    if args.out:
        logger.info("wrote %s", write_loadings_csv(table, args.out))
    return 0


def _cmd_scan(args, app: KronloadApp) -> int:
    result = app.scan(args.n)
    sys.stdout.write(dumps(scan_to_dict(result)))
    if args.out:
        written = export_scan(result, args.out)
        stem = written[0].stem
        for q, fit_key in (("r", "r"), ("b", "b_nonzero")):
            svg = render_histogram_svg(
                result.histograms[q],
                overlay=result.fits.get(fit_key),
                overlay_class="nonzero" if fit_key == "b_nonzero" else None,
                title=f"{q}(t), n={args.n}",
                xlabel=f"{q}(t)",
            )
            path = Path(args.out) / f"{stem}_{q}_hist.svg"
            path.write_text(svg, encoding="utf-8")
            written.append(path)
        for path in written:
            logger.info("wrote %s", path)
    return 0


def _cmd_classify(args, app: KronloadApp) -> int:
    t = _triple(args)
    verdict = classify(t, app.thresholds(args.n), app.loadings(args.n))
    if args.format == "json":
        sys.stdout.write(dumps(verdict.to_dict()))
    else:
        print(verdict.describe())
    return 0


def _cmd_thresholds(args, app: KronloadApp) -> int:
    if args.list:
        entries = app.store.list_thresholds()
        if args.format == "json":
            sys.stdout.write(dumps({"thresholds": entries}))
        elif not entries:
            print("No thresholds stored yet. Run `kronload thresholds --n N`.")
        else:
            for entry in entries:
                print(
                    f"n={entry['n']}: r*={entry['r_star']} b*={entry['b_star']} "
                    f"({entry['provenance']}, {entry['mode'] or 'unknown mode'})"
                )
        return 0
    if args.n is None:
        raise UsageError("thresholds needs --n or --list")
    th = app.exhaustive_thresholds(args.n)
    data = th.to_dict()
    if args.format == "json":
        sys.stdout.write(dumps(data))
    else:
        _print_rows([
            ["n", "threshold", "value", "triple"],
            [str(th.n), "r_star", _fmt(th.r_star), " ".join(data["argmin_r"] or [])],
            [str(th.n), "b_star", _fmt(th.b_star), " ".join(data["argmin_b"] or [])],
        ])
    return 0


def _cmd_conjecture(args, app: KronloadApp) -> int:
    n = args.n
    if args.kind == "r":
        value, t = conjectured_r_star(n, app.r_loadings(n))
    elif args.kind == "b":
        value, t = conjectured_b_star(n, None, app.loadings(n))
    else:
        value, t = conjectured_b_star_pairs(n, app.character_table(n), app.loadings(n))
    name = "r_star" if args.kind == "r" else "b_star"
    if args.format == "json":
        sys.stdout.write(dumps({
            "n": n,
            name: round(value, 4),
            "triple": triple_to_list(t),
            "kind": args.kind,
            "provenance": "conjectured",
        }))
    else:
        _print_rows([["n", name, "triple"], [str(n), f"{value:.4f}", " ".join(triple_to_list(t))]])
    return 0


def _cmd_stats(args, app: KronloadApp) -> int:
    n = args.n
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = app.loadings(n)
    scanned = app.scan(n) if args.classes else None
    edges = fixed_grid(0.0, 300.0, app.config.histogram_bins)
    summary: Dict[str, object] = {"n": n}

    for q, fitter in (("r", fit_normal), ("b", fit_gamma)):
        values = getattr(table, q)
        partition_moments = moments(values)
        triple_stats = triple_moments(partition_moments)
        fit = fitter(triple_stats.mean, triple_stats.variance)

        partition_hist = histogram(values, Auto())
        write_histogram_csv(partition_hist, out / f"n={n}_{q}_partitions.csv")
        (out / f"n={n}_{q}_partitions.svg").write_text(
            render_histogram_svg(partition_hist, title=f"{q}-loadings, n={n}", xlabel=f"{q}-loading"),
            encoding="utf-8",
        )

        if scanned is not None:
            triple_hist = scanned.histograms[q]
            fit_key = "b_nonzero" if q == "b" and "b_nonzero" in scanned.fits else q
            overlay, overlay_class = scanned.fits[fit_key], ("nonzero" if fit_key == "b_nonzero" else None)
        else:
            triple_hist = triple_histogram(values, edges)
            overlay, overlay_class = fit, None
        write_histogram_csv(triple_hist, out / f"n={n}_{q}_triples.csv")
        (out / f"n={n}_{q}_triples.svg").write_text(
            render_histogram_svg(triple_hist, overlay=overlay, overlay_class=overlay_class,
                                 title=f"{q}(t), n={n}", xlabel=f"{q}(t)"),
            encoding="utf-8",
        )

        summary[q] = {
            "partition_mean": round(partition_moments.mean, 4),
            "partition_variance": round(partition_moments.variance, 4),
            "triple_mean": round(triple_stats.mean, 4),
            "triple_variance": round(triple_stats.variance, 4),
            "fit": fit.as_dict(),
            "unimodal": is_unimodal(triple_hist.counts),
        }
        if overlay is not fit:
            summary[q]["overlay"] = overlay.as_dict()

    if args.format == "json":
        sys.stdout.write(dumps(summary))
    else:
        rows = [["quantity", "partition_mean", "partition_variance", "triple_mean", "triple_variance", "unimodal"]]
        for q in ("r", "b"):
            s = summary[q]
            rows.append([q, f"{s['partition_mean']:.4f}", f"{s['partition_variance']:.4f}",
                         f"{s['triple_mean']:.4f}", f"{s['triple_variance']:.4f}", str(s["unimodal"]).lower()])
        _print_rows(rows)
    logger.info("wrote histograms for n=%d to %s", n, out)
    return 0


def _cmd_verify(args, app: KronloadApp) -> int:
    report = verify(args.scope, app)
    print(report.render())
    if report.cache_corrupt:
        print("error[3]: cache corruption detected; rerun with a fresh --cache", file=sys.stderr)
    elif not report.passed:
        print(f"error[{VerificationError.exit_code}]: verify --scope {args.scope} failed", file=sys.stderr)
    return report.exit_code


def _cmd_cache(args, app: KronloadApp) -> int:
    if args.clear:
        removed = app.cache.delete(args.kind, args.n)
        print(f"Removed {removed} cached file(s)")
        return 0
    entries = app.cache.list_entries(args.kind)
    if args.format == "json":
        sys.stdout.write(dumps({"entries": [
            {"kind": e.kind, "n": e.n, "version": e.format_version, "path": str(e.path), "current": e.is_current}
            for e in entries
        ]}))
        return 0
    if not entries:
        print(f"Cache at {app.cache.base_dir} is empty.")
        return 0
    for e in entries:
        marker = "" if e.is_current else " (stale format)"
        print(f"  {e.kind:<10} n={e.n:<3} {e.path.name}{marker}")
    usage = app.cache.get_disk_usage()
    print(f"Size: {app.cache.format_usage(usage)}")
    return 0


COMMANDS: Dict[str, Callable] = {
    "partitions": _cmd_partitions,
    "chartable": _cmd_chartable,
    "kron": _cmd_kron,
    "loadings": _cmd_loadings,
    "scan": _cmd_scan,
    "classify": _cmd_classify,
    "thresholds": _cmd_thresholds,
    "conjecture": _cmd_conjecture,
    "stats": _cmd_stats,
    "verify": _cmd_verify,
    "cache": _cmd_cache,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run one command and return its exit code."""
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        _configure_logging(args.verbose)
        if args.seed is not None:
            logger.debug("--seed %d ignored: no computation is randomized", args.seed)
        return COMMANDS[args.command](args, _make_app(args))
    except KronloadError as e:
        print(f"error[{e.exit_code}]: {e}", file=sys.stderr)
        return e.exit_code
    except CharacterTableError as e:
        print(f"error[{VerificationError.exit_code}]: internal inconsistency: {e}", file=sys.stderr)
        return VerificationError.exit_code
    except OSError as e:
        print(f"error[{UsageError.exit_code}]: {e}", file=sys.stderr)
        return UsageError.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
