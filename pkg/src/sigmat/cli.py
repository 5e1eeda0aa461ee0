"""Command line front end.

Subcommands::

    sigmat compute --seq 1,1,1,2,2,2,3 --f 2
    sigmat verify  --theorem problem1 --n 4..11 --out reports/
    sigmat search  --domain trees --n 12 --f 1/n --min --out reports/
    sigmat report  reports/ --csv summary.csv

Exit codes: 0 success, 2 usage or parse error, 3 a verification was
refuted, 4 a domain exceeded the search budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from .core import (
    TIE_TOLERANCE,
    ExponentSpec,
    canonical,
    difference_profile,
    first_zagreb,
    irr_t,
    sigma_t_classic,
    sigma_t_f,
)
from .enumeration import Domain, DomainKind, candidate_count
from .extremal import (
    DEFAULT_CONSTANTS,
    DomainTooLarge,
    ExtremalReport,
    TheoremId,
    Verdict,
    search_extremum,
    verify,
)
from .graphical import has_connected_realization, is_graphical, is_tree_sequence

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_BUDGET = 0, 2, 3, 4
CSV_COLUMNS = ("n", "f", "optimum", "optimizer_count", "runner_up_margin", "verdict")


class UsageError(ValueError):
    pass


@dataclass
class RunManifest:
    command: list[str]
    exponents: dict[str, float]
    tie_tolerance: float
    domain_sizes: dict[str, int]
    verdicts: dict[str, str | None]
    engine_version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------


def parse_sequence(text: str) -> tuple[int, ...]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if not re.fullmatch(r"-?\d+", token):
            raise UsageError(f"bad sequence token {token!r}")
        values.append(int(token))
    if any(v < 0 for v in values):
        raise UsageError(f"bad sequence token {min(values)!r}: degrees are non-negative")
    return tuple(values)


def parse_n_range(text: str) -> list[int]:
    """``7``, ``4..11`` (inclusive) or ``4,6,8``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)\.\.(\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise UsageError(f"bad n range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part.isdigit():
            out.append(int(part))
        else:
            raise UsageError(f"bad n token {part!r}")
    return out


def parse_exponent(text: str) -> ExponentSpec:
    try:
        return ExponentSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_constants(text: str) -> tuple[float, ...]:
    out = []
    for token in text.split(","):
        try:
            c = float(token)
        except ValueError:
            raise UsageError(f"bad constant token {token!r}") from None
        if not 0 < c < 1:
            raise UsageError(f"bad constant token {token!r}: must lie in (0, 1)")
        out.append(c)
    return tuple(out)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9.]+", "-", text).strip("-")


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def csv_row(report: ExtremalReport) -> dict:
    return {
        "n": report.n,
        "f": repr(report.f),
        "optimum": repr(report.optimum),
        "optimizer_count": len(report.optimizers),
        "runner_up_margin": "" if report.runner_up_margin is None else repr(report.runner_up_margin),
        "verdict": "" if report.verdict is None else report.verdict.value,
    }


def write_csv(reports: Sequence[ExtremalReport], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(csv_row(r))


def _report_key(r: ExtremalReport) -> str:
    head = r.theorem or f"search-{r.domain.kind.value}"
    return f"{head}_n{r.n:02d}_{_slug(r.label or r.exponent)}"


def build_manifest(argv: Sequence[str], reports: Sequence[ExtremalReport]) -> RunManifest:
    return RunManifest(
        command=list(argv),
        exponents={_report_key(r): r.f for r in reports},
        tie_tolerance=TIE_TOLERANCE,
        domain_sizes={_report_key(r): candidate_count(r.domain) for r in reports},
        verdicts={_report_key(r): None if r.verdict is None else r.verdict.value for r in reports},
    )


def write_reports(out_dir: Path, reports: Sequence[ExtremalReport], manifest: RunManifest,
                  summary_name: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for r in reports:
        payload = {"manifest": asdict(manifest), "report": r.to_dict()}
        path = out_dir / f"{_report_key(r)}.json"
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    with open(out_dir / summary_name, "w", newline="", encoding="utf-8") as fh:
        write_csv(reports, fh)


def load_reports(paths: Sequence[str]) -> list[ExtremalReport]:
    files: list[Path] = []
    for p in map(Path, paths):
        files.extend(sorted(p.glob("*.json")) if p.is_dir() else [p])
    out = []
    for path in files:
        data = json.loads(path.read_text(encoding="utf-8"))
        out.append(ExtremalReport.from_dict(data.get("report", data)))
    return out


def _summary_line(r: ExtremalReport) -> str:
    opts = " ".join("(" + ",".join(map(str, s)) + ")" for s in r.optimizers[:4])
    if len(r.optimizers) > 4:
        opts += f" ... (+{len(r.optimizers) - 4})"
    verdict = "" if r.verdict is None else r.verdict.value
    margin = "-" if r.runner_up_margin is None else f"{r.runner_up_margin:.6g}"
    tag = f"{r.label} " if r.label else ""
    flag = " [exploratory]" if r.exploratory else ""
    return f"n={r.n:<3d} {tag}f={r.f:.6g} opt={r.optimum:.10g} margin={margin} {verdict}{flag} {opts}"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_compute(args, argv) -> int:
    seq = canonical(parse_sequence(args.seq))
    spec = parse_exponent(args.f)
    n = len(seq)
    try:
        f = spec.resolve(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    profile = difference_profile(seq)
    try:
        graphical = is_graphical(seq)
        connected = has_connected_realization(seq)
    except ValueError:
        graphical = connected = False
    record = {
        "sequence": list(seq),
        "n": n,
        "exponent": spec.label(),
        "f": f,
        "sigma_t_f": sigma_t_f(profile, f),
        "irr_t": irr_t(seq),
        "sigma_t_classic": sigma_t_classic(seq),
        "first_zagreb": first_zagreb(seq),
        "profile": list(profile.counts),
        "is_graphical": graphical,
        "has_connected_realization": connected,
        "is_tree_sequence": is_tree_sequence(seq),
    }
    print(json.dumps(record, indent=2))
    return EXIT_OK


def cmd_verify(args, argv) -> int:
    options = {
        "constants": parse_constants(args.c) if args.c else DEFAULT_CONSTANTS,
        "min_degree_one": args.min_degree_one,
        "graphical_only": args.graphical_only,
    }
    if args.f:
        options["exponent"] = parse_exponent(args.f)
    n_values = parse_n_range(args.n)
    try:
        reports = verify(args.theorem, n_values, shards=args.shards, jobs=args.jobs, **options)
    except DomainTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"domain_size={exc.domain_size}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for r in reports:
        print(_summary_line(r))
    if args.out:
        write_reports(Path(args.out), reports, build_manifest(argv, reports), f"{args.theorem}_summary.csv")
    refuted = [r for r in reports if r.verdict is Verdict.REFUTED and not r.exploratory]
    if refuted:
        for r in refuted:
            print(f"refuted at n={r.n} ({r.label}): witness {list(r.optimizers[0])}", file=sys.stderr)
        return EXIT_REFUTED
    return EXIT_OK


def cmd_search(args, argv) -> int:
    spec = parse_exponent(args.f)
    direction = "min" if args.min else "max"
    reports = []
    for n in parse_n_range(args.n):
        try:
            domain = Domain(DomainKind(args.domain), n, args.lo, args.hi, args.graphical_only)
            f = spec.resolve(n)
            report = search_extremum(domain, f, direction, shards=args.shards, jobs=args.jobs,
                                     exponent_label=spec.label())
        except DomainTooLarge as exc:
            print(f"error: {exc}", file=sys.stderr)
            print(f"domain_size={exc.domain_size}", file=sys.stderr)
            return EXIT_BUDGET
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report.label = spec.label()
        print(_summary_line(report))
        reports.append(report)
    if args.out:
        write_reports(Path(args.out), reports, build_manifest(argv, reports), "search_summary.csv")
    return EXIT_OK


def cmd_report(args, argv) -> int:
    try:
        reports = load_reports(args.inputs)
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read reports: {exc}") from None
    reports.sort(key=lambda r: (r.theorem or "", r.n, r.label))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            write_csv(reports, fh)
    else:
        buf = io.StringIO()
        write_csv(reports, buf)
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigmat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="indices of one sequence")
    p.add_argument("--seq", required=True, help="comma-separated degrees")
    p.add_argument("--f", default="2", help="exponent: 0.5, 1/n, c=0.3, bin-threshold, ...")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check a theorem, problem or conjecture over a range of n")
    p.add_argument("--theorem", required=True, choices=[t.value for t in TheoremId])
    p.add_argument("--n", required=True, help="n, lo..hi or a comma list")
    p.add_argument("--out", help="directory for JSON reports and the CSV summary")
    p.add_argument("--c", help="comma-separated constants in (0,1) for problem2 / chem-conjectures")
    p.add_argument("--f", help="exponent for tree-max (default 1/n)")
    p.add_argument("--min-degree-one", action="store_true", help="graph domains exclude isolated vertices")
    p.add_argument("--graphical-only", action="store_true", help="chemical domain drops the connectivity test")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive argmax/argmin over a domain")
    p.add_argument("--domain", required=True, choices=[k.value for k in DomainKind])
    p.add_argument("--n", required=True, help="n, lo..hi or a comma list")
    p.add_argument("--f", required=True, help="exponent spec")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--max", action="store_true", help="maximize (default)")
    which.add_argument("--min", action="store_true", help="minimize")
    p.add_argument("--lo", type=int, help="smallest allowed value")
    p.add_argument("--hi", type=int, help="largest allowed value")
    p.add_argument("--graphical-only", action="store_true")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="directory for JSON reports and the CSV summary")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("report", help="merge JSON reports into one CSV")
    p.add_argument("inputs", nargs="+", help="report files or directories")
    p.add_argument("--csv", help="output path (default stdout)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "shards", 1) < 1 or getattr(args, "jobs", 1) < 1:
        print("error: --shards and --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, ["sigmat", *argv])
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
