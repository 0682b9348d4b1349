"""Command line: ``hopfgalois verify`` and ``hopfgalois list``.

Exit codes: 0 every check passes, 1 some check fails, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CATALOG
from .fixtures import CONDUCTOR_ENV, FixtureSet, UnknownFixture, builtin_fixtures, conductor_override
from .presentation import ParseError, UndeclaredLabel
from .report import Check
from .suites import SUITES, SuiteReport, UnknownSuite, applicable, run_suite

__all__ = ["main", "main_exit", "emit_report", "parse_structured", "FORMAT"]

FORMAT = "hopfgalois-report/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# report emission


def _json_witness(w):
    if w is None:
        return None
    return [x if isinstance(x, (str, int)) and not isinstance(x, bool) else str(x) for x in w]


def _structured(reports: list[SuiteReport], timings: bool) -> str:
    total = sum(len(r.checks) for r in reports)
    failed = sum(len(r.failures) for r in reports)
    doc = {
        "format": FORMAT,
        "summary": {"checks": total, "failed": failed, "reports": len(reports)},
        "reports": [
            {
                "fixture": r.fixture,
                "suite": r.suite,
                "checks": [
                    {
                        "id": c.id,
                        "anchor": CATALOG[c.id],
                        "status": c.status,
                        "witness": _json_witness(c.witness),
                        "elapsed": c.elapsed if timings else None,
                    }
                    for c in r.checks
                ],
            }
            for r in reports
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fmt_witness(w) -> str:
    return "(" + ", ".join(str(x) for x in w) + ")"


def _text(reports: list[SuiteReport], timings: bool) -> str:
    total = sum(len(r.checks) for r in reports)
    failed = sum(len(r.failures) for r in reports)
    lines = [f"hopfgalois verify: {len(reports)} suite run(s), {total} checks, {failed} failed"]
    for r in reports:
        lines.append("")
        lines.append(f"[{r.fixture}] {r.suite}: {'ok' if r.ok else 'FAIL'}")
        for c in r.checks:
            line = f"  {c.status.upper():4} {c.id}"
            if not c.passed:
                line += f"  witness={_fmt_witness(c.witness)}"
            if timings and c.elapsed is not None:
                line += f"  [{c.elapsed:.3f}s]"
            lines.append(line)
    return "\n".join(lines) + "\n"


def emit_report(reports: list[SuiteReport], fmt: str = "text", timings: bool = False) -> str:
    if fmt == "structured":
        return _structured(reports, timings)
    if fmt == "text":
        return _text(reports, timings)
    raise ValueError(f"unknown report format {fmt!r}")


def parse_structured(text: str) -> list[SuiteReport]:
    """Inverse of the structured emitter."""
    doc = json.loads(text)
    if doc.get("format") != FORMAT:
        raise ValueError(f"not a {FORMAT} document")
    out = []
    for r in doc["reports"]:
        checks = [
            Check(c["id"], c["status"] == "pass", None if c["witness"] is None else tuple(c["witness"]),
                  elapsed=c["elapsed"])
            for c in r["checks"]
        ]
        out.append(SuiteReport(r["fixture"], r["suite"], checks))
    return out


# ---------------------------------------------------------------------------
# argument handling


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hopfgalois",
        description="Exact verification of Hopf-Galois constructions on small fixtures.",
        epilog=f"{CONDUCTOR_ENV}=N restricts every parsed scalar to Q(zeta_N).",
    )
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--fixture", action="append", default=[], metavar="NAME", help="fixture to verify (repeatable)")
    v.add_argument("--suite", action="append", default=[], metavar="NAME",
                   help=f"suite to run (repeatable; default all of {', '.join(SUITES)})")
    v.add_argument("--all", action="store_true", help="every built-in fixture and every applicable suite")
    v.add_argument("--report", choices=("text", "structured"), default="text")
    v.add_argument("--out", type=Path, metavar="PATH", help="write the report here instead of stdout")
    v.add_argument("--load", action="append", default=[], type=Path, metavar="FILE",
                   help="presentation file with extra fixtures (repeatable)")
    v.add_argument("--timings", action="store_true", help="record elapsed seconds per check")
    ls = sub.add_parser("list", help="list fixtures and the suites that apply to them")
    ls.add_argument("--load", action="append", default=[], type=Path, metavar="FILE")
    return p


def _fixtures(paths: list[Path]) -> tuple[FixtureSet, list[str]]:
    fs = builtin_fixtures()
    loaded = []
    for path in paths:
        loaded += fs.load(path.read_text(encoding="utf-8"))
    return fs, loaded


def _usage(msg: str) -> int:
    print(f"hopfgalois: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        conductor_override()
        fs, loaded = _fixtures(args.load)
    except (ParseError, UndeclaredLabel) as e:
        return _usage(str(e))
    except (OSError, ValueError) as e:
        return _usage(str(e))

    if args.command == "list":
        for name in fs.visible():
            fx = fs.get(name)
            suites = [s for s in SUITES if applicable(fx, s)]
            print(f"{name:28} {fx.kind:9} {' '.join(suites)}")
        return EXIT_OK

    if args.all:
        targets = fs.visible()
        targets += [n for n in args.fixture if n not in targets]
    else:
        targets = list(args.fixture) or loaded
    if not targets:
        return _usage("nothing to verify: give --fixture NAME, --load FILE or --all")
    try:
        reports = run_suite(targets, args.suite or None, fs, timings=args.timings)
    except (UnknownFixture, UnknownSuite) as e:
        return _usage(e.args[0] if isinstance(e, UnknownFixture) else str(e))

    out = emit_report(reports, args.report, args.timings)
    if args.out is not None:
        args.out.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_FAIL if any(not r.ok for r in reports) else EXIT_OK


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
