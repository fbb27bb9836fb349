"""Command-line interface.

Exit codes: 0 success, 1 conjecture counterexamples found, 2 usage or
parse error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .conversion import beta, in_sigma_lower
from .f3aut import search_morphic
from .family import conjecture_search, family_matrices, family_table, v_kn
from .pwwf import (
    PROJECTIONS,
    Substitution3,
    bisect,
    bisecting_substitution,
    incidence3,
    mode_label,
    predicted_incidence_g,
    predicted_incidence_sigma,
    project_substitution,
)
from .sturmian import (
    Substitution2,
    format_normal_form,
    incidence2,
    recognize_special_standard,
    recognize_special_sturmian,
)
from .words import DomainError, ParseError, parse_mode, parse_word

SCHEMA = 1
TABLE_COLUMNS = ("mode", "apotomic", "syntonic", "apo_syntonic", "type", "decomposition")
TABLE_HEADERS = ("triadic mode", "apotomic", "syntonic", "apo-syntonic", "type", "decomposition")


class UsageError(Exception):
    pass


def _triadic(text: str) -> Substitution3:
    mode = parse_mode(text)
    if not mode.is_triadic:
        raise ParseError("expected a triadic mode x|y||z", len(text))
    return Substitution3.from_mode(mode)


def _mode_row(s: Substitution3, label: str) -> dict:
    row = {"mode": str(s)}
    for which in PROJECTIONS:
        row[which.replace("-", "_")] = str(project_substitution(s, which))
    row["type"] = label
    d = search_morphic(s).decomposition
    row["decomposition"] = str(d) if d is not None else ""
    return row


def _text_table(headers: Sequence[str], rows: list[Sequence[str]]) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(headers, *rows)]
    lines = []
    for r in [headers, *rows]:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _csv(headers: Sequence[str], rows: list[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(headers)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n"


def _emit_rows(fmt: str, rows: list[dict], extra: dict) -> str:
    if fmt == "json":
        return _json({**extra, "rows": rows})
    table = [[r[c] for c in TABLE_COLUMNS] for r in rows]
    if fmt == "csv":
        return _csv(TABLE_COLUMNS, table)
    return _text_table(TABLE_HEADERS, table)


def cmd_classify(args) -> tuple[str, int]:
    s = _triadic(args.mode)
    row = _mode_row(s, mode_label(s))
    status = {}
    for which in PROJECTIONS:
        p = project_substitution(s, which)
        cert = recognize_special_sturmian(p)
        status[which] = format_normal_form(cert) if cert is not None else None
    if args.format == "json":
        return _json({"input": args.mode, **row, "sturmian": status}), 0
    if args.format == "csv":
        return _csv(TABLE_COLUMNS, [[row[c] for c in TABLE_COLUMNS]]), 0
    lines = [("input", args.mode, "")]
    for which in PROJECTIONS:
        cert = status[which]
        note = f"special Sturmian: {cert}" if cert is not None else "not special Sturmian"
        lines.append((which, row[which.replace("-", "_")], note))
    lines.append(("type", row["type"], ""))
    if row["decomposition"]:
        lines.append(("decomposition", row["decomposition"], ""))
    # header row dropped: the first column already names each line
    return _text_table(("", "", ""), lines).split("\n", 1)[1], 0


def cmd_table(args) -> tuple[str, int]:
    rows = [_mode_row(r.substitution, r.label) for r in family_table(args.k, args.n)]
    return _emit_rows(args.format, rows, {"k": args.k, "n": args.n, "v_kn": str(v_kn(args.k, args.n))}), 0


def cmd_bisect(args) -> tuple[str, int]:
    w = parse_word(args.word)
    out = bisect(w)
    if args.format == "json":
        return _json({"input": args.word, "bisection": out}), 0
    if args.format == "csv":
        return _csv(("input", "bisection"), [(args.word, out)]), 0
    return f"{args.word} -> {out}\n", 0


def cmd_project(args) -> tuple[str, int]:
    s = _triadic(args.mode)
    names = list(PROJECTIONS) if args.which == "all" else [args.which]
    results = {which: str(project_substitution(s, which)) for which in names}
    if args.format == "json":
        return _json({"input": args.mode, "projections": results}), 0
    if args.format == "csv":
        return _csv(("input", "projection", "value"), [(args.mode, k, v) for k, v in results.items()]), 0
    if len(results) == 1:
        return f"{next(iter(results.values()))}\n", 0
    return "".join(f"{k}: {v}\n" for k, v in results.items()), 0


def cmd_decompose(args) -> tuple[str, int]:
    s = _triadic(args.mode)
    search = search_morphic(s)
    if args.format == "json":
        out = {"input": args.mode, "morphic": search.morphic}
        if search.morphic:
            out["decomposition"] = str(search.decomposition)
        elif abs(search.determinant) != 1:
            out["determinant"] = search.determinant
        else:
            out["dead_ends"] = [str(d) for d in search.dead_ends]
        return _json(out), 0
    if search.morphic:
        return f"{search.decomposition}\n", 0
    if abs(search.determinant) != 1:
        return f"not morphic: determinant {search.determinant}\n", 0
    return "not morphic: irreducible " + ", ".join(map(str, search.dead_ends)) + "\n", 0


def _fmt_mat(m) -> str:
    return "(" + "; ".join(" ".join(str(v) for v in row) for row in m) + ")"


def cmd_matrices(args) -> tuple[str, int]:
    if args.mode is not None:
        mode = parse_mode(args.mode)
        if mode.is_triadic:
            raise ParseError("expected an authentic mode f(a)|f(c)", len(args.mode))
        f = Substitution2.from_mode(mode, ("a", "c"))
        if recognize_special_standard(f) is None:
            raise DomainError(f"{f} is not a special standard morphism of {{a, c}}*")
        sigma = bisecting_substitution(f)
        mf = incidence2(f)
        out = {
            "input": args.mode,
            "sigma": str(sigma),
            "M_f": mf,
            "M_sigma": incidence3(sigma),
            "M_sigma_closed_form": predicted_incidence_sigma(mf),
            "M_g": incidence2(project_substitution(sigma, "apo-syntonic")),
            "M_g_syntonic": incidence2(project_substitution(sigma, "syntonic")),
            "M_g_closed_form": predicted_incidence_g(mf),
        }
        if in_sigma_lower(mf):
            out["beta_M_f"] = beta(mf)
    else:
        if args.k is None or args.n is None:
            raise UsageError("give a mode or both --k and --n")
        mf, mg = family_matrices(args.k, args.n)
        out = {"k": args.k, "n": args.n, "M_f": mf, "M_g": mg, "beta_M_f": beta(mf)}
    if args.format == "json":
        return _json({k: ([list(r) for r in v] if isinstance(v, tuple) else v) for k, v in out.items()}), 0
    rows = [(k, _fmt_mat(v) if isinstance(v, tuple) else str(v)) for k, v in out.items()]
    if args.format == "csv":
        return _csv(("name", "value"), rows), 0
    return "".join(f"{k}: {v}\n" for k, v in rows), 0


def cmd_conjecture(args) -> tuple[str, int]:
    report = conjecture_search(args.max_len, jobs=args.jobs)
    code = 0 if report.holds else 1
    data = report.to_json()
    if args.format == "json":
        return json.dumps(data, indent=2) + "\n", code
    if args.format == "csv":
        rows = []
        for c in report.classes:
            for e in c["entries"]:
                evidence = e.get("decomposition") or ";".join(e.get("dead_ends", [])) or str(e.get("determinant", ""))
                rows.append((c["f"], e["mode"], e["morphic"], e["family_member"], e["certificate_valid"], evidence))
        return _csv(("class", "mode", "morphic", "family_member", "certificate_valid", "evidence"), rows), code
    lines = [
        f"max length: {report.max_length}",
        f"classes searched: {report.classes_searched}",
        "counts: " + ", ".join(f"{k}={v}" for k, v in report.counts.items()),
        f"counterexamples: {len(report.counterexamples)}",
    ]
    for c in report.counterexamples:
        lines.append(f"  {c['mode']} morphic={c['morphic']} family={c['family_member']}")
    return "\n".join(lines) + "\n", code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pwwf", description="Pairwise well-formed modes and their transformations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.set_defaults(func=func)
        return sp

    sp = add("classify", cmd_classify, "classify a triadic mode")
    sp.add_argument("mode")

    sp = add("table", cmd_table, "conjugation table of v_{k,n}")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("bisect", cmd_bisect, "bisection of a word over {a, c}")
    sp.add_argument("word")

    sp = add("project", cmd_project, "projections of a triadic mode")
    sp.add_argument("mode")
    sp.add_argument("--which", choices=(*PROJECTIONS, "all"), default="all")

    sp = add("decompose", cmd_decompose, "decompose a triadic mode into E/A/P factors")
    sp.add_argument("mode")

    sp = add("matrices", cmd_matrices, "incidence matrices of a standard mode or of v_{k,n}")
    sp.add_argument("mode", nargs="?")
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int)

    sp = add("conjecture", cmd_conjecture, "search for counterexamples to the morphic-family conjecture")
    sp.add_argument("--max-len", type=int, default=19)
    sp.add_argument("--jobs", type=int, default=1)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "table" and (args.k < 0 or args.n < 1):
        parser.print_usage(sys.stderr)
        print("pwwf: error: table needs --k >= 0 and --n >= 1", file=sys.stderr)
        return 2
    if args.command == "conjecture" and (args.max_len < 7 or args.jobs < 1):
        parser.print_usage(sys.stderr)
        print("pwwf: error: conjecture needs --max-len >= 7 and --jobs >= 1", file=sys.stderr)
        return 2
    try:
        text, code = args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"pwwf: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"pwwf: domain error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
