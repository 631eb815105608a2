"""Command-line front end: ``centw <command> --pyramid 1,2 ...``.

Exit status is 0 when every requested check passes, 1 when one fails and 2
for a bad configuration.  ``--out`` writes a JSON report (``"schema": 1``);
a short human summary always goes to standard output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .brst import LEMMAS, Report, verify_lemma
from .miura import critical_commutativity, injectivity_rank, miura_expand, verify_miura
from .pyramid import ShapeError, Pyramid
from .scalar import form
from .statespace import State
from .walgebra import BACKENDS, Realization, certify_generators, generators, hilbert_series

SCHEMA = 1


class ConfigError(Exception):
    pass


def _pyramid(text: str) -> Pyramid:
    try:
        return Pyramid.parse(text)
    except ShapeError as exc:
        raise ConfigError(str(exc)) from None


def _level(text: str) -> Fraction | None:
    if text == "k":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--level must be 'k' or a rational number, got {text!r}") from None


def _cap(value: int) -> int:
    if value < 0:
        raise ConfigError("caps must be non-negative")
    return value


def _at_level(v: State, level: Fraction | None) -> State:
    return v if level is None else v.evaluate(level)


def _state_table(table: dict, level: Fraction | None) -> list:
    return [{"l": l, "r": r, "state": _at_level(v, level).to_json()}
            for (l, r), v in sorted(table.items())]


def _report_lines(rep: Report) -> list[str]:
    lines = [f"check: {rep.statement}",
             f"pyramid {rep.pyramid}: {rep.status}, {rep.checks} checks"]
    if rep.counterexample:
        lines.append("counterexample: " + json.dumps(rep.counterexample, sort_keys=True))
    return lines


# commands ---------------------------------------------------------------------------

def cmd_basis(args) -> tuple[dict, list[str], bool]:
    p = _pyramid(args.pyramid)
    rows = [str(g) for g in p.basis_E()]
    return {"pyramid": p.to_json(), "basis": rows}, rows, True


def cmd_form(args):
    p = _pyramid(args.pyramid)
    basis = p.basis_E()
    entries = []
    for g1 in basis:
        for g2 in basis:
            f = form(p, g1, g2)
            if f:
                entries.append([str(g1), str(g2), str(f)])
    lines = [f"<{a}, {b}> = {f}" for a, b, f in entries]
    return {"pyramid": p.to_json(), "form": entries}, lines, True


def cmd_structure(args):
    p = _pyramid(args.pyramid)
    basis = p.basis_E()
    entries = []
    for g1 in basis:
        for g2 in basis:
            br = p.lie_bracket(g1, g2)
            if br:
                entries.append([str(g1), str(g2),
                                [[str(g), c] for g, c in sorted(br.items())]])
    lines = [f"[{a}, {b}] = " + " + ".join(f"({c}) {g}" for g, c in terms)
             for a, b, terms in entries]
    return {"pyramid": p.to_json(), "brackets": entries}, lines, True


def cmd_generators(args):
    p = _pyramid(args.pyramid)
    level = _level(args.level)
    table = generators(p, realization=Realization(p, args.backend))
    rep = certify_generators(p)
    data = {"pyramid": p.to_json(), "level": args.level, "backend": args.backend,
            "generators": _state_table(table, level), "certified": rep.passed}
    lines = [f"w_{l}^({r})|0> = {_at_level(v, level)}" for (l, r), v in sorted(table.items())]
    return data, lines + _report_lines(rep), rep.passed


def cmd_miura(args):
    p = _pyramid(args.pyramid)
    level = _level(args.level)
    table = miura_expand(p)
    data = {"pyramid": p.to_json(), "level": args.level,
            "miura": _state_table(table, level)}
    lines = [f"v_{l}^({r})|0> = {_at_level(v, level)}" for (l, r), v in sorted(table.items())]
    return data, lines, True


def cmd_hilbert(args):
    p = _pyramid(args.pyramid)
    cap = _cap(args.cap)
    if cap < 1:
        raise ConfigError("--cap must be at least 1")
    series = hilbert_series(p, cap)
    return {"pyramid": p.to_json(), "cap": cap, "series": series}, [" ".join(map(str, series))], True


def cmd_rank(args):
    p = _pyramid(args.pyramid)
    rep = injectivity_rank(p, _cap(args.cap), seed=args.seed)
    return {"pyramid": p.to_json(), "reports": [rep.to_json()]}, _report_lines(rep), rep.passed


def cmd_verify(args):
    p = _pyramid(args.pyramid)
    cap = _cap(args.cap)
    what = args.what
    if what == "d2":
        reports = [verify_lemma("nilpotent", p, cap)]
    elif what == "lemmas":
        reports = [verify_lemma(name, p, cap) for name in LEMMAS if name != "nilpotent"]
    elif what == "dw":
        reports = [certify_generators(p)]
    elif what == "miura":
        reports = [verify_miura(p)]
    else:
        reports = [critical_commutativity(p)]
    lines = []
    for rep in reports:
        lines += _report_lines(rep)
    if what == "dw" and reports[0].passed:
        lines.append(f"{len(reports[0].details['generators'])} generators certified")
    ok = all(rep.passed for rep in reports)
    return {"pyramid": p.to_json(), "reports": [rep.to_json() for rep in reports]}, lines, ok


COMMANDS = {
    "basis": cmd_basis, "form": cmd_form, "structure-consts": cmd_structure,
    "generators": cmd_generators, "miura": cmd_miura, "hilbert": cmd_hilbert,
    "rank": cmd_rank, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--pyramid", required=True, help="row lengths, e.g. 1,2")
        sp.add_argument("--out", help="write the JSON report here")
        return sp

    add("basis", "list the centralizer basis")
    add("form", "nonzero values of the invariant form")
    add("structure-consts", "nonzero Lie brackets of basis elements")
    sp = add("generators", "W-algebra generators from the column determinant")
    sp.add_argument("--level", default="k")
    sp.add_argument("--backend", choices=BACKENDS, default="reduced")
    sp = add("miura", "coefficients of the Miura product")
    sp.add_argument("--level", default="k")
    sp = add("hilbert", "Hilbert series coefficients")
    sp.add_argument("--cap", type=int, default=6)
    sp = add("rank", "rank of Miura images of generator monomials")
    sp.add_argument("--cap", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("verify", "run one family of checks")
    sp.add_argument("what", choices=["d2", "dw", "lemmas", "miura", "critical"])
    sp.add_argument("--cap", type=int, default=2, help="energy and degree cap for sweeps")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data, lines, ok = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    if args.out:
        payload = {"schema": SCHEMA, "command": args.command, **data, "ok": ok}
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
