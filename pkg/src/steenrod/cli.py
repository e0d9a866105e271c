"""Command-line front end.

Expression evaluation (`adem`, `mul`, `coprod`, `antipode`, `pair`,
`milnor`, `basis`, `sq`), module-theory queries (`module-type`, `margolis`,
`split-check`), the primitives table (`primitives`), integration along the
fiber (`transfer`), and the verification harness (`verify`).

Output is deterministic for a fixed argument vector: text mode uses the
canonical print orders, JSON mode emits one document with sorted keys.
Exit codes: 0 success, 1 computation or check failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bundles, charclass, dual, modules, verify
from .algebra import basis, parse_element
from .dual import parse_dual, parse_milnor_operator

# committed schema for the JSON report emitted by `verify`
REPORT_SCHEMA = {
    "type": "object",
    "required": ["suites", "ok"],
    "properties": {
        "ok": {"type": "boolean"},
        "suites": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["suite", "checks", "counts"],
                "properties": {
                    "suite": {"type": "string"},
                    "counts": {
                        "type": "object",
                        "required": ["pass", "fail", "provisional"],
                        "properties": {
                            "pass": {"type": "integer"},
                            "fail": {"type": "integer"},
                            "provisional": {"type": "integer"},
                        },
                    },
                    "checks": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["id", "status"],
                            "properties": {
                                "id": {"type": "string"},
                                "status": {"enum": ["pass", "fail", "provisional"]},
                                "witness": {"type": "string"},
                            },
                        },
                    },
                },
            },
        },
    },
}

PRESETS = {
    "bpsp3": bundles.bpsp3_presentation,
    "bsu3": bundles.bsu3_presentation,
    "bu3": bundles.bu3_presentation,
    "cp2-total": bundles.cp2_total_presentation,
    "hp2-total": bundles.hp2_total_presentation,
}


class CliError(Exception):
    pass


def _preset(name: str):
    if name not in PRESETS:
        raise CliError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return PRESETS[name]()


def cmd_adem(args) -> str:
    return str(parse_element(args.expr))


def cmd_mul(args) -> str:
    return str(parse_element(args.left) * parse_element(args.right))


def cmd_coprod(args) -> str:
    return str(parse_element(args.expr).coproduct())


def cmd_antipode(args) -> str:
    return str(parse_element(args.expr).antipode())


def cmd_pair(args) -> str:
    return str(dual.pair(parse_dual(args.dual), parse_element(args.steenrod)))


def cmd_milnor(args) -> str:
    text = args.expr.strip()
    if text.startswith(("SqM", "Q")):
        return str(parse_milnor_operator(text))
    x = parse_element(text)
    seqs = sorted(dual.admissible_to_milnor(x), key=dual.xi_sort_key)
    if not seqs:
        return "0"
    return " + ".join("SqM(" + ",".join(map(str, s)) + ")" for s in seqs)


def cmd_basis(args) -> str:
    elts = basis(args.degree)
    if args.format == "json":
        return json.dumps([e.to_json()[0] for e in elts])
    return "\n".join(str(e) for e in elts)


def cmd_sq(args) -> str:
    pres = _preset(args.preset)
    poly = pres.ring.parse(args.expr)
    return str(pres.sq(args.k, poly))


def cmd_module_type(args) -> str:
    pres = _preset(args.preset)
    algebra = args.algebra.upper().replace("(", "").replace(")", "")
    algebra = {"A1": "A1", "E1": "E1"}[algebra]
    m = modules.from_presentation(pres, algebra, (0, args.max))
    if args.format == "dot":
        return m.to_dot()
    result = modules.stable_type_solve(m)
    if args.format == "json":
        return json.dumps(
            {
                "status": result.status,
                "pieces": [list(p) for p in (result.solutions[0] if result.solutions else [])],
                "note": result.note,
            },
            sort_keys=True,
        )
    if result.status != "unique":
        return f"{result.status}: {result.note or result.solutions}"
    return " + ".join(f"{name}@{susp}" for name, susp in result.pieces) or "0"


def cmd_margolis(args) -> str:
    pres = _preset(args.preset)
    algebra = "E1" if args.algebra.lower() in ("e1", "e(1)") else "A1"
    m = modules.from_presentation(pres, algebra, (0, args.max))
    table = m.margolis_homology(args.op)
    rows = []
    for d in range(m.dmin, m.dmax + 1):
        dim, reliable = table[d]
        rows.append((d, dim, "ok" if reliable else "provisional"))
    if args.format == "json":
        return json.dumps([{"degree": d, "dim": v, "status": s} for d, v, s in rows])
    return "\n".join(f"{d}\t{v}\t{s}" for d, v, s in rows)


def cmd_split_check(args) -> str:
    a1 = modules.standard_piece("A1", "A1")
    if args.case == "identity":
        cert = modules.check_split_criterion(modules.identity_map(a1))
    elif args.case == "joker":
        j2 = modules.standard_piece("A1", "J").suspend(2)
        fmap = None
        for mats in modules._hom_space(j2, a1):
            cand = modules.ModuleMap(j2, a1, tuple(mats))
            if cand.is_injective():
                fmap = cand
                break
        cert = modules.check_split_criterion(fmap)
    else:
        cert = modules.check_split_criterion(
            modules.zero_map(modules.standard_piece("A1", "Z2"), a1)
        )
    doc = {
        "hypotheses_met": cert.hypotheses_met,
        "f_injective": cert.f_injective,
        "q0_margolis_injective": cert.q0_margolis_injective,
        "split_guaranteed": cert.split_guaranteed,
        "witness_degree": cert.witness_degree,
    }
    return json.dumps(doc, sort_keys=True)


def cmd_primitives(args) -> str:
    mdl = charclass.model(args.space, max(args.max, 34))
    rows = []
    for n in range(2, args.max + 1):
        r = mdl.primitives(n, kernel_limit=args.kernel_limit)
        rows.append(r)
    if args.format == "json":
        return json.dumps(
            [
                {
                    "degree": r.degree,
                    "dimension": r.dimension,
                    "formula": r.formula,
                    "polynomial": charclass.poly_str(r.polynomial),
                    "verified": r.verified,
                }
                for r in rows
            ],
            sort_keys=True,
        )
    lines = []
    for r in rows:
        mark = "ok" if r.verified else "FAIL"
        if args.format == "tsv":
            lines.append(f"{r.degree}\t{r.dimension}\t{r.formula}\t{mark}")
        else:
            lines.append(f"degree {r.degree}: dim {r.dimension}  {r.formula}  [{mark}]")
    return "\n".join(lines)


def cmd_transfer(args) -> str:
    b = bundles.bundle(args.bundle)
    poly = b.total.ring.parse(args.expr)
    result = b.fiber_integrate(poly)
    if args.json:
        return json.dumps(
            {"bundle": args.bundle, "input": args.expr, "integral": str(result)},
            sort_keys=True,
        )
    return str(result)


def cmd_verify(args) -> tuple[str, int]:
    names = args.suite or list(verify.SUITES)
    if names == ["all"]:
        names = list(verify.SUITES)
    reports = verify.run_suites(names, args.max)
    ok = all(r.ok for r in reports)
    if args.format == "json":
        doc = {
            "ok": ok,
            "suites": [
                {
                    "suite": r.suite,
                    "counts": r.counts,
                    "checks": [
                        {"id": c.check_id, "status": c.status, "witness": c.witness}
                        for c in r.checks
                    ],
                }
                for r in reports
            ],
        }
        return json.dumps(doc, sort_keys=True), 0 if ok else 1
    lines = []
    for r in reports:
        counts = r.counts
        lines.append(
            f"== {r.suite}: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['provisional']} provisional"
        )
        for c in r.checks:
            marker = {"pass": "PASS", "fail": "FAIL", "provisional": "PROV"}[c.status]
            line = f"  [{marker}] {c.check_id}"
            if c.witness:
                line += f"  ({c.witness})"
            lines.append(line)
    return "\n".join(lines), 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="steenrod",
        description="mod-2 Steenrod algebra calculator and verification harness",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("adem", help="normalize a word to the admissible basis")
    sp.add_argument("expr")
    sp.set_defaults(fn=cmd_adem)

    sp = sub.add_parser("mul", help="multiply two elements")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(fn=cmd_mul)

    sp = sub.add_parser("coprod", help="coproduct of an element")
    sp.add_argument("expr")
    sp.set_defaults(fn=cmd_coprod)

    sp = sub.add_parser("antipode", help="conjugation of an element")
    sp.add_argument("expr")
    sp.set_defaults(fn=cmd_antipode)

    sp = sub.add_parser("pair", help="pair a dual element against an element")
    sp.add_argument("dual")
    sp.add_argument("steenrod")
    sp.set_defaults(fn=cmd_pair)

    sp = sub.add_parser("milnor", help="convert between admissible and Milnor bases")
    sp.add_argument("expr")
    sp.set_defaults(fn=cmd_milnor)

    sp = sub.add_parser("basis", help="admissible basis of a degree")
    sp.add_argument("degree", type=int)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(fn=cmd_basis)

    sp = sub.add_parser("sq", help="apply Sq^k in a preset ring")
    sp.add_argument("k", type=int)
    sp.add_argument("expr")
    sp.add_argument("--preset", default="bpsp3")
    sp.set_defaults(fn=cmd_sq)

    sp = sub.add_parser("module-type", help="stable type of a preset module")
    sp.add_argument("--preset", default="bsu3")
    sp.add_argument("--algebra", default="e1")
    sp.add_argument("--max", type=int, default=40)
    sp.add_argument("--format", choices=("text", "json", "dot"), default="text")
    sp.set_defaults(fn=cmd_module_type)

    sp = sub.add_parser("margolis", help="margolis homology of a preset module")
    sp.add_argument("--preset", default="bsu3")
    sp.add_argument("--algebra", default="e1")
    sp.add_argument("--op", choices=("q0", "q1"), default="q0")
    sp.add_argument("--max", type=int, default=40)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(fn=cmd_margolis)

    sp = sub.add_parser("split-check", help="run a built-in split-criterion case")
    sp.add_argument("--case", choices=("identity", "joker", "zero"), default="identity")
    sp.set_defaults(fn=cmd_split_check)

    sp = sub.add_parser("primitives", help="primitive table of a classifying space")
    sp.add_argument("--space", choices=charclass.SPACES, default="bspinc")
    sp.add_argument("--max", type=int, default=64)
    sp.add_argument("--kernel-limit", type=int, default=0)
    sp.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    sp.set_defaults(fn=cmd_primitives)

    sp = sub.add_parser("transfer", help="integrate along the fiber of a preset bundle")
    sp.add_argument("--bundle", choices=("cp2", "hp2"), default="cp2")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_transfer)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", action="append", choices=sorted(verify.SUITES) + ["all"])
    sp.add_argument("--max", type=int, default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(fn=cmd_verify)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.fn(args)
    except (ValueError, KeyError, CliError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # computation failure
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, tuple):
        text, code = result
        print(text)
        return code
    print(result)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
