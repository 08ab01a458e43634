"""Command-line surface: every verification and computation route, with
deterministic, diffable output.

Exit codes: 0 success/agreement, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import freealg, gauge, trees
from .errors import AlgebraError, ParseError
from .graded import GradedElement
from .specfile import (
    SpecDocument,
    parse_spec,
    render_element,
    render_word_element,
)
from .structure import AlgebraSpec, mc_defect, validate_structure

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2

# gauge routes by label; kept in a table so harnesses can stub one out
METHOD_TABLE: Dict[str, Callable[[AlgebraSpec, GradedElement, GradedElement], GradedElement]] = {
    "closed": lambda spec, x, xi: gauge.gauge_closed(spec, x, xi),
    "trees": lambda spec, x, xi: (
        gauge.gauge_trees_L(spec, x, xi)
        if spec.kind in ("dgla", "linf")
        else gauge.gauge_trees_A(spec, x, xi)
    ),
    "exp": lambda spec, x, xi: freealg.gauge_via_exp(spec, x, xi),
    "cylinder": lambda spec, x, xi: freealg.cylinder_gauge(spec, x, xi),
    "dga": lambda spec, x, xi: gauge.gauge_dga(
        spec, gauge.exp_assoc(freealg.embed_linear(freealg.tensor_envelope(spec), x)), xi
    ),
}

_METHOD_ORDER = {
    "dgla": ("closed", "trees", "exp", "cylinder"),
    "linf": ("trees", "exp", "cylinder"),
    "dga": ("dga", "trees", "exp", "cylinder"),
    "ainf": ("trees", "exp", "cylinder"),
}


def applicable_methods(kind: str) -> Tuple[str, ...]:
    return _METHOD_ORDER[kind]


def _load(path: str) -> SpecDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_spec(handle.read())


def _load_validated(path: str) -> SpecDocument:
    doc = _load(path)
    report = validate_structure(doc.spec)
    if not report.ok:
        names = ", ".join(name for name, _ in report.failures)
        raise AlgebraError(f"structure identities fail on: {names}")
    return doc


def _cmd_validate(args) -> int:
    doc = _load(args.file)
    report = validate_structure(doc.spec)
    if report.ok:
        print("OK")
        return EXIT_OK
    for name, residue in report.failures:
        print(f"witness {name}: {residue!r}")
    return EXIT_VERIFICATION


def _cmd_mc_check(args) -> int:
    doc = _load_validated(args.file)
    xi = doc.graded_element(args.element)
    defect = mc_defect(doc.spec, xi)
    print(f"defect = {render_element(defect)}")
    return EXIT_OK if defect.is_zero() else EXIT_VERIFICATION


def _cmd_gauge(args) -> int:
    doc = _load_validated(args.file)
    spec = doc.spec
    method = args.method
    if method not in applicable_methods(spec.kind):
        raise AlgebraError(f"method {method!r} does not apply to kind {spec.kind}")
    xi = doc.graded_element(args.element)
    x = doc.graded_element(args.by)
    result = METHOD_TABLE[method](spec, x, xi)
    print(render_element(result))
    return EXIT_OK


def _cmd_gauge_compare(args) -> int:
    doc = _load_validated(args.file)
    spec = doc.spec
    xi = doc.graded_element(args.element)
    x = doc.graded_element(args.by)
    labels = applicable_methods(spec.kind)
    results = [(label, METHOD_TABLE[label](spec, x, xi)) for label in labels]
    first = results[0][1]
    if all(value == first for _, value in results):
        chain = " = ".join(label for label, _ in results)
        print(f"AGREE: {chain} = {render_element(first)}")
        return EXIT_OK
    print("DISAGREE:")
    for label, value in results:
        print(f"  {label}: {render_element(value)}")
    return EXIT_VERIFICATION


def _cmd_bch(args) -> int:
    doc = _load_validated(args.file)
    algebra = freealg.tensor_envelope(doc.spec)
    x = doc.word_element(args.x, algebra)
    y = doc.word_element(args.y, algebra)
    result = gauge.bch(x, y)
    print(render_word_element(result))
    return EXIT_OK


def _cmd_trees(args) -> int:
    if args.planar:
        grouped = trees.enumerate_planar(args.max_vertices, args.arity_cap)
        for n in sorted(grouped):
            coeff = Fraction((-1) ** n, _factorial(n))
            for tree in grouped[n]:
                labs = trees.labellings(tree, n)
                print(
                    f"n={n} labellings={len(labs)} coeff={coeff} "
                    f"tree={tree.render()}"
                )
        return EXIT_OK
    grouped = trees.enumerate_trees(args.max_vertices, args.arity_cap)
    for n in sorted(grouped):
        for tree in grouped[n]:
            j_vec = ",".join(str(j) for j in tree.xi_counts())
            print(
                f"n={n} r={trees.monotone_count(tree)} j=[{j_vec}] "
                f"coeff={trees.tree_coefficient(tree)} tree={tree.render()}"
            )
    return EXIT_OK


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _cmd_ls_interval(args) -> int:
    pres = gauge.ls_interval(args.weight)
    spec = pres.spec
    print(f"generators ({len(spec.generators)}):")
    for gen in spec.generators:
        print(f"  {gen.name} degree {gen.degree} weight {gen.weight}")
    print("differential:")
    for gen in spec.generators:
        image = spec.table.get((1, (gen.name,)))
        if image is not None:
            print(f"  d({gen.name}) = {render_element(image)}")
    if not args.verify:
        return EXIT_OK
    report = gauge.verify_ls(args.weight)
    for name, ok, residue in report.checks:
        line = f"{name}: {'PASS' if ok else 'FAIL'}"
        if not ok and residue:
            line += f" ({residue})"
        print(line)
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def _cmd_sullivan(args) -> int:
    doc = _load_validated(args.file)
    spec = doc.spec
    xi = doc.graded_element(args.element)
    x = doc.graded_element(args.by)
    path, report = gauge.sullivan_witness(spec, x, xi)
    for k in sorted(path.t_part):
        print(f"t^{k}: {render_element(path.t_part[k])}")
    for k in sorted(path.dt_part):
        print(f"t^{k} dt: {render_element(path.dt_part[k])}")
    print(f"defect zero: {'yes' if report.defect_zero else 'no'}")
    print(f"endpoint t=0: {render_element(path.at(0))}")
    print(f"endpoint t=1: {render_element(path.at(1))}")
    print(f"sullivan: {'PASS' if report.ok else 'FAIL'}")
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcgauge",
        description=(
            "Exact gauge computations for Maurer-Cartan elements in "
            "weight-nilpotent graded algebras."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the structure identities of a file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("mc-check", help="evaluate the Maurer-Cartan defect")
    p.add_argument("file")
    p.add_argument("--element", required=True)
    p.set_defaults(func=_cmd_mc_check)

    p = sub.add_parser("gauge", help="apply the gauge action by one method")
    p.add_argument("file")
    p.add_argument("--element", required=True)
    p.add_argument("--by", required=True)
    p.add_argument(
        "--method",
        required=True,
        choices=("closed", "trees", "exp", "cylinder", "dga"),
    )
    p.set_defaults(func=_cmd_gauge)

    p = sub.add_parser("gauge-compare", help="run all applicable methods and compare")
    p.add_argument("file")
    p.add_argument("--element", required=True)
    p.add_argument("--by", required=True)
    p.set_defaults(func=_cmd_gauge_compare)

    p = sub.add_parser("bch", help="Baker-Campbell-Hausdorff product of two elements")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=_cmd_bch)

    p = sub.add_parser("trees", help="list the trees of the gauge tree sum")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--arity-cap", type=int, required=True)
    p.add_argument("--planar", action="store_true")
    p.set_defaults(func=_cmd_trees)

    p = sub.add_parser("ls-interval", help="present the Lawrence-Sullivan interval")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_ls_interval)

    p = sub.add_parser("sullivan", help="construct a polynomial gauge homotopy")
    p.add_argument("file")
    p.add_argument("--element", required=True)
    p.add_argument("--by", required=True)
    p.set_defaults(func=_cmd_sullivan)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the input-error code
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, AlgebraError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
