"""``slimlat`` command line.

Inputs are lattice or diagram JSON given as a file path, ``-`` for stdin,
an inline JSON object, or a fixture name (``S7``, ``B4``, ``G23``, ...).
Reports go to stdout (or ``--out``) as sorted-key JSON.  Exit codes: 0 on
success or pass, 1 when a counterexample is found, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigInvalid, ParseError, SlimLatError
from .fixtures import NAMED
from .lattice import FiniteLattice

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


# -- input / output -----------------------------------------------------------

def _read_json(source: str) -> dict:
    if source in NAMED:
        return NAMED[source]().to_json()
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        path = Path(source)
        if not path.exists():
            raise ParseError(f"{source!r} is neither a file, inline JSON nor a fixture name "
                             f"({', '.join(sorted(NAMED))})")
        text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {source!r}: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "covers" not in data:
        raise ParseError('lattice JSON needs the keys "n" and "covers"')
    return data


def load_lattice(source: str, data: dict | None = None) -> FiniteLattice:
    if data is None:
        data = _read_json(source)
    try:
        return FiniteLattice.from_json(data)
    except (TypeError, KeyError) as exc:
        raise ParseError(f"malformed lattice JSON: {exc}") from None


def load_diagram(source: str):
    """The given diagram, or the inferred one when no ``upper_order`` is present."""
    from .diagram import PlanarDiagram, infer_diagram
    data = _read_json(source)
    if data.get("upper_order") is not None:
        return PlanarDiagram.from_json(data)
    return infer_diagram(load_lattice(source, data))


def _emit(args, payload) -> None:
    text = json.dumps(payload, sort_keys=True, default=_jsonable) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, bytes):
        return obj.hex()
    return str(obj)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise ConfigInvalid(f"expected comma-separated integers, got {text!r}") from None


# -- commands -----------------------------------------------------------------

def cmd_gen(args) -> int:
    from .enumerate import brute_force_universe, generate_universe
    if args.klass == "all-lattices":
        U = brute_force_universe(args.max_size)
    else:
        U = generate_universe(args.max_size, args.klass, certificates=args.certificates)
    if args.out:
        U.save(args.out)
        print(json.dumps({"class": U.klass, "max_size": U.max_size, "members": len(U),
                          "counts": U.counts(), "out": args.out}, sort_keys=True), file=sys.stderr)
    else:
        sys.stdout.write(json.dumps({"max_size": U.max_size, "class": U.klass}) + "\n")
        for m in U:
            sys.stdout.write(json.dumps(m.to_json(), sort_keys=True) + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    from .classify import classify
    from .lattice import is_semimodular, is_slim
    L = load_lattice(args.input)
    if is_slim(L) and is_semimodular(L):
        _emit(args, classify(L, load_diagram(args.input)).to_json())
    else:
        _emit(args, classify(L).to_json())
    return EXIT_OK


def cmd_certify(args) -> int:
    from .classify import grid_certificate
    _emit(args, grid_certificate(load_diagram(args.input)).to_json())
    return EXIT_OK


def cmd_fork(args) -> int:
    from .builders import add_fork
    from .diagram import FourCell, four_cells
    D = load_diagram(args.input)
    if args.cell:
        cell = FourCell(*_ints(args.cell))
    else:
        cells = four_cells(D)
        if not cells:
            raise ConfigInvalid("the diagram has no 4-cell")
        cell = cells[0]
    K, rec = add_fork(D, cell)
    _emit(args, {"diagram": K.to_json(), "fork": rec.to_json(), "inclusion": list(rec.new_of_old)})
    return EXIT_OK


def cmd_unfork(args) -> int:
    from .builders import remove_fork_once
    found = remove_fork_once(load_diagram(args.input))
    if found is None:
        _emit(args, {"diagram": None, "fork": None})
    else:
        reduced, rec = found
        _emit(args, {"diagram": reduced.to_json(), "fork": rec.to_json()})
    return EXIT_OK


def cmd_corner_rm(args) -> int:
    from .builders import remove_corner, remove_doubly_irreducible
    D = load_diagram(args.input)
    op = remove_doubly_irreducible if args.any_doubly_irreducible else remove_corner
    _emit(args, {"diagram": op(D, args.element).to_json()})
    return EXIT_OK


def cmd_corner_add(args) -> int:
    from .builders import add_corner_with_map
    found = add_corner_with_map(load_diagram(args.input), args.side, args.at)
    if found is None:
        _emit(args, {"diagram": None})
        return EXIT_COUNTEREXAMPLE
    ext, new_of_old = found
    n = ext.n - 1
    _emit(args, {"diagram": ext.to_json(), "inclusion": list(new_of_old[:n]), "added": new_of_old[n]})
    return EXIT_OK


def cmd_witness(args) -> int:
    from .builders import proper_extension_witness
    w = proper_extension_witness(load_diagram(args.input))
    _emit(args, {"witness": "maximal"} if w == "maximal" else {"witness": w.to_json()})
    return EXIT_OK


def cmd_congruences(args) -> int:
    from .congruence import all_congruences
    L = load_lattice(args.input)
    cons = all_congruences(L, max(args.max_size, L.n) if args.force else args.max_size)
    _emit(args, {"count": len(cons), "congruences": [c.blocks() for c in cons]})
    return EXIT_OK


def cmd_retract(args) -> int:
    from .congruence import boolean_retraction, two_block_retraction
    D = load_diagram(args.input)
    if args.two_block:
        rho = two_block_retraction(D, args.two_block)
    else:
        if args.u is None or args.v is None:
            raise ConfigInvalid("retract needs two complementary elements U V, or --two-block SIDE")
        rho = boolean_retraction(D, args.u, args.v)
    _emit(args, {"map": list(rho.image), "target": rho.target.to_json()})
    return EXIT_OK


def cmd_homs(args) -> int:
    from .maps import Category
    from .morphism import enumerate_homs
    L, K = load_lattice(args.source), load_lattice(args.target)
    found = []
    count = 0
    for f in enumerate_homs(L, K, Category.parse(args.cat), injective=args.injective):
        count += 1
        if args.limit is None or len(found) < args.limit:
            found.append(list(f.image))
    _emit(args, {"category": Category.parse(args.cat).value, "count": count, "maps": found})
    return EXIT_OK


def cmd_retract_search(args) -> int:
    from .maps import Category, LatticeMap
    from .morphism import find_retraction
    L, K = load_lattice(args.source), load_lattice(args.target)
    iota = LatticeMap(L, K, tuple(_ints(args.map)))
    rho = find_retraction(iota, Category.parse(args.cat))
    _emit(args, {"category": Category.parse(args.cat).value,
                 "retraction": None if rho is None else list(rho.image)})
    return EXIT_OK if rho is not None else EXIT_COUNTEREXAMPLE


def cmd_verdict(args) -> int:
    from .enumerate import generate_universe
    from .equations import algebraic_closedness_verdict
    from .maps import Category
    from .morphism import absolute_retract_verdict, builder_extensions, maximality_verdict
    cat = Category.parse(args.cat)
    D = load_diagram(args.input)
    L = D.lattice
    U = generate_universe(args.max_size)
    extra = builder_extensions(D)
    report = {"category": cat.value, "max_size": args.max_size, "n": L.n,
              "absolute_retract": absolute_retract_verdict(L, U, cat, extra).to_json()}
    holds = report["absolute_retract"]["holds"]
    if cat is Category.LEN:
        report["maximal"] = maximality_verdict(L, U, extra, diagram=D).to_json()
        holds = holds and report["maximal"]["holds"]
    if args.closed:
        v = algebraic_closedness_verdict(L, U.lattices() + extra, cat)
        report["algebraically_closed"] = v.to_json()
        holds = holds and v.holds
    _emit(args, report)
    return EXIT_OK if holds else EXIT_COUNTEREXAMPLE


def cmd_verify(args) -> int:
    from .suites import Context, run_suite
    ctx = Context(jobs=args.jobs, seed=args.seed)
    results = run_suite(args.suite, args.max_size, ctx, cat=args.cat)
    for r in results:
        print(r.line(), file=sys.stderr)
    passed = all(r.passed for r in results)
    _emit(args, {"suite": args.suite, "max_size": args.max_size, "seed": args.seed,
                 "passed": passed, "criteria": [r.to_json() for r in results]})
    return EXIT_OK if passed else EXIT_COUNTEREXAMPLE


def cmd_export(args) -> int:
    from .diagram import to_dot
    D = load_diagram(args.input)
    fmt = "dot" if args.dot else args.format
    text = to_dot(D) if fmt == "dot" else json.dumps(D.to_json(), sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .enumerate import CLASSES
    p = argparse.ArgumentParser(prog="slimlat", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"slimlat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, inputs=("input",)):
        sp = sub.add_parser(name, help=help_)
        for i in inputs:
            sp.add_argument(i, help="JSON file, '-', inline JSON or fixture name")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("gen", cmd_gen, "generate a universe as JSONL", inputs=())
    sp.add_argument("--max-size", type=int, required=True)
    sp.add_argument("--class", dest="klass", default="slim-semimodular", choices=CLASSES)
    sp.add_argument("--certificates", action="store_true", help="attach grid certificates")

    add("check", cmd_check, "classify a lattice")
    add("certify", cmd_certify, "grid certificate of a rectangular diagram")
    sp = add("fork", cmd_fork, "add a fork at a 4-cell")
    sp.add_argument("--cell", help="bottom,left,right,top (default: first cell)")
    add("unfork", cmd_unfork, "remove one fork")
    sp = add("corner-rm", cmd_corner_rm, "remove a corner")
    sp.add_argument("element", type=int)
    sp.add_argument("--any-doubly-irreducible", action="store_true",
                    help="remove any boundary doubly irreducible element, repairing covers")
    sp = add("corner-add", cmd_corner_add, "add a corner on a boundary chain")
    sp.add_argument("--side", choices=("left", "right"), required=True)
    sp.add_argument("--at", type=int, required=True, help="inner boundary element z")
    add("witness", cmd_witness, "one-element proper extension, or 'maximal'")
    sp = add("congruences", cmd_congruences, "list all congruences")
    sp.add_argument("--max-size", type=int, default=12)
    sp.add_argument("--force", action="store_true", help="ignore the size bound")
    sp = add("retract", cmd_retract, "four-block or two-block retraction")
    sp.add_argument("u", type=int, nargs="?")
    sp.add_argument("v", type=int, nargs="?")
    sp.add_argument("--two-block", choices=("left", "right"))
    sp = add("homs", cmd_homs, "enumerate homomorphisms", inputs=("source", "target"))
    sp.add_argument("--cat", default="all", choices=("all", "zo", "len"))
    sp.add_argument("--injective", action="store_true")
    sp.add_argument("--limit", type=int, default=100)
    sp = add("retract-search", cmd_retract_search, "search a retraction of an embedding",
             inputs=("source", "target"))
    sp.add_argument("--map", required=True, help="images of 0..n-1, comma separated")
    sp.add_argument("--cat", default="zo", choices=("all", "zo", "len"))
    sp = add("verdict", cmd_verdict, "universe-relative absolute retract / maximality verdict")
    sp.add_argument("--cat", default="len", choices=("zo", "len"))
    sp.add_argument("--max-size", type=int, default=12)
    sp.add_argument("--closed", action="store_true", help="also run the equation search")
    sp = add("verify", cmd_verify, "run an acceptance suite", inputs=())
    sp.add_argument("suite", choices=("thm-main", "prop-zo", "cor-closed", "lemmas-sec2"))
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--cat", choices=("zo", "len"), help="restrict the equation criterion")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("export", cmd_export, "export a diagram as DOT or JSON")
    sp.add_argument("--format", choices=("dot", "json"), default="json")
    sp.add_argument("--dot", action="store_true", help="shorthand for --format dot")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "jobs", 1) < 1:
            raise ConfigInvalid("--jobs must be at least 1")
        return args.func(args)
    except (SlimLatError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "witness", None) is not None:
            err["witness"] = exc.witness
        print(json.dumps(err, sort_keys=True, default=_jsonable), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
