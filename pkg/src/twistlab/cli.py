"""Command-line front end.

Every subcommand prints one JSON report
``{command, inputs, verdict, certificates, timing, version}``.  Exit codes:
0 computed, 2 input error, 3 Unknown verdict (search budget exhausted).
``--verify`` re-checks the certificate in the report before printing it.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import __version__
from .adjacency import AdjacencyClaim, fibered_dichotomy, genus_bound, load_table
from .catalog import catalog_names, get_scenario, load_scenario, scenario_from_json, scenario_to_json
from .errors import ParseError, TwistlabError
from .homology import HomologyClass, commutator_obstruction, kotschick_bound, transvection, twist_homology
from .models import default_budget, monodromy_conjugacy_filter, nugatory_analysis
from .words import CyclicWord, dehn_reduce, disc_bound_test, reduce


class VerificationError(Exception):
    pass


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise VerificationError(what)


def _vector(text: str, genus: int) -> HomologyClass:
    try:
        coords = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"bad homology vector {text!r}") from None
    return HomologyClass(genus, coords)


# Each handler returns (inputs, verdict, certificates, verifier).
Result = tuple[dict[str, Any], Any, dict[str, Any], Callable[[], None]]


def cmd_reduce(args: argparse.Namespace) -> Result:
    w = CyclicWord.parse(args.word)
    r = reduce(w)

    def verify() -> None:
        again = CyclicWord.parse(str(r))
        _check(again == r and again.is_reduced, "reduced word is not reduced")
        _check(reduce(again) == r, "reduction is not idempotent")

    return {"word": args.word}, str(r), {"input_length": len(w), "output_length": len(r)}, verify


def cmd_disc_test(args: argparse.Namespace) -> Result:
    s = load_scenario(args.scenario)
    y = s.atlas.curve(args.curve)
    result = disc_bound_test(s.alphabet, y)
    reduced = reduce(y.system_word)

    def verify() -> None:
        _check(result == (len(reduce(CyclicWord.parse(str(reduced)))) == 0), "disc verdict disagrees with word")

    return (
        {"scenario": args.scenario, "curve": args.curve},
        result,
        {"system_word": str(y.system_word), "reduced_word": str(reduced)},
        verify,
    )


def cmd_essential(args: argparse.Namespace) -> Result:
    w = CyclicWord.parse(args.word)
    reduced = dehn_reduce(args.genus, w)
    verdict = "Trivial" if not reduced.letters else "Essential"

    def verify() -> None:
        _check(dehn_reduce(args.genus, reduced) == reduced, "certificate word is not Dehn-reduced")
        _check((verdict == "Trivial") == (len(reduced) == 0), "verdict disagrees with certificate")

    return {"genus": args.genus, "word": args.word}, verdict, {"dehn_reduced_word": str(reduced)}, verify


def cmd_twist(args: argparse.Namespace) -> Result:
    a = _vector(args.a, args.genus)
    b = _vector(args.b, args.genus)
    image = twist_homology(a, args.q, b)

    def verify() -> None:
        _check(transvection(a, args.q).act(b) == image, "matrix action disagrees with the formula")

    return (
        {"genus": args.genus, "a": list(a.coords), "q": args.q, "b": list(b.coords)},
        list(image.coords),
        {"matrix": [list(r) for r in transvection(a, args.q).matrix]},
        verify,
    )


def cmd_bound(args: argparse.Namespace) -> Result:
    value = kotschick_bound(args.k, args.m, args.q)

    def verify() -> None:
        _check(value == Fraction(18 * args.k - 6 + args.q * args.m, 18 * args.k - 6), "bound recomputation differs")

    return {"k": args.k, "m": args.m, "q": args.q}, str(value), {"denominator": 18 * args.k - 6}, verify


def cmd_obstruct(args: argparse.Namespace) -> Result:
    v = commutator_obstruction(args.k, args.m, args.q, args.cl, not args.mixed_signs, not args.inessential)

    def verify() -> None:
        if v.kind == "Contradiction":
            _check(v.bound is not None and v.bound > args.cl, "contradiction without a larger bound")
            _check(v.bound == kotschick_bound(args.k, args.m, abs(args.q)), "bound recomputation differs")

    inputs = {
        "k": args.k,
        "m": args.m,
        "q": args.q,
        "cl": args.cl,
        "mixed_signs": args.mixed_signs,
        "inessential": args.inessential,
    }
    certs = {"bound": None if v.bound is None else str(v.bound), "detail": v.detail}
    return inputs, v.kind, certs, verify


def cmd_nugatory(args: argparse.Namespace) -> Result:
    budget = args.budget if args.budget is not None else default_budget()
    s = load_scenario(args.scenario)
    report = nugatory_analysis(s, args.circle, args.q, budget)

    def verify() -> None:
        w = report.witness or {}
        if report.verdict == "Nugatory":
            if w["kind"] == "disc-fiber":
                _check(s.model.fiber_genus == 0, "fiber is not a disc")
            elif w["kind"] == "disc-bound":
                _check(not reduce(s.atlas.curve(w["curve"]).system_word).letters, "image word is not trivial")
            else:
                curve = s.atlas.curve(w["curve"])
                _check(curve.pi1_word is not None, "no word to check")
                _check(not dehn_reduce(s.model.surface_genus, curve.pi1_word).letters, "word is not trivial")
        elif report.verdict == "Obstructed":
            L, _ = s.model.circle(args.circle)
            g = s.model.model_map
            case_a = w["caseA"]
            if case_a["step"] == "caseA":
                filt = monodromy_conjugacy_filter(g * transvection(L.homology, -args.q), g)
                _check(filt.kind == "DistinctCertified", "conjugacy invariants agree")
            else:
                _check(Fraction(case_a["bound"]) > 1, "bound does not exceed 1")
            gl = s.atlas.curve(w["caseB"]["curve"])
            _check(bool(reduce(gl.system_word).letters), "image curve bounds a disc")

    inputs = {"scenario": args.scenario, "circle": args.circle, "q": args.q, "budget": budget}
    certs = {"witness": report.witness, "trace": list(report.trace)}
    return inputs, report.verdict, certs, verify


def cmd_adjacency(args: argparse.Namespace) -> Result:
    table = load_table(args.table)
    try:
        source, target = table[args.source], table[args.target]
    except KeyError as exc:
        raise ParseError(f"knot {exc.args[0]!r} is not in the table") from None
    claim = AdjacencyClaim(source, target, args.n)
    verdict = fibered_dichotomy(claim)
    bound = genus_bound(source.genus, target.genus)

    def verify() -> None:
        _check(bound == max(source.genus, target.genus), "genus bound recomputation differs")
        if verdict == "Inconsistent":
            _check(source.genus <= target.genus and source.name != target.name, "inconsistency not justified")
        if verdict == "GenusGreaterHolds":
            _check(source.genus > target.genus, "genus inequality fails")

    inputs = {"table": args.table, "source": args.source, "target": args.target, "n": args.n}
    certs = {"source_genus": source.genus, "target_genus": target.genus, "target_fibered": target.fibered, "genus_bound": bound}
    return inputs, verdict, certs, verify


def cmd_catalog(args: argparse.Namespace) -> Result:
    names = catalog_names()

    def verify() -> None:
        for n in names:
            s = get_scenario(n)
            _check(scenario_from_json(scenario_to_json(s)) == s, f"{n} does not round-trip")

    return {}, names, {}, verify


def _build_parser() -> argparse.ArgumentParser:
    # Subparser flags default to SUPPRESS so they do not clobber flags given before the subcommand.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indent the JSON report")
    common.add_argument("--verify", action="store_true", default=argparse.SUPPRESS, help="re-check certificates")

    parser = argparse.ArgumentParser(prog="twistlab", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")
    parser.add_argument("--verify", action="store_true", help="re-check certificates")
    parser.add_argument("--version", action="version", version=f"twistlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="reduce a cyclic word")
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("disc-test", parents=[common], help="does a scenario curve bound a disc")
    p.add_argument("scenario")
    p.add_argument("curve")
    p.set_defaults(func=cmd_disc_test)

    p = sub.add_parser("essential", parents=[common], help="Dehn's algorithm on a surface word")
    p.add_argument("genus", type=int)
    p.add_argument("word")
    p.set_defaults(func=cmd_essential)

    p = sub.add_parser("twist", parents=[common], help="T_a^q(b) on homology")
    p.add_argument("genus", type=int)
    p.add_argument("a", help="comma-separated coordinates")
    p.add_argument("q", type=int)
    p.add_argument("b", help="comma-separated coordinates")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("bound", parents=[common], help="commutator length lower bound")
    for name in ("k", "m", "q"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("obstruct", parents=[common], help="commutator obstruction")
    for name in ("k", "m", "q", "cl"):
        p.add_argument(name, type=int)
    p.add_argument("--mixed-signs", action="store_true")
    p.add_argument("--inessential", action="store_true", help="some twist curve may be inessential")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("nugatory", parents=[common], help="analyse a crossing change")
    p.add_argument("scenario")
    p.add_argument("circle")
    p.add_argument("q", type=int)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_nugatory)

    p = sub.add_parser("adjacency", parents=[common], help="n-adjacency dichotomy")
    p.add_argument("table", help="knot table file or 'builtin'")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_adjacency)

    p = sub.add_parser("catalog", parents=[common], help="list or emit built-in scenarios")
    p.add_argument("--emit", metavar="NAME")
    p.set_defaults(func=cmd_catalog)
    return parser


def _dump(obj: Any, pretty: bool) -> str:
    return json.dumps(obj, sort_keys=True, indent=2 if pretty else None, ensure_ascii=False)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog" and args.emit:
            s = get_scenario(args.emit)
            doc = scenario_to_json(s)
            if args.verify and scenario_from_json(doc) != s:
                raise VerificationError("emitted scenario does not round-trip")
            print(_dump(doc, args.pretty))
            return 0
        start = time.perf_counter()
        inputs, verdict, certs, verify = args.func(args)
        elapsed = time.perf_counter() - start
        if args.verify:
            verify()
    except TwistlabError as exc:
        print(f"twistlab: error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"twistlab: verification failed: {exc}", file=sys.stderr)
        return 1
    report = {
        "command": args.command,
        "inputs": inputs,
        "verdict": verdict,
        "certificates": certs,
        "timing": {"seconds": round(elapsed, 6)},
        "version": __version__,
    }
    if args.verify:
        report["verified"] = True
    print(_dump(report, args.pretty))
    return 3 if verdict == "Unknown" else 0


if __name__ == "__main__":
    raise SystemExit(main())
