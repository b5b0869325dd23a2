"""Command-line front end: `circlerig <command> ...`."""

import argparse
import json
import logging
import random
import sys
from typing import Any, Optional, Sequence

from circlerig.deform.bending import (
    chain_path,
    curve_flow,
    nonseparating_path,
    scaled_flow,
    separating_path,
)
from circlerig.deform.monitor import monitor_path, uniform_samples
from circlerig.homeo.classify import classify
from circlerig.representation import representation as reps
from circlerig.representation.euler import detect_fuchsian_torus, pants_euler, subsurface_euler
from circlerig.representation.fuchsian import fuchsian_closed, fuchsian_once_punctured_torus, random_representation
from circlerig.representation.orders import verify_chain_order, verify_separation
from circlerig.representation.representation import Representation, evaluate_word, evaluate_word_lift
from circlerig.rotnum.enclosure import rotation_number, translation_number
from circlerig.shared_libraries import config
from circlerig.shared_libraries.errors import CircleRigError, ConfigError, InvalidMap, InvalidWord, ToleranceError
from circlerig.shared_libraries.numeric import round_report
from circlerig.suite import CHECKS, run_suite
from circlerig.surface import words
from circlerig.surface.fixtures import builtin_chain_genus2
from circlerig.surface.pants import standard_pants_decomposition
from circlerig.surface.words import Word, parse_word
from circlerig.svg import fixed_point_diagram

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_TOLERANCE = 3

CHECK_NAMES = ("chain-order", "separation", "pants-bound", "additivity", "fuchsian-torus")


class UsageError(Exception):
    """Bad command-line input; reported with exit code 1."""


def _rounded(value: Any) -> Any:
    if isinstance(value, float):
        return round_report(value)
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    return value


def dumps(record: Any, rounded: bool = True) -> str:
    """Deterministic JSON: sorted keys, report floats at 12 significant digits."""
    return json.dumps(_rounded(record) if rounded else record, sort_keys=True, indent=2)


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        print(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e}") from e


def load_representation(path: str, tol: Optional[float] = None) -> Representation:
    try:
        with open(path, "r", encoding="utf-8") as f:
            record = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read representation {path}: {e}") from e
    try:
        return reps.representation_from_json(record, tol)
    except InvalidMap as e:
        raise UsageError(f"{path}: {e}") from e


def _parse_words(texts: Sequence[str], genus: Optional[int]) -> list[Word]:
    return [parse_word(t, genus) for t in texts if t.strip()]


def _read_probes(path: Optional[str], genus: Optional[int]) -> list[Word]:
    if path is None:
        return []
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line.split("#", 1)[0] for line in f]
    except OSError as e:
        raise UsageError(f"cannot read probes {path}: {e}") from e
    return _parse_words(lines, genus)


def _split_list(text: Optional[str]) -> list[str]:
    if not text:
        return []
    return [item.strip() for item in text.split(",") if item.strip()]


# Commands


def cmd_construct(args: argparse.Namespace) -> int:
    if args.kind == "fuchsian":
        rep = fuchsian_closed(args.genus)
    elif args.kind == "torus":
        rep = fuchsian_once_punctured_torus(args.lam)
    elif args.kind == "trivial":
        rep = reps.trivial(args.genus)
    else:
        rep = random_representation(random.Random(config.seed() if args.seed is None else args.seed), args.genus)
    _write(dumps(reps.representation_to_json(rep), rounded=False), args.output)
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace) -> int:
    rep = load_representation(args.input)
    probes = _read_probes(args.probes, rep.genus)
    if rep.euler is not None:
        print(f"eu = {rep.euler}")
    else:
        print("eu = n/a (free group)")
    print(f"relator: {rep.relator_status}")
    report: dict[str, Any] = {"eu": rep.euler, "generators": {}, "probes": {}}
    for name in rep.generators:
        cls = classify(rep[name], args.tol)
        rot = rotation_number(rep[name], args.tol)
        print(f"{name}: {cls.describe()}  rot in {rot.describe()}")
        report["generators"][name] = {"class": cls.to_json(), "rot": rot.to_json()}
    for w in probes:
        cls = classify(evaluate_word(rep, w), args.tol)
        rot = translation_number(evaluate_word_lift(rep, w), args.tol)
        print(f"{w}: {cls.describe()}  rot~ in {rot.describe()}")
        report["probes"][str(w)] = {"class": cls.to_json(), "rot": rot.to_json()}
    if args.json:
        _write(dumps(report), args.json)
    return EXIT_OK


def cmd_bend(args: argparse.Namespace) -> int:
    rep = load_representation(args.input)
    genus = rep.genus
    curve = parse_word(args.curve, genus) if args.curve else None
    if args.chain_index is not None:
        chain = builtin_chain_genus2()
        flow = scaled_flow(curve_flow(rep, chain.words[args.chain_index - 1]), args.twist)
        path = chain_path(rep, chain, args.chain_index, flow)
        curve = chain.words[args.chain_index - 1]
    elif curve is None:
        raise UsageError("bend needs --curve or --chain-index")
    elif args.partner:
        flow = scaled_flow(curve_flow(rep, curve), args.twist)
        path = nonseparating_path(rep, curve, parse_word(args.partner, genus), flow)
    elif args.b_side:
        flow = scaled_flow(curve_flow(rep, curve), args.twist)
        path = separating_path(rep, curve, _split_list(args.b_side), flow)
    else:
        raise UsageError("bend along a curve needs --partner or --b-side")
    probes = [curve] + _parse_words(_split_list(args.probes), genus)
    report = monitor_path(path, probes, uniform_samples(args.samples), args.tol)
    if args.report:
        _write(report.to_csv(), args.report)
    if args.json:
        _write(dumps(report.to_json()), args.json)
    euler = report.records[0].euler if report.records else None
    print(f"{path.kind} along {curve}: {len(report.records)} samples, eu = {euler}")
    return EXIT_OK


def _verify(rep: Representation, check: str, args: argparse.Namespace) -> tuple[bool, dict]:
    tol = args.tol
    if check == "chain-order":
        chain = builtin_chain_genus2()
        return verify_chain_order(rep, chain, tol), {"chain": chain.to_json()}
    if check == "separation":
        if args.a and args.b:
            pairs = [(parse_word(args.a, rep.genus), parse_word(args.b, rep.genus))]
        else:
            chain = builtin_chain_genus2()
            pairs = list(zip(chain.words, chain.words[1:]))
        results = {f"{u} | {v}": verify_separation(rep, u, v, tol) for u, v in pairs}
        return all(results.values()), {"pairs": results}
    if check == "pants-bound":
        decomposition = standard_pants_decomposition(rep.presentation)
        bounds = {p.label: pants_euler(rep, p, tol) for p in decomposition.pants}
        passed = all(b.lo >= -1 - tol and b.hi <= 1 + tol for b in bounds.values())
        return passed, {"pants": {label: b.to_json() for label, b in bounds.items()}}
    if check == "additivity":
        total = subsurface_euler(rep, standard_pants_decomposition(rep.presentation), tol)
        return total.contains(rep.euler), {"eu": rep.euler, "sum": total.to_json()}
    found = detect_fuchsian_torus(rep, words.handle_pairs(rep.presentation), tol)
    return found is not None, {"torus": None if found is None else [str(found[0]), str(found[1])]}


def cmd_verify(args: argparse.Namespace) -> int:
    rep = load_representation(args.input)
    if rep.presentation is None and args.check != "separation":
        raise UsageError(f"--check {args.check} needs a surface-group representation")
    passed, certificate = _verify(rep, args.check, args)
    print(f"{args.check}: {'pass' if passed else 'fail'}")
    print(dumps(certificate))
    return EXIT_OK if passed else EXIT_FAILED


def cmd_suite(args: argparse.Namespace) -> int:
    names = _split_list(args.only) or None
    if names:
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise UsageError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    results = run_suite(names, workers=args.workers, seed=args.seed)
    for result in results:
        print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    if args.json:
        _write(dumps([r.to_json() for r in results]), args.json)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def cmd_svg(args: argparse.Namespace) -> int:
    rep = load_representation(args.input)
    ws = _parse_words(_split_list(args.words), rep.genus)
    if not ws:
        raise UsageError("--words needs at least one word")
    diagram = fixed_point_diagram(rep, ws)
    _write(diagram.render(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlerig", description="Invariants of surface-group actions on the circle."
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    construct = sub.add_parser("construct", help="write a representation file")
    construct.add_argument("--kind", choices=["fuchsian", "torus", "trivial", "random"], default="fuchsian")
    construct.add_argument("--genus", type=int, default=2)
    construct.add_argument("--lam", type=float, default=3.0, help="eigenvalue of a1 for --kind torus")
    construct.add_argument("--seed", type=int, default=None, help="seed for --kind random")
    construct.add_argument("-o", dest="output", default=None, help="output file (stdout by default)")
    construct.set_defaults(handler=cmd_construct)

    invariants = sub.add_parser("invariants", help="Euler number, classes and rotation numbers")
    invariants.add_argument("-i", dest="input", required=True)
    invariants.add_argument("--probes", default=None, help="file with one word per line")
    invariants.add_argument("--json", default=None, help="also write a JSON report")
    invariants.set_defaults(handler=cmd_invariants)

    bend = sub.add_parser("bend", help="monitor invariants along a bending path")
    bend.add_argument("-i", dest="input", required=True)
    bend.add_argument("--curve", default=None, help="the bending curve")
    bend.add_argument("--partner", default=None, help="generator crossing the curve once")
    bend.add_argument("--b-side", default=None, help="comma-separated generators moved by a separating bend")
    bend.add_argument("--chain-index", type=int, default=None, help="bend along an element of the built-in chain")
    bend.add_argument("--twist", type=float, default=1.0, help="flow time reached at t = 1")
    bend.add_argument("--probes", default=None, help="comma-separated extra probe words")
    bend.add_argument("--samples", type=int, default=33)
    bend.add_argument("--report", default=None, help="CSV report file")
    bend.add_argument("--json", default=None, help="JSON report file")
    bend.set_defaults(handler=cmd_bend)

    verify = sub.add_parser("verify", help="check an order law or Euler-number identity")
    verify.add_argument("-i", dest="input", required=True)
    verify.add_argument("--check", choices=CHECK_NAMES, required=True)
    verify.add_argument("--a", default=None, help="first word for --check separation")
    verify.add_argument("--b", default=None, help="second word for --check separation")
    verify.set_defaults(handler=cmd_verify)

    suite = sub.add_parser("suite", help="run the acceptance battery")
    suite.add_argument("--only", default=None, help="comma-separated check names")
    suite.add_argument("--workers", type=int, default=4)
    suite.add_argument("--seed", type=int, default=None)
    suite.add_argument("--json", default=None)
    suite.set_defaults(handler=cmd_suite)

    svg = sub.add_parser("svg", help="draw fixed points on the circle")
    svg.add_argument("-i", dest="input", required=True)
    svg.add_argument("--words", required=True, help="comma-separated words")
    svg.add_argument("-o", dest="output", default=None)
    svg.set_defaults(handler=cmd_svg)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.tol = config.default_tol()
        return args.handler(args)
    except (UsageError, ConfigError, InvalidWord) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceError as e:
        print(f"tolerance not reached: {e}", file=sys.stderr)
        return EXIT_TOLERANCE
    except CircleRigError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
