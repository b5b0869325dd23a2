"""Acceptance battery run by `circlerig suite`.

Each check builds its own fixtures from a seeded random.Random, so checks are
independent and may run on worker threads; results are reported by name.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import logging
import math
import random
from typing import Callable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from circlerig.deform.bending import (
    bend_along_chain,
    curve_flow,
    nonseparating_path,
    scaled_flow,
    separating_path,
)
from circlerig.deform.monitor import monitor_path
from circlerig.homeo import lifts
from circlerig.homeo.blowup import denjoy_blowup
from circlerig.homeo.classify import classify
from circlerig.homeo.contraction import contraction_approach, contraction_fixed_point, find_contraction_power
from circlerig.representation import representation as reps
from circlerig.representation.euler import detect_fuchsian_torus, commutator_translation, subsurface_euler
from circlerig.representation.fuchsian import fuchsian_closed, fuchsian_once_punctured_torus, random_representation
from circlerig.representation.orders import verify_chain_order, verify_separation
from circlerig.representation.representation import evaluate_word
from circlerig.rotnum.enclosure import rotation_number, translation_number
from circlerig.shared_libraries import config
from circlerig.shared_libraries.errors import CircleRigError, ToleranceNotReached
from circlerig.shared_libraries.numeric import fmt
from circlerig.shared_libraries.types import Arc
from circlerig.surface import words
from circlerig.surface.chains import dehn_twist
from circlerig.surface.fixtures import builtin_chain_genus2, four_holed_sphere_genus2
from circlerig.surface.pants import standard_pants_decomposition
from circlerig.surface.words import SurfacePresentation

_logger = logging.getLogger(__name__)

ADDITIVITY_WIDTH = 1e-6
COMMUTATOR_ITER = 2**12


class CheckResult(BaseModel):
    """Outcome of one acceptance check."""
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str = Field(default="", description="Certificates or the reason for failure.")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def check_fuchsian_euler(rng: random.Random) -> str:
    values = []
    for genus in (2, 3, 4):
        eu = fuchsian_closed(genus).euler
        if eu != 2 - 2 * genus:
            raise AssertionError(f"genus {genus}: eu = {eu}")
        values.append(f"g={genus}: eu={eu}")
    return "; ".join(values)


def _random_sl2(rng: random.Random) -> list[list[float]]:
    a, b, c, d = (rng.gauss(0.0, 1.0) for _ in range(4))
    det = a * d - b * c
    if det < 0:
        a, c, det = -a, -c, -det
    s = math.sqrt(det)
    return [[a / s, b / s], [c / s, d / s]]


def _random_pair(rng: random.Random, kind: str):
    if kind == "pl":
        return lifts.random_pl(rng, rng.randint(1, 3)), lifts.random_pl(rng, rng.randint(1, 3))
    return lifts.mobius(_random_sl2(rng)), lifts.mobius(_random_sl2(rng))


def check_milnor_wood(rng: random.Random, reps_count: int = 200, commutators: int = 500) -> str:
    seen = set()
    for _ in range(reps_count):
        eu = random_representation(rng).euler
        if abs(eu) > 2:
            raise AssertionError(f"random representation with eu = {eu}")
        seen.add(eu)
    if len(seen) < 2:
        raise AssertionError(f"random representations only reach eu in {sorted(seen)}")
    tol = config.default_tol()
    for i in range(commutators):
        f, g = _random_pair(rng, "pl" if i % 2 else "mobius")
        lifted = lifts.compose_all([lifts.invert(g), lifts.invert(f), g, f])
        try:
            bound = translation_number(lifted, tol, COMMUTATOR_ITER)
        except ToleranceNotReached as e:
            bound = e.best
        if bound.lo < -1 - tol or bound.hi > 1 + tol:
            raise AssertionError(f"commutator translation {bound.describe()} outside [-1, 1]")
    return f"eu in {sorted(seen)} over {reps_count}; {commutators} commutators within [-1, 1]"


def check_additivity(rng: random.Random) -> str:
    parts = []
    for genus in (2, 3):
        rep = fuchsian_closed(genus)
        total = subsurface_euler(rep, standard_pants_decomposition(SurfacePresentation(genus=genus)))
        if not total.contains(rep.euler) or total.width > ADDITIVITY_WIDTH:
            raise AssertionError(f"genus {genus}: pants sum {total.describe()} vs eu {rep.euler}")
        parts.append(f"g={genus}: {total.describe()}")
    rep = fuchsian_closed(2)
    first, second = (subsurface_euler(rep, d) for d in four_holed_sphere_genus2().decompositions)
    gap = abs(first.midpoint - second.midpoint)
    if gap > ADDITIVITY_WIDTH:
        raise AssertionError(f"elementary move changes eu_S by {fmt(gap)}")
    parts.append(f"elementary move gap {fmt(gap)}")
    return "; ".join(parts)


def check_four_holed_sphere(rng: random.Random) -> str:
    rep = fuchsian_closed(2)
    sphere = four_holed_sphere_genus2()
    for w in sphere.boundary:
        tag = classify(evaluate_word(rep, w)).tag
        if tag != "Hyperbolic":
            raise AssertionError(f"boundary {w} is {tag}")
    bounds = [subsurface_euler(rep, d) for d in sphere.decompositions]
    for bound in bounds:
        if not bound.contains(-2, ADDITIVITY_WIDTH):
            raise AssertionError(f"eu_S = {bound.describe()} misses -2")
    return "eu_S in " + ", ".join(b.describe() for b in bounds)


def check_order_laws(rng: random.Random, conjugates: int = 10) -> str:
    chain = builtin_chain_genus2()
    base = fuchsian_closed(2)
    samples = [base] + [reps.conjugate(base, lifts.random_pl(rng, 3)) for _ in range(conjugates)]
    for rep in samples:
        if not verify_chain_order(rep, chain):
            raise AssertionError("chain fixed points out of order")
        for u, v in zip(chain.words, chain.words[1:]):
            if not verify_separation(rep, u, v):
                raise AssertionError(f"Fix({u}) does not separate Fix({v})")
    return f"chain order and separation hold on {len(samples)} representations"


def check_fuchsian_torus(rng: random.Random) -> str:
    torus = fuchsian_once_punctured_torus(3.0)
    value = commutator_translation(torus, words.generator("a1"), words.generator("b1"))
    if value.exact is None or abs(value.exact) != 1:
        raise AssertionError(f"punctured torus commutator {value.describe()}")
    rep = fuchsian_closed(2)
    found = detect_fuchsian_torus(rep, words.handle_pairs(rep.presentation))
    if found is None:
        raise AssertionError("no Fuchsian torus among the handles")
    return f"rot~[a1, b1] = {value.exact}; torus on ({found[0]}, {found[1]})"


def check_bending(rng: random.Random) -> str:
    rep = fuchsian_closed(2)
    pres = rep.presentation
    a1, b1 = pres.a(1), pres.b(1)
    c = pres.handle_commutator(1)
    probes = [a1, b1, c]
    paths = [
        separating_path(rep, c, ["a2", "b2"], curve_flow(rep, c)),
        nonseparating_path(rep, a1, b1, curve_flow(rep, a1)),
    ]
    for path in paths:
        report = monitor_path(path, probes)
        if any(r.euler != -2 for r in report.records):
            raise AssertionError(f"{path.kind}: eu leaves -2")
    chain = builtin_chain_genus2()
    worst = 0.0
    for i in range(1, chain.length + 1):
        flow = curve_flow(rep, chain.words[i - 1])
        for n in (-2, -1, 1, 2):
            bent = bend_along_chain(rep, chain, i, scaled_flow(flow, n), 1.0)
            twist = dehn_twist(chain, i, n)
            for w in chain.words:
                d = lifts.circle_distance(evaluate_word(bent, w), evaluate_word(rep, twist.apply(w)))
                worst = max(worst, d)
    if worst > config.default_tol():
        raise AssertionError(f"twist endpoint differs by {fmt(worst)}")
    return f"eu constant on {len(paths)} paths; twist endpoints within {fmt(worst)}"


def _conjugated_rotation(rng: random.Random, q: int):
    p = rng.randrange(q)
    while math.gcd(p, q) != 1:
        p = rng.randrange(q)
    c = lifts.random_pl(rng, 3)
    return Fraction(p, q), c, lifts.conjugate(c, lifts.rotation(Fraction(p, q)))


def check_rotation_engine(rng: random.Random) -> str:
    count = 0
    for q in range(1, 65):
        for p in range(q):
            if math.gcd(p, q) != 1:
                continue
            bound = translation_number(lifts.rotation(Fraction(p, q)))
            if bound.exact != Fraction(p, q) or bound.witness is None:
                raise AssertionError(f"rotation {p}/{q}: {bound.describe()}")
            count += 1
    for _ in range(100):
        tau, _, f = _conjugated_rotation(rng, rng.randint(1, 12))
        bound = rotation_number(f)
        if not bound.contains(float(tau)):
            raise AssertionError(f"conjugated rotation {tau}: {bound.describe()}")
    for _ in range(20):
        q = rng.randint(2, 6)
        tau, c, f = _conjugated_rotation(rng, q)
        x = lifts.evaluate(c, Fraction(0)) % 1
        weights = [Fraction(rng.randint(1, 3), 16 * q) for _ in range(q)]
        blown = denjoy_blowup(f, x, q, weights)
        if rotation_number(blown.f_prime).exact != tau:
            raise AssertionError(f"blow-up changes rotation number {tau}")
    return f"{count} rational rotations certified; 100 conjugates and 20 blow-ups agree"


def _random_contraction_pair(rng: random.Random):
    lam = rng.uniform(2.0, 4.0)
    axis = lifts.rotation(rng.random())
    f = lifts.conjugate(axis, lifts.mobius([[lam, 0.0], [0.0, 1.0 / lam]]))
    theta = math.pi * rng.uniform(0.1, 0.4)
    g = lifts.mobius([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    return f, g


def check_contraction(rng: random.Random, pairs: int = 20) -> str:
    radius = 0.05
    powers = []
    for _ in range(pairs):
        f, g = _random_contraction_pair(rng)
        cls = classify(f)
        f_plus, f_minus = cls.attracting.value, cls.repelling.value
        g_inv_minus = float(lifts.evaluate(lifts.invert(g), f_minus)) % 1.0
        g_plus = float(lifts.evaluate(g, f_plus)) % 1.0
        n = find_contraction_power(
            f,
            g,
            Arc.around(f_minus, radius),
            Arc.around(f_plus, radius),
            Arc.around(g_inv_minus, radius),
            Arc.around(g_plus, radius),
        )
        alternative = contraction_fixed_point(f, g, n)
        if alternative.holds == "backward" or alternative.forward.tag != "Hyperbolic":
            raise AssertionError(f"f^{n} g is {alternative.forward.tag} once the containments hold")
        if not Arc.around(f_plus, radius).contains(alternative.forward.attracting.value):
            raise AssertionError(f"attracting point of f^{n} g lies outside U_+")
        records = contraction_approach(f, g, [5, 10, 20])
        for before, after in zip(records, records[1:]):
            if after.attracting_distance > before.attracting_distance + 1e-9:
                raise AssertionError(f"f^N g drifts away from f_+ at N={after.n}")
        powers.append(n)
    return f"containment powers {min(powers)}..{max(powers)} over {pairs} pairs"


CHECKS: dict[str, Callable[[random.Random], str]] = {
    "additivity": check_additivity,
    "bending": check_bending,
    "contraction": check_contraction,
    "four-holed-sphere": check_four_holed_sphere,
    "fuchsian-euler": check_fuchsian_euler,
    "fuchsian-torus": check_fuchsian_torus,
    "milnor-wood": check_milnor_wood,
    "order-laws": check_order_laws,
    "rotation-engine": check_rotation_engine,
}


def run_check(name: str, seed: int) -> CheckResult:
    rng = random.Random(f"{seed}:{name}")
    try:
        detail = CHECKS[name](rng)
    except (AssertionError, CircleRigError) as e:
        _logger.warning("check %s failed: %s", name, e)
        return CheckResult(name=name, passed=False, detail=f"{type(e).__name__}: {e}")
    return CheckResult(name=name, passed=True, detail=detail)


def run_suite(names: Optional[Sequence[str]] = None, workers: int = 4, seed: Optional[int] = None) -> list[CheckResult]:
    """Runs the named checks (all by default); results are sorted by name."""
    seed = config.seed() if seed is None else seed
    names = sorted(CHECKS if names is None else names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks {unknown}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda n: run_check(n, seed), names))
    return sorted(results, key=lambda r: r.name)
