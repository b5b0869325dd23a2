"""Bending deformations along separating curves, nonseparating curves and chain elements."""

import logging
from typing import Optional, Sequence

from circlerig.deform.monitor import DeformationPath
from circlerig.homeo import lifts
from circlerig.homeo.flows import Flow, one_parameter_flow
from circlerig.homeo.lifts import CircleHomeo
from circlerig.representation.representation import Representation, evaluate_word, new_representation
from circlerig.shared_libraries import config, constants
from circlerig.shared_libraries.errors import NotApplicable, NotCommuting, UnknownGenerator
from circlerig.surface import words
from circlerig.surface.chains import DirectedChain
from circlerig.surface.words import Word

_logger = logging.getLogger(__name__)


def curve_flow(rep: Representation, curve: Word, tol: Optional[float] = None) -> Flow:
    """The one-parameter group through rho(curve)."""
    return one_parameter_flow(evaluate_word(rep, curve), tol)


def scaled_flow(flow: Flow, n: float) -> Flow:
    """t -> flow(n t); with flow(1) = rho(c), its time-one map is rho(c)^n."""
    return flow.scaled(n)


def check_commutes(f: CircleHomeo, target: CircleHomeo, tol: float) -> None:
    """Raises NotCommuting unless f and target commute on a grid within tol."""
    error = lifts.circle_distance(
        lifts.compose(f, target), lifts.compose(target, f), constants.COMMUTE_GRID
    )
    if error > tol:
        raise NotCommuting(f"flow misses commuting with the curve by {error:.3g}")


def _require_presentation(rep: Representation) -> None:
    if rep.presentation is None:
        raise NotApplicable("bending needs a surface-group representation")


def bend_separating(
    rep: Representation,
    curve: Word,
    b_side: Sequence[str],
    flow: Flow,
    t: float,
    tol: Optional[float] = None,
) -> Representation:
    """rho_t = rho on the A-side generators and flow(t) rho flow(t)^-1 on the B side.

    Raises:
        NotCommuting: flow(t) does not commute with rho(curve).
        RelatorNotSatisfied: the splitting data does not fit the curve.
    """
    tol = config.default_tol() if tol is None else tol
    _require_presentation(rep)
    unknown = set(b_side) - set(rep.generators)
    if unknown:
        raise UnknownGenerator(f"B-side generators {sorted(unknown)} not in the representation")
    if t == 0:
        return rep
    f_t = flow(t)
    check_commutes(f_t, evaluate_word(rep, curve), tol)
    assignment = {
        name: lifts.conjugate(f_t, rep[name]) if name in b_side else rep[name] for name in rep.generators
    }
    return new_representation(rep.presentation, assignment, rep.tol)


def bend_nonseparating(
    rep: Representation,
    a: Word,
    b: Word,
    flow: Flow,
    t: float,
    tol: Optional[float] = None,
) -> Representation:
    """rho_t(b) = flow(t) rho(b); every other generator is unchanged.

    b must be a single generator and flow(t) must commute with rho(a).

    Raises:
        NotCommuting: flow(t) does not commute with rho(a).
        RelatorNotSatisfied: rho_t fails the relator.
    """
    tol = config.default_tol() if tol is None else tol
    _require_presentation(rep)
    if len(b.letters) != 1 or b.letters[0][1] != 1:
        raise NotApplicable(f"{b} is not a generator")
    name = b.letters[0][0]
    if name not in rep.generators:
        raise UnknownGenerator(f"{name} is not a generator of this representation")
    if t == 0:
        return rep
    f_t = flow(t)
    check_commutes(f_t, evaluate_word(rep, a), tol)
    assignment = dict(rep.assignment)
    assignment[name] = lifts.compose(f_t, rep[name])
    return new_representation(rep.presentation, assignment, rep.tol)


def bend_along_chain(
    rep: Representation,
    chain: DirectedChain,
    i: int,
    flow: Flow,
    t: float,
    tol: Optional[float] = None,
) -> Representation:
    """The bending along gamma_i that realizes the Dehn twist about it.

    gamma_{i-1} -> flow(t)^-1 rho(gamma_{i-1}) and gamma_{i+1} -> rho(gamma_{i+1}) flow(t);
    generators are rebuilt from the chain through its generator words. With
    flow(1) = rho(gamma_i)^N the endpoint is rho composed with dehn_twist(chain, i, N).

    Raises:
        NotApplicable: the chain does not express the generators.
        NotCommuting: flow(t) does not commute with rho(gamma_i).
    """
    tol = config.default_tol() if tol is None else tol
    _require_presentation(rep)
    if chain.generator_words is None:
        raise NotApplicable("the chain does not express the surface generators")
    if t == 0:
        return rep
    k = chain.length
    images = [evaluate_word(rep, w) for w in chain.words]
    f_t = flow(t)
    check_commutes(f_t, images[i - 1], tol)
    if i > 1:
        images[i - 2] = lifts.compose(lifts.invert(f_t), images[i - 2])
    if i < k:
        images[i] = lifts.compose(images[i], f_t)
    symbols = {f"g{j + 1}": image for j, image in enumerate(images)}
    assignment = {}
    for name, expr in chain.generator_words.items():
        parts = [lifts.power(symbols[s], e) for s, e in expr.letters]
        assignment[name] = lifts.compose_all(parts)
    return new_representation(rep.presentation, assignment, rep.tol)


def separating_path(rep: Representation, curve: Word, b_side: Sequence[str], flow: Flow) -> DeformationPath:
    return DeformationPath(
        base=rep,
        parameterization=lambda t: bend_separating(rep, curve, b_side, flow, t),
        kind="bend-separating",
        details={"curve": str(curve), "b_side": sorted(b_side)},
    )


def nonseparating_path(rep: Representation, a: Word, b: Word, flow: Flow) -> DeformationPath:
    """Bending path along a with partner b; the declared sign i(a, b) is recorded."""
    return DeformationPath(
        base=rep,
        parameterization=lambda t: bend_nonseparating(rep, a, b, flow, t),
        kind="bend-nonseparating",
        details={"curve": str(a), "partner": str(b), "sign": words.algebraic_intersection(a, b)},
    )


def chain_path(rep: Representation, chain: DirectedChain, i: int, flow: Flow) -> DeformationPath:
    return DeformationPath(
        base=rep,
        parameterization=lambda t: bend_along_chain(rep, chain, i, flow, t),
        kind="bend-chain",
        details={"curve": str(chain.words[i - 1]), "index": i},
    )
