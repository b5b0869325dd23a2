"""Fuchsian representations from the regular hyperbolic 4g-gon."""

import logging
import math
import random

import numpy as np

from circlerig.homeo import lifts
from circlerig.homeo.classify import classify
from circlerig.representation.representation import (
    Representation,
    conjugate,
    evaluate_word_lift,
    free_representation,
    new_representation,
    random_pl_representation,
    reflect,
)
from circlerig.shared_libraries import config
from circlerig.shared_libraries.errors import (
    ConstructionFailed,
    NotApplicable,
    NotDiscreteRange,
    RelatorNotSatisfied,
)
from circlerig.surface import words
from circlerig.surface.words import SurfacePresentation

_logger = logging.getLogger(__name__)


def _rot(theta: float) -> np.ndarray:
    return np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


def _flip(m: np.ndarray) -> np.ndarray:
    """Conjugate by diag(1, -1), the orientation reversal of the circle of directions."""
    return np.array([[m[0, 0], -m[0, 1]], [-m[1, 0], m[1, 1]]])


def side_pairings(genus: int) -> list[np.ndarray]:
    """The 4g hyperbolic side pairings g_j of the regular 4g-gon with angle sum 2 pi."""
    alpha = math.pi / (2 * genus)
    d = math.acosh(1.0 / math.tan(math.pi / (4 * genus)))
    stretch = np.diag([math.exp(d), math.exp(-d)])
    turn = _rot(math.pi / 2 - alpha)
    out = []
    for j in range(4 * genus):
        mu = (j + 0.5) * alpha
        translation = _rot(mu / 2) @ stretch @ _rot(-mu / 2)
        out.append(translation @ turn)
    return out


def fuchsian_matrices(genus: int) -> dict[str, np.ndarray]:
    """Generator matrices, oriented so that the Euler number is 2 - 2g."""
    g = side_pairings(genus)
    matrices = {}
    for i in range(genus):
        matrices[f"a{i + 1}"] = _flip(g[4 * i + 1])
        matrices[f"b{i + 1}"] = _flip(np.linalg.inv(g[4 * i]))
    return matrices


def fuchsian_closed(genus: int) -> Representation:
    """The standard Fuchsian representation of the genus-g surface group.

    Raises:
        ConstructionFailed: the relator or the Euler number does not check out.
    """
    pres = SurfacePresentation(genus=genus)
    assignment = {name: lifts.mobius(m) for name, m in fuchsian_matrices(genus).items()}
    try:
        rep = new_representation(pres, assignment, config.default_tol())
    except RelatorNotSatisfied as e:
        raise ConstructionFailed(f"genus {genus} side pairings fail the relator: {e}") from e
    if rep.euler != 2 - 2 * genus:
        raise ConstructionFailed(f"genus {genus} Fuchsian representation has eu {rep.euler}")
    for name in rep.generators:
        if classify(rep[name]).tag != "Hyperbolic":
            raise ConstructionFailed(f"{name} is not hyperbolic")
    _logger.debug("Fuchsian representation of genus %d built", genus)
    return rep


def fuchsian_once_punctured_torus(lam: float) -> Representation:
    """Free representation a1 -> diag(lam, 1/lam), b1 -> its conjugate by a quarter turn.

    Fix(a1) = {0, 1/2} and Fix(b1) = {1/4, 3/4}.

    Raises:
        NotDiscreteRange: the commutator is not hyperbolic.
    """
    if not lam > 1:
        raise NotDiscreteRange(f"lambda = {lam} must exceed 1")
    a, b = _torus_matrices(lam)
    rep = free_representation({"a1": lifts.mobius(a), "b1": lifts.mobius(b)})
    commutator = words.commutator(words.generator("a1"), words.generator("b1"))
    tr = float(np.trace(lifts.mobius_matrix(evaluate_word_lift(rep, commutator))))
    if abs(tr) <= 2.0:
        raise NotDiscreteRange(f"commutator trace {tr:.6g} is not hyperbolic for lambda = {lam}")
    _logger.debug("punctured torus lambda=%s: commutator trace %s", lam, tr)
    return rep


def _torus_matrices(lam: float) -> tuple[np.ndarray, np.ndarray]:
    a = np.diag([lam, 1.0 / lam])
    r = _rot(-math.pi / 4)
    return a, r @ a @ r.T


def _commutator_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[a, b] = b^-1 a^-1 b a as a matrix product in word order."""
    return np.linalg.inv(b) @ np.linalg.inv(a) @ b @ a


def _handle_with_commutator(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """SL2 matrices a, b with b^-1 a^-1 b a = h, for h of trace > 2.

    With h = q diag(mu, 1/mu) q^-1, b' = [[1, r], [r, mu]] for r^2 = mu - 1 has
    the trace of b' diag(mu, 1/mu), and a' carries one eigenbasis to the other.
    """
    eigenvalues, q = np.linalg.eig(h)
    order = np.argsort(-eigenvalues.real)
    mu = float(eigenvalues.real[order[0]])
    q = q.real[:, order]
    r = math.sqrt(mu - 1.0)
    b = np.array([[1.0, r], [r, mu]])
    trace = 1.0 + mu
    root = math.sqrt(trace * trace - 4.0)
    plus, minus = (trace + root) / 2, (trace - root) / 2
    p1 = np.array([[r, r], [plus - 1.0, minus - 1.0]])
    p2 = np.array([[r / mu, r / mu], [plus - mu, minus - mu]])
    a = p1 @ np.linalg.inv(p2)
    a = a / math.sqrt(np.linalg.det(a))
    q_inv = np.linalg.inv(q)
    return q @ a @ q_inv, q @ b @ q_inv


def odd_euler_genus2(lam: float = 3.0) -> Representation:
    """A genus-2 representation with Euler number -1.

    Handle 1 is the punctured-torus pair at lam, whose commutator C has trace
    below -2; handle 2 is chosen with SL2 commutator -C^-1, so the relator is -I
    in SL2 and the lifted relator is a translation by an odd integer.

    Raises:
        NotDiscreteRange: the first commutator is not hyperbolic.
        ConstructionFailed: the relator or the Euler number does not check out.
    """
    a1, b1 = _torus_matrices(lam)
    c = _commutator_matrix(a1, b1)
    if np.trace(c) >= -2.0:
        raise NotDiscreteRange(f"commutator trace {np.trace(c):.6g} is not below -2 for lambda = {lam}")
    a2, b2 = _handle_with_commutator(-np.linalg.inv(c))
    assignment = {name: lifts.mobius(m) for name, m in zip(("a1", "b1", "a2", "b2"), (a1, b1, a2, b2))}
    try:
        rep = new_representation(SurfacePresentation(genus=2), assignment, config.default_tol())
    except RelatorNotSatisfied as e:
        raise ConstructionFailed(f"odd handle for lambda = {lam} fails the relator: {e}") from e
    if rep.euler != -1:
        raise ConstructionFailed(f"odd handle for lambda = {lam} has eu {rep.euler}")
    return rep


def random_representation(rng: random.Random, genus: int = 2) -> Representation:
    """A verified genus-2 representation of random Euler class in {-2, ..., 2}.

    Draws PL representations (eu 0), rotated Fuchsian ones (eu -2) and rotated
    odd handles (eu -1), each of the latter two reflected with probability 1/2.

    Raises:
        NotApplicable: genus is not 2.
    """
    if genus != 2:
        raise NotApplicable("random representations are built in genus 2")
    kind = rng.choice(["pl", "fuchsian", "odd"])
    if kind == "pl":
        return random_pl_representation(rng)
    if kind == "fuchsian":
        rep = fuchsian_closed(2)
    else:
        rep = odd_euler_genus2(rng.uniform(2.6, 3.0))
    rep = conjugate(rep, lifts.rotation(rng.random()))
    if rng.random() < 0.5:
        rep = reflect(rep)
    _logger.debug("random %s representation with eu %d", kind, rep.euler)
    return rep
