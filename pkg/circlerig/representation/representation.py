"""Representations of surface groups (and free groups) into circle homeomorphisms."""

import logging
import random
from typing import Literal, Mapping, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field

from circlerig.homeo import lifts
from circlerig.homeo.lifts import CircleHomeo, MapLike
from circlerig.rotnum.enclosure import integer_translation_value
from circlerig.shared_libraries import config, constants
from circlerig.shared_libraries.errors import (
    InternalInvariantError,
    InvalidMap,
    NotApplicable,
    NotIdentityLift,
    RelatorNotSatisfied,
    UnknownGenerator,
)
from circlerig.surface import words
from circlerig.surface.words import SurfacePresentation, Word

_logger = logging.getLogger(__name__)

RelatorStatus = Literal["verified-exact", "verified-tol", "unverified-free"]


class Representation(BaseModel):
    """An assignment of circle homeomorphisms to the generators."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    presentation: Optional[SurfacePresentation] = Field(
        default=None, description="The surface presentation; None for free-group representations."
    )
    generators: tuple[str, ...] = Field(description="Generator names in presentation order.")
    assignment: dict[str, CircleHomeo] = Field(description="Generator name to circle homeomorphism.")
    relator_status: RelatorStatus
    tol: float = Field(description="Tolerance used to verify the relator.")
    euler: Optional[int] = Field(default=None, description="Euler number, for surface-group representations.")

    @property
    def genus(self) -> Optional[int]:
        return self.presentation.genus if self.presentation else None

    def __getitem__(self, name: str) -> CircleHomeo:
        if name not in self.assignment:
            raise UnknownGenerator(f"{name} is not a generator of this representation")
        return self.assignment[name]


def _word_lift(assignment: Mapping[str, CircleHomeo], w: Word, lift_choice: Optional[Mapping[str, int]] = None):
    choice = lift_choice or {}
    maps = []
    for name, exp in w.letters:
        if name not in assignment:
            raise UnknownGenerator(f"{name} is not a generator of this representation")
        lift = lifts.translate(assignment[name], choice.get(name, 0))
        maps.append(lifts.power(lift, exp))
    return lifts.compose_all(maps)


def _relator_euler(pres: SurfacePresentation, assignment: Mapping[str, CircleHomeo], tol: float) -> int:
    rel = words.relator(pres)
    try:
        value = integer_translation_value(_word_lift(assignment, rel), tol)
    except NotIdentityLift as e:
        raise RelatorNotSatisfied(f"relator is not the identity: {e}") from e
    bound = 2 * pres.genus - 2
    if abs(value) > bound:
        raise InternalInvariantError(f"Euler number {value} violates |eu| <= {bound}")
    return value


def new_representation(
    pres: SurfacePresentation,
    assignment: Mapping[str, MapLike],
    tol: Optional[float] = None,
) -> Representation:
    """Verifies the relator and caches the Euler number.

    Raises:
        UnknownGenerator: the assignment misses or adds generators.
        RelatorNotSatisfied: the relator does not act as the identity.
    """
    tol = config.default_tol() if tol is None else tol
    names = pres.generators
    if set(assignment) != set(names):
        raise UnknownGenerator(f"assignment keys {sorted(assignment)} differ from {names}")
    homeos = {name: lifts.canonicalize(assignment[name]) for name in names}
    euler = _relator_euler(pres, homeos, tol)
    exact = all(lifts.is_exact(h) for h in homeos.values())
    status = constants.VERIFIED_EXACT if exact else constants.VERIFIED_TOL
    _logger.debug("genus %d representation %s with eu %d", pres.genus, status, euler)
    return Representation(
        presentation=pres,
        generators=tuple(names),
        assignment=homeos,
        relator_status=status,
        tol=tol,
        euler=euler,
    )


def free_representation(assignment: Mapping[str, MapLike], tol: Optional[float] = None) -> Representation:
    """A representation of the free group on the assignment's keys; no relator."""
    tol = config.default_tol() if tol is None else tol
    names = tuple(assignment)
    return Representation(
        generators=names,
        assignment={name: lifts.canonicalize(assignment[name]) for name in names},
        relator_status=constants.UNVERIFIED_FREE,
        tol=tol,
    )


def evaluate_word_lift(rep: Representation, w: Word, lift_choice: Optional[Mapping[str, int]] = None):
    """Lift of rho(w) built from the canonical lift of each generator shifted by lift_choice."""
    return _word_lift(rep.assignment, w, lift_choice)


def evaluate_word(rep: Representation, w: Word) -> CircleHomeo:
    return lifts.canonicalize(evaluate_word_lift(rep, w))


def euler_number(rep: Representation) -> int:
    """Translation of the lifted relator.

    Raises:
        NotApplicable: rep is a free-group representation.
    """
    if rep.euler is None:
        raise NotApplicable("free-group representations have no Euler number")
    return rep.euler


def _rebuild(rep: Representation, assignment: Mapping[str, MapLike]) -> Representation:
    if rep.presentation is None:
        return free_representation(assignment, rep.tol)
    return new_representation(rep.presentation, assignment, rep.tol)


def conjugate(rep: Representation, c: MapLike) -> Representation:
    """x -> c rho(x) c^-1 on every generator."""
    return _rebuild(rep, {name: lifts.conjugate(c, rep[name]) for name in rep.generators})


def reflect(rep: Representation) -> Representation:
    """Conjugate by the orientation reversal x -> -x; negates the Euler number."""
    return _rebuild(rep, {name: lifts.reflect(rep[name]) for name in rep.generators})


def trivial(genus: int) -> Representation:
    pres = SurfacePresentation(genus=genus)
    return new_representation(pres, {name: lifts.identity() for name in pres.generators})


def rotations(genus: int, taus: Union[Sequence, Mapping[str, object]]) -> Representation:
    """Every generator acts by a rotation; taus is a list in generator order or a mapping."""
    pres = SurfacePresentation(genus=genus)
    if not isinstance(taus, Mapping):
        taus = dict(zip(pres.generators, taus))
    return new_representation(pres, {name: lifts.rotation(taus[name]) for name in pres.generators})


def random_pl_representation(rng: random.Random, genus: int = 2) -> Representation:
    """A verified genus-2 representation with exact PL or rotation generators.

    Chooses random PL a1, b1 and sets a2 = C^k b1 C^-k, b2 = C^k a1 C^-k with
    C = rho([a1, b1]); then [a2, b2] = C^-1 and the relator holds exactly, so
    eu is always 0. Rotations and PL conjugates of these are mixed in.
    """
    if genus != 2:
        raise NotApplicable("random PL representations are built in genus 2")
    pres = SurfacePresentation(genus=2)
    kind = rng.choice(["doubled", "doubled", "rotations", "conjugated"])
    if kind == "rotations":
        taus = [lifts.rotation(f"{rng.randrange(12)}/12") for _ in pres.generators]
        return new_representation(pres, dict(zip(pres.generators, taus)))
    a1 = lifts.random_pl(rng, rng.randint(1, 3))
    b1 = lifts.random_pl(rng, rng.randint(1, 3))
    c = lifts.compose_all([lifts.invert(b1), lifts.invert(a1), b1, a1])
    k = rng.choice([-1, 0, 1])
    ck = lifts.power(c, k)
    assignment = {
        "a1": a1,
        "b1": b1,
        "a2": lifts.conjugate(ck, b1),
        "b2": lifts.conjugate(ck, a1),
    }
    rep = new_representation(pres, assignment)
    if kind == "conjugated":
        rep = conjugate(rep, lifts.random_pl(rng, 2))
    return rep


def representation_to_json(rep: Representation) -> dict:
    return {
        "genus": rep.genus,
        "generators": list(rep.generators),
        "assignment": {name: rep[name].to_json() for name in rep.generators},
        "tol": rep.tol,
    }


def representation_from_json(record: dict, tol: Optional[float] = None) -> Representation:
    """Rebuilds and re-verifies a representation.

    Raises:
        InvalidMap: the record is malformed.
    """
    try:
        genus = record.get("genus")
        raw = record["assignment"]
        names = record.get("generators") or list(raw)
        assignment = {name: lifts.lift_from_json(raw[name]) for name in names}
        if tol is None and "tol" in record:
            tol = float(record["tol"])
    except (KeyError, TypeError, AttributeError) as e:
        raise InvalidMap(f"malformed representation record: {e}") from e
    if genus is None:
        return free_representation(assignment, tol)
    return new_representation(SurfacePresentation(genus=int(genus)), assignment, tol)
