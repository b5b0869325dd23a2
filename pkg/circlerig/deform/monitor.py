"""Sampled deformation paths and invariant monitoring along them."""

import csv
import io
import logging
from typing import Any, Callable, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from circlerig.homeo.classify import classify
from circlerig.representation.representation import (
    Representation,
    euler_number,
    evaluate_word,
    evaluate_word_lift,
)
from circlerig.rotnum.enclosure import translation_number
from circlerig.shared_libraries import constants
from circlerig.shared_libraries.errors import DiscontinuityDetected
from circlerig.shared_libraries.numeric import fmt, round_report
from circlerig.shared_libraries.types import DynClass, RotBound
from circlerig.surface.words import Word

_logger = logging.getLogger(__name__)

PathKind = Literal["constant", "bend-separating", "bend-nonseparating", "bend-chain", "alexander"]


def uniform_samples(count: int = constants.DEFAULT_SAMPLES) -> tuple[float, ...]:
    if count < 2:
        return (0.0,)
    return tuple(i / (count - 1) for i in range(count))


class DeformationPath(BaseModel):
    """t in [0, 1] -> representation, evaluated lazily at sample times."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: Representation
    parameterization: Callable[[float], Representation] = Field(description="t -> rho_t, with rho_0 = base.")
    kind: PathKind
    details: dict[str, Any] = Field(default_factory=dict, description="Curve words, signs and flow data.")
    samples: tuple[float, ...] = Field(default_factory=uniform_samples)

    def at(self, t: float) -> Representation:
        return self.parameterization(t)


def constant_path(rep: Representation) -> DeformationPath:
    return DeformationPath(base=rep, parameterization=lambda t: rep, kind="constant")


class ProbeRecord(BaseModel):
    """Invariants of one probe word at one sample."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    word: str
    rot: RotBound = Field(description="Translation number of the lifted word.")
    cls: DynClass


class SampleRecord(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: float
    euler: Optional[int]
    probes: tuple[ProbeRecord, ...]


class MonitorReport(BaseModel):
    """Per-sample invariants along a path."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: PathKind
    details: dict[str, Any]
    records: tuple[SampleRecord, ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "details": self.details,
            "records": [
                {
                    "t": round_report(r.t),
                    "eu": r.euler,
                    "probes": {
                        p.word: {"rot": _rounded(p.rot), "class": p.cls.describe()} for p in r.probes
                    },
                }
                for r in self.records
            ],
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        header = ["t", "eu"]
        names = [p.word for p in self.records[0].probes] if self.records else []
        for name in names:
            header.extend([f"{name} lo", f"{name} hi", f"{name} class"])
        writer.writerow(header)
        for r in self.records:
            row = [fmt(r.t), "" if r.euler is None else str(r.euler)]
            for p in r.probes:
                row.extend([fmt(p.rot.lo), fmt(p.rot.hi), p.cls.describe()])
            writer.writerow(row)
        return out.getvalue()


def _rounded(bound: RotBound) -> dict:
    record = bound.to_json()
    record["lo"] = round_report(bound.lo)
    record["hi"] = round_report(bound.hi)
    return record


def sample_record(
    rep: Representation,
    t: float,
    probes: Sequence[Word],
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> SampleRecord:
    records = tuple(
        ProbeRecord(
            word=str(w),
            rot=translation_number(evaluate_word_lift(rep, w), tol, max_iter),
            cls=classify(evaluate_word(rep, w), tol),
        )
        for w in probes
    )
    euler = euler_number(rep) if rep.euler is not None else None
    return SampleRecord(t=t, euler=euler, probes=records)


def monitor_path(
    path: DeformationPath,
    probes: Sequence[Word],
    samples: Optional[Sequence[float]] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> MonitorReport:
    """Records the Euler number and the probe invariants at each sample.

    Raises:
        DiscontinuityDetected: the Euler number changes along the path.
    """
    samples = path.samples if samples is None else tuple(samples)
    records = []
    for t in samples:
        record = sample_record(path.at(t), t, probes, tol, max_iter)
        if records and record.euler != records[0].euler:
            raise DiscontinuityDetected(
                f"Euler number changes from {records[0].euler} to {record.euler} at t={t}"
            )
        records.append(record)
    _logger.debug("monitored %s path at %d samples", path.kind, len(records))
    return MonitorReport(kind=path.kind, details=path.details, records=tuple(records))
