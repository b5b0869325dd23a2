"""Settings read from the environment (and a .env file, if present)."""

import os
from typing import Callable, TypeVar

from circlerig.shared_libraries import constants
from circlerig.shared_libraries.errors import ConfigError

T = TypeVar("T")


def _read(name: str, default: T, cast: Callable[[str], T]) -> T:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError as e:
        raise ConfigError(f"{name}={raw!r} is not a valid value") from e


def default_tol() -> float:
    """Assertion tolerance, CIRCLERIG_TOL or 1e-9."""
    tol = _read(constants.ENV_TOL, constants.DEFAULT_TOL, float)
    if not tol > 0:
        raise ConfigError(f"{constants.ENV_TOL} must be positive, got {tol}")
    return tol


def max_iter() -> int:
    value = _read(constants.ENV_MAX_ITER, constants.DEFAULT_MAX_ITER, int)
    if value < 1:
        raise ConfigError(f"{constants.ENV_MAX_ITER} must be at least 1")
    return value


def q_max() -> int:
    value = _read(constants.ENV_Q_MAX, constants.DEFAULT_Q_MAX, int)
    if value < 1:
        raise ConfigError(f"{constants.ENV_Q_MAX} must be at least 1")
    return value


def seed() -> int:
    return _read(constants.ENV_SEED, 0, int)
