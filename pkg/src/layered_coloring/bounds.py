"""The parameter cascade that bounds the clustering of the three-colour pipeline."""
from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from .errors import InvalidInputError

F_MODEL_ENV = "LAYERED_COLORING_F_MODEL"
# smallest integer C with measured f <= C (w+1) Delta on every phase of the family suite
DEFAULT_F_MODEL = 1

FModel = Callable[[int, int], int]


def default_f_constant() -> Fraction:
    raw = os.environ.get(F_MODEL_ENV)
    if raw is None:
        return Fraction(DEFAULT_F_MODEL)
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"{F_MODEL_ENV}={raw!r} is not a number") from None
    if value <= 0:
        raise InvalidInputError(f"{F_MODEL_ENV} must be positive")
    return value


def linear_f_model(constant) -> FModel:
    """``f(w, delta) = ceil(C (w + 1) delta)``, evaluated exactly."""
    c = Fraction(str(constant)) if isinstance(constant, float) else Fraction(constant)

    def f(w: int, delta: int) -> int:
        return math.ceil(c * (w + 1) * delta)

    f.constant = c
    return f


@dataclass(frozen=True)
class Bounds:
    f1: int
    delta2: int
    w2: int
    f2: int
    delta3: int
    w3: int
    f3: int
    g: int

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


def _cascade(w: int, delta: int, f_at: Callable[[int, int, int], int]) -> Bounds:
    f1 = f_at(1, w, delta)
    delta2 = delta + f1 * delta**2
    w2 = w + 2 * (w + 1) * f1**2 * delta**2
    f2 = f_at(2, w2, delta2)
    delta3 = delta + f2 * delta**2
    w3 = w + 4 * (w2 + 1) * f2**2 * delta**2
    f3 = f_at(3, w3, delta3)
    g = (1 + f2 * delta) * f3
    return Bounds(f1, delta2, w2, f2, delta3, w3, f3, g)


def compute_bounds(w: int, delta: int, f_model: FModel | int | Fraction | None = None) -> Bounds:
    """Evaluate the cascade with a model ``f``; a number ``C`` means ``C (w+1) delta``."""
    if w < 1 or delta < 1:
        raise InvalidInputError("compute_bounds needs w >= 1 and delta >= 1")
    if f_model is None:
        f_model = linear_f_model(default_f_constant())
    elif not callable(f_model):
        f_model = linear_f_model(f_model)
    return _cascade(w, delta, lambda _stage, ww, dd: int(f_model(ww, dd)))


def measured_bounds(w: int, delta: int, f1: int, f2: int, f3: int) -> Bounds:
    """The same cascade with measured clusterings substituted for ``f``."""
    measured = {1: f1, 2: f2, 3: f3}
    return _cascade(w, delta, lambda stage, _w, _d: measured[stage])
