"""Finite combinations of dilated fractional parts and their step structure.

Two mirror-image families are represented:

* ``DilatedFracSum``: phi(t) = sum_k h_k {t / l_k} on (1, inf), dilations
  l_k in [1, inf).  With the linear constraint sum_k h_k / l_k = 0 these are
  right-continuous step functions, constant between the lattice points
  m * l_k and jumping by -h_k at each of them (coincident points add their
  jumps).
* ``UnitFracSum``: phi(t) = sum_k c_k {theta_k / t} on (0, 1), dilations
  theta_k in (0, 1], constraint sum_k c_k theta_k = 0.

The change of variables t -> 1/t maps one family onto the other with
h_k = c_k and l_k = 1/theta_k; both directions are provided.

{x} denotes x - floor(x), so {m} = 0 at integers and every sum here is
right-continuous.  The ``constrained`` flag is explicit rather than inferred
so that single basis elements {t/l} remain representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintViolated, DomainError

__all__ = [
    "DilatedFracSum",
    "UnitFracSum",
    "StepProfile",
    "unit_to_dilated",
    "dilated_to_unit",
    "step_profile",
]

#: relative tolerance for treating two dilations or breakpoints as coincident
COINCIDENCE_RTOL = 1e-12

#: absolute slack allowed in the linear constraint of a constrained sum
CONSTRAINT_TOL = 1e-12


def _merge_terms(terms, lower: float, upper: float, what: str):
    cleaned: list[tuple[float, float]] = []
    for coeff, dil in terms:
        coeff = float(coeff)
        dil = float(dil)
        if not (math.isfinite(coeff) and math.isfinite(dil)):
            raise DomainError(f"non-finite term ({coeff!r}, {dil!r})")
        if dil < lower * (1.0 - COINCIDENCE_RTOL) or dil > upper:
            raise DomainError(f"{what} {dil!r} outside [{lower}, {upper}]")
        cleaned.append((coeff, dil))
    if not cleaned:
        raise DomainError("at least one term is required")
    cleaned.sort(key=lambda hl: hl[1])
    merged: list[tuple[float, float]] = []
    for coeff, dil in cleaned:
        if merged and dil - merged[-1][1] <= COINCIDENCE_RTOL * dil:
            merged[-1] = (merged[-1][0] + coeff, merged[-1][1])
        else:
            merged.append((coeff, dil))
    return tuple(merged)


@dataclass(frozen=True)
class DilatedFracSum:
    """sum_k h_k {t / l_k} on (1, inf); immutable after construction.

    Terms are stored sorted by dilation with coincident dilations merged by
    coefficient addition.  When ``constrained`` is set the combination must
    satisfy sum h_k / l_k = 0 within CONSTRAINT_TOL (scaled).
    """

    terms: tuple[tuple[float, float], ...]
    constrained: bool = False

    def __post_init__(self):
        merged = _merge_terms(self.terms, 1.0, math.inf, "dilation")
        object.__setattr__(self, "terms", merged)
        if self.constrained:
            total = self.constraint_sum
            scale = max(1.0, sum(abs(h) / l for h, l in merged))
            if abs(total) > CONSTRAINT_TOL * scale:
                raise ConstraintViolated(
                    f"sum h/l = {total!r} violates the constraint within {CONSTRAINT_TOL}"
                )

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([h for h, _ in self.terms])

    @property
    def dilations(self) -> np.ndarray:
        return np.array([l for _, l in self.terms])

    @property
    def constraint_sum(self) -> float:
        return float(sum(h / l for h, l in self.terms))

    @property
    def abs_coeff_sum(self) -> float:
        return float(sum(abs(h) for h, _ in self.terms))

    def __call__(self, t):
        """Evaluate at t > 1 (scalar or array); right-continuous at breakpoints."""
        arr = np.asarray(t, dtype=np.float64)
        if np.any(arr <= 1.0):
            raise DomainError("dilated sums are defined on (1, inf)")
        out = np.zeros_like(arr)
        for h, l in self.terms:
            x = arr / l
            out = out + h * (x - np.floor(x))
        return float(out) if np.isscalar(t) or arr.ndim == 0 else out

    def to_dict(self) -> dict:
        return {
            "terms": [{"h": h, "l": l} for h, l in self.terms],
            "constrained": self.constrained,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DilatedFracSum":
        try:
            terms = tuple((item["h"], item["l"]) for item in data["terms"])
            constrained = bool(data.get("constrained", False))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed dilated-sum payload: {exc}") from exc
        return cls(terms=terms, constrained=constrained)


@dataclass(frozen=True)
class UnitFracSum:
    """sum_k c_k {theta_k / t} on (0, 1), theta_k in (0, 1]."""

    terms: tuple[tuple[float, float], ...]
    constrained: bool = False

    def __post_init__(self):
        merged = _merge_terms(self.terms, 0.0, 1.0, "unit dilation")
        if merged[0][1] <= 0.0:
            raise DomainError("unit dilations must be positive")
        object.__setattr__(self, "terms", merged)
        if self.constrained:
            total = self.constraint_sum
            scale = max(1.0, sum(abs(c) * th for c, th in merged))
            if abs(total) > CONSTRAINT_TOL * scale:
                raise ConstraintViolated(
                    f"sum c*theta = {total!r} violates the constraint within {CONSTRAINT_TOL}"
                )

    @property
    def constraint_sum(self) -> float:
        return float(sum(c * th for c, th in self.terms))

    def __call__(self, t):
        arr = np.asarray(t, dtype=np.float64)
        if np.any((arr <= 0.0) | (arr >= 1.0)):
            raise DomainError("unit sums are defined on (0, 1)")
        out = np.zeros_like(arr)
        for c, th in self.terms:
            x = th / arr
            out = out + c * (x - np.floor(x))
        return float(out) if np.isscalar(t) or arr.ndim == 0 else out


def unit_to_dilated(phi: UnitFracSum) -> DilatedFracSum:
    """Change of variables t -> 1/t: (c, theta) becomes (h = c, l = 1/theta).

    The image psi satisfies psi(t) = phi(1/t) for t > 1 and the constraint
    sum c theta = 0 maps onto sum h / l = 0, so the flag carries over.
    """
    return DilatedFracSum(
        terms=tuple((c, 1.0 / th) for c, th in phi.terms),
        constrained=phi.constrained,
    )


def dilated_to_unit(psi: DilatedFracSum) -> UnitFracSum:
    """Inverse change of variables: (h, l) becomes (c = h, theta = 1/l)."""
    return UnitFracSum(
        terms=tuple((h, 1.0 / l) for h, l in psi.terms),
        constrained=psi.constrained,
    )


@dataclass(frozen=True)
class StepProfile:
    """Piecewise-constant description of a constrained sum on (1, T].

    ``values[i]`` is the right-continuous value on the interval from
    ``breakpoints[i-1]`` (or 1 for i = 0) to ``breakpoints[i]`` exclusive,
    with a final interval reaching T.  ``jumps`` pairs each breakpoint with
    its jump, the negated sum of the coefficients h_k over all lattice
    representations m * l_k of that point.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]
    jumps: tuple[tuple[float, float], ...] = field(default=())


def step_profile(phi: DilatedFracSum, T: float) -> StepProfile:
    """Breakpoints {m l_k} in (1, T], interval values, and merged jumps.

    Only constrained sums are step functions (the slope of every term
    between lattice points is h_k / l_k, and those cancel exactly when the
    constraint holds), so unconstrained input is rejected.
    """
    if not phi.constrained:
        raise ConstraintViolated("step profiles exist only for constrained sums")
    if not T > 1.0:
        raise DomainError("T must exceed 1")
    events: list[tuple[float, float]] = []
    for h, l in phi.terms:
        m = 1
        while True:
            point = m * l
            if point > T * (1.0 + COINCIDENCE_RTOL):
                break
            if point > 1.0 + COINCIDENCE_RTOL:
                events.append((point, h))
            m += 1
    events.sort(key=lambda ev: ev[0])
    breakpoints: list[float] = []
    jumps: list[tuple[float, float]] = []
    for point, h in events:
        if breakpoints and point - breakpoints[-1] <= COINCIDENCE_RTOL * point:
            jumps[-1] = (breakpoints[-1], jumps[-1][1] - h)
        else:
            breakpoints.append(point)
            jumps.append((point, -h))
    # interval values are sampled at midpoints: a lattice point m*l stored as
    # a float may round to either side of the true jump, while midpoints are
    # unambiguous and the function is constant across each interval anyway
    edges = [1.0] + breakpoints + [T]
    values: list[float] = []
    for a, b in zip(edges[:-1], edges[1:]):
        probe = 0.5 * (a + b) if b > a else min(a * (1.0 + 1e-12), T)
        values.append(float(phi(probe)))
    return StepProfile(
        breakpoints=tuple(breakpoints),
        values=tuple(values),
        jumps=tuple(jumps),
    )
