"""Pairwise inner products of dilated fractional parts under dt/t^2.

Each entry is I(a, b) = int_1^inf {t/a}{t/b} dt/t^2.  Between consecutive
points of the union lattice {m a} U {n b} the integrand is a quadratic over
t^2 and integrates in closed form; writing the two linear factors through
their values at the segment midpoint keeps every per-segment term
cancellation-free, so the head integral over (1, T] is exact to roundoff.

Tail above T.  Writing {x} = 1/2 + psi(x) with psi the centered sawtooth,

    int_T^inf {t/a}{t/b} dt/t^2
      = 1/(4T) + mu/T + E,

where mu is the asymptotic mean of psi(t/a) psi(t/b).  When a/b is rational
with small denominator the product is periodic with period P = a q = b p and
mu is computed exactly over one period, with

    |E| <= ((a + b)/4 + 2 P / 3) / T^2

(by parts: the psi-tails contribute at most (a+b)/8 / T^2 each and the
centered product, whose primitive stays within P/6 of linear growth mu t,
at most P/3 / T^2; the stated constants carry 2x slack).  Incommensurate
pairs equidistribute on the torus, so mu = 0, but no elementary rate is
available; there the Cauchy-Schwarz bound |mean tail| <= 1/(12 T) is
claimed instead and T grows like 1/tolerance, with a hard segment cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, DuplicateDilation, PrecisionUnreachable
from .moments import moment_constant

__all__ = ["GramSystem", "gram_system", "pair_product_integral"]

#: largest denominator tried when detecting a rational dilation ratio
RATIO_DENOMINATOR_CAP = 10_000

#: largest common period accepted before falling back to the slow path
PERIOD_CAP = 1e6

#: hard cap on lattice segments per entry
SEGMENT_CAP = 100_000_000

_WINDOW = 4_000_000


def _common_period(a: float, b: float) -> float | None:
    lo, hi = (a, b) if a <= b else (b, a)
    ratio = lo / hi
    frac = Fraction(ratio).limit_denominator(RATIO_DENOMINATOR_CAP)
    p, q = frac.numerator, frac.denominator
    if p == 0:
        return None
    if abs(ratio - p / q) > 1e-12 * ratio:
        return None
    period = lo * q
    if period > PERIOD_CAP:
        return None
    return period


def _product_mean(a: float, b: float, period: float) -> float:
    """Mean over one period of (frac(t/a) - 1/2)(frac(t/b) - 1/2), exact."""
    pts = np.union1d(
        np.arange(0.0, period * (1.0 + 1e-12), a),
        np.arange(0.0, period * (1.0 + 1e-12), b),
    )
    if pts[-1] < period * (1.0 - 1e-12):
        pts = np.concatenate((pts, [period]))
    t1 = pts[:-1]
    u = np.diff(pts)
    mid = t1 + 0.5 * u
    a1 = (mid / a - np.floor(mid / a)) - u / (2.0 * a) - 0.5
    b1 = (mid / b - np.floor(mid / b)) - u / (2.0 * b) - 0.5
    seg = a1 * b1 * u + (a1 / b + b1 / a) * (u * u) / 2.0 + u**3 / (3.0 * a * b)
    mu = float(np.sum(seg)) / period
    # |mu| <= 1/12 by Cauchy-Schwarz; anything larger signals a lattice bug
    if abs(mu) > 1.0 / 12.0 + 1e-9:
        raise AssertionError(f"product mean {mu} out of range for ({a}, {b})")
    return mu


def _segment_head(a: float, b: float, T: float) -> tuple[float, int]:
    """Exact integral of {t/a}{t/b}/t^2 over (1, T], windowed lattice walk."""
    total = 0.0
    n_seg = 0
    t_lo = 1.0
    while t_lo < T:
        t_hi = min(T, t_lo + _WINDOW / (1.0 / a + 1.0 / b))
        ka = np.arange(math.floor(t_lo / a) + 1, math.floor(t_hi / a) + 1, dtype=np.float64) * a
        kb = np.arange(math.floor(t_lo / b) + 1, math.floor(t_hi / b) + 1, dtype=np.float64) * b
        pts = np.sort(np.concatenate((np.array([t_lo, t_hi]), ka, kb)))
        pts = pts[(pts >= t_lo) & (pts <= t_hi)]
        keep = np.concatenate(([True], np.diff(pts) > 1e-12 * pts[1:]))
        pts = pts[keep]
        t1 = pts[:-1]
        u = np.diff(pts)
        mask = u > 0
        t1, u = t1[mask], u[mask]
        mid = t1 + 0.5 * u
        alpha1 = (mid / a - np.floor(mid / a)) - u / (2.0 * a)
        beta1 = (mid / b - np.floor(mid / b)) - u / (2.0 * b)
        w = u / t1
        small = w < 1e-3
        l1p = np.log1p(w)
        wow = w / (1.0 + w)
        i0 = wow / t1
        i1 = np.where(small, w * w / 2 - 2 * w**3 / 3 + 3 * w**4 / 4, l1p - wow)
        i2 = t1 * np.where(small, w**3 / 3 - w**4 / 2 + 3 * w**5 / 5, w - 2 * l1p + wow)
        total += float(np.sum(alpha1 * beta1 * i0 + (alpha1 / b + beta1 / a) * i1 + i2 / (a * b)))
        n_seg += t1.size
        t_lo = t_hi
    return total, n_seg


def pair_product_integral(a: float, b: float, target_entry_error: float) -> tuple[float, float]:
    """(value, certified absolute error) of int_1^inf {t/a}{t/b} dt/t^2."""
    a, b = float(a), float(b)
    if min(a, b) < 1.0 - 1e-12:
        raise DomainError(f"dilations must lie in [1, inf); got ({a!r}, {b!r})")
    if not target_entry_error > 0.0:
        raise DomainError("target_entry_error must be positive")
    tol = target_entry_error
    period = _common_period(a, b)
    if period is not None:
        mu = _product_mean(a, b, period)
        quad_const = (a + b) / 4.0 + 2.0 * period / 3.0
        T = math.sqrt(quad_const / (0.5 * tol))
        analytic_err = quad_const / (T * T)
    else:
        mu = 0.0
        T = max(1.0 / (6.0 * tol), math.sqrt(2.0 * (a + b) / tol))
        analytic_err = 1.0 / (12.0 * T) + (a + b) / (T * T)
    n_est = T * (1.0 / a + 1.0 / b)
    if n_est > SEGMENT_CAP:
        raise PrecisionUnreachable(
            f"entry ({a:g}, {b:g}) would need {n_est:.2g} segments for {tol:g}"
        )
    head, n_seg = _segment_head(a, b, T)
    value = head + (0.25 + mu) / T
    err = analytic_err + 4e-16 * math.sqrt(float(n_seg)) + 1e-14
    return value, err


@dataclass(frozen=True)
class GramSystem:
    """Inner-product data of the basis b_k(t) = {t / l_k} under dt/t^2.

    ``matrix`` holds the pairwise products, certified entrywise within
    ``entry_error_bounds``; ``moment_vector`` holds <1, b_k> from the exact
    closed form (lam + ln l_k)/l_k; ``constraint_vector`` holds 1/l_k.
    """

    dilations: tuple[float, ...]
    matrix: np.ndarray
    moment_vector: np.ndarray
    constraint_vector: np.ndarray
    entry_error_bounds: np.ndarray

    @property
    def size(self) -> int:
        return len(self.dilations)

    def head(self, n: int) -> "GramSystem":
        """Sub-system on the first n dilations; entries are shared, so nested
        families see identical values for common pairs."""
        if not 1 <= n <= self.size:
            raise DomainError(f"head size {n} outside 1..{self.size}")
        return GramSystem(
            dilations=self.dilations[:n],
            matrix=self.matrix[:n, :n],
            moment_vector=self.moment_vector[:n],
            constraint_vector=self.constraint_vector[:n],
            entry_error_bounds=self.entry_error_bounds[:n, :n],
        )

    def to_dict(self) -> dict:
        return {
            "dilations": list(self.dilations),
            "matrix": self.matrix.tolist(),
            "g_vector": self.moment_vector.tolist(),
            "c_vector": self.constraint_vector.tolist(),
            "entry_error_bounds": self.entry_error_bounds.tolist(),
        }


def gram_system(dilations, target_entry_error: float) -> GramSystem:
    """Assemble the Gram data for an ascending list of distinct dilations.

    Entries are computed pair by pair (deterministically, one pair at a
    time) with ``pair_product_integral``; DuplicateDilation is raised when
    two dilations coincide within relative 1e-12.
    """
    dils = [float(l) for l in dilations]
    if not dils:
        raise DomainError("at least one dilation is required")
    if any(l < 1.0 - 1e-12 or not math.isfinite(l) for l in dils):
        raise DomainError("dilations must lie in [1, inf)")
    for x, y in zip(dils, dils[1:]):
        if y < x:
            raise DomainError("dilations must be ascending")
        if y - x <= 1e-12 * y:
            raise DuplicateDilation(f"dilations {x!r} and {y!r} coincide")
    n = len(dils)
    matrix = np.zeros((n, n))
    bounds = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            value, err = pair_product_integral(dils[i], dils[j], target_entry_error)
            matrix[i, j] = matrix[j, i] = value
            bounds[i, j] = bounds[j, i] = err
    larr = np.array(dils)
    g = (moment_constant() + np.log(larr)) / larr
    c = 1.0 / larr
    return GramSystem(
        dilations=tuple(dils),
        matrix=matrix,
        moment_vector=g,
        constraint_vector=c,
        entry_error_bounds=bounds,
    )
