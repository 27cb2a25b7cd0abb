"""Integration against the weight dt/t^2 on (1, inf).

The weight is a probability measure (its total mass is 1).  The first
moment of a single dilated fractional part has the closed form

    int_1^inf {t/l} dt/t^2 = (lam + ln l) / l,      lam = 1 - gamma,

where gamma is the Euler-Mascheroni constant; ``dilated_frac_moment``
implements the closed form and ``dilated_frac_moment_quad`` re-derives the
value by summing the exact integral of each linear piece between
consecutive lattice points and correcting the truncated tail with the mean
value 1/2 of the fractional part:

    int_T^inf {t/l} dt/t^2 = 1/(2T) + R,   |R| <= l / (4 T^2),

(the remainder bound follows by parts from |int_0^u ({v} - 1/2) dv| <= 1/8).
The two routes share no constants, so their agreement is a genuine
cross-check of the closed form.

For a constrained combination the moment collapses to
sum_k (h_k / l_k) ln l_k because the lam-part telescopes against the
constraint; ``moment_report`` returns both routes side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConstraintViolated, DomainError, PrecisionUnreachable
from .fracsum import CONSTRAINT_TOL, DilatedFracSum

__all__ = [
    "euler_gamma",
    "moment_constant",
    "partial_moment_constant",
    "dilated_frac_moment",
    "dilated_frac_moment_quad",
    "MomentReport",
    "moment_report",
    "theta_log_sum",
    "ConstantsReport",
    "constants_report",
    "weighted_measure",
    "NormReport",
    "weighted_norm_report",
    "weighted_norm",
]

# Bernoulli-number coefficients B_{2k} / (2k) for k = 1..4 of the
# harmonic-sum correction; the truncation error of the series below is
# bounded by the first omitted term |B_10 / 10| n^{-10}.
_EM_COEFFS = (1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0)
_EM_TAIL_CONST = 5.0 / 66.0 / 10.0
_CHUNK = 1 << 22


def euler_gamma(target_abs_error: float, n: int | None = None) -> float:
    """Euler-Mascheroni constant with certified error <= target_abs_error.

    gamma = H_n - ln n - 1/(2n) + sum_k B_{2k}/(2k) n^{-2k}, truncated after
    n^{-8}; the remainder is bounded by the first omitted term.  ``n`` may be
    pinned explicitly to cross-validate two independent evaluations.
    """
    if not target_abs_error > 0.0:
        raise DomainError("target_abs_error must be positive")
    if target_abs_error < 5e-15:
        raise PrecisionUnreachable("euler_gamma cannot certify below 5e-15 in doubles")
    if n is None:
        n = max(16, math.ceil((2.0 * _EM_TAIL_CONST / target_abs_error) ** 0.1))
    elif _EM_TAIL_CONST * float(n) ** -10 > 0.5 * target_abs_error:
        raise PrecisionUnreachable(f"n = {n} too small for target {target_abs_error:g}")
    harmonic = math.fsum(1.0 / k for k in range(1, n + 1))
    value = harmonic - math.log(n) - 0.5 / n
    for k, coeff in enumerate(_EM_COEFFS, start=1):
        value += coeff * float(n) ** (-2 * k)
    return value


@lru_cache(maxsize=1)
def moment_constant(target_abs_error: float = 1e-14) -> float:
    """lam = 1 - gamma, the constant of the first-moment closed form."""
    return 1.0 - euler_gamma(target_abs_error)


def partial_moment_constant(n: int) -> float:
    """ln n - (1/2 + 1/3 + ... + 1/n), the n-th truncation of lam = 1 - gamma.

    Lies in (0, 1/2) for every n >= 2 and increases to lam.
    """
    if n < 2:
        raise DomainError("defined for n >= 2")
    acc = 0.0
    start = 2
    while start <= n:
        stop = min(n, start + _CHUNK - 1)
        acc += float(np.sum(1.0 / np.arange(start, stop + 1, dtype=np.float64)))
        start = stop + 1
    return math.log(n) - acc


def dilated_frac_moment(l: float) -> float:
    """Closed form (lam + ln l) / l of int_1^inf {t/l} dt/t^2 for l >= 1."""
    l = float(l)
    if not math.isfinite(l) or l < 1.0 - 1e-12:
        raise DomainError(f"dilation {l!r} outside [1, inf)")
    return (moment_constant() + math.log(l)) / l


def dilated_frac_moment_quad(l: float, periods: int = 100_000) -> tuple[float, float]:
    """Independent quadrature of int_1^inf {t/l} dt/t^2.

    Sums the exact closed-form integral of each linear piece up to
    T = periods * l and adds the mean-value tail 1/(2T); returns
    (value, certified_error) with error <= l/(4 T^2) plus roundoff.
    """
    l = float(l)
    if l < 1.0 - 1e-12:
        raise DomainError(f"dilation {l!r} outside [1, inf)")
    if periods < 2:
        raise DomainError("periods must be >= 2")
    m = np.arange(1, periods, dtype=np.float64)
    # int over [m l, (m+1) l] of (t/l - m)/t^2 = (1/l)(log(1 + 1/m) - 1/(m+1))
    body = float(np.sum(np.log1p(1.0 / m) - 1.0 / (m + 1.0))) / l
    head = math.log(l) / l  # int over (1, l) where the integrand is (t/l)/t^2
    T = periods * l
    value = head + body + 0.5 / T
    err = l / (4.0 * T * T) + 1e-14
    return value, err


def theta_log_sum(coeffs: np.ndarray, dilations: np.ndarray) -> float:
    """sum_k (h_k / l_k) ln l_k, the closed-form moment of a constrained sum."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    dilations = np.asarray(dilations, dtype=np.float64)
    return float(np.sum(coeffs / dilations * np.log(dilations)))


@dataclass(frozen=True)
class MomentReport:
    """Both routes to int_1^inf phi dt/t^2 for a constrained sum.

    ``closed_form`` and ``theta_log_sum`` both hold sum Theta_k ln l_k with
    Theta_k = h_k / l_k (they are the same number; the duplication keeps the
    quantity available under the name used by the sweep tables), while
    ``integral_value`` comes from the independent per-term quadrature.
    """

    integral_value: float
    closed_form: float
    lambda_used: float
    constraint_sum: float
    theta_log_sum: float
    quad_error_bound: float

    def to_dict(self) -> dict:
        return {
            "integral_value": self.integral_value,
            "closed_form": self.closed_form,
            "lambda_used": self.lambda_used,
            "constraint_sum": self.constraint_sum,
            "theta_log_sum": self.theta_log_sum,
            "quad_error_bound": self.quad_error_bound,
        }


def moment_report(phi: DilatedFracSum, periods: int = 100_000) -> MomentReport:
    """Moment of a constrained sum: closed form next to independent quadrature.

    The two agree within ``quad_error_bound`` (default setup certifies about
    3e-10 per unit coefficient); ConstraintViolated is raised when the
    coefficient combination is not constrained.
    """
    total = phi.constraint_sum
    scale = max(1.0, float(np.sum(np.abs(phi.coeffs) / phi.dilations)))
    if abs(total) > CONSTRAINT_TOL * scale:
        raise ConstraintViolated(f"sum h/l = {total!r} exceeds tolerance {CONSTRAINT_TOL}")
    closed = theta_log_sum(phi.coeffs, phi.dilations)
    integral = 0.0
    err = 0.0
    for h, l in phi.terms:
        q, e = dilated_frac_moment_quad(l, periods)
        integral += h * q
        err += abs(h) * e
    return MomentReport(
        integral_value=integral,
        closed_form=closed,
        lambda_used=moment_constant(),
        constraint_sum=total,
        theta_log_sum=closed,
        quad_error_bound=err,
    )


@dataclass(frozen=True)
class ConstantsReport:
    """gamma, lam = 1 - gamma, and a convergence trace of the truncations."""

    gamma: float
    lam: float
    lambda_n_trace: tuple[tuple[int, float], ...]

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "lambda": self.lam,
            "lambda_n_trace": [[n, v] for n, v in self.lambda_n_trace],
        }


def constants_report(
    target_abs_error: float = 1e-12,
    trace_ns: tuple[int, ...] = (16, 256, 4096, 65536, 1048576),
) -> ConstantsReport:
    g = euler_gamma(target_abs_error)
    trace = tuple((n, partial_moment_constant(n)) for n in trace_ns)
    return ConstantsReport(gamma=g, lam=1.0 - g, lambda_n_trace=trace)


def weighted_measure(intervals) -> float:
    """Measure int_E dt/t^2 of a finite disjoint union of intervals in (1, inf).

    Each interval contributes 1/a - 1/b (with 1/inf = 0); intervals reaching
    into (0, 1) are rejected, as are overlapping pairs.
    """
    spans = []
    for a, b in intervals:
        a = float(a)
        b = float(b)
        if a < 1.0 - 1e-12:
            raise DomainError(f"interval [{a!r}, {b!r}] leaves (1, inf)")
        if not b > a:
            raise DomainError(f"empty or reversed interval [{a!r}, {b!r}]")
        spans.append((a, b))
    spans.sort()
    for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
        if a2 < b1 * (1.0 - 1e-12):
            raise DomainError("intervals must be pairwise disjoint")
    return sum(1.0 / a - (0.0 if math.isinf(b) else 1.0 / b) for a, b in spans)


@dataclass(frozen=True)
class NormReport:
    """A p-norm value under the weight together with its certification."""

    value: float
    abs_error_bound: float
    truncation: float


def _gauss_nodes(order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def weighted_norm_report(
    phi: DilatedFracSum, p: float, max_segments: int = 1_000_000
) -> NormReport:
    """{ int_1^inf |phi|^p dt/t^2 }^{1/p} for p in (1, 2].

    phi is piecewise linear with the single slope sum h_k / l_k between
    lattice points (piecewise constant when constrained).  Flat pieces and
    p = 2 integrate in closed form; sloped pieces with p < 2 use 16-point
    Gauss-Legendre per piece, split at any interior sign change.  The
    integral is truncated at T (set by ``max_segments``) and the tail is
    bounded by (sum |h_k|)^p / T, which enters the error bound.
    """
    p = float(p)
    if not 1.0 < p <= 2.0:
        raise DomainError("p must lie in (1, 2]")
    coeffs = phi.coeffs
    dils = phi.dilations
    if np.all(coeffs == 0.0):
        return NormReport(value=0.0, abs_error_bound=0.0, truncation=math.inf)
    density = float(np.sum(1.0 / dils))
    T = max(100.0, max_segments / density)
    if max_segments > 50_000_000:
        raise PrecisionUnreachable("segment budget above the supported cap")
    pts = [np.arange(1, math.floor(T / l) + 1, dtype=np.float64) * l for l in dils]
    grid = np.sort(np.concatenate([np.array([1.0, T])] + pts))
    grid = grid[(grid >= 1.0) & (grid <= T)]
    keep = np.concatenate(([True], np.diff(grid) > 1e-12 * grid[1:]))
    grid = grid[keep]
    t1 = grid[:-1]
    u = np.diff(grid)
    mask = u > 0
    t1, u = t1[mask], u[mask]
    mid = t1 + 0.5 * u
    v_mid = phi(mid)
    slope = float(np.sum(coeffs / dils))
    head = _segments_abs_power(t1, u, v_mid, slope, p, phi.abs_coeff_sum)
    tail_bound = phi.abs_coeff_sum**p / T
    lo = max(head, 0.0)
    hi = head + tail_bound
    value = (0.5 * (lo + hi)) ** (1.0 / p)
    err = 0.5 * (hi ** (1.0 / p) - lo ** (1.0 / p)) + 1e-12 * (1.0 + value)
    return NormReport(value=value, abs_error_bound=err, truncation=T)


def _segments_abs_power(t1, u, v_mid, slope, p, coeff_scale) -> float:
    """int |v_mid + slope (t - mid)|^p / t^2 summed over segments [t1, t1+u]."""
    if abs(slope) <= 1e-14 * max(1.0, coeff_scale):
        return float(np.sum(np.abs(v_mid) ** p * (u / (t1 * (t1 + u)))))
    if p == 2.0:
        a = v_mid - 0.5 * slope * u  # value at the left endpoint
        w = u / t1
        small = w < 1e-3
        l1p = np.log1p(w)
        wow = w / (1.0 + w)
        i0 = wow / t1
        i1 = np.where(small, w * w / 2 - 2 * w**3 / 3 + 3 * w**4 / 4, l1p - wow)
        i2 = t1 * np.where(small, w**3 / 3 - w**4 / 2 + 3 * w**5 / 5, w - 2 * l1p + wow)
        return float(np.sum(a * a * i0 + 2.0 * a * slope * i1 + slope * slope * i2))
    nodes, weights = _gauss_nodes()
    total = 0.0
    a_left = v_mid - 0.5 * slope * u
    t2 = t1 + u
    split = np.clip(t1 - a_left / slope, t1, t2)  # interior sign change, if any
    chunk = 100_000
    for lo_idx in range(0, t1.size, chunk):
        sl = slice(lo_idx, min(lo_idx + chunk, t1.size))
        left = a_left[sl][:, None]
        t1c = t1[sl][:, None]
        for a, b in ((t1[sl], split[sl]), (split[sl], t2[sl])):
            half = 0.5 * (b - a)
            ts = (0.5 * (a + b))[:, None] + half[:, None] * nodes
            vals = np.abs(left + slope * (ts - t1c)) ** p / ts**2
            total += float(np.dot(vals @ weights, half))
    return total


def weighted_norm(phi, p: float, max_segments: int = 1_000_000) -> float:
    """p-norm under the weight; the constant function 1 may be passed as the
    literal ``1`` (its norm is 1 for every p since the weight has mass 1)."""
    if isinstance(phi, (int, float)) and phi == 1:
        return 1.0
    return weighted_norm_report(phi, p, max_segments).value
