"""Best weighted-L2 approximation of the constant 1 by constrained sums.

For a dilation set l_1 < ... < l_N the squared distance of 1 to the
constrained span of b_k(t) = {t / l_k} is

    d^2(h) = 1 - 2 g.h + h.G h,        subject to  c.h = 0,

with G, g, c from the Gram system (the weight has total mass 1, so
|1|^2 = 1).  The constraint is eliminated through an orthonormal basis Z of
the hyperplane c-perp (a fixed Householder reflector, so the solve order is
deterministic and results are reproducible bit for bit); the reduced normal
equations are solved by eigendecomposition, with a spectral cutoff
pseudo-inverse taking over when the reduced condition number exceeds 1e12.

A sweep solves the same problem over a nested family and records, per N,
the distance and the moment sum Theta.log(l) of the optimum, whose gap to 1
is the necessary-condition tracker: since the moment of 1 is 1 and the
moment functional is bounded by the distance (Cauchy-Schwarz against the
unit mass of the weight), |sum Theta_k ln l_k - 1| <= d_N always.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SingularSystem
from .gram import GramSystem, gram_system
from .moments import theta_log_sum

__all__ = [
    "ApproximationResult",
    "SweepRecord",
    "DilationFamily",
    "best_approximation",
    "best_approximation_from_gram",
    "necessary_condition_gap",
    "sweep",
]

#: reduced-system condition number beyond which the spectral cutoff engages
CONDITION_LIMIT = 1e12

#: cutoff factor (times the largest eigenvalue) for the pseudo-inverse
CUTOFF_FACTOR = 1e-12


@dataclass(frozen=True)
class ApproximationResult:
    """Optimal coefficients and diagnostics of one constrained solve."""

    dilations: tuple[float, ...]
    h_star: np.ndarray
    distance: float
    theta_log_sum: float
    constraint_residual: float
    gram_condition: float
    certified_error: float
    kkt_residual: float
    regularization_cutoff: float | None = None

    def to_dict(self) -> dict:
        return {
            "dilations": list(self.dilations),
            "h_star": self.h_star.tolist(),
            "distance": self.distance,
            "theta_log_sum": self.theta_log_sum,
            "gap": abs(self.theta_log_sum - 1.0),
            "constraint_residual": self.constraint_residual,
            "gram_condition": self.gram_condition,
            "certified_error": self.certified_error,
            "kkt_residual": self.kkt_residual,
            "regularization_cutoff": self.regularization_cutoff,
        }


@dataclass(frozen=True)
class SweepRecord:
    """One row of a distance sweep over a nested dilation family."""

    N: int
    dilation_family: str
    distance: float
    theta_log_sum: float
    gap: float
    gram_condition: float
    dilations: tuple[float, ...] = field(default=())
    h_star: tuple[float, ...] = field(default=())


def _nullspace_basis(c: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane c.h = 0 via one Householder step."""
    v = c / np.linalg.norm(c)
    w = v.copy()
    w[0] += math.copysign(1.0, v[0] if v[0] != 0.0 else 1.0)
    H = np.eye(c.size) - 2.0 * np.outer(w, w) / float(w @ w)
    return H[:, 1:]


def best_approximation_from_gram(gram: GramSystem) -> ApproximationResult:
    """Solve the constrained least-squares problem on a prebuilt Gram system."""
    G = gram.matrix
    g = gram.moment_vector
    c = gram.constraint_vector
    larr = np.asarray(gram.dilations)
    n = gram.size
    if n == 1:
        # the constraint h/l = 0 forces the zero function; d = |1| = 1
        h = np.zeros(1)
        return ApproximationResult(
            dilations=gram.dilations,
            h_star=h,
            distance=1.0,
            theta_log_sum=0.0,
            constraint_residual=0.0,
            gram_condition=1.0,
            certified_error=0.0,
            kkt_residual=0.0,
        )
    Z = _nullspace_basis(c)
    R = Z.T @ G @ Z
    rhs = Z.T @ g
    try:
        eigvals, eigvecs = np.linalg.eigh(R)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"eigendecomposition failed: {exc}") from exc
    w_max = float(eigvals[-1])
    if not (math.isfinite(w_max) and w_max > 0.0):
        raise SingularSystem("reduced Gram has no positive spectrum")
    w_min = float(eigvals[0])
    condition = math.inf if w_min <= 0.0 else w_max / w_min
    cutoff = None
    if condition > CONDITION_LIMIT:
        cutoff = CUTOFF_FACTOR * w_max
        inv = np.where(eigvals > cutoff, 1.0 / np.where(eigvals > cutoff, eigvals, 1.0), 0.0)
    else:
        inv = 1.0 / eigvals
    y = eigvecs @ (inv * (eigvecs.T @ rhs))
    if not np.all(np.isfinite(y)):
        raise SingularSystem("regularized solve produced non-finite coefficients")
    h = Z @ y
    d_sq = 1.0 - 2.0 * float(g @ h) + float(h @ (G @ h))
    distance = math.sqrt(min(max(d_sq, 0.0), 1.0))
    # stationarity: the residual functional must be proportional to c,
    # i.e. (g - G h)_k l_k constant over k
    kkt = (g - G @ h) * larr
    kkt_residual = float(np.max(np.abs(kkt - np.mean(kkt)))) if n > 1 else 0.0
    abs_h = np.abs(h)
    certified = float(abs_h @ gram.entry_error_bounds @ abs_h) + 1e-13 * (
        1.0 + float(np.sum(abs_h))
    )
    return ApproximationResult(
        dilations=gram.dilations,
        h_star=h,
        distance=distance,
        theta_log_sum=theta_log_sum(h, larr),
        constraint_residual=abs(float(c @ h)),
        gram_condition=condition,
        certified_error=certified,
        kkt_residual=kkt_residual,
        regularization_cutoff=cutoff,
    )


def best_approximation(dilations, target_error: float = 1e-6) -> ApproximationResult:
    """Distance from 1 to the constrained span of {t/l_k} over the given set.

    ``target_error`` caps the certified error of the squared distance; Gram
    entries are requested at target_error / (8 N), tightened once if the
    certification comes out above target.  A single dilation degenerates to
    the zero function with distance exactly 1.
    """
    if not target_error > 0.0:
        raise DomainError("target_error must be positive")
    dils = [float(l) for l in dilations]
    if not dils:
        raise DomainError("at least one dilation is required")
    entry_tol = min(1e-6, max(1e-12, target_error / (8.0 * len(dils))))
    result = best_approximation_from_gram(gram_system(dils, entry_tol))
    if result.certified_error > target_error:
        result = best_approximation_from_gram(gram_system(dils, entry_tol / 16.0))
    return result


def necessary_condition_gap(result: ApproximationResult) -> float:
    """|sum Theta_k ln l_k - 1|; bounded by the distance (Cauchy-Schwarz)."""
    return abs(result.theta_log_sum - 1.0)


@dataclass(frozen=True)
class DilationFamily:
    """Generator of nested dilation sets.

    kinds: ``integers`` (1..N), ``geometric`` (ratio^0 .. ratio^{N-1}),
    ``explicit`` (leading prefixes of a fixed ascending list).
    """

    kind: str
    ratio: float = 2.0
    dilations: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("integers", "geometric", "explicit"):
            raise DomainError(f"unknown family kind {self.kind!r}")
        if self.kind == "geometric" and not self.ratio > 1.0:
            raise DomainError("geometric families need ratio > 1")
        if self.kind == "explicit":
            if not self.dilations:
                raise DomainError("explicit families need a dilation list")
            if any(y <= x for x, y in zip(self.dilations, self.dilations[1:])):
                raise DomainError("explicit dilations must be strictly ascending")

    def generate(self, n: int) -> list[float]:
        if n < 1:
            raise DomainError("family size must be >= 1")
        if self.kind == "integers":
            return [float(k) for k in range(1, n + 1)]
        if self.kind == "geometric":
            return [self.ratio**k for k in range(n)]
        if n > len(self.dilations):
            raise DomainError(f"explicit family holds only {len(self.dilations)} dilations")
        return [float(l) for l in self.dilations[:n]]

    @property
    def label(self) -> str:
        if self.kind == "integers":
            return "integers"
        if self.kind == "geometric":
            return f"geometric(ratio={self.ratio!r})"
        return f"explicit(n={len(self.dilations)})"


def sweep(
    family: DilationFamily,
    N_values,
    target_error: float = 1e-6,
    keep_coefficients: bool = True,
) -> list[SweepRecord]:
    """Distances and moment sums over a nested family, one record per N.

    The Gram system is assembled once at the largest N and sliced, so all
    records share identical entries for common pairs and the distances are
    nonincreasing in N up to solver roundoff.  Records are returned sorted
    by N.
    """
    ns = sorted(set(int(n) for n in N_values))
    if not ns or ns[0] < 1:
        raise DomainError("N values must be positive integers")
    full = gram_system(
        family.generate(ns[-1]),
        min(1e-6, max(1e-12, target_error / (8.0 * ns[-1]))),
    )
    records = []
    for n in ns:
        res = best_approximation_from_gram(full.head(n))
        records.append(
            SweepRecord(
                N=n,
                dilation_family=family.label,
                distance=res.distance,
                theta_log_sum=res.theta_log_sum,
                gap=necessary_condition_gap(res),
                gram_condition=res.gram_condition,
                dilations=res.dilations,
                h_star=tuple(res.h_star.tolist()) if keep_coefficients else (),
            )
        )
    return records
