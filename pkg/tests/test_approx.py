import math

import numpy as np
import pytest

from nblab import (
    DilationFamily,
    DomainError,
    GramSystem,
    SingularSystem,
    best_approximation,
    best_approximation_from_gram,
    gram_system,
    necessary_condition_gap,
    sweep,
)
from nblab.approx import _nullspace_basis


def null_space_grid_search(system, radius=3.0, step=1e-4):
    """Brute-force oracle: scan the constraint null space on a uniform grid
    and return the smallest distance seen."""
    G = system.matrix
    g = system.moment_vector
    c = system.constraint_vector
    n = c.size
    basis = []
    for k in range(n - 1):
        v = np.zeros(n)
        v[k] = 1.0
        v[k + 1] = -c[k] / c[k + 1]
        basis.append(v)
    basis = np.array(basis).T  # n x (n-1)
    if n == 2:
        taus = np.arange(-radius, radius + step, step)
        hs = taus[:, None] * basis[:, 0][None, :]
    else:
        coarse = np.arange(-radius, radius + 0.01, 0.01)
        aa, bb = np.meshgrid(coarse, coarse, indexing="ij")
        hs = aa.reshape(-1, 1) * basis[:, 0] + bb.reshape(-1, 1) * basis[:, 1]
    d2 = 1.0 - 2.0 * hs @ g + np.einsum("ij,jk,ik->i", hs, G, hs)
    best = d2.min()
    if n > 2:  # refine around the coarse winner at the requested step
        centre = hs[int(np.argmin(d2))]
        offsets = np.arange(-0.012, 0.012 + step, step)
        aa, bb = np.meshgrid(offsets, offsets, indexing="ij")
        hs = centre + aa.reshape(-1, 1) * basis[:, 0] + bb.reshape(-1, 1) * basis[:, 1]
        d2 = 1.0 - 2.0 * hs @ g + np.einsum("ij,jk,ik->i", hs, G, hs)
        best = min(best, d2.min())
    return math.sqrt(max(best, 0.0))


def test_two_dilations_against_grid_search():
    system = gram_system([1.0, 2.0], 1e-10)
    res = best_approximation_from_gram(system)
    brute = null_space_grid_search(system)
    assert 0.0 < res.distance < 1.0
    assert abs(res.distance - brute) < 1e-6


def test_three_dilations_against_grid_search():
    system = gram_system([1.0, 2.0, 3.0], 1e-10)
    res = best_approximation_from_gram(system)
    brute = null_space_grid_search(system)
    assert abs(res.distance - brute) < 1e-6


def test_single_dilation_degenerates_to_zero_function():
    res = best_approximation([1.0])
    assert res.distance == 1.0
    assert np.array_equal(res.h_star, np.zeros(1))
    assert necessary_condition_gap(res) == 1.0


def test_result_invariants():
    res = best_approximation([float(k) for k in range(1, 9)])
    assert res.constraint_residual <= 1e-10
    assert 0.0 <= res.distance <= 1.0
    assert res.kkt_residual < 1e-8
    system = gram_system(list(res.dilations), 1e-7)
    d_sq = 1.0 - 2.0 * float(res.h_star @ system.moment_vector) + float(
        res.h_star @ system.matrix @ res.h_star
    )
    assert abs(res.distance**2 - d_sq) <= res.certified_error + 1e-9


def test_nested_monotonicity():
    d_small = best_approximation([float(k) for k in range(1, 6)]).distance
    d_large = best_approximation([float(k) for k in range(1, 21)]).distance
    assert d_large <= d_small + 1e-10


def test_gap_bounded_by_distance():
    for n in (2, 5, 9):
        res = best_approximation([float(k) for k in range(1, n + 1)])
        assert necessary_condition_gap(res) <= res.distance + 1e-12


def test_validation():
    with pytest.raises(DomainError):
        best_approximation([])
    with pytest.raises(DomainError):
        best_approximation([1.0, 2.0], target_error=0.0)


def test_reproducible_bit_for_bit():
    a = best_approximation([1.0, 2.0, 3.0, 4.0, 5.0])
    b = best_approximation([1.0, 2.0, 3.0, 4.0, 5.0])
    assert np.array_equal(a.h_star, b.h_star)
    assert a.distance == b.distance


def test_spectral_cutoff_engages_on_degenerate_span():
    # plant a 1e-14 eigenvalue inside the constraint plane: the reduced
    # condition number then crosses the 1e12 limit and the cutoff must engage
    c = np.array([1.0, 0.5, 0.25])
    basis = _nullspace_basis(c)
    G = basis @ np.diag([1.0, 1e-14]) @ basis.T + np.outer(c, c)
    system = GramSystem(
        dilations=(1.0, 2.0, 4.0),
        matrix=G,
        moment_vector=np.array([0.42, 0.55, 0.4]),
        constraint_vector=c,
        entry_error_bounds=np.full((3, 3), 1e-12),
    )
    res = best_approximation_from_gram(system)
    assert res.gram_condition > 1e12
    assert res.regularization_cutoff == pytest.approx(1e-12, rel=1e-6)
    assert np.all(np.isfinite(res.h_star))
    assert res.constraint_residual < 1e-10


def test_singular_system_raises():
    system = GramSystem(
        dilations=(1.0, 2.0),
        matrix=np.zeros((2, 2)),
        moment_vector=np.array([0.1, 0.2]),
        constraint_vector=np.array([1.0, 0.5]),
        entry_error_bounds=np.zeros((2, 2)),
    )
    with pytest.raises(SingularSystem):
        best_approximation_from_gram(system)


def test_sweep_integers():
    records = sweep(DilationFamily(kind="integers"), [2, 5, 10])
    assert [r.N for r in records] == [2, 5, 10]
    for rec in records:
        assert rec.distance > 0.0
        assert rec.gap <= rec.distance + 1e-12
        assert rec.dilation_family == "integers"
    for prev, cur in zip(records, records[1:]):
        assert cur.distance <= prev.distance + 1e-10
    # the necessary-condition tracker tightens as the distance falls
    assert records[-1].gap < records[0].gap


def test_sweep_single_element_family():
    records = sweep(DilationFamily(kind="explicit", dilations=(2.0,)), [1])
    assert records[0].distance == 1.0


def test_sweep_geometric_family():
    records = sweep(DilationFamily(kind="geometric", ratio=2.0), [2, 4])
    assert records[0].distance >= records[1].distance - 1e-10
    assert all(r.gap <= r.distance + 1e-12 for r in records)


def test_family_generation():
    fam = DilationFamily(kind="integers")
    assert fam.generate(3) == [1.0, 2.0, 3.0]
    geo = DilationFamily(kind="geometric", ratio=1.5)
    assert geo.generate(3) == [1.0, 1.5, 2.25]
    expl = DilationFamily(kind="explicit", dilations=(1.0, 4.0, 9.0))
    assert expl.generate(2) == [1.0, 4.0]
    with pytest.raises(DomainError):
        expl.generate(5)
    with pytest.raises(DomainError):
        DilationFamily(kind="geometric", ratio=0.5)
    with pytest.raises(DomainError):
        DilationFamily(kind="plasma")
