import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_constrained_sum
from nblab import (
    ConstraintViolated,
    DilatedFracSum,
    DomainError,
    UnitFracSum,
    dilated_to_unit,
    step_profile,
    unit_to_dilated,
)

PHI_EXAMPLE = DilatedFracSum(terms=((-1.0, 1.0), (2.0, 2.0)), constrained=True)


def test_eval_single_term():
    phi = DilatedFracSum(terms=((1.0, 2.0),))
    assert phi(3.0) == 0.5  # frac(1.5)


def test_eval_combination():
    assert PHI_EXAMPLE(1.5) == pytest.approx(1.0, abs=1e-15)  # -0.5 + 2*0.75


def test_limit_at_one_from_the_right():
    # the zero limit needs every dilation above 1
    phi = DilatedFracSum(terms=((2.0, 2.0), (-4.0, 4.0)), constrained=True)
    assert abs(phi(1.0 + 1e-9)) < 1e-6


def test_limit_at_one_with_unit_dilation_present():
    # a dilation equal to 1 contributes {t} -> 0 instead of 1/l, so the
    # right limit becomes the constraint sum minus the unit-dilation share
    assert PHI_EXAMPLE(1.0 + 1e-9) == pytest.approx(1.0, abs=1e-6)


def test_eval_array_matches_scalars():
    ts = np.array([1.5, 2.5, 3.75])
    vals = PHI_EXAMPLE(ts)
    assert vals.shape == ts.shape
    for t, v in zip(ts, vals):
        assert PHI_EXAMPLE(float(t)) == v


def test_eval_domain_error():
    with pytest.raises(DomainError):
        PHI_EXAMPLE(1.0)
    with pytest.raises(DomainError):
        PHI_EXAMPLE(0.5)


def test_terms_sorted_and_merged():
    phi = DilatedFracSum(terms=((1.0, 3.0), (2.0, 1.5), (0.5, 3.0)))
    assert phi.terms == ((2.0, 1.5), (1.5, 3.0))


def test_constraint_enforced_when_flagged():
    with pytest.raises(ConstraintViolated):
        DilatedFracSum(terms=((1.0, 2.0),), constrained=True)
    DilatedFracSum(terms=((1.0, 2.0),), constrained=False)  # fine unflagged


def test_dilation_domain():
    with pytest.raises(DomainError):
        DilatedFracSum(terms=((1.0, 0.5),))
    with pytest.raises(DomainError):
        DilatedFracSum(terms=((math.nan, 2.0),))


def test_json_round_trip():
    data = PHI_EXAMPLE.to_dict()
    assert data == {
        "terms": [{"h": -1.0, "l": 1.0}, {"h": 2.0, "l": 2.0}],
        "constrained": True,
    }
    assert DilatedFracSum.from_dict(data) == PHI_EXAMPLE


def test_unit_sum_eval():
    phi = UnitFracSum(terms=((1.0, 1.0),))
    assert phi(0.4) == 0.5  # frac(2.5)
    assert UnitFracSum(terms=((1.0, 0.5),))(0.5) == 0.0  # frac(1) = 0
    combo = UnitFracSum(terms=((2.0, 0.5), (-1.0, 1.0)), constrained=True)
    assert combo(0.3) == pytest.approx(1.0, abs=1e-12)


def test_unit_sum_domain():
    phi = UnitFracSum(terms=((1.0, 0.5),))
    for bad in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(DomainError):
            phi(bad)
    with pytest.raises(DomainError):
        UnitFracSum(terms=((1.0, 1.5),))


def test_transform_examples():
    psi = unit_to_dilated(UnitFracSum(terms=((1.0, 0.5),)))
    assert psi.terms == ((1.0, 2.0),)
    assert psi(4.0) == 0.0  # frac(2) = 0 = phi(1/4)
    combo = unit_to_dilated(UnitFracSum(terms=((2.0, 0.5), (-1.0, 1.0)), constrained=True))
    assert combo.terms == ((-1.0, 1.0), (2.0, 2.0))
    assert combo.constrained


def test_transform_round_trip_exact():
    phi = UnitFracSum(terms=((2.0, 0.5), (-1.0, 1.0)), constrained=True)
    assert dilated_to_unit(unit_to_dilated(phi)) == phi


@given(
    terms=st.lists(
        st.tuples(
            st.floats(-5, 5, allow_nan=False),
            st.floats(0.02, 1.0, exclude_min=True),
        ),
        min_size=1,
        max_size=5,
    ),
    t=st.floats(1.0001, 100.0),
)
def test_transform_consistency(terms, t):
    phi = UnitFracSum(terms=tuple(terms))
    psi = unit_to_dilated(phi)
    assert abs(psi(t) - phi(1.0 / t)) <= 1e-12 * (1.0 + abs(psi(t)))


@given(
    terms=st.lists(
        st.tuples(st.floats(-5, 5, allow_nan=False), st.floats(1.0, 60.0)),
        min_size=1,
        max_size=6,
    ),
    t=st.floats(1.0 + 1e-9, 1e6),
)
def test_boundedness(terms, t):
    phi = DilatedFracSum(terms=tuple(terms))
    assert abs(phi(t)) <= phi.abs_coeff_sum + 1e-12


def test_step_profile_example():
    profile = step_profile(PHI_EXAMPLE, 4.5)
    assert profile.breakpoints == (2.0, 3.0, 4.0)
    # coincidence 2*1 = 1*2 merges the jumps: -(-1) - 2 = -1
    assert profile.jumps[0] == (2.0, -1.0)
    assert profile.jumps[1] == (3.0, 1.0)
    assert profile.jumps[2] == (4.0, -1.0)
    for t in np.linspace(1.1, 1.9, 5):
        assert PHI_EXAMPLE(float(t)) == pytest.approx(1.0, abs=1e-15)


def test_step_profile_unconstrained_rejected():
    with pytest.raises(ConstraintViolated):
        step_profile(DilatedFracSum(terms=((1.0, 1.5),)), 10.0)


def test_step_profile_domain():
    with pytest.raises(DomainError):
        step_profile(PHI_EXAMPLE, 1.0)


def test_step_profile_right_continuity(rng):
    phi = random_constrained_sum(rng, dilation_low=1.05, dilation_high=12.0)
    profile = step_profile(phi, 40.0)
    for b, v in zip(profile.breakpoints, profile.values[1:]):
        # the stored breakpoint is a float approximation of the true jump
        # location, so the right limit is probed just past the rounding zone
        assert phi(b * (1.0 + 1e-12)) == pytest.approx(v, abs=1e-9)


def test_step_profile_right_continuity_exact_lattice():
    profile = step_profile(PHI_EXAMPLE, 4.5)
    for b, v in zip(profile.breakpoints, profile.values[1:]):
        assert PHI_EXAMPLE(b) == v  # integer lattice evaluates exactly


def test_step_profile_flat_between_breakpoints(rng):
    for _ in range(10):
        phi = random_constrained_sum(rng, dilation_low=1.05, dilation_high=20.0)
        profile = step_profile(phi, 30.0)
        edges = (1.0,) + profile.breakpoints + (30.0,)
        for idx in range(len(edges) - 1):
            a, b = edges[idx], edges[idx + 1]
            if b - a < 1e-9:
                continue
            ts = rng.uniform(a + 1e-9 * b, b - 1e-9 * b, size=10)
            vals = phi(ts)
            assert np.max(np.abs(vals - profile.values[idx])) < 1e-12


def test_step_profile_jumps_match_value_differences(rng):
    for _ in range(10):
        phi = random_constrained_sum(rng, dilation_low=1.05, dilation_high=20.0)
        profile = step_profile(phi, 30.0)
        for idx, (point, jump) in enumerate(profile.jumps):
            assert profile.values[idx + 1] - profile.values[idx] == pytest.approx(
                jump, abs=1e-12
            ), f"jump mismatch at {point}"


def test_merged_zero_function():
    phi = DilatedFracSum(terms=((-1.0, 1.0), (1.0, 1.0)), constrained=True)
    assert phi.terms == ((0.0, 1.0),)
    assert phi(7.3) == 0.0
