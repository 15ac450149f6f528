import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_coeffs
from rhsignal import (BasisMismatchError, BasisSpec, CoeffVector, SampledSignal,
                      SubalgebraIndex, fourier_coeff, fourier_quadrature, frft_coeff,
                      frft_composed, frft_signal, gauss_hermite, hermite_function_batch,
                      phase_factors, project, project_via_frft, subspace_energy)


def psi(n):
    return lambda x: hermite_function_batch(n, x)[n]


def cv(values):
    values = np.asarray(values, dtype=complex)
    return CoeffVector(BasisSpec.hermite(values.size - 1), values)


def unit(n, size):
    v = np.zeros(size, dtype=complex)
    v[n] = 1
    return cv(v)


def test_fourier_coeff_examples():
    assert np.array_equal(fourier_coeff(unit(0, 6)).coeffs, unit(0, 6).coeffs)
    assert np.array_equal(fourier_coeff(unit(2, 6)).coeffs, -unit(2, 6).coeffs)
    c = cv(np.arange(1, 9) + 0.5j)
    c4 = c
    for _ in range(4):
        c4 = fourier_coeff(c4)
    assert np.array_equal(c4.coeffs, c.coeffs)


def test_fourier_quadrature_examples():
    rule = gauss_hermite(64)
    s = fourier_quadrature(psi(0), [0.0], rule)
    assert s.values[0] == pytest.approx(math.pi ** -0.25, abs=1e-13)
    s = fourier_quadrature(psi(1), [0.0], rule)
    assert abs(s.values[0]) < 1e-14
    p = np.linspace(-6, 6, 121)
    s = fourier_quadrature(psi(3), p, rule)
    assert np.max(np.abs(s.values - (-1j) * psi(3)(p))) < 1e-8


def test_fourier_quadrature_against_mpmath():
    # independent oracle: direct oscillatory integral for a non-eigenfunction
    f = lambda x: np.exp(-(x - 0.5) ** 2)  # noqa: E731
    p = [-1.3, 0.0, 2.2]
    got = fourier_quadrature(f, p, gauss_hermite(128)).values
    mp.mp.dps = 25
    for pk, g in zip(p, got):
        want = mp.quad(lambda x: mp.exp(1j * pk * x) * mp.exp(-(x - 0.5) ** 2), [-mp.inf, mp.inf])
        assert abs(g - complex(want) / math.sqrt(2 * math.pi)) < 1e-13


def test_fourier_quadrature_needs_hermite_rule():
    from rhsignal import gauss_laguerre
    with pytest.raises(ValueError):
        fourier_quadrature(psi(0), [0.0], gauss_laguerre(8))


def test_frft_examples():
    c = cv(np.arange(1, 7) * (1 + 1j))
    assert np.array_equal(frft_coeff(c, 2 * math.pi).coeffs, c.coeffs)
    out = frft_coeff(cv([1, 0, 0, 1]), math.pi / 2).coeffs
    assert np.array_equal(out, np.array([1, 0, 0, -1j]))
    assert np.array_equal(frft_coeff(unit(5, 8), math.pi).coeffs, -unit(5, 8).coeffs)


def test_frft_at_quarter_turn_is_fourier():
    c = cv(np.random.default_rng(3).standard_normal(20))
    assert np.array_equal(frft_coeff(c, math.pi / 2).coeffs, fourier_coeff(c).coeffs)


def test_phase_factors_match_mpmath():
    mp.mp.dps = 40
    alpha = 0.7390851332151607
    ph = phase_factors(alpha, 300)
    want = np.array([complex(mp.expj(mp.mpf(alpha) * n)) for n in range(301)])
    assert np.max(np.abs(ph - want)) < 1e-15


def test_composed_matches_direct_phases():
    c = cv(random_coeffs(np.random.default_rng(0), 25))
    for k in range(1, 9):
        # e^{2 pi i (1/k - 1/4) n} i^n = e^{2 pi i n / k}
        assert np.max(np.abs(frft_composed(c, k).coeffs - frft_coeff(c, 2 * math.pi / k).coeffs)) < 1e-13


def test_frft_signal_examples():
    x = np.linspace(-9, 9, 1801)
    spec = BasisSpec.hermite(12)
    f = SampledSignal(x, psi(2)(x))
    out = frft_signal(f, 2 * math.pi / 3, spec)
    assert np.max(np.abs(out.values - cmath.exp(4j * math.pi / 3) * psi(2)(x))) < 1e-9
    same = frft_signal(f, 0.0, spec)
    assert np.max(np.abs(same.values - f.values)) < 1e-10


def test_frft_signal_k_times_is_identity():
    x = np.linspace(-9, 9, 1801)
    spec = BasisSpec.hermite(24)
    f = SampledSignal(x, np.exp(-(x - 0.7) ** 2) * (1 + 0.3j * x))
    base = frft_signal(f, 0.0, spec)
    for k in (3, 5):
        g = f
        for _ in range(k):
            g = frft_signal(g, 2 * math.pi / k, spec)
        assert np.max(np.abs(g.values - base.values)) < 1e-8


def test_frft_signal_needs_grid_for_callables():
    with pytest.raises(ValueError):
        frft_signal(psi(0), 1.0, BasisSpec.hermite(3))
    out = frft_signal(psi(1), math.pi, BasisSpec.hermite(3), out_grid=[0.5])
    assert out.values[0] == pytest.approx(-psi(1)(np.array([0.5]))[0], abs=1e-13)


def test_basis_mismatch():
    c = CoeffVector(BasisSpec.laguerre(2, 0.0), [1, 0, 0])
    with pytest.raises(BasisMismatchError):
        fourier_coeff(c)
    with pytest.raises(BasisMismatchError):
        frft_coeff(c, 0.3)


def test_project_examples():
    assert np.array_equal(project(cv([1, 2, 3, 4]), SubalgebraIndex(2, 0)).coeffs, [1, 0, 3, 0])
    e5 = unit(5, 9)
    assert np.array_equal(project(e5, SubalgebraIndex(4, 1)).coeffs, e5.coeffs)
    assert np.array_equal(project(e5, (4, 1)).coeffs, e5.coeffs)


def test_project_via_frft_examples(rng):
    out = project_via_frft(cv([1, 2, 3, 4]), SubalgebraIndex(2, 0)).coeffs
    assert np.max(np.abs(out - [1, 0, 3, 0])) < 1e-15
    c = cv(random_coeffs(rng, 17))
    assert np.max(np.abs(project_via_frft(c, SubalgebraIndex(1, 0)).coeffs - c.coeffs)) < 1e-15
    mask = (np.arange(17) % 3) == 2
    assert np.max(np.abs(project_via_frft(c, SubalgebraIndex(3, 2)).coeffs - np.where(mask, c.coeffs, 0))) < 1e-13


def test_projectors_idempotent_and_orthogonal(rng):
    c = cv(random_coeffs(rng, 30))
    for k in range(1, 7):
        parts = [project(c, SubalgebraIndex(k, r)) for r in range(k)]
        for r, p in enumerate(parts):
            assert np.array_equal(project(p, SubalgebraIndex(k, r)).coeffs, p.coeffs)
            for s in range(k):
                if s != r:
                    assert not project(p, SubalgebraIndex(k, s)).coeffs.any()
        assert np.max(np.abs(sum(p.coeffs for p in parts) - c.coeffs)) == 0


def test_mod4_pieces_are_fourier_eigenvectors(rng):
    c = cv(random_coeffs(rng, 21))
    for r in range(4):
        p = project(c, SubalgebraIndex(4, r))
        assert np.array_equal(fourier_coeff(p).coeffs, (1j) ** r * p.coeffs)


def test_subspace_energy_examples(rng):
    assert np.array_equal(subspace_energy(unit(5, 9), 4), [0, 1, 0, 0])
    ones = cv(np.exp(1j * np.arange(8)))
    assert subspace_energy(ones, 4) == pytest.approx([2, 2, 2, 2], abs=1e-15)
    c = cv(random_coeffs(rng, 40))
    assert abs(subspace_energy(c, 7).sum() - c.norm() ** 2) < 1e-14 * c.norm() ** 2
    with pytest.raises(ValueError):
        subspace_energy(c, 0)


@given(alpha=st.floats(-20, 20), seed=st.integers(0, 2 ** 16))
@settings(max_examples=50, deadline=None)
def test_frft_is_unitary(alpha, seed):
    c = cv(random_coeffs(np.random.default_rng(seed), 33))
    assert abs(frft_coeff(c, alpha).norm() - c.norm()) < 1e-13 * c.norm()


@given(a=st.floats(-math.pi, math.pi), b=st.floats(-math.pi, math.pi))
@settings(max_examples=50, deadline=None)
def test_frft_group_law(a, b):
    c = cv(random_coeffs(np.random.default_rng(11), 33, unit=True))
    lhs = frft_coeff(frft_coeff(c, a), b).coeffs
    # the one unavoidable error is rounding a + b, which phase n amplifies n-fold
    bound = max(1e-14, 32 * np.spacing(abs(a + b)))
    assert np.linalg.norm(lhs - frft_coeff(c, a + b).coeffs) < bound


def test_quarter_turn_snapping_only_for_quarter_multiples():
    assert np.array_equal(phase_factors(math.pi / 2, 4), [1, 1j, -1, -1j, 1])
    assert np.array_equal(phase_factors(-math.pi, 3), [1, -1, 1, -1])
    tiny = phase_factors(1e-13, 32)
    assert tiny[32] != 1 and abs(tiny[32] - cmath.exp(32e-13j)) < 1e-16
