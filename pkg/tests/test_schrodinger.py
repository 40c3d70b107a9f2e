import math

import numpy as np
import pytest

from hyperalg.algebra import HNum, K, OMEGA, mul_array
from hyperalg.analytic import phi_wave, phi_wave_closed
from hyperalg.schrodinger import (
    GridTooCoarse,
    GridWave,
    ZeroWave,
    box_spectrum,
    classify_energy,
    dirichlet_matrix,
    eigencheck,
    hamiltonian_apply,
    write_spectrum_csv,
)
from hyperalg.spectral import iso_map

HALF_K = HNum(0.0, 0.0, 0.0, 0.5)
HALF = HNum(0.5, 0.0, 0.0, 0.0)
GRIDS = (64, 128, 256, 512)


def psi_wave(y):
    return HNum(math.cos(y), math.sin(y), 0.0, 0.0)


def stencil_factor(h):
    """Oracle: the central difference maps cos/sin(y) to -(2 - 2cos h)/h^2 times itself."""
    return (1 - math.cos(h)) / h ** 2


class TestGridWave:
    def test_sample_layout(self):
        w = GridWave.sample(phi_wave_closed, 8)
        assert w.h == pytest.approx(2 * math.pi / 8)
        assert w.y[-1] == pytest.approx(2 * math.pi - w.h)
        assert w.values.shape == (8, 4)

    def test_too_coarse(self):
        with pytest.raises(GridTooCoarse):
            GridWave(np.zeros((2, 4)), (0.0, 1.0))
        with pytest.raises(GridTooCoarse):
            GridWave.sample(phi_wave_closed, 2)

    def test_bad_domain_and_boundary(self):
        with pytest.raises(ValueError):
            GridWave(np.zeros((4, 4)), (1.0, 1.0))
        with pytest.raises(ValueError):
            GridWave(np.zeros((4, 4)), (0.0, 1.0), "neumann")

    def test_values_are_frozen(self):
        w = GridWave.sample(phi_wave_closed, 8)
        with pytest.raises(ValueError):
            w.values[0, 0] = 1.0


class TestHamiltonian:
    def test_constant(self):
        w = GridWave(np.tile([0.0, 0.0, 0.0, 1.0], (16, 1)), (0.0, 1.0))
        assert np.abs(hamiltonian_apply(w).values).max() < 1e-12

    @pytest.mark.parametrize("m", [16, 100])
    def test_phi_wave_matches_stencil_oracle(self, m):
        w = GridWave.sample(phi_wave_closed, m)
        got = hamiltonian_apply(w).values
        assert np.abs(got - stencil_factor(w.h) * w.values).max() < 1e-10

    def test_phi_wave_is_half_k_times_w(self):
        w = GridWave.sample(phi_wave_closed, 512)
        k_w = mul_array(OMEGA, np.broadcast_to(K.to_float().to_array(), w.values.shape), w.values)
        assert np.array_equal(k_w, w.values)         # k is the unity of phi
        assert np.abs(hamiltonian_apply(w).values - 0.5 * k_w).max() < 1e-4

    def test_psi_wave(self):
        w = GridWave.sample(psi_wave, 512)
        assert np.abs(hamiltonian_apply(w).values - 0.5 * w.values).max() < 1e-4

    def test_dirichlet_zero_ghosts(self):
        w = GridWave(np.tile([1.0, 0.0, 0.0, 0.0], (5, 1)), (0.0, 4.0), "dirichlet")
        out = hamiltonian_apply(w).values[:, 0]
        assert out.tolist() == [0.5, 0.0, 0.0, 0.0, 0.5]

    def test_linear_over_center(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(size=(12, 4)), rng.normal(size=(12, 4))
        wa, wb = GridWave(a, (0.0, 1.0)), GridWave(b, (0.0, 1.0))
        # real scalars lie in omega's center (omega is commutative, so every element does)
        c = HNum(0.3, -1.2, 0.7, 2.0).to_array()
        ca = mul_array(OMEGA, np.broadcast_to(c, a.shape), a)
        lhs = hamiltonian_apply(GridWave(ca + 2.5 * b, (0.0, 1.0))).values
        rhs = (mul_array(OMEGA, np.broadcast_to(c, a.shape), hamiltonian_apply(wa).values)
               + 2.5 * hamiltonian_apply(wb).values)
        assert np.abs(lhs - rhs).max() < 1e-9


class TestEigencheck:
    def test_phi_wave_converges_second_order(self):
        residuals = [eigencheck(GridWave.sample(phi_wave_closed, m), HALF_K) for m in GRIDS]
        hs = [2 * math.pi / m for m in GRIDS]
        slope = np.polyfit(np.log(hs), np.log(residuals), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.2)
        assert residuals[-1] < 1e-3
        for h, r in zip(hs, residuals):
            assert r == pytest.approx(abs(stencil_factor(h) - 0.5) / 1.0, rel=1e-6)

    def test_series_wave_agrees(self):
        w = GridWave.sample(lambda y: phi_wave(y), 64)
        assert eigencheck(w, HALF_K) == pytest.approx(eigencheck(GridWave.sample(phi_wave_closed, 64), HALF_K), rel=1e-6)

    def test_psi_wave(self):
        assert eigencheck(GridWave.sample(psi_wave, 512), HALF) < 1e-3

    def test_real_and_k_energies_coincide_on_phi(self):
        # 1*q = q = k*q for q in phi, so E = 1/2 and E = k/2 leave the same residual
        for m in GRIDS:
            w = GridWave.sample(phi_wave_closed, m)
            assert eigencheck(w, HALF) == eigencheck(w, HALF_K)

    def test_wrong_energy_does_not_converge(self):
        w = GridWave.sample(phi_wave_closed, 512)
        assert eigencheck(w, HNum(0.0, 0.5, 0.0, 0.0)) > 0.5

    def test_iso_transport(self):
        for m in GRIDS:
            w = GridWave.sample(psi_wave, m)
            moved = GridWave(iso_map(w.values, "psi_to_phi"), w.domain)
            assert abs(eigencheck(moved, HALF_K) - eigencheck(w, HALF)) < 1e-12

    def test_accepts_energy_value_and_float(self):
        w = GridWave.sample(phi_wave_closed, 64)
        assert eigencheck(w, classify_energy(HALF_K)) == eigencheck(w, HALF_K)
        assert eigencheck(w, 0.5) == eigencheck(w, HALF)

    def test_zero_wave(self):
        with pytest.raises(ZeroWave):
            eigencheck(GridWave(np.zeros((8, 4)), (0.0, 1.0)), HALF)


class TestClassify:
    @pytest.mark.parametrize("value, expected", [
        (0.5, "real"),
        (HALF_K, "k_proportional"),
        (HNum(0.5, 0.0, 0.1, 0.0), "mixed"),
        (HNum(0.0, 2.0, 0.0, 0.0), "i_imaginary"),
        (HNum(0.5, 0.0, 0.0, 1e-12), "real"),
        (HNum(0.0, 0.0, 0.0, 0.0), "real"),
    ])
    def test_examples(self, value, expected):
        assert classify_energy(value).classification == expected

    def test_exact_mode_has_no_tolerance(self):
        from fractions import Fraction
        assert classify_energy(HNum(1, 0, 0, Fraction(1, 10 ** 20))).classification == "mixed"
        assert classify_energy(K / 2).classification == "k_proportional"


class TestBox:
    def test_levels(self):
        box = box_spectrum(3, math.pi, 512)
        for n, ev in enumerate(box, 1):
            assert ev.classification == "real"
            assert ev.value[0] == pytest.approx(n ** 2 / 2, rel=0.01)

    def test_matches_dense_eigensolver(self):
        dense = np.sort(np.linalg.eigvalsh(dirichlet_matrix(64, 2.0)))[:4]
        got = [ev.value[0] for ev in box_spectrum(4, 2.0, 64)]
        assert np.allclose(got, dense, rtol=1e-12)

    def test_hermitian(self):
        vals = np.linalg.eigvals(dirichlet_matrix(100, math.pi))
        assert np.abs(np.imag(vals)).max() < 1e-10

    def test_errors(self):
        with pytest.raises(ValueError):
            box_spectrum(0, math.pi, 512)
        with pytest.raises(GridTooCoarse):
            box_spectrum(3, math.pi, 20)

    def test_csv(self, tmp_path):
        path = tmp_path / "box.csv"
        write_spectrum_csv(path, box_spectrum(2, math.pi, 64))
        lines = path.read_text().splitlines()
        assert lines[0] == "level,a,b,c,d,classification"
        assert lines[1].startswith("1,") and lines[2].endswith(",real")
