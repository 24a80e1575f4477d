"""Multimode state algebra: matrix update rules, overlaps, factorization limits."""

import math

import numpy as np
import pytest

from conftest import (
    MULTI_NMAX,
    overlap_defect,
    random_hermitian,
    random_multi_state,
    random_single_state,
    random_symmetric,
)
from respond import fock
from respond.errors import DimensionMismatch, NonHermitian, NonSymmetric
from respond.states import (
    MultiModeState,
    SingleModeState,
    displace_multi,
    displace_single,
    multi_from_single,
    rotate_multi,
    rotate_single,
    single_from_multi,
    squeeze_multi,
    squeeze_single,
    vacuum_multi,
    vacuum_overlap_multi,
    vacuum_overlap_single,
)

DIMS = (MULTI_NMAX + 1, MULTI_NMAX + 1)


def fock_vec(state):
    return fock.fock_vector_multi(state, MULTI_NMAX)


class TestRotateMulti:
    def test_zero_generator(self):
        rng = np.random.default_rng(3)
        st = random_multi_state(rng)
        out = rotate_multi(st, np.zeros((2, 2)))
        assert np.abs(out.A - st.A).max() == 0.0
        assert np.abs(out.T_Z - st.T_Z).max() < 1e-15

    def test_planar_generator_rotates_amplitudes(self):
        phi = np.pi / 2
        gen = np.array([[0.0, -1j * phi], [1j * phi, 0.0]])
        st = MultiModeState(np.array([1.0, 0.0]), np.zeros((2, 2)))
        out = rotate_multi(st, gen)
        assert np.abs(out.A - np.array([0.0, -1.0])).max() < 1e-14
        # brute-force series of the generator confirms the quarter turn
        series = sum(np.linalg.matrix_power(1j * gen, k) / math.factorial(k)
                     for k in range(40))
        assert np.abs(series @ st.A - out.A).max() < 1e-12

    def test_against_fock_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(4):
            st = random_multi_state(rng)
            Phi = random_hermitian(rng, 2, 0.7)
            out = rotate_multi(st, Phi)
            ref = fock.apply_rotation(fock_vec(st), Phi, DIMS)
            assert overlap_defect(ref, fock_vec(out)) < 1e-9

    def test_rejects_non_hermitian(self):
        rng = np.random.default_rng(7)
        with pytest.raises(NonHermitian):
            rotate_multi(random_multi_state(rng), np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestDisplaceMulti:
    def test_zero(self):
        rng = np.random.default_rng(11)
        st = random_multi_state(rng)
        out = displace_multi(st, np.zeros(2))
        assert np.abs(out.A - st.A).max() == 0.0 and out.zeta == st.zeta

    def test_real_from_zero_amplitude(self):
        st = MultiModeState(np.zeros(2), random_symmetric(np.random.default_rng(1), 2, 0.1))
        out = displace_multi(st, np.array([0.3, -0.4]))
        assert out.zeta == st.zeta
        assert np.abs(out.A - np.array([0.3, -0.4])).max() == 0.0

    def test_against_fock_oracle(self):
        rng = np.random.default_rng(13)
        for _ in range(4):
            st = random_multi_state(rng)
            B = rng.normal(0.0, 0.3, 2) + 1j * rng.normal(0.0, 0.3, 2)
            out = displace_multi(st, B)
            ref = fock.apply_displacement(fock_vec(st), B, DIMS)
            assert overlap_defect(ref, fock_vec(out)) < 1e-9

    def test_rejects_length_mismatch(self):
        rng = np.random.default_rng(17)
        with pytest.raises(DimensionMismatch):
            displace_multi(random_multi_state(rng), np.zeros(3))


class TestSqueezeMulti:
    def test_zero(self):
        rng = np.random.default_rng(19)
        st = random_multi_state(rng)
        out = squeeze_multi(st, np.zeros((2, 2)))
        assert out is st

    def test_single_mode_embedding(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            st1 = random_single_state(rng)
            w = complex(*rng.normal(0.0, 0.2, 2))
            expected = squeeze_single(st1, w)
            got = single_from_multi(squeeze_multi(multi_from_single(st1), np.array([[w]])))
            assert abs(got.alpha - expected.alpha) < 1e-14
            assert abs(got.t_z - expected.t_z) < 1e-14
            assert abs(np.exp(1j * got.zeta) - np.exp(1j * expected.zeta)) < 1e-14

    def test_against_fock_oracle(self):
        rng = np.random.default_rng(29)
        for _ in range(4):
            st = random_multi_state(rng)
            W = random_symmetric(rng, 2, 0.12)
            out = squeeze_multi(st, W)
            ref = fock.apply_squeeze(fock_vec(st), W, DIMS)
            assert overlap_defect(ref, fock_vec(out)) < 1e-9

    def test_rejects_asymmetric(self):
        rng = np.random.default_rng(31)
        with pytest.raises(NonSymmetric):
            squeeze_multi(random_multi_state(rng), np.array([[0.0, 0.1], [0.0, 0.0]]))


class TestVacuumOverlapMulti:
    def test_vacuum(self):
        assert vacuum_overlap_multi(vacuum_multi(2)) == 1.0

    def test_diagonal_factorizes(self):
        a = np.array([0.4 - 0.1j, -0.2 + 0.5j])
        t = np.array([0.3 + 0.1j, -0.25j])
        st = MultiModeState(a, np.diag(t), 0.7)
        parts = [
            vacuum_overlap_single(SingleModeState(a[j], t[j], 0.0)) for j in range(2)
        ]
        expected = np.exp(0.7j) * parts[0] * parts[1]
        assert abs(vacuum_overlap_multi(st) - expected) < 1e-14

    def test_against_fock_expansion(self):
        rng = np.random.default_rng(37)
        for _ in range(6):
            st = random_multi_state(rng)
            assert abs(fock_vec(st)[0] - vacuum_overlap_multi(st)) < 1e-9


class TestBlockFactorization:
    """Diagonal multimode inputs act as independent single-mode operations."""

    def test_elementwise_equivalence(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            singles = [random_single_state(rng, tangent=0.4) for _ in range(2)]
            st = MultiModeState(
                np.array([s.alpha for s in singles]),
                np.diag([s.t_z for s in singles]),
                sum(s.zeta for s in singles),
            )
            phis = rng.uniform(-2.0, 2.0, 2)
            betas = rng.normal(0.0, 0.4, 2) + 1j * rng.normal(0.0, 0.4, 2)
            ws = rng.normal(0.0, 0.15, 2) + 1j * rng.normal(0.0, 0.15, 2)
            multi = rotate_multi(st, np.diag(phis))
            multi = displace_multi(multi, betas)
            multi = squeeze_multi(multi, np.diag(ws))
            parts = []
            for s, phi, beta, w in zip(singles, phis, betas, ws):
                s = rotate_single(s, float(phi))
                s = displace_single(s, complex(beta))
                s = squeeze_single(s, complex(w))
                parts.append(s)
            assert np.abs(multi.A - [p.alpha for p in parts]).max() < 1e-12
            assert np.abs(np.diag(multi.T_Z) - [p.t_z for p in parts]).max() < 1e-12
            assert np.abs(multi.T_Z - np.diag(np.diag(multi.T_Z))).max() < 1e-12
            phase_expected = np.exp(1j * sum(p.zeta for p in parts))
            assert abs(np.exp(1j * multi.zeta) - phase_expected) < 1e-12


class TestMultiInvariants:
    def test_inverse_pairs(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            st = random_multi_state(rng)
            Phi = random_hermitian(rng, 2, 0.6)
            B = rng.normal(0.0, 0.4, 2) + 1j * rng.normal(0.0, 0.4, 2)
            W = random_symmetric(rng, 2, 0.15)
            for fwd, back in (
                (rotate_multi(st, Phi), lambda s: rotate_multi(s, -Phi)),
                (displace_multi(st, B), lambda s: displace_multi(s, -B)),
                (squeeze_multi(st, W), lambda s: squeeze_multi(s, -W)),
            ):
                out = back(fwd)
                assert np.abs(out.A - st.A).max() < 1e-10
                assert np.abs(out.T_Z - st.T_Z).max() < 1e-10
                assert abs(np.exp(1j * out.zeta) - np.exp(1j * st.zeta)) < 1e-10

    def test_norm_preservation(self):
        rng = np.random.default_rng(47)
        st = random_multi_state(rng)
        st = rotate_multi(st, random_hermitian(rng, 2, 0.5))
        st = displace_multi(st, np.array([0.2, -0.1j]))
        st = squeeze_multi(st, random_symmetric(rng, 2, 0.1))
        assert abs(np.linalg.norm(fock_vec(st)) - 1.0) < 1e-10
