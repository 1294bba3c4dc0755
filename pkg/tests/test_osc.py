import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscint.lattice import FreqGrid, GridFunction, make_grid, synthesize
from oscint.martingale import build_cdf, pair_partition
from oscint.osc import (
    SignVector,
    brute_ordered,
    closed_form_c2pm,
    decompose_reconstruct,
    dp_ordered,
    rubio_square,
    sup_truncated,
)

SIGNS_N2 = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
SIGNS_N3 = list(itertools.product((1, -1), repeat=3))


def rand_fn(grid, seed):
    rng = np.random.default_rng(seed)
    return GridFunction(grid, rng.normal(size=grid.M) + 1j * rng.normal(size=grid.M))


def rel_sup_err(a, b):
    denom = max(np.max(np.abs(a)), 1e-300)
    return np.max(np.abs(a - b)) / denom


class TestSignVector:
    def test_rejects_bad_sign(self):
        with pytest.raises(ValueError):
            SignVector((1, 0, 1))

    def test_degenerate_adjacencies(self):
        assert SignVector((1, -1, 1)).degenerate_adjacencies == (0, 1)
        assert SignVector((1, 1)).degenerate_adjacencies == ()


class TestBruteOrdered:
    def test_n1_is_plain_synthesis(self):
        g = make_grid(8, 4.0, 8, 4.0)
        f = rand_fn(g, 0)
        out = synthesize(brute_ordered([f], SignVector((1,))))
        np.testing.assert_allclose(out.space, synthesize(f).space, atol=1e-12)

    def test_n1_negative_sign_conjugates_phases(self):
        g = make_grid(8, 4.0, 8, 4.0)
        freq = np.abs(rand_fn(g, 1).freq).astype(complex)
        freq[0] = 0.0  # its reflection would sit just off the output window
        f = GridFunction(g, freq)
        pos = synthesize(brute_ordered([f], SignVector((1,)))).space
        neg = synthesize(brute_ordered([f], SignVector((-1,)))).space
        np.testing.assert_allclose(neg, np.conj(pos), atol=1e-12)

    def test_n1_negative_sign_edge_atom_rejected(self):
        g = make_grid(8, 4.0, 8, 4.0)
        freq = np.zeros(8, dtype=complex)
        freq[0] = 1.0
        with pytest.raises(ValueError):
            brute_ordered([GridFunction(g, freq)], SignVector((-1,)))

    def test_two_atoms_single_term(self):
        # fhat_1 supported on atom 0, fhat_2 on atom 3: exactly one ordered
        # pair (0, 3) survives, value a*b*dxi^2*e^{2 pi i x (xi_0 + xi_3)}
        g = make_grid(4, 2.0, 6, 1.5)
        f1 = GridFunction(g, np.array([2.0, 0, 0, 0], dtype=complex))
        f2 = GridFunction(g, np.array([0, 0, 0, 3.0], dtype=complex))
        out = synthesize(brute_ordered([f1, f2], SignVector((1, 1)))).space
        want = 6.0 * g.dxi**2 * np.exp(2j * np.pi * g.x * (g.xi[0] + g.xi[3]))
        np.testing.assert_allclose(out, want, atol=1e-12)

    def test_ordering_constraint_kills_reversed_supports(self):
        # f1 lives above f2 in frequency: no increasing chain exists
        g = make_grid(4, 2.0, 6, 1.5)
        f1 = GridFunction(g, np.array([0, 0, 0, 1.0], dtype=complex))
        f2 = GridFunction(g, np.array([1.0, 0, 0, 0], dtype=complex))
        out = brute_ordered([f1, f2], SignVector((1, 1)))
        assert not np.any(synthesize(out).space)

    def test_shared_atom_excluded(self):
        # strict ordering k1 < k2 forbids the diagonal
        g = make_grid(4, 2.0, 6, 1.5)
        f = GridFunction(g, np.array([0, 1.0, 0, 0], dtype=complex))
        out = brute_ordered([f, f], SignVector((1, 1)))
        assert not np.any(synthesize(out).space)

    def test_input_validation(self):
        g = make_grid(4, 2.0, 6, 1.5)
        with pytest.raises(ValueError):
            brute_ordered([rand_fn(g, 2)], SignVector((1, 1)))
        other = make_grid(8, 2.0, 6, 1.5)
        with pytest.raises(ValueError):
            brute_ordered([rand_fn(g, 3), rand_fn(other, 4)], SignVector((1, 1)))


class TestDpOrdered:
    @pytest.mark.parametrize("signs", SIGNS_N2 + SIGNS_N3)
    def test_matches_brute_all_sign_patterns(self, signs):
        g = FreqGrid(12, 3.0, 10, 2.0)
        fs = [rand_fn(g, 100 + i) for i in range(len(signs))]
        b = synthesize(brute_ordered(fs, SignVector(signs))).space
        d = synthesize(dp_ordered(fs, SignVector(signs))).space
        assert rel_sup_err(b, d) <= 1e-12

    def test_matches_brute_n4(self):
        g = FreqGrid(10, 2.5, 8, 2.0)
        fs = [rand_fn(g, 200 + i) for i in range(4)]
        eps = SignVector((1, -1, 1, -1))
        b = synthesize(brute_ordered(fs, eps)).space
        d = synthesize(dp_ordered(fs, eps)).space
        assert rel_sup_err(b, d) <= 1e-12

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=25, deadline=None)
    def test_multilinearity_first_slot(self, seed):
        g = FreqGrid(8, 2.0, 6, 1.5)
        eps = SignVector((-1, 1))
        f1, h1, f2 = rand_fn(g, seed), rand_fn(g, seed + 1), rand_fn(g, seed + 2)
        lam = 0.7 - 0.3j
        combo = GridFunction(g, f1.freq + lam * h1.freq)
        left = synthesize(dp_ordered([combo, f2], eps)).space
        right = (
            synthesize(dp_ordered([f1, f2], eps)).space
            + lam * synthesize(dp_ordered([h1, f2], eps)).space
        )
        assert rel_sup_err(left, right) <= 1e-10

    def test_zero_input_gives_zero(self):
        g = FreqGrid(8, 2.0, 6, 1.5)
        zero = GridFunction(g, np.zeros(8, dtype=complex))
        out = dp_ordered([zero, rand_fn(g, 5)], SignVector((1, 1)))
        assert not np.any(synthesize(out).space)

    def test_output_grid_embedding(self):
        # the signed-sum spectrum lives on an n-fold widened lattice
        g = FreqGrid(8, 2.0, 6, 1.5)
        out = dp_ordered([rand_fn(g, 6) for _ in range(2)], SignVector((1, 1)))
        assert out.grid.M == 2 * 8 and out.grid.xi_max == pytest.approx(2 * 2.0)


def exhaustive_sup_truncated(fs, eps, x):
    """Direct max over truncation windows by tuple enumeration."""
    grid = fs[0].grid
    n, M = len(fs), grid.M
    best = np.zeros(len(x))
    for a in range(M):
        for K in range(a + n - 1, M):
            acc = np.zeros(len(x), dtype=complex)
            for ks in itertools.combinations(range(a, K + 1), n):
                coeff = np.prod([fs[i].freq[k] for i, k in enumerate(ks)])
                s = sum(e * grid.xi[k] for e, k in zip(eps.signs, ks))
                acc += coeff * np.exp(2j * np.pi * x * s)
            best = np.maximum(best, np.abs(acc))
    return best * grid.dxi**n


class TestSupTruncated:
    @pytest.mark.parametrize("signs", [(1, 1), (-1, 1)])
    def test_n2_matches_exhaustive(self, signs):
        g = FreqGrid(8, 2.0, 6, 1.5)
        fs = [rand_fn(g, 300 + i) for i in range(2)]
        got = synthesize(sup_truncated(fs, SignVector(signs))).space
        want = exhaustive_sup_truncated(fs, SignVector(signs), g.x)
        assert rel_sup_err(want, np.abs(got)) <= 1e-12

    def test_n3_matches_exhaustive(self):
        g = FreqGrid(6, 1.5, 5, 1.0)
        fs = [rand_fn(g, 400 + i) for i in range(3)]
        eps = SignVector((1, -1, 1))
        got = synthesize(sup_truncated(fs, eps)).space
        want = exhaustive_sup_truncated(fs, eps, g.x)
        assert rel_sup_err(want, np.abs(got)) <= 1e-12

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=20, deadline=None)
    def test_dominates_full_sum(self, seed):
        g = FreqGrid(8, 2.0, 6, 1.5)
        fs = [rand_fn(g, seed + i) for i in range(2)]
        eps = SignVector((1, 1))
        sup = np.abs(synthesize(sup_truncated(fs, eps)).space)
        full = np.abs(synthesize(dp_ordered(fs, eps)).space)
        # both evaluate at the input grid's x samples
        assert np.all(sup >= full - 1e-10 * max(1.0, full.max()))

    def test_n4_rejected(self):
        g = FreqGrid(6, 1.5, 5, 1.0)
        with pytest.raises(ValueError):
            sup_truncated([rand_fn(g, i) for i in range(4)], SignVector((1, 1, 1, 1)))


class TestClosedForm:
    def test_spot_value_half(self):
        # at x = 1/2 the second term vanishes: value is -2i/pi
        assert closed_form_c2pm(0.5) == pytest.approx(-2j / np.pi)

    def test_conjugate_symmetry(self):
        # c(-x) = conj(c(x)): both terms flip to their conjugates
        for x in (0.3, 1.7, 12.0):
            assert closed_form_c2pm(-x) == pytest.approx(np.conj(closed_form_c2pm(x)))

    def test_large_x_decay(self):
        # leading term 1/(pi i x) dominates
        x = 1e4
        assert abs(closed_form_c2pm(x)) == pytest.approx(1 / (np.pi * x), rel=1e-3)

    def test_singular_at_zero(self):
        with pytest.raises(ZeroDivisionError):
            closed_form_c2pm(0.0)


class TestRubioSquare:
    def test_single_full_cell_is_modulus(self):
        g = FreqGrid.dual(16, 4.0)
        f = rand_fn(g, 7)
        out = synthesize(rubio_square(f, [(0, 16)], 2.0)).space
        np.testing.assert_allclose(out, np.abs(synthesize(f).space), atol=1e-12)

    def test_r2_l2_pythagoras(self):
        # orthogonality: || (sum_j |P_j f|^2)^{1/2} ||_2 = ||f||_2
        from oscint.lattice import lp_norm

        g = FreqGrid.dual(32, 4.0)
        f = rand_fn(g, 8)
        sq = rubio_square(f, [(0, 8), (8, 20), (20, 32)], 2.0)
        assert lp_norm(sq, 2.0) == pytest.approx(lp_norm(f, 2.0), rel=1e-10)

    def test_overlapping_cells_rejected(self):
        g = FreqGrid.dual(16, 4.0)
        with pytest.raises(ValueError):
            rubio_square(rand_fn(g, 9), [(0, 8), (7, 16)], 2.0)

    def test_r_grows_norm_shrinks_pointwise(self):
        g = FreqGrid.dual(16, 4.0)
        f = rand_fn(g, 10)
        cells = [(0, 4), (4, 8), (8, 12), (12, 16)]
        lo = synthesize(rubio_square(f, cells, 4.0)).space
        hi = synthesize(rubio_square(f, cells, 2.0)).space
        assert np.all(np.real(lo) <= np.real(hi) + 1e-12)


class TestDecomposeReconstruct:
    def test_n2_exact(self):
        g = FreqGrid(16, 4.0, 12, 2.0)
        fs = [rand_fn(g, 500 + i) for i in range(2)]
        rep = decompose_reconstruct(fs, SignVector((1, -1)), pivot=0, p_prime=2.0)
        assert rep.max_rel_err <= 1e-10

    def test_n3_both_pivots(self):
        g = FreqGrid(12, 3.0, 10, 2.0)
        fs = [rand_fn(g, 600 + i) for i in range(3)]
        for pivot in (0, 1):
            rep = decompose_reconstruct(fs, SignVector((-1, 1, 1)), pivot=pivot)
            assert rep.max_rel_err <= 1e-10

    def test_explicit_partition_accepted(self):
        g = FreqGrid(12, 3.0, 10, 2.0)
        fs = [rand_fn(g, 700 + i) for i in range(2)]
        part = pair_partition(build_cdf(fs[0], 2.0))
        rep = decompose_reconstruct(fs, SignVector((1, 1)), partition=part)
        assert rep.max_rel_err <= 1e-10
        assert rep.n_entries == len(part.entries)

    def test_residual_pairs_counted_and_exact(self):
        # heavily colliding mass forces residual pairs; identity still exact
        g = FreqGrid(8, 2.0, 6, 1.5)
        freqs = np.full(8, 1e-9, dtype=complex)
        freqs[2] = 1.0
        f1 = GridFunction(g, freqs)
        rep = decompose_reconstruct([f1, rand_fn(g, 11)], SignVector((1, 1)))
        assert rep.max_rel_err <= 1e-9

    def test_pivot_out_of_range(self):
        g = FreqGrid(8, 2.0, 6, 1.5)
        fs = [rand_fn(g, 800 + i) for i in range(2)]
        with pytest.raises(ValueError):
            decompose_reconstruct(fs, SignVector((1, 1)), pivot=1)
