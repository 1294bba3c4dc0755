import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscint.lattice import (
    AxisNorm,
    FreqGrid,
    GridFunction,
    GridFunction2D,
    MixedNormSpec,
    band_project,
    conjugate_exponent,
    freq_lp_norm,
    lp_norm,
    make_grid,
    mixed_norm,
    synthesize,
    wiener_norm,
)


def random_function(grid, seed):
    rng = np.random.default_rng(seed)
    return GridFunction(grid, rng.normal(size=grid.M) + 1j * rng.normal(size=grid.M))


class TestMakeGrid:
    def test_unit_spacing_example(self):
        g = make_grid(8, 4.0, 8, 4.0)
        assert g.dxi == 1.0
        np.testing.assert_allclose(g.xi, np.arange(-4.0, 4.0))

    def test_desk_scale_construction(self):
        g = make_grid(256, 64.0, 512, 8.0)
        assert g.M == 256 and g.x_points == 512
        assert g.dxi * g.M == pytest.approx(2 * g.xi_max)

    def test_rejects_tiny_m(self):
        with pytest.raises(ValueError):
            make_grid(1, 4.0, 8, 4.0)

    def test_rejects_nonfinite_extent(self):
        with pytest.raises(ValueError):
            make_grid(8, float("inf"), 8, 4.0)

    def test_dual_grid_property(self):
        g = FreqGrid.dual(64, 8.0)
        assert g.is_dual
        assert g.dx * g.dxi * g.M == pytest.approx(1.0)


class TestSynthesize:
    def test_zero_function(self):
        g = make_grid(8, 4.0, 8, 4.0)
        f = synthesize(GridFunction(g, np.zeros(8)))
        np.testing.assert_array_equal(f.space, 0.0)

    def test_point_mass_at_zero_gives_constant_one(self):
        g = make_grid(8, 4.0, 8, 4.0)
        freq = np.zeros(8, dtype=complex)
        freq[4] = 1.0 / g.dxi  # atom at xi = 0
        f = synthesize(GridFunction(g, freq))
        np.testing.assert_allclose(f.space, 1.0)

    def test_idempotent(self):
        g = make_grid(16, 4.0, 16, 4.0)
        f = synthesize(random_function(g, 0))
        first = f.space
        assert synthesize(f).space is first

    def test_fft_path_matches_dense(self):
        g = FreqGrid.dual(64, 8.0)
        f = random_function(g, 1)
        dense = np.exp(2j * np.pi * np.outer(g.x, g.xi)) @ f.freq * g.dxi
        np.testing.assert_allclose(synthesize(f).space, dense, atol=1e-11)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_parseval_on_dual_grids(self, seed):
        g = FreqGrid.dual(16, 4.0)
        f = random_function(g, seed)
        assert lp_norm(f, 2) == pytest.approx(freq_lp_norm(f, 2), rel=1e-10)


class TestBandProject:
    def test_full_range_is_identity(self):
        g = make_grid(8, 4.0, 8, 4.0)
        f = random_function(g, 2)
        np.testing.assert_array_equal(band_project(f, (0, 8)).freq, f.freq)

    def test_empty_cell_gives_zero(self):
        g = make_grid(8, 4.0, 8, 4.0)
        f = random_function(g, 3)
        assert not np.any(band_project(f, (3, 3)).freq)

    def test_disjoint_cells_add(self):
        g = make_grid(8, 4.0, 8, 4.0)
        f = random_function(g, 4)
        combined = band_project(f, (0, 3)).freq + band_project(f, (3, 8)).freq
        np.testing.assert_array_equal(combined, f.freq)

    def test_idempotent(self):
        g = make_grid(8, 4.0, 8, 4.0)
        f = random_function(g, 5)
        once = band_project(f, (2, 6))
        np.testing.assert_array_equal(band_project(once, (2, 6)).freq, once.freq)

    def test_out_of_range_rejected(self):
        g = make_grid(8, 4.0, 8, 4.0)
        with pytest.raises(IndexError):
            band_project(random_function(g, 6), (0, 9))

    def test_disjoint_projections_orthogonal(self):
        g = FreqGrid.dual(32, 4.0)
        f = random_function(g, 7)
        a = synthesize(band_project(f, (0, 16))).space
        b = synthesize(band_project(f, (16, 32))).space
        inner = np.vdot(a, b) * g.dx
        assert abs(inner) <= 1e-10 * lp_norm(f, 2) ** 2


class TestLpNorm:
    def test_zero(self):
        g = make_grid(8, 4.0, 8, 4.0)
        assert lp_norm(GridFunction(g, np.zeros(8)), 2) == 0.0

    def test_constant_one(self):
        # integral of 1 over [-4, 4) is 8
        g = make_grid(8, 4.0, 8, 4.0)
        freq = np.zeros(8, dtype=complex)
        freq[4] = 1.0 / g.dxi
        assert lp_norm(GridFunction(g, freq), 2) == pytest.approx(np.sqrt(8.0))

    def test_chirp_against_refined_quadrature(self):
        # coarse-grid window norm vs the same integrand on a 4x finer grid
        from oscint.witnesses import chirp

        N = 8
        coarse = chirp(N, 1, FreqGrid.dual(24 * N * N, 4.0 * N))
        fine_g = FreqGrid.dual(96 * N * N, 4.0 * N)
        fine = chirp(N, 1, fine_g)
        assert lp_norm(coarse, 4) == pytest.approx(lp_norm(fine, 4), rel=1e-3)

    def test_infinity_norm(self):
        g = make_grid(8, 4.0, 8, 4.0)
        f = synthesize(random_function(g, 8))
        assert lp_norm(f, np.inf) == pytest.approx(np.max(np.abs(f.space)))

    def test_rejects_nonpositive_exponent(self):
        g = make_grid(8, 4.0, 8, 4.0)
        with pytest.raises(ValueError):
            lp_norm(random_function(g, 9), 0.0)

    @given(seed=st.integers(0, 10_000), scale=st.floats(0.1, 50.0), p=st.sampled_from([0.5, 1.0, 2.0, 4.0]))
    @settings(max_examples=30, deadline=None)
    def test_absolute_homogeneity(self, seed, scale, p):
        g = make_grid(16, 4.0, 12, 3.0)
        f = random_function(g, seed)
        scaled = GridFunction(g, scale * f.freq)
        assert lp_norm(scaled, p) == pytest.approx(scale * lp_norm(f, p), rel=1e-12)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=20, deadline=None)
    def test_hoelder(self, seed):
        g = FreqGrid.dual(32, 4.0)
        f, h = random_function(g, seed), random_function(g, seed + 1)
        synthesize(f), synthesize(h)
        prod = GridFunction.from_space(g, f.space * h.space)
        # 1/4 + 1/4 = 1/2
        assert lp_norm(prod, 2.0) <= (1 + 1e-9) * lp_norm(f, 4.0) * lp_norm(h, 4.0)


class TestWienerNorm:
    def test_self_dual_exponent_matches_l2(self):
        g = FreqGrid.dual(32, 4.0)
        f = random_function(g, 10)
        assert wiener_norm(f, 2.0) == pytest.approx(lp_norm(f, 2), rel=1e-10)

    def test_single_atom(self):
        g = make_grid(8, 4.0, 8, 4.0)
        freq = np.zeros(8, dtype=complex)
        freq[3] = 1.0
        p = 4.0
        p_prime = conjugate_exponent(p)
        assert wiener_norm(GridFunction(g, freq), p) == pytest.approx(g.dxi ** (1 / p_prime))

    def test_rejects_p_at_most_one(self):
        g = make_grid(8, 4.0, 8, 4.0)
        with pytest.raises(ValueError):
            wiener_norm(random_function(g, 11), 1.0)

    def test_hausdorff_young_on_gaussian(self):
        # ||fhat||_{p'} <= ||f||_p for 1 <= p <= 2; checked on a Gaussian,
        # whose spatial tails are negligible inside the sample window.
        g = FreqGrid.dual(256, 8.0)
        f = GridFunction(g, np.exp(-np.pi * g.xi**2).astype(complex))
        for p in (1.0, 1.5, 2.0):
            assert freq_lp_norm(f, conjugate_exponent(p)) <= (1 + 1e-6) * lp_norm(f, p)


def separable_2d(g1, g2, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=g1.M) + 1j * rng.normal(size=g1.M)
    b = rng.normal(size=g2.M) + 1j * rng.normal(size=g2.M)
    return (
        GridFunction(g1, a),
        GridFunction(g2, b),
        GridFunction2D(g1, g2, np.outer(a, b)),
    )


class TestMixedNorm:
    def test_separable_product_all_lebesgue(self):
        g1, g2 = FreqGrid.dual(16, 4.0), FreqGrid.dual(8, 2.0)
        a, b, F = separable_2d(g1, g2, 13)
        spec = MixedNormSpec.of(AxisNorm(axis=1, p=3.0), AxisNorm(axis=0, p=2.0))
        want = lp_norm(a, 2.0) * lp_norm(b, 3.0)
        assert mixed_norm(F, spec) == pytest.approx(want, rel=1e-9)

    def test_order_swap_on_separable(self):
        g1, g2 = FreqGrid.dual(16, 4.0), FreqGrid.dual(8, 2.0)
        _, _, F = separable_2d(g1, g2, 14)
        fwd = MixedNormSpec.of(AxisNorm(axis=1, p=3.0), AxisNorm(axis=0, p=2.0))
        rev = MixedNormSpec.of(AxisNorm(axis=0, p=2.0), AxisNorm(axis=1, p=3.0))
        assert mixed_norm(F, fwd) == pytest.approx(mixed_norm(F, rev), rel=1e-9)

    def test_wiener_axis_on_separable(self):
        g1, g2 = FreqGrid.dual(16, 4.0), FreqGrid.dual(8, 2.0)
        a, b, F = separable_2d(g1, g2, 15)
        spec = MixedNormSpec.of(
            AxisNorm(axis=0, p=4.0, wiener=True), AxisNorm(axis=1, p=2.0)
        )
        want = wiener_norm(a, 4.0) * lp_norm(b, 2.0)
        assert mixed_norm(F, spec) == pytest.approx(want, rel=1e-9)

    def test_spec_must_cover_both_axes(self):
        with pytest.raises(ValueError):
            MixedNormSpec.of(AxisNorm(axis=0, p=2.0), AxisNorm(axis=0, p=2.0))
