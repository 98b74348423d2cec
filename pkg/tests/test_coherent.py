import math

import pytest

from fracpast.coherent import (
    DistortionFunction,
    PhiAlpha,
    compare_systems,
    component_comparison,
    custom,
    density_bounds,
    distortion,
    identity_distortion,
    k_out_of_n,
    omega_bounds,
    parallel,
    parallel_uniform_closed_form,
    phi_alpha,
    sandwich_check,
    series_system,
    system_efcpe,
    two_out_of_four,
)
from fracpast.distributions import (
    Beta,
    Distribution,
    LogUniform,
    ParetoType,
    Uniform,
)
from fracpast.entropy import efcpe
from fracpast.errors import DomainError

UNIFORM_PAST = {0.3: 0.320312119422, 0.5: 0.196349540849, 0.7: 0.205049744261}


class _FlatSpot(Distribution):
    """Uniform CDF whose reported density vanishes on [0.4, 0.6].

    The quantile substitution needs 1/f, so the interior probe must reject
    this before integrating.
    """

    family = "flat_spot"

    def __init__(self):
        super().__init__()
        self.params = {}
        self.lower, self.upper = 0.0, 1.0

    def cdf(self, x):
        return min(1.0, max(0.0, x))

    def pdf(self, x):
        if 0.4 <= x <= 0.6:
            return 0.0
        return 1.0 if 0.0 <= x <= 1.0 else 0.0


class TestDistortionShapes:
    def test_parallel_pointwise(self):
        q = parallel(2)
        assert q(0.5) == 0.25
        assert q(0.0) == 0.0
        assert q(1.0) == 1.0

    def test_series_pointwise(self):
        q = series_system(3)
        assert q(0.5) == pytest.approx(0.875)
        assert q(0.0) == 0.0
        assert q(1.0) == 1.0

    def test_k_out_of_n_pointwise(self):
        q = k_out_of_n(2, 4)
        # Fails at the third component failure: 4u^3 - 3u^4.
        assert q(0.5) == pytest.approx(0.3125, rel=1e-13)
        for u in (0.1, 0.4, 0.9):
            assert q(u) == pytest.approx(4.0 * u**3 - 3.0 * u**4, rel=1e-12)

    def test_two_out_of_four_pointwise(self):
        q = two_out_of_four()
        assert q(0.5) == pytest.approx(0.125, rel=1e-13)
        for u in (0.2, 0.6, 0.9):
            assert q(u) == pytest.approx(3.0 * u**2 - 8.0 * u**3 + 6.0 * u**4, rel=1e-12)

    def test_two_out_of_four_is_monotone_distortion(self):
        q = two_out_of_four()
        grid = [i / 200.0 for i in range(201)]
        values = [q(u) for u in grid]
        assert values[0] == 0.0 and values[-1] == pytest.approx(1.0)
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    def test_two_out_of_four_differs_from_binomial_form(self):
        # The quartic is NOT the 2-of-4 binomial distortion; they disagree
        # by 0.1875 at the midpoint.
        assert abs(two_out_of_four()(0.5) - k_out_of_n(2, 4)(0.5)) == pytest.approx(0.1875)

    def test_two_out_of_four_is_transposed_order_statistic(self):
        # Reversing the coefficients of the 3-of-4 binomial distortion
        # B(u) = 6u^2 - 8u^3 + 3u^4 gives exactly this quartic:
        # P(u) = u^6 B(1/u) as polynomials.
        P = two_out_of_four()
        B = k_out_of_n(3, 4)
        for u in (0.2, 0.35, 0.5, 0.8, 0.95):
            assert P(u) == pytest.approx(u**6 * B(1.0 / u), rel=1e-10)

    def test_counts_validated(self):
        with pytest.raises(DomainError):
            parallel(0)
        with pytest.raises(DomainError):
            series_system(-1)
        with pytest.raises(DomainError):
            k_out_of_n(5, 4)
        with pytest.raises(DomainError):
            k_out_of_n(0, 4)

    def test_dispatch_constructor(self):
        assert distortion("parallel", n=2)(0.5) == 0.25
        assert distortion("series", n=2)(0.5) == 0.75
        assert distortion("koutofn", k=2, n=4)(0.5) == pytest.approx(0.3125)
        assert distortion("twooutoffour")(0.5) == pytest.approx(0.125)
        assert distortion("identity")(0.3) == 0.3
        with pytest.raises(DomainError):
            distortion("bridge")


class TestKernel:
    def test_endpoints_are_zero(self):
        assert phi_alpha(0.0, 0.5) == 0.0
        assert phi_alpha(1.0, 0.5) == 0.0

    def test_interior_positive(self):
        for u in (0.1, 0.5, 0.9):
            assert phi_alpha(u, 0.5) > 0.0

    def test_order_one_form(self):
        assert phi_alpha(0.5, 1.0) == pytest.approx(0.5 * math.log(2.0), rel=1e-13)

    def test_argument_validated(self):
        with pytest.raises(DomainError):
            phi_alpha(1.2, 0.5)
        with pytest.raises(DomainError):
            phi_alpha(math.nan, 0.5)

    def test_callable_wrapper(self):
        phi = PhiAlpha(0.5)
        assert phi(0.3) == phi_alpha(0.3, 0.5)


class TestSystemMeasure:
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    def test_identity_recovers_component(self, alpha):
        got = system_efcpe(identity_distortion(), Uniform(1.0), alpha).value
        assert got == pytest.approx(UNIFORM_PAST[alpha], rel=1e-7)

    @pytest.mark.parametrize("n", [2, 3, 5])
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    def test_parallel_uniform_closed_form(self, n, alpha):
        got = system_efcpe(parallel(n), Uniform(1.0), alpha).value
        assert got == pytest.approx(parallel_uniform_closed_form(n, alpha), rel=1e-7)

    def test_parallel_on_rescaled_component(self):
        got = system_efcpe(parallel(2), Uniform(2.0), 0.5).value
        assert got == pytest.approx(2.0 * parallel_uniform_closed_form(2, 0.5), rel=1e-7)

    def test_zero_density_gap_rejected(self):
        with pytest.raises(DomainError):
            system_efcpe(parallel(2), _FlatSpot(), 0.5)

    def test_closed_form_count_validated(self):
        with pytest.raises(DomainError):
            parallel_uniform_closed_form(0, 0.5)


class TestOmegaBounds:
    @pytest.mark.parametrize(
        "alpha,expected",
        [(0.3, 2.0 ** (1.0 / 0.3)), (0.5, 4.0), (0.7, 2.0 ** (1.0 / 0.7))],
    )
    def test_parallel_pair_supremum(self, alpha, expected):
        w1, w2 = omega_bounds(parallel(2), alpha)
        assert w2 == pytest.approx(expected, rel=1e-3)
        assert 0.0 <= w1 < 1e-2

    def test_small_order_supremum(self):
        # At alpha = 0.1 the supremum 2**10 = 1024 is reached only in the
        # u -> 1 limit; the grid value may overshoot by float rounding.
        _, w2 = omega_bounds(parallel(2), 0.1)
        assert w2 == pytest.approx(1024.0, rel=1e-4)

    def test_grid_size_validated(self):
        with pytest.raises(DomainError):
            omega_bounds(parallel(2), 0.5, grid=50)

    @pytest.mark.parametrize("q", [parallel(2), series_system(3)], ids=["p2", "s3"])
    def test_supremum_bounds_kernel_pointwise(self, q):
        phi = PhiAlpha(0.5)
        _, w2 = omega_bounds(q, 0.5)
        for i in range(1, 400):
            u = i / 400.0
            assert phi(q(u)) <= w2 * phi(u) + 1e-9


class TestSandwich:
    def test_parallel_uniform_frozen(self):
        rep = sandwich_check(parallel(2), Uniform(1.0), 0.5)
        assert rep.system == pytest.approx(0.23271057, abs=5e-7)
        assert rep.upper == pytest.approx(0.7853982, abs=5e-6)
        assert rep.omega2 == pytest.approx(4.0, rel=1e-9)
        assert rep.holds

    @pytest.mark.parametrize(
        "q", [parallel(2), series_system(3), k_out_of_n(2, 4)], ids=["p2", "s3", "k24"]
    )
    @pytest.mark.parametrize("X", [Uniform(1.0), Beta(2.0, 2.0)], ids=["unif", "beta"])
    def test_holds_across_catalog(self, q, X):
        assert sandwich_check(q, X, 0.5).holds

    def test_divergent_component_rejected(self):
        with pytest.raises(DomainError):
            sandwich_check(parallel(2), ParetoType(0.5), 0.5)


class TestDensityBounds:
    def test_upper_density_envelope_gives_lower_bound(self):
        lower, upper = density_bounds(parallel(2), ParetoType(2.0), 0.5, M=2.0)
        assert upper is None
        assert lower == pytest.approx(0.11635528, abs=5e-7)
        system = system_efcpe(parallel(2), ParetoType(2.0), 0.5).value
        assert system == pytest.approx(0.39531595, abs=5e-7)
        assert lower <= system

    def test_lower_density_envelope_gives_upper_bound(self):
        L = 1.0 / (2.0 * math.log(2.0))
        lower, upper = density_bounds(parallel(2), LogUniform(1.0, 2.0), 0.5, L=L)
        assert lower is None
        assert upper == pytest.approx(0.3226053467, abs=5e-8)
        system = system_efcpe(parallel(2), LogUniform(1.0, 2.0), 0.5).value
        assert system == pytest.approx(0.2180944375, abs=5e-8)
        assert system <= upper

    def test_both_sides_together(self):
        lower, upper = density_bounds(parallel(2), Uniform(1.0), 0.5, M=1.0, L=1.0)
        assert lower == pytest.approx(upper)
        assert lower == pytest.approx(parallel_uniform_closed_form(2, 0.5), rel=1e-7)

    def test_at_least_one_side_required(self):
        with pytest.raises(DomainError):
            density_bounds(parallel(2), Uniform(1.0), 0.5)

    def test_positive_lower_envelope_required(self):
        with pytest.raises(DomainError):
            density_bounds(parallel(2), Uniform(1.0), 0.5, L=0.0)

    def test_envelope_sanity_probes(self):
        # M below the actual density or L above it is caught immediately.
        with pytest.raises(DomainError):
            density_bounds(parallel(2), Uniform(1.0), 0.5, M=0.5)
        with pytest.raises(DomainError):
            density_bounds(parallel(2), Uniform(1.0), 0.5, L=2.0)


class TestComparisons:
    def test_cross_system_bounds_hold(self):
        rep = compare_systems(parallel(2), series_system(2), Uniform(1.0), 0.5)
        assert rep.lower_holds and rep.upper_holds
        assert rep.inf_ratio <= rep.value_second / rep.value_first <= rep.sup_ratio

    def test_parallel_pair_beats_series_pair_on_uniform(self):
        rep = compare_systems(parallel(2), series_system(2), Uniform(1.0), 0.5)
        assert rep.value_second < rep.value_first

    def test_component_comparison_identity(self):
        rep = component_comparison(identity_distortion(), Uniform(1.0), 0.5)
        assert rep.direction == "ge"
        assert rep.consistent
        assert rep.system == pytest.approx(rep.component, rel=1e-6)

    def test_component_comparison_parallel_inconclusive(self):
        # phi(u^2) crosses phi(u) inside (0, 1), so no uniform ordering
        # claim is available for the parallel pair at order one half.
        rep = component_comparison(parallel(2), Uniform(1.0), 0.5)
        assert rep.direction == "inconclusive"
        assert rep.consistent
        assert rep.system == pytest.approx(0.23271057, abs=5e-7)
        assert rep.component == pytest.approx(0.19634954, abs=5e-7)

    def test_custom_distortion_round_trip(self):
        q = custom(lambda u: u**1.5, "three-halves")
        assert isinstance(q, DistortionFunction)
        got = system_efcpe(q, Uniform(1.0), 0.5).value
        assert math.isfinite(got) and got > 0.0
