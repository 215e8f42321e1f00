import numpy as np
import pytest
from hypothesis import given, strategies as st

from hschwarz.checks import check_gradient_bound, gradient_ratio
from hschwarz.disk import MobiusAutomorphism
from hschwarz.extremal import ExtremalMap, ExtremalSpec, extremal_at, extremal_real
from hschwarz.harmonic import BoundaryFunction, HarmonicMap, analytic_completion
from hschwarz.sharpness import GridSpec, ratio_field
from hschwarz.strip import strip_map, strip_map_inverse, verify_strip_inequality

from conftest import central_fd, disk_points, random_points

FOUR_OVER_PI = 4 / np.pi


class TestStripMap:
    def test_origin(self):
        assert strip_map(0) == 0
        assert strip_map_inverse(0) == 0

    @given(st.floats(-0.999, 0.999))
    def test_imaginary_axis(self, y):
        w = strip_map(1j * y)
        assert abs(w.imag) < 1e-15
        assert w.real == pytest.approx(-FOUR_OVER_PI * np.arctan(y), abs=1e-14)

    def test_into_strip(self, rng):
        z = random_points(rng, 10_000, 0.999)
        assert np.all(np.abs(strip_map(z).real) < 1)

    def test_round_trip(self, rng):
        z = random_points(rng, 1000, 0.99)
        assert np.max(np.abs(strip_map_inverse(strip_map(z)) - z)) <= 1e-12

    def test_inverse_codomain(self, rng):
        w = rng.uniform(-0.999, 0.999, 10_000) + 1j * rng.uniform(-5, 5, 10_000)
        assert np.all(np.abs(strip_map_inverse(w)) < 1)

    def test_inverse_rejects(self):
        with pytest.raises(ValueError):
            strip_map_inverse(1.0 + 0.2j)


class TestStripInequality:
    def test_t_zero_equality(self):
        cos_rep = verify_strip_inequality(2.0, 0.0)[2]
        assert cos_rep.lhs == cos_rep.rhs == 1.0 and cos_rep.passed

    def test_quarter_turn(self):
        r, t = 1.0, np.pi / 4
        # independent oracle: direct arithmetic on b
        w = complex(np.cos(t), np.sin(t))
        b = (w - 1) / (w + 1)
        assert abs(b) ** 2 == pytest.approx(1 - 4 * np.cos(t) / (2 + 2 * np.cos(t)), abs=1e-15)
        reps = verify_strip_inequality(r, t)
        assert all(rep.passed for rep in reps)
        assert abs(reps[0].lhs - reps[0].rhs) <= 1e-12

    def test_sweep(self):
        for r in np.logspace(-2, 2, 100):
            for t in np.linspace(-np.pi / 2, np.pi / 2, 102)[1:-1]:
                assert all(rep.passed for rep in verify_strip_inequality(r, t))

    def test_domain(self):
        with pytest.raises(ValueError):
            verify_strip_inequality(0.0, 0.1)
        with pytest.raises(ValueError):
            verify_strip_inequality(1.0, np.pi / 2)


class TestExtremalReal:
    def test_origin(self):
        e = ExtremalMap()
        assert e(0) == 0
        assert e.jacobian(0).gradient_norm == pytest.approx(FOUR_OVER_PI, abs=1e-15)

    def test_value(self):
        oracle = (2 / np.pi) * np.arctan(4 / 3)
        assert extremal_real(0.5j) == pytest.approx(oracle, abs=1e-15)
        assert oracle == pytest.approx(0.590334, abs=1e-6)

    def test_real_axis_zero(self, rng):
        assert np.all(extremal_real(rng.uniform(-0.99, 0.99, 100)) == 0)

    def test_positive_upper(self):
        assert extremal_real(0.3j) > 0

    def test_is_real_part_of_strip_composition(self, rng):
        z = random_points(rng, 500, 0.99)
        assert np.max(np.abs(extremal_real(z) + strip_map(z).real)) < 1e-13

    def test_range(self, rng):
        z = random_points(rng, 10_000, 0.9999)
        v = extremal_real(z)
        assert np.all(np.abs(v) < 1)

    def test_harmonic_laplacian(self, rng):
        h = 1e-3
        for z in random_points(rng, 20, 0.8):
            lap = (extremal_real(z + h) + extremal_real(z - h) + extremal_real(z + 1j * h)
                   + extremal_real(z - 1j * h) - 4 * extremal_real(z)) / h ** 2
            assert abs(lap) < 1e-2  # stencil truncation; |z|^2 would give 4

    @pytest.mark.parametrize("spec", [
        ExtremalSpec(),
        ExtremalSpec(MobiusAutomorphism(0.3 - 0.2j, 0.4), 1.1, -1),
    ])
    def test_jacobian_fd(self, spec, rng):
        e = ExtremalMap(spec)
        for z in random_points(rng, 10, 0.8):
            dx, dy = central_fd(e, z)
            jm = e.jacobian(z).matrix[0]
            assert abs(jm[0] - dx) <= 1e-6 * np.hypot(*jm)
            assert abs(jm[1] - dy) <= 1e-6 * np.hypot(*jm)


class TestExtremalSeries:
    @pytest.mark.parametrize("spec", [
        ExtremalSpec(),
        ExtremalSpec(MobiusAutomorphism(0.5j, 0.0), 0.3, 1),
        ExtremalSpec(MobiusAutomorphism(-0.4 + 0.1j, 2.0), -1.0, -1),
    ])
    def test_series_matches_closed_form(self, spec, rng):
        e = ExtremalMap(spec)
        s = e.to_series(1024)
        z = random_points(rng, 300, 0.9)
        assert np.max(np.abs(s(z) - e(z))) < 1e-10

    def test_series_coefficients_from_rule_samples(self):
        rule = BoundaryFunction.from_rule("extremal_strip", a_re=0.2, rotate=0.5)
        exact = rule.fourier_coeffs(16)
        t = np.linspace(0.01, 6.2, 50)
        e = ExtremalMap(ExtremalSpec(MobiusAutomorphism(0.2), 0.5))
        vals = rule.evaluate(t)[0]
        inner = e.spec.inner(np.exp(1j * t))
        assert np.array_equal(vals, np.sign(inner.imag))
        assert exact.shape == (1, 33)

    def test_gradient_at_zero_from_series(self):
        s = ExtremalMap().to_series(64)
        assert s.jacobian(0).gradient_norm == pytest.approx(FOUR_OVER_PI, abs=1e-15)

    def test_completion_form(self, rng):
        s = ExtremalMap().to_series(2048)
        a = analytic_completion(s)
        z = random_points(rng, 300, 0.9)
        closed = -(2j / np.pi) * np.log((1 + z) / (1 - z))
        assert np.max(np.abs(a(z).real - extremal_real(z))) < 1e-10
        assert np.max(np.abs(a(z) - closed)) < 1e-10


class TestExtremalAt:
    def test_origin_default(self):
        e = extremal_at(0)
        assert e(0.3 + 0.4j) == pytest.approx(extremal_real(0.3 + 0.4j), abs=1e-15)
        assert gradient_ratio(e, 0) == pytest.approx(1.0, abs=1e-15)

    def test_off_origin(self):
        z0 = 0.3 + 0.4j
        assert gradient_ratio(extremal_at(z0), z0) >= 1 - 1e-6

    @given(disk_points(0.99))
    def test_attains_everywhere(self, z0):
        e = extremal_at(z0)
        assert check_gradient_bound(e, z0).ratio >= 1 - 1e-6

    def test_rotation_and_sign_keep_sharpness(self):
        z0 = -0.5 + 0.2j
        e = extremal_at(z0, ExtremalSpec(rotate=2.0, sign=-1))
        assert gradient_ratio(e, z0) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("z0", [0, 0.6j, -0.7 + 0.1j])
    def test_never_exceeds_one(self, z0):
        rf = ratio_field(extremal_at(z0), GridSpec(64, 128, 0.99))
        assert rf.max_ratio <= 1 + 1e-9
