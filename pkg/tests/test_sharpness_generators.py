import numpy as np
import pytest

from hschwarz.checks import gradient_ratio
from hschwarz.extremal import ExtremalMap, extremal_at
from hschwarz.generators import RandomFamilySpec, gen_random_map
from hschwarz.harmonic import HarmonicMap, PowerSeries
from hschwarz.sharpness import (ExtremalFamily, GridSpec, RotatedScaledFamily, ratio_field,
                                sharpness_search)


class TestRatioField:
    def test_extremal(self, tmp_path):
        rf = ratio_field(ExtremalMap(), GridSpec(64, 128, 0.99))
        assert rf.max_ratio == pytest.approx(1.0, abs=1e-12)
        assert rf.values[0, 0] == pytest.approx(1.0, abs=1e-15)   # the origin
        out = tmp_path / "f.csv"
        rf.write_csv(out)
        lines = out.read_text().splitlines()
        assert lines[0] == "r,theta,ratio"
        assert len(lines) == 1 + 64 * 128
        assert max(float(l.split(",")[2]) for l in lines[1:]) == rf.max_ratio

    def test_constant(self):
        rf = ratio_field(HarmonicMap([[0.5]]))
        assert np.all(rf.values == 0)

    def test_random(self):
        rf = ratio_field(gen_random_map(RandomFamilySpec("real_scalar", 16), 1))
        assert 0 < rf.max_ratio < 1

    def test_argmax(self):
        rf = ratio_field(gen_random_map(RandomFamilySpec("real_scalar", 8), 4), GridSpec(8, 16, 0.9))
        assert gradient_ratio(gen_random_map(RandomFamilySpec("real_scalar", 8), 4), rf.argmax) == \
            pytest.approx(rf.max_ratio, rel=1e-12)

    def test_unknown(self):
        with pytest.raises(ValueError):
            ratio_field(ExtremalMap(), check="nope")

    def test_grid_parse(self):
        assert GridSpec.parse("4,8,0.5") == GridSpec(4, 8, 0.5)
        with pytest.raises(ValueError):
            GridSpec(4, 8, 1.0)


class TestSharpnessSearch:
    def test_rotations_at_origin(self):
        res = sharpness_search(ExtremalFamily(a_radius=(0, 0)), 0, budget=50)
        assert res.best_ratio == pytest.approx(1.0, abs=1e-9)

    def test_off_origin(self):
        z0 = 0.6j
        res = sharpness_search(ExtremalFamily(), z0, budget=1000, seed=3)
        assert 1 - 1e-4 <= res.best_ratio <= 1 + 1e-8
        assert gradient_ratio(res.best_map, z0) == pytest.approx(res.best_ratio)
        assert gradient_ratio(extremal_at(z0), z0) >= res.best_ratio - 1e-4

    def test_random_family_below_one(self):
        base = gen_random_map(RandomFamilySpec("real_scalar", 12), 7)
        res = sharpness_search(RotatedScaledFamily(base), 0.3 + 0.3j, budget=300)
        assert res.best_ratio < 1

    def test_budget(self):
        with pytest.raises(ValueError):
            sharpness_search(ExtremalFamily(), 0, budget=0)


class TestGenerators:
    def test_constant(self):
        for seed in range(20):
            f = gen_random_map(RandomFamilySpec("real_scalar", 0), seed)
            assert f.degree == 0 and -0.95 < f(0) < 0.95

    @pytest.mark.parametrize("kind", ["real_scalar", "vector_n", "planar_complex", "qc_planar",
                                      "analytic_poly", "analytic_vector"])
    def test_deterministic(self, kind):
        spec = RandomFamilySpec(kind, 6, n=3)
        a, b = gen_random_map(spec, [1, 2]), gen_random_map(spec, [1, 2])
        ca = [g.coeffs for g in a] if isinstance(a, tuple) else [a.coeffs]
        cb = [g.coeffs for g in b] if isinstance(b, tuple) else [b.coeffs]
        assert all(np.array_equal(x, y) for x, y in zip(ca, cb))

    def test_real_symmetry_and_sup(self):
        for seed in range(1000):
            f = gen_random_map(RandomFamilySpec("real_scalar", 1 + seed % 32), seed)
            c = f.coeffs[0]
            assert np.array_equal(c, np.conj(c[::-1]))
            assert f.sup_estimate <= 0.95 + 1e-12

    def test_fix_origin(self):
        f = gen_random_map(RandomFamilySpec("planar_complex", 5, fix_origin=True), 0)
        assert f(0) == 0
        p = gen_random_map(RandomFamilySpec("analytic_poly", 5, fix_origin=True), 0)
        assert isinstance(p, PowerSeries) and p(0) == 0

    def test_qc_orientation(self):
        from hschwarz.harmonic import dilatation
        f = gen_random_map(RandomFamilySpec("qc_planar", 8), 11)
        z = GridSpec(32, 64, 1 - 1e-9).points()
        assert np.all(dilatation(f, z).qc)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            RandomFamilySpec("bogus")
        with pytest.raises(ValueError):
            RandomFamilySpec(degree=65)
        with pytest.raises(ValueError):
            RandomFamilySpec(margin=1.0)
