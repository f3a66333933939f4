import math

import numpy as np
import pytest

from fancert.domain import (classify_w, in_B, in_D, make_domain_spec,
                            tiling_check, tiling_of_Bb)
from fancert.fans import OmegaCone, QuotientFan, build_fan_s2, cone
from fancert.units import SubgroupW, make_unit, unit_word


@pytest.fixture(scope="module")
def spec(w_alpha, salem_table):
    fan = build_fan_s2(w_alpha, salem_table, window=64)
    return make_domain_spec(fan)


class TestSpec:
    def test_vertices_and_constant(self, spec, salem_table):
        a = salem_table.values[0].real
        assert np.allclose(spec.vertices, [[1.0], [a]])
        assert abs(spec.lower_bound_c - 1.0) < 1e-9

    def test_degenerate_vertices_rejected(self, salem_field, salem_table):
        one = make_unit(salem_field, salem_table, [1, 0, 0, 0])
        w = SubgroupW([one], 1, labeling=(0, 1))
        fan = QuotientFan([cone([[1.0, 1.0]])], w, OmegaCone(2, 1),
                          salem_table, 8)
        from fancert.errors import WrongSignature
        with pytest.raises(WrongSignature):
            make_domain_spec(fan)


class TestInB:
    def test_inside(self, spec):
        assert in_B(np.array([1.2, 7.0]), spec)

    def test_vertex(self, spec):
        assert in_B(np.array([1.0, 0.0]), spec)

    def test_outside(self, spec):
        assert not in_B(np.array([0.5, 0.0]), spec)


class TestClassify:
    def test_generator(self, spec, alpha):
        cls = classify_w(alpha, spec)
        assert cls.ge_one and cls.expanding

    def test_inverse(self, spec, salem_field, salem_table, alpha):
        inv = unit_word(salem_field, salem_table, [alpha], [-1])
        cls = classify_w(inv, spec)
        assert not cls.ge_one and not cls.expanding

    def test_identity_convention(self, spec, salem_field, salem_table):
        one = make_unit(salem_field, salem_table, [1, 0, 0, 0])
        cls = classify_w(one, spec)
        assert cls.ge_one and cls.expanding

    def test_expanding_subset_of_ge_one(self, spec, salem_field, salem_table,
                                        alpha):
        for k in range(-6, 7):
            u = unit_word(salem_field, salem_table, [alpha], [k])
            cls = classify_w(u, spec)
            if cls.expanding:
                assert cls.ge_one


class TestInD:
    def test_diagonal_point_d1_identity(self, spec):
        kind, word = in_D(np.array([1.2, 1.2]), spec)
        assert kind == "D1" and word == (0,)

    def test_far_point_none(self, spec):
        assert in_D(np.array([0.5, 0.1]), spec) == (None, None)

    def test_origin_excluded(self, spec):
        assert in_D(np.array([0.0, 0.0]), spec) == (None, None)

    def test_d2_point(self, spec, salem_table):
        # inside the base sector, leading coordinate beyond the slab
        a = salem_table.values[0].real
        x = np.array([a ** 3, a ** 3 * 0.9])
        kind, word = in_D(x, spec, 1e-7)
        assert kind in ("D1", "D2")
        assert kind == "D2" or not in_B(x, spec)

    def test_axis_point_none(self, spec):
        assert in_D(np.array([1.2, 0.0]), spec) == (None, None)

    def test_equivariance(self, spec, salem_table):
        # acting a D1 point by g shifts its witness exponent by one
        g1 = float(spec.fan.labeled_diag(spec.fan.w.generators[0])[0])
        g2 = float(spec.fan.labeled_diag(spec.fan.w.generators[0])[1])
        x = np.array([1.2, 1.2])
        kind0, w0 = in_D(x, spec)
        y = np.array([1.2 / g1, 1.2 / g2])   # g^{-1} x
        kindy, wy = in_D(np.array([g1, g2]) * y, spec)
        assert (kind0, w0) == (kindy, wy)


class TestTiling:
    def test_salem_seed_42(self, spec):
        rep = tiling_check(spec, 1000, seed=42)
        assert rep.n_tiled == 1000
        assert not rep.failures
        assert abs(rep.c_constant - 1.0) < 1e-9
        assert rep.norm_bound_ok
        assert rep.norm_bound_min >= rep.c_constant - 1e-9
        assert math.isfinite(rep.r_fit) and rep.r_fit > 0

    def test_explicit_witness_bracketing(self, spec, salem_table):
        # x = (5, 0.1): alpha^2 <= 5 <= alpha^3, so two contractions land the
        # leading coordinate inside [1, alpha]
        a = salem_table.values[0].real
        assert a ** 2 <= 5.0 <= a ** 3
        hit = None
        for m in range(0, -5, -1):
            y = np.array([a ** m * 5.0, a ** (-m) * 0.1])
            kind, _ = in_D(y, spec, 1e-7)
            if kind:
                hit = m
                break
        assert hit == -2

    def test_b_point_identity_witness(self, spec):
        kind, word = in_D(np.array([1.3, 1.0]), spec, 1e-7)
        assert kind is not None and word == (0,)


class TestBTiling:
    def test_rank_one_interval(self, spec):
        rep = tiling_of_Bb(spec, 1000, seed=1)
        assert rep.passed

    def test_rank_two_synthetic_fails_coverage(self, salem_table, alpha,
                                               om_squared):
        # Honest negative: for the synthetic rank-2 lattice from the two
        # Salem-field units, the log-image of the multiplicative simplex has
        # area ~0.68 < covolume ~1.30, so translates cannot cover the
        # parallelepiped. The sampled check must detect a gap.
        a2 = SubgroupW([alpha, om_squared], 2, labeling=(0, 1))
        fan = QuotientFan([cone([[1.0, 1.0]])], a2, OmegaCone(2, 2),
                          salem_table, 8)
        spec2 = make_domain_spec(fan)
        rep = tiling_of_Bb(spec2, 500, seed=7, window=8)
        assert not rep.passed
        assert rep.counterexample is not None
