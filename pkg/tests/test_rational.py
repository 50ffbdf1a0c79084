import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempint.oracle import EvalPoint
from tempint.rational import (
    BivariatePoly,
    ParseError,
    PoleError,
    RationalApproximant,
    approximant_eval_g,
    index_pairs,
    load_coeffs,
    paper_approximant,
    poly_eval,
    rational_eval_h,
    rational_eval_h_array,
    save_coeffs,
)


def test_index_pairs_graded_lex():
    assert index_pairs(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(index_pairs(4)) == 15


class TestPolyEval:
    def test_zero_poly(self):
        p = BivariatePoly(3, {})
        assert poly_eval(p, EvalPoint(1.7, 42.0)) == 0.0

    def test_linear(self):
        p = BivariatePoly(1, {(0, 0): 1.0, (1, 0): 2.0})
        assert poly_eval(p, EvalPoint(-3.0, 3.0)) == 7.0

    def test_paper_numerator_at_origin_m(self):
        r = paper_approximant(1)
        expected = 0.237276056849810 + 0.388591025647952 * 10.0
        assert poly_eval(r.numer, EvalPoint(0.0, 10.0)) == pytest.approx(
            expected, rel=1e-15)

    def test_invalid_index(self):
        with pytest.raises(ValueError):
            BivariatePoly(1, {(1, 1): 2.0})

    def test_array_eval_matches_scalar(self):
        p = BivariatePoly(2, {(0, 0): 1.0, (1, 1): -0.5, (0, 2): 2.0})
        xs = np.array([4.0, 10.0, 100.0])
        vals = p.eval(1.5, xs)
        for x, v in zip(xs, vals):
            assert v == p.eval(1.5, float(x))


class TestRationalEval:
    def test_identity_ratio(self):
        p = BivariatePoly(1, {(0, 0): 0.3, (1, 0): 1.1, (0, 1): -2.0})
        r = RationalApproximant(p, p)
        for point in (EvalPoint(0.0, 5.0), EvalPoint(-3.3, 77.0)):
            assert rational_eval_h(r, point) == 1.0

    def test_paper_g1_value(self):
        r = paper_approximant(1)
        expected = (0.237276056849810 + 3.88591025647952) / (1 + 3.86946448530584)
        assert rational_eval_h(r, EvalPoint(0.0, 10.0)) == pytest.approx(
            expected, rel=1e-15)

    def test_g3_accuracy_at_0_20(self, oracle_cfg):
        from tempint.oracle import h
        r = paper_approximant(3)
        hv = h(EvalPoint(0.0, 20.0), oracle_cfg)
        assert rational_eval_h(r, EvalPoint(0.0, 20.0)) == pytest.approx(
            hv, rel=1.72e-6)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            RationalApproximant(BivariatePoly(1, {(0, 0): 1.0}),
                                BivariatePoly(2, {(0, 0): 1.0}))

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            RationalApproximant(BivariatePoly(1, {(0, 0): 1.0}),
                                BivariatePoly(1, {}))

    def test_pole_error(self):
        r = RationalApproximant(
            BivariatePoly(1, {(0, 0): 1.0}),
            BivariatePoly(1, {(0, 0): -10.0, (1, 0): 1.0}))
        with pytest.raises(PoleError):
            rational_eval_h(r, EvalPoint(0.0, 10.0))
        with pytest.raises(PoleError):
            rational_eval_h_array(r, 0.0, np.array([4.0, 50.0]))

    @given(k=st.integers(-40, 40), neg=st.booleans(),
           m=st.floats(-4.0, 4.0), x=st.floats(4.0, 100.0))
    @settings(max_examples=200, deadline=None)
    def test_scale_invariance(self, k, neg, m, x):
        # dyadic scales keep the coefficient products exact, so the ratio
        # must agree to 2 ulps
        lam = (-1.0 if neg else 1.0) * 2.0 ** k
        r = paper_approximant(2)
        scaled = RationalApproximant(
            BivariatePoly(2, {k_: lam * v for k_, v in r.numer.coeffs.items()}),
            BivariatePoly(2, {k_: lam * v for k_, v in r.denom.coeffs.items()}))
        point = EvalPoint(m, x)
        v1 = rational_eval_h(r, point)
        v2 = rational_eval_h(scaled, point)
        assert v2 == pytest.approx(v1, rel=4.5e-16)  # 2 ulps

    def test_scale_invariance_non_dyadic(self):
        # arbitrary scales round each coefficient; allow a little headroom
        lam = 3.7
        r = paper_approximant(2)
        scaled = RationalApproximant(
            BivariatePoly(2, {k: lam * v for k, v in r.numer.coeffs.items()}),
            BivariatePoly(2, {k: lam * v for k, v in r.denom.coeffs.items()}))
        for m in (-4.0, -1.3, 0.0, 2.5, 4.0):
            for x in (4.0, 17.0, 63.0, 100.0):
                point = EvalPoint(m, x)
                assert rational_eval_h(scaled, point) == pytest.approx(
                    rational_eval_h(r, point), rel=1e-13)

    def test_prefactor(self):
        p = BivariatePoly(1, {(0, 0): 1.0, (1, 0): 0.5})
        r = RationalApproximant(p, p)
        assert approximant_eval_g(r, EvalPoint(-2.0, 5.0)) == pytest.approx(
            math.exp(-5.0), rel=1e-15)

    def test_g4_accuracy_at_0_50(self, oracle_cfg):
        from tempint.oracle import g_cf
        r = paper_approximant(4)
        g_true = g_cf(EvalPoint(0.0, 50.0), oracle_cfg)
        assert approximant_eval_g(r, EvalPoint(0.0, 50.0)) == pytest.approx(
            g_true, rel=6.18e-7)

    def test_g2_accuracy_at_2p5_4(self, oracle_cfg):
        from tempint.oracle import g_cf
        r = paper_approximant(2)
        g_true = g_cf(EvalPoint(2.5, 4.0), oracle_cfg)
        assert approximant_eval_g(r, EvalPoint(2.5, 4.0)) == pytest.approx(
            g_true, rel=6.26e-5)


class TestDenominatorSignConstancy:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_no_poles_on_fine_grid(self, n):
        r = paper_approximant(n)
        m = np.round(np.arange(-4.0, 4.0 + 1e-9, 0.01), 10)
        x = np.round(np.arange(4.0, 100.0 + 1e-9, 0.1), 10)
        mm, xx = np.meshgrid(m, x, indexing="ij")
        vals = rational_eval_h_array(r, mm, xx)  # raises PoleError on a pole
        assert np.all(np.isfinite(vals))


class TestSerialization:
    def test_round_trip_bit_exact(self, tmp_path):
        r = paper_approximant(2)
        path = tmp_path / "g2.coeff"
        save_coeffs(r, path)
        back = load_coeffs(path)
        assert back.numer.coeffs == r.numer.coeffs
        assert back.denom.coeffs == r.denom.coeffs

    @given(vals=st.lists(
        st.floats(allow_nan=False, allow_infinity=False,
                  min_value=-1e12, max_value=1e12),
        min_size=12, max_size=12))
    @settings(max_examples=50, deadline=None)
    def test_round_trip_random(self, vals, tmp_path_factory):
        if all(v == 0.0 for v in vals[6:]):
            vals[6] = 1.0
        pairs = index_pairs(2)
        r = RationalApproximant(
            BivariatePoly(2, dict(zip(pairs, vals[:6]))),
            BivariatePoly(2, dict(zip(pairs, vals[6:]))))
        path = tmp_path_factory.mktemp("coeff") / "r.coeff"
        save_coeffs(r, path)
        back = load_coeffs(path)
        assert back.numer.coeffs == r.numer.coeffs
        assert back.denom.coeffs == r.denom.coeffs

    def test_bundled_g1_value(self):
        r = paper_approximant(1)
        assert r.numer.coeff(0, 1) == -0.039895879080345

    def test_bundled_g4_b00(self):
        assert paper_approximant(4).denom.coeff(0, 0) == 1e-05

    def test_bundled_g2_has_12_coeffs(self):
        r = paper_approximant(2)
        assert len(r.numer.coeffs) + len(r.denom.coeffs) == 12

    def test_parse_error_bad_index(self, tmp_path):
        path = tmp_path / "bad.coeff"
        path.write_text("degree 1\na 1 1 2.0\n")
        with pytest.raises(ParseError):
            load_coeffs(path)

    def test_parse_error_bad_header(self, tmp_path):
        path = tmp_path / "bad.coeff"
        path.write_text("order 1\n")
        with pytest.raises(ParseError, match="degree"):
            load_coeffs(path)

    def test_parse_error_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.coeff"
        path.write_text("degree 1\na 0 0 1.0\nb 0 0 1.0\n")
        with pytest.raises(ParseError, match="expected 3"):
            load_coeffs(path)
