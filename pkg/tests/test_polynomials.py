import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lormatch import ANY_DEGREE, FloatPoly, Poly, elementary_symmetric


def _coeffs():
    return st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, max_vars=3, max_deg=3, max_terms=5, min_vars=1):
    nvars = draw(st.integers(min_vars, max_vars))
    exps = st.tuples(*([st.integers(0, max_deg)] * nvars))
    terms = draw(st.dictionaries(exps, _coeffs(), max_size=max_terms))
    return Poly(nvars, terms)


@st.composite
def poly_pairs(draw, max_vars=3, max_deg=2, max_terms=3):
    nvars = draw(st.integers(1, max_vars))
    exps = st.tuples(*([st.integers(0, max_deg)] * nvars))
    terms = st.dictionaries(exps, _coeffs(), max_size=max_terms)
    return Poly(nvars, draw(terms)), Poly(nvars, draw(terms))


class TestConstruction:
    def test_zero_terms_pruned(self):
        f = Poly(2, {(1, 0): Fraction(0), (0, 1): 3})
        assert f.support() == {(0, 1)}

    def test_variable_and_monomial(self):
        assert Poly.variable(3, 1) == Poly.monomial(3, (0, 1, 0))
        assert Poly.monomial(2, (1, 2), Fraction(3, 4)).coefficient((1, 2)) == Fraction(3, 4)

    def test_constant(self):
        one = Poly.constant(2, 1)
        assert one.homogeneous_degree() == 0
        assert Poly.constant(2, 0) == Poly.zero(2)

    def test_float_coefficients_rejected(self):
        with pytest.raises(TypeError, match="FloatPoly"):
            Poly(1, {(1,): 0.5})

    def test_bad_exponent_rejected(self):
        with pytest.raises(ValueError):
            Poly(2, {(1,): 1})
        with pytest.raises(ValueError):
            Poly(2, {(-1, 0): 1})


class TestArithmetic:
    @given(poly_pairs())
    def test_add_commutes(self, pair):
        f, g = pair
        assert f + g == g + f

    @given(poly_pairs(max_vars=2))
    def test_mul_commutes(self, pair):
        f, g = pair
        assert f * g == g * f

    @given(polys(max_vars=2, max_deg=2, max_terms=3))
    def test_pow_matches_repeated_mul(self, f):
        assert f**3 == f * f * f
        assert f**0 == Poly.constant(f.nvars, 1)

    @given(polys())
    def test_sub_self_is_zero(self, f):
        assert f - f == Poly.zero(f.nvars)

    def test_scale(self):
        f = Poly(1, {(2,): 3})
        assert f.scale(Fraction(1, 3)) == Poly(1, {(2,): 1})

    def test_distributive_example(self):
        x, y = Poly.variable(2, 0), Poly.variable(2, 1)
        assert (x + y) * (x - y) == x * x - y * y


class TestCalculusAndStructure:
    def test_derivative_falling_factorial(self):
        f = Poly(1, {(3,): 1})
        assert f.derivative_multi((2,)) == Poly(1, {(1,): 6})
        assert f.derivative_multi((4,)) == Poly.zero(1)

    @given(polys(max_vars=2, max_deg=3, max_terms=4, min_vars=2))
    def test_derivative_iterates(self, f):
        step = f.derivative_multi((1, 0)).derivative_multi((0, 1))
        assert step == f.derivative_multi((1, 1))

    def test_homogeneous_degree(self):
        assert Poly.zero(2).homogeneous_degree() is ANY_DEGREE
        assert Poly(2, {(1, 1): 1}).homogeneous_degree() == 2
        assert Poly(2, {(1, 0): 1, (1, 1): 1}).homogeneous_degree() is None

    def test_multiaffine_part(self):
        f = Poly(2, {(1, 1): 2, (2, 0): 5, (0, 1): 7})
        assert f.multiaffine_part() == Poly(2, {(1, 1): 2, (0, 1): 7})

    def test_normalized_coeff(self):
        f = Poly(2, {(2, 1): Fraction(1, 2)})
        assert f.normalized_coeff((2, 1)) == Fraction(1, 2) * 2
        assert f.coefficient((0, 0)) == 0

    def test_substitute_linear(self):
        # x1 -> y1 + y2, x2 -> y2 applied to x1 x2
        f = Poly(2, {(1, 1): 1})
        images = [Poly(2, {(1, 0): 1, (0, 1): 1}), Poly(2, {(0, 1): 1})]
        assert f.substitute(images, 2) == Poly(2, {(1, 1): 1, (0, 2): 1})

    def test_substitute_zero_image_kills_terms(self):
        f = Poly(2, {(1, 1): 1, (0, 2): 1})
        images = [Poly.zero(1), Poly.variable(1, 0)]
        assert f.substitute(images, 1) == Poly(1, {(2,): 1})

    def test_eval_exact(self):
        f = Poly(2, {(1, 1): 2, (2, 0): 1})
        assert f.eval_exact([Fraction(1, 2), 3]) == 3 + Fraction(1, 4)

    def test_eval_complex(self):
        f = Poly(1, {(2,): 1})
        assert abs(f.eval_complex([1j]) + 1) < 1e-12


class TestJson:
    @given(polys())
    def test_round_trip_plain(self, f):
        assert Poly.from_json(f.to_json()) == f

    @given(polys())
    def test_round_trip_normalized(self, f):
        assert Poly.from_json(f.to_json("normalized")) == f

    def test_coeff_field_accepted(self):
        data = {"nvars": 2, "terms": [{"exp": [1, 0], "coeff": "1/2"}, {"exp": [0, 1], "coeff": 2}]}
        assert Poly.from_json(data) == Poly(2, {(1, 0): Fraction(1, 2), (0, 1): 2})

    def test_float_json_rejected(self):
        with pytest.raises(ValueError):
            Poly.from_json({"nvars": 1, "terms": [{"exp": [1], "coeff": 0.5}]})
        with pytest.raises(ValueError):
            Poly.from_json({"nvars": 1, "terms": [{"exp": [1], "num": 1.5}]})

    def test_terms_sorted_graded_lex(self):
        f = Poly(2, {(0, 2): 1, (1, 0): 1, (2, 0): 1})
        exps = [tuple(t["exp"]) for t in f.to_json()["terms"]]
        assert exps == [(1, 0), (0, 2), (2, 0)]


class TestElementarySymmetric:
    def test_counts(self):
        f = elementary_symmetric(4, 2)
        assert len(f.support()) == 6
        assert f.homogeneous_degree() == 2
        assert all(c == 1 for _, c in f.items())

    def test_extremes(self):
        assert elementary_symmetric(3, 0) == Poly.constant(3, 1)
        assert elementary_symmetric(3, 3) == Poly(3, {(1, 1, 1): 1})
        with pytest.raises(ValueError):
            elementary_symmetric(2, 3)


class TestFloatPoly:
    def test_from_poly(self):
        f = Poly(2, {(1, 1): Fraction(1, 2)})
        fp = FloatPoly.from_poly(f)
        assert fp.coefficient((1, 1)) == 0.5

    def test_exact_zero_pruned(self):
        fp = FloatPoly(1, {(1,): 0.0, (2,): 1.0})
        assert fp.support() == {(2,)}

    def test_derivative(self):
        fp = FloatPoly(1, {(3,): 1.0})
        assert fp.derivative_multi((1,)).coefficient((2,)) == 3.0

    def test_normalized_coeff(self):
        fp = FloatPoly(1, {(3,): 0.5})
        assert math.isclose(fp.normalized_coeff((3,)), 3.0)
