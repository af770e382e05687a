"""Tests for exact polynomials and root isolation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

small_coeffs = st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=16)


def _cubic():
    from src.services.poly import IntPoly, poly_mul

    x = IntPoly.x()
    one = IntPoly.constant(1)
    roots = [x - one, x - IntPoly.constant(2), x - IntPoly.constant(3)]
    return poly_mul(poly_mul(roots[0], roots[1]), roots[2])


@pytest.mark.unit
class TestIntPolyRing:
    """Ring operations agree with evaluation."""

    @given(small_coeffs, small_coeffs)
    @settings(max_examples=50, deadline=None)
    def test_add_and_mul_commute(self, a, b):
        from src.services.poly import IntPoly, poly_add, poly_mul

        p, q = IntPoly.from_coeffs(a), IntPoly.from_coeffs(b)
        assert poly_add(p, q) == poly_add(q, p)
        assert poly_mul(p, q) == poly_mul(q, p)

    @given(small_coeffs, small_coeffs, small_coeffs)
    @settings(max_examples=30, deadline=None)
    def test_distributive(self, a, b, c):
        from src.services.poly import IntPoly

        p, q, r = (IntPoly.from_coeffs(v) for v in (a, b, c))
        assert p * (q + r) == p * q + p * r

    @given(small_coeffs, small_coeffs, rationals)
    @settings(max_examples=50, deadline=None)
    def test_evaluation_is_a_homomorphism(self, a, b, x):
        from src.services.poly import IntPoly, eval_rational

        p, q = IntPoly.from_coeffs(a), IntPoly.from_coeffs(b)
        assert eval_rational(p * q, x) == eval_rational(p, x) * eval_rational(q, x)
        assert eval_rational(p + q, x) == eval_rational(p, x) + eval_rational(q, x)

    @given(small_coeffs, small_coeffs, rationals)
    @settings(max_examples=30, deadline=None)
    def test_composition(self, a, b, x):
        from src.services.poly import IntPoly, eval_rational, poly_compose

        p, q = IntPoly.from_coeffs(a), IntPoly.from_coeffs(b)
        assert eval_rational(poly_compose(p, q), x) == eval_rational(p, eval_rational(q, x))

    def test_degree_and_dump(self):
        from src.services.poly import IntPoly

        p = IntPoly.from_coeffs([1, -2, Fraction(1, 3)])
        assert p.degree == 2
        assert list(p.dump_lines()) == ["0 1/1", "1 -2/1", "2 1/3"]
        assert list(p.dump_lines(header="family=P level=2"))[0] == "# family=P level=2"
        assert IntPoly.from_coeffs([0]).degree == -1

    def test_exact_division(self):
        from src.services.poly import IntPoly, poly_divide_exact

        x = IntPoly.x()
        one = IntPoly.constant(1)
        assert poly_divide_exact(x * x - one, x - one) == x + one

    def test_inexact_division_raises(self):
        from src.core.exceptions import ExactnessError
        from src.services.poly import IntPoly, poly_divide_exact

        x = IntPoly.x()
        with pytest.raises(ExactnessError):
            poly_divide_exact(x * x, x - IntPoly.constant(1))


@pytest.mark.unit
class TestRootIsolation:
    """Sturm isolation, guide isolation and refinement."""

    def test_sturm_isolates_three_roots(self):
        from gmpy2 import mpq

        from src.services.poly import sturm_isolate

        intervals = sturm_isolate(_cubic(), 0, 4)
        assert len(intervals) == 3
        for iv, root in zip(intervals, (1, 2, 3)):
            assert iv.contains(mpq(root))

    def test_sturm_rejects_repeated_roots(self):
        from src.core.exceptions import MultiplicityError
        from src.services.poly import IntPoly, sturm_isolate

        x_minus_one = IntPoly.x() - IntPoly.constant(1)
        with pytest.raises(MultiplicityError):
            sturm_isolate(x_minus_one * x_minus_one, 0, 3)

    def test_sturm_rejects_root_at_endpoint(self):
        from src.core.exceptions import DomainError
        from src.services.poly import sturm_isolate

        with pytest.raises(DomainError):
            sturm_isolate(_cubic(), 1, 4)

    def test_guides_certify_isolation(self):
        from gmpy2 import mpq

        from src.services.poly import isolate_at_guides

        points = [mpq(0), mpq(3, 2), mpq(5, 2), mpq(4)]
        found = isolate_at_guides(_cubic(), points)
        assert found is not None
        assert len(found) == 3
        assert isolate_at_guides(_cubic(), [mpq(0), mpq(4)]) is None

    def test_refine_square_root_of_two(self):
        from gmpy2 import mpq

        from src.services.poly import IntPoly, refine_interval, sturm_isolate

        p = IntPoly.from_coeffs([-2, 0, 1])
        (iv,) = sturm_isolate(p, 1, 2)
        refined = refine_interval(p, iv, mpq(1, 10**10))
        assert refined.width < mpq(1, 10**10)
        assert refined.lo * refined.lo < 2 < refined.hi * refined.hi


@pytest.mark.unit
class TestEnclosures:
    """Rational enclosures of the inverse branches and certified signs."""

    def test_exact_branch_values(self):
        from gmpy2 import mpq

        from src.services.poly import phi_enclosure

        assert phi_enclosure(1, mpq(6), mpq(6)) == (mpq(3), mpq(3))
        assert phi_enclosure(-1, mpq(6), mpq(6)) == (mpq(2), mpq(2))

    def test_enclosure_contains_float_value(self):
        from math import sqrt

        from gmpy2 import mpq

        from src.services.poly import phi_iterate_enclosure

        lo, hi = phi_iterate_enclosure(-1, mpq(5), 1)
        value = (5 - sqrt(5)) / 2
        assert float(lo) - 1e-15 <= value <= float(hi) + 1e-15
        assert hi - lo < mpq(1, 2**50)

    def test_enclosure_rejects_large_argument(self):
        from gmpy2 import mpq

        from src.core.exceptions import DomainError
        from src.services.poly import phi_enclosure

        with pytest.raises(DomainError):
            phi_enclosure(-1, mpq(0), mpq(7))

    def test_certified_sign(self):
        from gmpy2 import mpq

        from src.services.poly import IntPoly, certified_sign

        p = IntPoly.x() - IntPoly.constant(1)
        assert certified_sign(p, mpq(2), mpq(3)) == 1
        assert certified_sign(p, mpq(-3), mpq(-2)) == -1
        assert certified_sign(p, mpq(0), mpq(2)) == 0
