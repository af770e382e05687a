"""Tests for the determinant polynomial families and their root tables."""

import pytest


@pytest.mark.unit
class TestEntryPolys:
    def test_expanded_forms(self):
        from src.services.poly import IntPoly
        from src.services.primitive import entry_polys

        e = entry_polys()
        assert e.s == IntPoly.from_coeffs([26, -35, 11, -1])
        assert e.l == IntPoly.from_coeffs([-6, 1])
        assert e.s_tilde == IntPoly.from_coeffs([19, -9, 1])


@pytest.mark.unit
class TestFamilies:
    """Exact values and degrees of the family members."""

    @pytest.mark.parametrize(
        "family,m,point,expected",
        [
            ("Q", 2, 0, 26),
            ("Q", 3, 0, 556),
            ("Q", 2, 6, -4),
            ("QTilde", 3, 6, -436),
            ("LTilde", 2, 6, -40),
            ("P", 2, 2, -8),
            ("P", 3, 2, 68),
            ("P", 4, 2, 14064),
        ],
    )
    def test_anchor_values(self, family, m, point, expected):
        from src.services.primitive import FamilyName, build_family

        assert build_family(FamilyName(family), m).poly.evaluate(point) == expected

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_degrees_follow_closed_forms(self, m):
        from src.services.primitive import FamilyName, build_family, expected_degree

        for family in (FamilyName.P, FamilyName.PTILDE, FamilyName.Q, FamilyName.PN, FamilyName.L):
            assert build_family(family, m).degree == expected_degree(family, m)

    def test_primitive_degree_values(self):
        from src.services.primitive import FamilyName, expected_degree

        assert expected_degree(FamilyName.P, 3) == 8
        assert expected_degree(FamilyName.PTILDE, 3) == 6
        assert expected_degree(FamilyName.PN, 1) == 2
        assert expected_degree(FamilyName.LTILDE, 3) is None

    def test_f_iterate_poly(self):
        from src.services.primitive import f_iterate_poly

        assert f_iterate_poly(0).degree == 1
        assert f_iterate_poly(2).degree == 4
        assert f_iterate_poly(2).evaluate(1) == 4 * (5 - 4)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_neumann_skeleton_determinant(self, m):
        from src.services.poly import IntPoly
        from src.services.primitive import FamilyName, build_family
        from src.services.primitive.families import _l_tilde, _tridiagonal_det, neumann_rows

        rows = neumann_rows(m)
        assert len(rows) == m + 1
        assert _tridiagonal_det(rows) == build_family(FamilyName.QN, m).poly
        # the upper-left m x m minor is l~_m
        assert _tridiagonal_det(rows[:-1]) == _l_tilde(m)
        qn = build_family(FamilyName.QN, m).poly
        assert qn.degree == 2 ** (m + 1) - 2
        assert qn.evaluate(0) == 0 and qn.evaluate(6) == 0
        if m == 1:
            assert qn == IntPoly.from_coeffs([0, -6, 1])

    def test_skew_neumann_uses_skew_rows(self):
        from src.services.primitive import FamilyName, build_family
        from src.services.primitive.families import tridiagonal_rows

        rows = tridiagonal_rows(3, skew=True)
        assert rows[0][0].is_zero
        assert build_family(FamilyName.QTILDEN, 3).degree > 0

    def test_level_below_family_start(self):
        from src.core.exceptions import InvalidLevelError
        from src.services.primitive import FamilyName, build_family

        with pytest.raises(InvalidLevelError):
            build_family(FamilyName.P, 1)

    def test_level_above_cap(self):
        from src.core.exceptions import SizeLimitError
        from src.services.primitive import FamilyName, build_family

        with pytest.raises(SizeLimitError):
            build_family(FamilyName.P, 4, max_level=3)


@pytest.mark.unit
class TestRootTables:
    """Root isolation against the reference tables."""

    def test_base_level_matches_table(self, golden_m2):
        from src.services.primitive import FamilyName, isolate_family_roots

        p2 = isolate_family_roots(FamilyName.P, 2)
        expected = [v for v, _, t in golden_m2 if t == "P+"]
        assert p2.method == "sturm"
        assert p2.values == pytest.approx(expected, abs=1e-6)

    def test_level_three_matches_table(self, golden_m3):
        from src.services.primitive import FamilyName, isolate_family_roots

        plus = [v for v, _, t in golden_m3 if t == "P+"]
        minus = [v for v, _, t in golden_m3 if t == "P-"]
        assert isolate_family_roots(FamilyName.P, 3).values == pytest.approx(plus, abs=1e-6)
        assert isolate_family_roots(FamilyName.PTILDE, 3).values == pytest.approx(minus, abs=1e-6)

    def test_one_root_above_five(self):
        from src.services.primitive import FamilyName, isolate_family_roots

        values = isolate_family_roots(FamilyName.P, 4).values
        assert len(values) == 18
        assert [v for v in values if v > 5] == [values[-1]]

    def test_neumann_closed_form_roots(self):
        from src.services.primitive import FamilyName, isolate_family_roots

        assert isolate_family_roots(FamilyName.PN, 1).values == [0.0, 6.0]
        assert isolate_family_roots(FamilyName.PTILDEN, 1).values == [6.0]

    def test_neumann_roots_pair_to_five(self):
        from src.services.primitive import FamilyName, isolate_family_roots

        values = isolate_family_roots(FamilyName.PN, 3).values
        inner = values[1:-1]
        for a, b in zip(inner, reversed(inner)):
            assert a + b == pytest.approx(5.0, abs=1e-9)

    def test_later_roots_have_ancestry(self):
        from src.services.primitive import FamilyName, isolate_family_roots

        table = isolate_family_roots(FamilyName.P, 3)
        assert any(not r.is_initial for r in table.roots)
        assert all(r.bracket.startswith("phi") for r in table.roots if not r.is_initial)

    def test_family_without_root_table(self):
        from src.core.exceptions import DomainError
        from src.services.primitive import FamilyName, isolate_family_roots

        with pytest.raises(DomainError):
            isolate_family_roots(FamilyName.Q, 3)

    def test_primitive_roots_selects_family(self):
        from src.services.primitive import FamilyName, primitive_roots

        assert primitive_roots(3, neumann=False, skew=True).family is FamilyName.PTILDE
        assert primitive_roots(2, neumann=True, skew=False).family is FamilyName.PN


@pytest.mark.unit
class TestStructuralChecks:
    """Sign and interlacing suites."""

    def test_sign_anchor_lines(self):
        from src.services.primitive import verify_sign_theorems

        lines = [c.line() for c in verify_sign_theorems(3)]
        assert "[signs] p_2(2) = -8 OK" in lines
        assert "[signs] p_3(2) = 68 OK" in lines

    @pytest.mark.slow
    def test_sign_theorems_through_level_five(self):
        from src.services.primitive import verify_sign_theorems

        lines = [c.line() for c in verify_sign_theorems(5)]
        assert "[signs] p_5(2) = -593514756 OK" in lines

    def test_interlacing_level_three(self):
        from src.services.primitive import verify_interlacing

        checks = verify_interlacing(3)
        assert checks
        assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]

    def test_checks_need_level_two(self):
        from src.core.exceptions import InvalidLevelError
        from src.services.primitive import verify_sign_theorems

        with pytest.raises(InvalidLevelError):
            verify_sign_theorems(1)
