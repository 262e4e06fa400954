import random
from fractions import Fraction

import pytest
import sympy

from napdec.affine_group import AffineMap, congruence_membership, det, identity, mat, sa_membership
from napdec.errors import PreconditionViolated, WrongConstruction
from napdec.generators import (EQUAL_CHAR, MAGNUS, GeneratorCertificate, build_equal_char,
                               build_for_field, build_magnus, fixed_point, local_commutativity_audit, magnus_exponents,
                               magnus_matrix, negative_fixture, nonparabolic_audit,
                               random_congruence_matrix, verify_aux_conditions)
from napdec.valued_fields import FieldCtx, format_elem, parse_elem

Q2, Q3 = FieldCtx.padic(2), FieldCtx.padic(3)
QT, F5T = FieldCtx.tadic(0), FieldCtx.tadic(5)


@pytest.mark.parametrize("m,rows", [(1, [[5, 2], [2, 1]]), (2, [[17, 4], [4, 1]]),
                                    (4, [[65, 8], [8, 1]])])
def test_magnus_matrix(m, rows):
    assert magnus_matrix(m) == mat(Q2, rows)
    assert det(magnus_matrix(m)) == 1


class TestMagnus:
    def test_p2(self):
        c = build_magnus(Q2, 1, 2, Fraction(1, 2))
        assert c.a.L == mat(Q2, [[17, 4], [4, 1]]) and c.a.tau == (4, 0)
        assert c.b.L == mat(Q2, [[65, 8], [8, 1]]) and c.b.tau == (4, 0)

    def test_p3(self):
        c = build_magnus(Q3, 1, 2, Fraction(1, 3))
        assert c.a.L == mat(Q3, [[37, 6], [6, 1]]) and c.a.tau == (6, 0)

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            build_magnus(Q2, 2, 1, Fraction(1, 2))
        with pytest.raises(PreconditionViolated):
            build_magnus(Q2, 1, 2, Fraction(1, 4))
        with pytest.raises(PreconditionViolated):
            build_magnus(QT, 1, 2, 1)

    def test_exponents(self):
        assert magnus_exponents(Q2, Fraction(1, 2)) == (1, 2)
        assert magnus_exponents(Q3, Fraction(1, 18)) == (3, 4)


class TestEqualChar:
    def test_parameters(self):
        c = build_equal_char(QT, 1)
        names = [format_elem(QT, v) for v in c.aux_params]
        assert names == ["1+t", "t", "-t", "1-t", "-t", "t", "1+t"]
        assert c.aux_ctx == FieldCtx.degree(0)

    def test_b_is_conjugate(self):
        c = build_equal_char(QT, 1)
        t = sympy.Symbol("t")
        h = sympy.Matrix([[1 + t, t, -t], [-t, 1 - t, t], [0, 0, 1]])
        a = sympy.diag(1 + t, 1 / (1 + t), 1)
        b = sympy.simplify(h * a * h.inv())
        for i in range(2):
            for j in range(2):
                ours = parse_elem(QT, format_elem(QT, c.b.L[i][j]))
                assert sympy.simplify(b[i, j] - sympy.sympify(str(ours).replace("^", "**"))) == 0

    def test_f5_reduces_coefficients(self):
        c = build_equal_char(F5T, 1)
        assert all(x.p == 5 for row in c.b.L for x in row)
        assert sa_membership(F5T, c.b, 1)

    def test_smaller_eps_uses_higher_power(self):
        c = build_equal_char(QT, Fraction(1, 4))
        assert c.params["m"] == 3 and c.params["u"] == "t^3"

    def test_degree_context(self):
        c = build_equal_char(FieldCtx.degree(3), Fraction(1, 2))
        assert c.params["u"] == "1/t^2"
        assert c.aux_ctx == FieldCtx.tadic(3)
        assert verify_aux_conditions(c).ok

    def test_dispatch(self):
        assert build_for_field(Q3, 1).construction == MAGNUS
        assert build_for_field(F5T, 1).construction == EQUAL_CHAR
        assert build_for_field(QT, 1).construction == EQUAL_CHAR


class TestAuxConditions:
    @pytest.mark.parametrize("ctx", [QT, F5T])
    def test_pass(self, ctx):
        report = verify_aux_conditions(build_equal_char(ctx, 1))
        assert report.ok and report.checked == 10
        assert report.summary["common_value"] == "2"
        assert report.summary["lambda"] == "2"

    def test_mutated_tau(self):
        report = verify_aux_conditions(negative_fixture("mutated-tau"))
        assert sorted(v["condition"] for v in report.violations) == [5, 7, 8]
        assert report.violations[0]["value"] == "4"

    def test_lambda_one(self):
        report = verify_aux_conditions(negative_fixture("lambda-one"))
        assert [v["condition"] for v in report.violations] == [9]

    def test_wrong_construction(self):
        with pytest.raises(WrongConstruction):
            verify_aux_conditions(build_magnus(Q2, 1, 2, Fraction(1, 2)))
        with pytest.raises(KeyError):
            negative_fixture("nope")


class TestFixedPoints:
    def test_magnus(self):
        c = build_magnus(Q2, 1, 2, Fraction(1, 2))
        fa, fb = fixed_point(c.a), fixed_point(c.b)
        assert fa == (0, -1) and fb == (0, Fraction(-1, 2))
        assert fa != fb
        assert fixed_point(identity(Q2, 2)) is None

    @pytest.mark.parametrize("p,s,t", [(2, 1, 3), (3, 1, 2), (5, 2, 3)])
    def test_magnus_formula(self, p, s, t):
        # Fix(a) = (0, -1), Fix(b) = (0, -p^(s-t)) by direct substitution
        ctx = FieldCtx.padic(p)
        c = build_magnus(ctx, s, t, Fraction(1, p ** s))
        assert fixed_point(c.a) == (0, -1)
        assert fixed_point(c.b) == (0, -Fraction(p) ** (s - t))


class TestAudits:
    def test_nonparabolic(self):
        report = nonparabolic_audit(build_magnus(Q2, 1, 2, Fraction(1, 2)), 6)
        assert report.ok and report.checked == 1456

    def test_nonparabolic_rejects_equal_char(self):
        with pytest.raises(WrongConstruction):
            nonparabolic_audit(build_equal_char(QT, 1), 2)

    @pytest.mark.parametrize("cert", [build_magnus(Q2, 1, 2, Fraction(1, 2)),
                                      build_equal_char(QT, 1)], ids=["magnus", "equal_char"])
    def test_local_commutativity(self, cert):
        report = local_commutativity_audit(cert, 3)
        assert report.ok
        assert report.checked == 52 * 51 // 2
        # w and w^2 share a fixed point, so shared pairs are found and commute
        assert report.summary["pairs_sharing_fixed_point"] > 0

    def test_local_commutativity_catches_noncommuting_pair(self):
        # two hyperbolic maps with the origin as unique fixed point
        a = AffineMap(mat(Q2, [[2, 0], [0, Fraction(1, 2)]]), (0, 0))
        b = AffineMap(mat(Q2, [[2, 1], [1, 1]]), (0, 0))
        cert = GeneratorCertificate(MAGNUS, {}, Q2, Fraction(1), a, b)
        assert not local_commutativity_audit(cert, 1).ok


@pytest.mark.parametrize("ctx", [Q2, QT, FieldCtx.degree(5)])
def test_random_congruence_matrix(ctx):
    rng = random.Random(3)
    for n in (2, 3):
        for _ in range(10):
            A = random_congruence_matrix(ctx, n, Fraction(1, 2), rng)
            assert congruence_membership(ctx, A, Fraction(1, 2))
