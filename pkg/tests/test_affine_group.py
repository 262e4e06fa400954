from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from napdec.affine_group import (AffineMap, apply, commute, compose, congruence_membership, det,
                                 embed, identity, inverse, is_identity, isometry_audit,
                                 isometry_epsilon, mat, mat_inverse, sa_membership, solve, trace,
                                 translation)
from napdec.errors import DimensionMismatch, IndexOutOfRange, PreconditionViolated, SingularLinearPart
from napdec.normed_space import NormSpec
from napdec.valued_fields import FieldCtx, parse_elem

from strategies import PADIC, elements

Q2 = FieldCtx.padic(2)
QT = FieldCtx.tadic(0)
A2 = mat(Q2, [[17, 4], [4, 1]])
G = AffineMap(A2, (Fraction(4), Fraction(0)))


def test_apply_examples():
    assert apply(identity(Q2, 2), (Fraction(3), Fraction(5))) == (3, 5)
    assert apply(G, (0, -1)) == (0, -1)
    assert apply(translation(Q2, (1, 1)), (0, 0)) == (1, 1)


def test_group_law():
    assert compose(G, identity(Q2, 2)) == G
    assert is_identity(compose(G, inverse(G)))
    assert (G @ G)((1, 0)) == G(G((1, 0)))


def test_det_of_equal_char_h():
    t = QT.t
    assert det(((1 + t, t), (-t, 1 - t))) == 1


def test_det_and_inverse_against_sympy():
    M = mat(Q2, [[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    S = sympy.Matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert det(M) == Fraction(str(S.det()))
    inv = mat_inverse(M)
    assert [[Fraction(str(c)) for c in row] for row in S.inv().tolist()] == [list(r) for r in inv]
    assert trace(M) == 9


def test_singular():
    with pytest.raises(SingularLinearPart):
        solve(mat(Q2, [[1, 2], [2, 4]]), (1, 1))
    with pytest.raises(SingularLinearPart):
        inverse(AffineMap(mat(Q2, [[1, 2], [2, 4]]), (0, 0)))


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        AffineMap(A2, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        apply(G, (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        compose(G, identity(Q2, 3))


class TestCongruence:
    def test_examples(self):
        assert congruence_membership(Q2, A2, Fraction(1, 2))
        assert congruence_membership(Q2, identity(Q2, 3).L, Fraction(1, 8))
        assert not congruence_membership(Q2, mat(Q2, [[1, 1], [0, 1]]), Fraction(1, 2))
        assert sa_membership(Q2, G, Fraction(1, 2))
        assert sa_membership(Q2, identity(Q2, 2), Fraction(1, 1024))

    def test_equal_char_diagonal(self):
        lam = 1 + QT.t
        a = AffineMap(((lam, QT.zero), (QT.zero, 1 / lam)), (QT.zero, QT.zero))
        assert sa_membership(QT, a, Fraction(1, 2))
        assert not sa_membership(QT, a, Fraction(1, 4))

    def test_eps_one_needs_unit_determinant(self):
        # every entry integral, but det 2 is not a 2-adic unit
        assert not congruence_membership(Q2, mat(Q2, [[2, 0], [0, 1]]), 1)

    def test_embed(self):
        assert embed(identity(Q2, 2), 3, 1) == identity(Q2, 3)
        e = embed(G, 3, 1)
        assert e.L == mat(Q2, [[17, 4, 0], [4, 1, 0], [0, 0, 1]])
        assert e.tau == (4, 0, 0)
        assert embed(G, 4, 3).L[3][2] == 4
        for i in (0, 3):
            with pytest.raises(IndexOutOfRange):
                embed(G, 3, i)


@given(st.data())
def test_congruence_subgroup_is_closed(data):
    ctx = data.draw(st.sampled_from(PADIC))
    p = ctx.p
    draw = lambda: data.draw(st.integers(-50, 50))
    A = mat(ctx, [[1 + p * draw(), p * draw()], [p * draw(), 1 + p * draw()]])
    B = mat(ctx, [[1 + p * draw(), p * draw()], [p * draw(), 1 + p * draw()]])
    eps = Fraction(1, p)
    assert congruence_membership(ctx, A, eps) and congruence_membership(ctx, B, eps)
    AB = compose(AffineMap(A, (0, 0)), AffineMap(B, (0, 0))).L
    assert congruence_membership(ctx, AB, eps)
    assert congruence_membership(ctx, mat_inverse(A), eps)


@given(st.data())
def test_inverse_and_det_multiplicative(data):
    ctx = data.draw(st.sampled_from(PADIC + [QT]))
    entries = [data.draw(elements(ctx)) for _ in range(6)]
    g = AffineMap(((entries[0], entries[1]), (entries[2], entries[3])), (entries[4], entries[5]))
    h = AffineMap(((entries[3], entries[2]), (entries[1], entries[0] + 1)), (entries[5], entries[4]))
    assert det(compose(g, h).L) == det(g.L) * det(h.L)
    if det(g.L):
        assert is_identity(compose(inverse(g), g))
        assert commute(g, inverse(g))


class TestIsometry:
    @pytest.mark.parametrize("weights,eps", [
        (None, 1), ((1, Fraction(1, 2)), Fraction(1, 2)), ((4, 2, 1), Fraction(1, 4))])
    def test_epsilon(self, weights, eps):
        assert isometry_epsilon(NormSpec(weights)) == eps

    def test_worked_example(self):
        spec = NormSpec.weighted((1, Fraction(1, 2)))
        report = isometry_audit(Q2, spec, A2, [(1, 0), (0, 1), (Fraction(1, 2), 3)])
        assert report.ok and report.checked == 3

    def test_precondition(self):
        spec = NormSpec.weighted((1, Fraction(1, 2)))
        with pytest.raises(PreconditionViolated):
            isometry_audit(Q2, spec, mat(Q2, [[1, 1], [0, 1]]), [(1, 0)])

    def test_function_field(self):
        t = QT.t
        A = ((1 + t, t), (-t, 1 - t))
        xs = [(parse_elem(QT, "1/t"), QT.one), (QT.t, parse_elem(QT, "1+t^2"))]
        assert isometry_audit(QT, NormSpec.weighted((1, Fraction(1, 2))), A, xs).ok
