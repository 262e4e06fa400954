import pytest
from hypothesis import given, strategies as st

from napdec.errors import BoundExceeded, DimensionMismatch, WrongConstruction
from napdec.generators import build_equal_char, build_magnus, negative_fixture
from napdec.pingpong import (LETTERS, PingPongConfig, SetId, audit, default_grid, grid_size,
                             member, minus, plus, structural_checks)
from napdec.valued_fields import FieldCtx, abs_value, parse_elem

from strategies import elements

QT, F5T = FieldCtx.tadic(0), FieldCtx.tadic(5)
CFG = {ctx: PingPongConfig.from_certificate(build_equal_char(ctx, 1))
       for ctx in (QT, F5T, FieldCtx.degree(0), FieldCtx.degree(3))}


def pt(ctx, x, y):
    return parse_elem(ctx, x), parse_elem(ctx, y)


def test_worked_point():
    cfg = CFG[QT]
    p = pt(QT, "t", "1")
    assert not member(cfg, minus("a"), p)
    image = cfg.a(p)
    assert image == pt(QT, "t+t^2", "1/(1+t)")
    assert member(cfg, plus("a"), image)
    sup = lambda q: max(abs_value(cfg.aux_ctx, c) for c in q)
    assert (sup(p), sup(image)) == (2, 4)


def test_origin():
    cfg = CFG[QT]
    o = (QT.zero, QT.zero)
    assert member(cfg, minus("a"), o) and member(cfg, minus("A"), o)
    ho = cfg.h(o)
    assert ho == pt(QT, "-t", "t")
    assert [abs_value(cfg.aux_ctx, c) for c in ho] == [2, 2]
    assert not member(cfg, minus("a"), ho) and not member(cfg, minus("A"), ho)


def test_set_ids():
    assert str(plus("b")) == "U+_b"
    with pytest.raises(ValueError):
        SetId(True, "c")
    with pytest.raises(DimensionMismatch):
        member(CFG[QT], plus("a"), (QT.one,))


def test_magnus_has_no_pingpong_sets():
    with pytest.raises(WrongConstruction):
        PingPongConfig.from_certificate(build_magnus(FieldCtx.padic(2), 1, 2, 1))


@pytest.mark.parametrize("ctx", list(CFG), ids=lambda c: c.describe())
def test_structure(ctx):
    assert structural_checks(CFG[ctx]).ok


@pytest.mark.parametrize("ctx", list(CFG), ids=lambda c: c.describe())
def test_small_grid_is_clean(ctx):
    grid = default_grid(ctx, 1, range(-1, 2), random_points=300, seed=5)
    report = audit(CFG[ctx], grid)
    assert report.ok, report.violations[:3]
    assert report.summary["points"] == len(grid)


@given(st.data())
def test_random_points_are_clean(data):
    ctx = data.draw(st.sampled_from([QT, F5T]))
    p = (data.draw(elements(ctx)), data.draw(elements(ctx)))
    assert audit(CFG[ctx], [p]).ok


@given(st.data())
def test_attracting_sets_are_disjoint(data):
    ctx = data.draw(st.sampled_from([QT, F5T]))
    p = (data.draw(elements(ctx)), data.draw(elements(ctx)))
    inside = [s for s in LETTERS if member(CFG[ctx], plus(s), p)]
    assert len(inside) <= 1


def test_mutated_tau_is_caught():
    report = audit(PingPongConfig.from_certificate(negative_fixture("mutated-tau")),
                   default_grid(QT, 1, range(-1, 2)))
    kinds = {v["condition"] for v in report.violations}
    assert {"h^-1 symmetry", "b-growth at origin", "aux_3"} <= kinds


class TestGrid:
    def test_constants(self):
        grid = default_grid(QT, 0, [-1, 0, 1])
        assert len(grid) == 9 == grid_size(QT, 0, [-1, 0, 1])

    def test_degree_one(self):
        grid = default_grid(QT, 1, [-1, 0, 1])
        assert pt(QT, "t", "1-t") in grid
        assert pt(QT, "1/t", "0") in grid

    def test_deterministic(self):
        a = default_grid(F5T, 1, range(-2, 3), random_points=50, seed=3)
        b = default_grid(F5T, 1, range(-2, 3), random_points=50, seed=3)
        assert a == b and len(set(a)) == len(a)

    def test_acceptance_grid_size(self):
        assert len(default_grid(QT, 2, range(-2, 3))) >= 2000

    def test_bounds(self):
        with pytest.raises(BoundExceeded):
            default_grid(QT, 3, range(-2, 3), max_points=1000)
        with pytest.raises(WrongConstruction):
            default_grid(FieldCtx.padic(2), 1, [0, 1])
