"""Ping-pong sets for the equal-characteristic pair and a pointwise checker.

The sets for ``a`` and ``a^-1`` are defined by comparing ``|x|``, ``|y|`` and
1 in the auxiliary valuation; the sets for ``b`` and ``b^-1`` are their
images under ``h``, so membership is tested at ``h^-1(point)``.  All
comparisons use valuation exponents (larger magnitude = smaller exponent),
never floats.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .affine_group import AffineMap, compose, inverse
from .errors import BoundExceeded, DimensionMismatch, WrongConstruction
from .generators import EQUAL_CHAR, GeneratorCertificate
from .report import Report
from .valued_fields import FieldCtx, RatFunc, format_elem, random_element, valuation

LETTERS = "aAbB"
INV = {"a": "A", "A": "a", "b": "B", "B": "b"}
MAX_GRID = 10 ** 6


@dataclass(frozen=True)
class SetId:
    """``U_s^+`` (``plus=True``) or ``U_s^-`` for ``s`` in ``"aAbB"``."""

    plus: bool
    letter: str

    def __post_init__(self):
        if self.letter not in LETTERS:
            raise ValueError(f"unknown letter {self.letter!r}")

    def __str__(self):
        return f"U{'+' if self.plus else '-'}_{self.letter}"


def plus(s: str) -> SetId:
    return SetId(True, s)


def minus(s: str) -> SetId:
    return SetId(False, s)


@dataclass(frozen=True)
class PingPongConfig:
    ctx: FieldCtx
    aux_ctx: FieldCtx
    a: AffineMap
    h: AffineMap
    hinv: AffineMap = field(init=False)
    b: AffineMap = field(init=False)
    maps: dict = field(init=False, compare=False)

    def __post_init__(self):
        hinv = inverse(self.h)
        b = compose(compose(self.h, self.a), hinv)
        object.__setattr__(self, "hinv", hinv)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "maps", {"a": self.a, "A": inverse(self.a),
                                          "b": b, "B": inverse(b)})

    @classmethod
    def from_certificate(cls, cert: GeneratorCertificate) -> "PingPongConfig":
        if cert.construction != EQUAL_CHAR:
            raise WrongConstruction("ping-pong sets are defined for the equal_char pair")
        return cls(cert.ctx, cert.aux_ctx, cert.a, cert.h)

    def vals(self, point: Sequence) -> tuple:
        return valuation(self.aux_ctx, point[0]), valuation(self.aux_ctx, point[1])


def _f(vals: tuple):
    # exponent of ||.||_inf; smaller exponent = larger norm
    return min(vals)


def _in_a_set(plus_set: bool, letter: str, vx, vy) -> bool:
    if plus_set:
        if letter == "a":
            return vx < min(vy, 0)
        return vy < min(vx, 0)
    if min(vx, vy) > 0:
        return True
    return vy < vx if letter == "a" else vx < vy


def member(cfg: PingPongConfig, set_id: SetId, point: Sequence) -> bool:
    if len(point) != 2:
        raise DimensionMismatch("ping-pong sets live in K^2")
    letter = set_id.letter
    if letter in "bB":
        point = cfg.hinv(point)
        letter = "a" if letter == "b" else "A"
    return _in_a_set(set_id.plus, letter, *cfg.vals(point))


def _memberships(cfg: PingPongConfig, point, vals, hinv_vals) -> dict:
    out = {}
    for s in LETTERS:
        source, letter = (vals, s) if s in "aA" else (hinv_vals, "a" if s == "b" else "A")
        for sign in (True, False):
            out[SetId(sign, s)] = _in_a_set(sign, letter, *source)
    return out


def _fmt(ctx, point) -> list:
    return [format_elem(ctx, c) for c in point]


def structural_checks(cfg: PingPongConfig) -> Report:
    """Point-free identities: the shape of ``h^-1`` and ``||b(0)||``."""
    aux = cfg.aux_ctx
    report = Report("pingpong-structure")
    v_tau1 = valuation(aux, cfg.h.tau[0])
    entries = [c for row in cfg.hinv.L for c in row] + list(cfg.hinv.tau)
    report.checked += 1
    if any(valuation(aux, c) != v_tau1 for c in entries):
        report.add(condition="h^-1 symmetry", s="h^-1",
                   detail=[str(valuation(aux, c)) for c in entries])
    alpha, lam = cfg.h.L[0][0], cfg.a.L[0][0]
    origin = (cfg.ctx.zero, cfg.ctx.zero)
    report.checked += 1
    expected = 2 * valuation(aux, alpha) + valuation(aux, lam)
    got = _f(cfg.vals(cfg.b(origin)))
    if got != expected:
        report.add(condition="b-growth at origin", s="b", point=_fmt(cfg.ctx, origin),
                   detail=f"exponent {got}, expected {expected}")
    return report


def audit(cfg: PingPongConfig, points: Iterable[Sequence]) -> Report:
    """Check the four ping-pong conditions and the growth identities pointwise."""
    ctx, aux = cfg.ctx, cfg.aux_ctx
    v_lam = valuation(aux, cfg.a.L[0][0])
    v_alpha = valuation(aux, cfg.h.L[0][0])
    counts = dict.fromkeys(["Pham1", "Pham2", "Pham3", "Pham4", "aux_1", "aux_2", "aux_3"], 0)
    report = structural_checks(cfg)
    report.name = "pingpong"
    n_points = 0

    def fail(condition, s, point, detail=""):
        report.add(condition=condition, s=s, point=_fmt(ctx, point), detail=detail)

    for point in points:
        n_points += 1
        vals = cfg.vals(point)
        hinv_vals = cfg.vals(cfg.hinv(point))
        mem = _memberships(cfg, point, vals, hinv_vals)
        fx = _f(vals)
        for s in LETTERS:
            if mem[minus(s)]:
                continue
            image = cfg.maps[s](point)
            image_vals = cfg.vals(image)
            counts["Pham1"] += 1
            if not member(cfg, plus(s), image):
                fail("Pham1", s, point, f"image {_fmt(ctx, image)} not in {plus(s)}")
            counts["Pham4"] += 1
            if not _f(image_vals) < fx:
                fail("Pham4", s, point, f"f exponent {_f(image_vals)} not below {fx}")
            if s in "aA":
                counts["aux_1"] += 1
                if _f(image_vals) != v_lam + fx:
                    fail("aux_1", s, point, f"exponent {_f(image_vals)} != {v_lam} + {fx}")
        for x, y in itertools.product(LETTERS, repeat=2):
            if y == INV[x]:
                continue
            counts["Pham2"] += 1
            if mem[plus(x)] and mem[minus(y)]:
                fail("Pham2", f"{x},{y}", point, f"in {plus(x)} and {minus(y)}")
        for x, y, z in itertools.combinations(LETTERS, 3):
            counts["Pham3"] += 1
            if mem[minus(x)] and mem[minus(y)] and mem[minus(z)]:
                fail("Pham3", f"{x},{y},{z}", point, "in three repelling sets")
        in_plus = mem[plus("a")] or mem[plus("A")]
        outside_minus = not mem[minus("a")] or not mem[minus("A")]
        if in_plus or outside_minus:
            fh = _f(cfg.vals(cfg.h(point)))
            if in_plus:
                counts["aux_2"] += 1
                if fh != v_alpha + fx:
                    fail("aux_2", "h", point, f"exponent {fh} != {v_alpha} + {fx}")
            if outside_minus:
                counts["aux_3"] += 1
                if fh < v_alpha + fx:
                    fail("aux_3", "h", point, f"exponent {fh} < {v_alpha} + {fx}")
    report.checked += sum(counts.values())
    report.summary = {"points": n_points, "instances": counts,
                      "field": ctx.describe(), "aux_valuation": aux.describe()}
    return report


# ---------------------------------------------------------------------------
# Sample points
# ---------------------------------------------------------------------------


def _coeff_values(ctx: FieldCtx, coeff_range: Sequence[int]) -> list:
    values = list(dict.fromkeys(coeff_range))
    if ctx.p:
        values = list(dict.fromkeys(c % ctx.p for c in values))
    return values


def _polys(ctx: FieldCtx, degree: int, coeffs: list) -> list:
    out = []
    for d in range(degree + 1):
        for cs in itertools.product(coeffs, repeat=d + 1):
            if d == 0 or cs[-1] != 0:
                out.append(cs)
    return out


def _monic(degree: int, coeffs: list) -> list:
    return [cs + (1,) for d in range(degree + 1) for cs in itertools.product(coeffs, repeat=d)]


def grid_size(ctx: FieldCtx, degree_bound: int, coeff_range: Sequence[int]) -> int:
    coeffs = _coeff_values(ctx, coeff_range)
    r = len(coeffs)
    return sum(r ** k * len(_polys(ctx, degree_bound - k, coeffs)) ** 2
               for k in range(degree_bound + 1))


def default_grid(ctx: FieldCtx, degree_bound: int, coeff_range: Sequence[int],
                 random_points: int = 0, seed: int = 0, max_points: int = MAX_GRID) -> list:
    """Deterministic points ``(f1/g, f2/g)`` plus seeded random points.

    ``g`` runs over monic polynomials and ``f1, f2`` over polynomials with
    coefficients in ``coeff_range`` and ``deg f_i + deg g <= degree_bound``.
    Random points have independent denominators per coordinate.  Duplicates
    (after reduction to lowest terms) are dropped; order is reproducible.
    """
    if not ctx.is_function_field:
        raise WrongConstruction("grids are built over K0(t)")
    size = grid_size(ctx, degree_bound, coeff_range) + random_points
    if size > max_points:
        raise BoundExceeded(f"grid of {size} points exceeds {max_points}")
    coeffs = _coeff_values(ctx, coeff_range)
    seen: dict = {}
    for g in _monic(degree_bound, coeffs):
        nums = _polys(ctx, degree_bound - (len(g) - 1), coeffs)
        den = RatFunc(list(g), None, ctx.p)
        for f1, f2 in itertools.product(nums, repeat=2):
            point = (ctx.poly(f1) / den, ctx.poly(f2) / den)
            seen.setdefault(point, None)
    rng = random.Random(seed)
    for _ in range(random_points):
        point = tuple(random_element(ctx, rng, degree=degree_bound + 1) for _ in range(2))
        seen.setdefault(point, None)
    return list(seen)
