"""Audit runners that return :class:`Report` objects for a certificate.

The CLI and the verdict audits both go through these, so each check has one
implementation and one report shape.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .affine_group import isometry_audit, isometry_epsilon, sa_membership
from .freegroup import relation_audit, verify_group_paradox
from .generators import (EQUAL_CHAR, MAGNUS, GeneratorCertificate, fixed_point,
                         local_commutativity_audit, nonparabolic_audit,
                         random_congruence_matrix, verify_aux_conditions)
from .normed_space import NormSpec
from .paradox import Verdict, build_orbit_decomposition, invariance_epsilon
from .pingpong import PingPongConfig, audit as pingpong_audit, default_grid
from .report import Report
from .valued_fields import FieldCtx, format_elem, random_element


@dataclass(frozen=True)
class Depths:
    """Search budgets.  Word lengths are capped at 12, grids at 10^6 points."""

    word: int = 8
    pair: int = 4
    orbit: int = 6
    grid_degree: int = 2
    grid_coeffs: tuple = (-2, 2)
    random_points: int = 10_000
    samples: int = 100
    factors: int = 6

    def __post_init__(self):
        for name in ("word", "pair", "orbit"):
            value = getattr(self, name)
            if not 1 <= value <= 12:
                raise ValueError(f"{name} depth {value} outside 1..12")
        lo, hi = self.grid_coeffs
        if lo > hi or self.grid_degree < 0 or self.random_points < 0 or self.samples < 0:
            raise ValueError("grid bounds and sample counts must be nonnegative ranges")

    @classmethod
    def reduced(cls) -> "Depths":
        return cls(word=5, pair=3, orbit=4, grid_degree=1, grid_coeffs=(-1, 1),
                   random_points=200, samples=20)

    def to_json(self) -> dict:
        return {"word": self.word, "pair": self.pair, "orbit": self.orbit,
                "grid_degree": self.grid_degree, "grid_coeffs": list(self.grid_coeffs),
                "random_points": self.random_points, "samples": self.samples,
                "factors": self.factors}


def _fmt(ctx, point) -> list:
    return [format_elem(ctx, c) for c in point]


def freeness(cert: GeneratorCertificate, depth: int) -> Report:
    relations = relation_audit(cert.gens, depth)
    report = Report("freeness", checked=2 * (3 ** depth - 1), summary={"max_len": depth})
    for w in relations:
        report.add(word=w, detail="evaluates to the identity")
    return report


def fixed_points(cert: GeneratorCertificate) -> Report:
    report = Report("fixed-points", checked=3)
    fa, fb = (fixed_point(g) for g in cert.gens)
    report.summary = {"a": fa and _fmt(cert.ctx, fa), "b": fb and _fmt(cert.ctx, fb)}
    if fa is None or fb is None:
        report.add(detail="a generator has no unique fixed point")
    elif fa == fb:
        report.add(detail="generators share their fixed point")
    return report


def pingpong(cert: GeneratorCertificate, depths: Depths, seed: int) -> Report:
    """Auxiliary conditions plus the pointwise ping-pong audit."""
    aux = verify_aux_conditions(cert)
    lo, hi = depths.grid_coeffs
    points = default_grid(cert.ctx, depths.grid_degree, range(lo, hi + 1),
                          random_points=depths.random_points, seed=seed)
    merged = aux.merge(pingpong_audit(PingPongConfig.from_certificate(cert), points))
    merged.name = "pingpong"
    return merged


def isometry(ctx: FieldCtx, spec: NormSpec, n: int, depths: Depths, seed: int) -> Report:
    """``samples`` random congruence matrices, each against ``samples`` vectors."""
    rng = random.Random(seed)
    eps = isometry_epsilon(spec)
    report = Report("isometry", summary={"eps": str(eps), "matrices": depths.samples})
    for _ in range(depths.samples):
        A = random_congruence_matrix(ctx, n, eps, rng, depths.factors)
        xs = [tuple(random_element(ctx, rng) for _ in range(n)) for _ in range(depths.samples)]
        report = report.merge(isometry_audit(ctx, spec, A, xs))
    report.name = "isometry"
    return report


def orbit(cert: GeneratorCertificate, base: Sequence, depth: int) -> Report:
    d = build_orbit_decomposition(cert.ctx, cert, base, depth)
    report = Report("orbit", checked=d.interior * 2 + 1,
                    summary={"max_len": depth, "points": len(d.assignment),
                             "interior": d.interior, "injectivity_ok": d.injectivity_ok,
                             "piece_sizes": d.piece_sizes()})
    for u, v in d.collisions:
        report.add(condition="injectivity", words=[u, v])
    for v in d.violations:
        report.add(condition="piece identity", **v)
    return report


def certificate_audits(cert: GeneratorCertificate, depths: Depths, seed: int = 0) -> dict:
    """Every certificate-level audit that applies to ``cert``, keyed by name."""
    reports = {}
    if cert.construction == EQUAL_CHAR:
        reports["pingpong"] = pingpong(cert, depths, seed)
    if cert.construction == MAGNUS:
        reports["fixed-points"] = fixed_points(cert)
        reports["nonparabolic"] = nonparabolic_audit(cert, depths.word)
    reports["freeness"] = freeness(cert, depths.word)
    reports["group-paradox"] = verify_group_paradox(depths.word)
    reports["local-commutativity"] = local_commutativity_audit(cert, depths.pair)
    return reports


def verdict_audits(v: Verdict, depths: Depths, seed: int = 0,
                   ball: Optional[tuple] = None, spec: Optional[NormSpec] = None) -> dict:
    """Certificate audits plus membership of the embedded pair at the required level."""
    if not v.paradoxical:
        return {}
    reports = certificate_audits(v.certificate, depths, seed)
    cert = v.certificate
    eps = cert.eps
    if ball is not None:
        x0, r = ball
        eps = invariance_epsilon(cert.ctx, [cert.ctx.elem(c) for c in x0], r, spec,
                                 isometry_epsilon(spec))
    member = Report("membership", checked=2, summary={"eps": str(eps), "n": v.n})
    for name, g in zip("ab", v.generators()):
        if not sa_membership(cert.ctx, g, eps):
            member.add(generator=name, detail=f"not in SA({v.n}, D_K, {eps})")
    reports["membership"] = member
    return reports
