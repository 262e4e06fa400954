"""Explicit free generators inside ``SA(2, D_K, eps)`` and their audits.

Two families are built:

* ``magnus``: over ``Q`` with ``|.|_p``, the pair ``(A_{p^s}, tau)``,
  ``(A_{p^t}, tau)`` with ``A_m = [[4m^2+1, 2m], [2m, 1]]`` and
  ``tau = (2p^s, 0)``;
* ``equal_char``: over ``K0(t)``, ``a = diag(1+u, (1+u)^-1)`` and
  ``b = h a h^-1`` with ``h = ([[1+u, u], [-u, 1-u]], (-u, u))``, where ``u``
  is a small power of the uniformizer.  The ping-pong argument for this pair
  runs in an auxiliary valuation (degree valuation for the t-adic field and
  vice versa) in which ``u`` is large.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .affine_group import (AffineMap, Mat, commute, compose, det, embed, identity_matrix, inverse,
                           linear, mat_inverse, matmul, sa_membership, solve, trace)
from .errors import PreconditionViolated, SingularLinearPart, WrongConstruction
from .freegroup import walk
from .report import Report
from .valued_fields import FieldCtx, Kind, abs_value, format_elem, random_integral, uniformizer

MAGNUS = "magnus"
EQUAL_CHAR = "equal_char"

AUX_NAMES = ("alpha", "beta", "gamma", "delta", "tau1", "tau2",
             "beta*tau2-delta*tau1", "gamma*tau1-alpha*tau2")


@dataclass(frozen=True)
class GeneratorCertificate:
    construction: str
    params: dict
    ctx: FieldCtx
    eps: Fraction
    a: AffineMap
    b: AffineMap
    aux_ctx: Optional[FieldCtx] = None
    h: Optional[AffineMap] = None
    # (alpha, beta, gamma, delta, tau1, tau2, lambda)
    aux_params: Optional[tuple] = None
    label: str = field(default="", compare=False)

    @property
    def gens(self) -> tuple[AffineMap, AffineMap]:
        return self.a, self.b

    def to_json(self) -> dict:
        out = {
            "construction": self.construction,
            "params": {k: str(v) for k, v in self.params.items()},
            "ctx": self.ctx.to_json(),
            "eps": str(self.eps),
            "a": self.a.to_json(self.ctx),
            "b": self.b.to_json(self.ctx),
        }
        if self.label:
            out["label"] = self.label
        if self.construction == EQUAL_CHAR:
            out["aux_ctx"] = self.aux_ctx.to_json()
            out["h"] = self.h.to_json(self.ctx)
            names = AUX_NAMES[:6] + ("lambda",)
            out["aux_params"] = {n: format_elem(self.ctx, v)
                                 for n, v in zip(names, self.aux_params)}
        return out


def magnus_matrix(m: int) -> Mat:
    if m < 1:
        raise ValueError("m must be a positive integer")
    return ((Fraction(4 * m * m + 1), Fraction(2 * m)), (Fraction(2 * m), Fraction(1)))


def build_magnus(ctx: FieldCtx, s: int, t: int, eps) -> GeneratorCertificate:
    eps = Fraction(eps)
    if ctx.kind is not Kind.PADIC:
        raise PreconditionViolated("the Magnus pair lives over Q with a p-adic valuation")
    p = ctx.p
    if not 0 <= s < t:
        raise PreconditionViolated(f"need 0 <= s < t, got s={s}, t={t}")
    if not 0 < eps <= 1:
        raise PreconditionViolated(f"eps must lie in (0, 1], got {eps}")
    if abs_value(ctx, p ** s) > eps:
        raise PreconditionViolated(f"|{p}^{s}| = {abs_value(ctx, p ** s)} > eps = {eps}")
    tau = (Fraction(2 * p ** s), Fraction(0))
    a = AffineMap(magnus_matrix(p ** s), tau)
    b = AffineMap(magnus_matrix(p ** t), tau)
    for name, g in (("a", a), ("b", b)):
        if not sa_membership(ctx, g, eps):
            raise PreconditionViolated(f"generator {name} is not in SA(2, Z, {eps})")
    return GeneratorCertificate(MAGNUS, {"p": p, "s": s, "t": t}, ctx, eps, a, b)


def magnus_exponents(ctx: FieldCtx, eps) -> tuple[int, int]:
    """Smallest ``s >= 1`` with ``|p^s| <= eps``, and ``t = s + 1``."""
    eps = Fraction(eps)
    s = 1
    while ctx.rho ** s > eps:
        s += 1
    return s, s + 1


def equal_char_from_params(ctx: FieldCtx, aux_ctx: FieldCtx, params: tuple, eps,
                           extra: Optional[dict] = None, label: str = "") -> GeneratorCertificate:
    """Assemble ``a``, ``h`` and ``b = h a h^-1`` from the seven parameters.

    No membership checks: negative-control fixtures go through here too.
    """
    alpha, beta, gamma, delta, tau1, tau2, lam = params
    zero = lam - lam
    a = AffineMap(((lam, zero), (zero, 1 / lam)), (zero, zero))
    h = AffineMap(((alpha, beta), (gamma, delta)), (tau1, tau2))
    b = compose(compose(h, a), inverse(h))
    return GeneratorCertificate(EQUAL_CHAR, dict(extra or {}), ctx, Fraction(eps), a, b,
                                aux_ctx=aux_ctx, h=h, aux_params=tuple(params), label=label)


def build_equal_char(ctx: FieldCtx, eps) -> GeneratorCertificate:
    eps = Fraction(eps)
    if not ctx.is_function_field:
        raise PreconditionViolated("the equal-characteristic pair lives over K0(t)")
    if not 0 < eps <= 1:
        raise PreconditionViolated(f"eps must lie in (0, 1], got {eps}")
    m = 1
    while ctx.rho ** m >= eps:
        m += 1
    if ctx.kind is Kind.TADIC:
        u = ctx.t ** m
        aux_ctx = FieldCtx.degree(ctx.p)
    else:
        u = ctx.t ** (-m)
        aux_ctx = FieldCtx.tadic(ctx.p)
    params = (1 + u, u, -u, 1 - u, -u, u, 1 + u)
    cert = equal_char_from_params(ctx, aux_ctx, params, eps,
                                  extra={"u": format_elem(ctx, u), "m": m})
    for name, g in (("a", cert.a), ("b", cert.b), ("h", cert.h)):
        if not sa_membership(ctx, g, eps):
            raise PreconditionViolated(f"{name} is not in SA(2, D_K, {eps})")
    return cert


def build_for_field(ctx: FieldCtx, eps) -> GeneratorCertificate:
    """Pick the construction by comparing char K with the residue characteristic."""
    if ctx.characteristic != ctx.p:
        s, t = magnus_exponents(ctx, eps)
        return build_magnus(ctx, s, t, eps)
    return build_equal_char(ctx, eps)


def random_congruence_matrix(ctx: FieldCtx, n: int, eps, rng, max_factors: int = 6) -> Mat:
    """A seeded element of ``GL(n, D_K, eps)``, as a product of 1..max_factors factors.

    Factors are ``I + pi^k M`` with ``M`` integral and ``|pi^k| <= eps``; over a
    p-adic field the Magnus matrices ``A_{p^s}``, ``A_{p^(s+1)}`` and their
    inverses (on a random 2x2 block) are mixed in.
    """
    eps = Fraction(eps)
    k = 1
    while ctx.rho ** k > eps:
        k += 1
    pik = uniformizer(ctx) ** k
    magnus = []
    if ctx.kind is Kind.PADIC and n >= 2:
        s, t = magnus_exponents(ctx, eps)
        for m in (ctx.p ** s, ctx.p ** t):
            A = magnus_matrix(m)
            magnus += [A, mat_inverse(A)]
    result = identity_matrix(ctx, n)
    for _ in range(rng.randint(1, max_factors)):
        if magnus and rng.random() < 0.5:
            i = rng.randint(1, n - 1)
            factor = embed(linear(rng.choice(magnus)), n, i).L
        else:
            factor = tuple(tuple((ctx.one if r == c else ctx.zero) + pik * random_integral(ctx, rng)
                                 for c in range(n)) for r in range(n))
        result = matmul(result, factor)
    return result


# ---------------------------------------------------------------------------
# Audits
# ---------------------------------------------------------------------------


def verify_aux_conditions(cert: GeneratorCertificate) -> Report:
    """Check the magnitude equalities, ``|lambda| > 1`` and ``det h = 1``.

    Conditions 1-8 compare each of the eight quantities with their common
    (most frequent) magnitude, so a single mutated entry is reported alone.
    """
    if cert.construction != EQUAL_CHAR:
        raise WrongConstruction("auxiliary conditions only apply to the equal_char pair")
    alpha, beta, gamma, delta, tau1, tau2, lam = cert.aux_params
    ctx = cert.aux_ctx
    qs = (alpha, beta, gamma, delta, tau1, tau2,
          beta * tau2 - delta * tau1, gamma * tau1 - alpha * tau2)
    mags = [abs_value(ctx, q) for q in qs]
    common = Counter(mags).most_common(1)[0][0]
    report = Report("aux-conditions", summary={"common_value": str(common),
                                              "magnitudes": [str(m) for m in mags]})
    for i, (name, mag) in enumerate(zip(AUX_NAMES, mags), start=1):
        report.checked += 1
        if mag != common:
            report.add(condition=i, name=f"|{name}|", value=str(mag), expected=str(common))
    report.checked += 2
    lam_mag = abs_value(ctx, lam)
    report.summary["lambda"] = str(lam_mag)
    if not lam_mag > 1:
        report.add(condition=9, name="|lambda| > 1", value=str(lam_mag))
    d = alpha * delta - beta * gamma
    if d != 1:
        report.add(condition=10, name="alpha*delta - beta*gamma = 1",
                   value=format_elem(cert.ctx, d))
    return report


def fixed_point(g: AffineMap) -> Optional[tuple]:
    """The unique fixed point ``(I - L)^-1 tau``, or None if ``det(I - L) = 0``."""
    n = g.dim
    M = tuple(tuple((1 if i == j else 0) - g.L[i][j] for j in range(n)) for i in range(n))
    if not det(M):
        return None
    x = solve(M, g.tau)
    assert g(x) == x, "solver returned a non-fixed point"
    return x


def nonparabolic_audit(cert: GeneratorCertificate, max_len: int) -> Report:
    if cert.construction != MAGNUS:
        raise WrongConstruction("the nonparabolic audit applies to the Magnus pair")
    report = Report("nonparabolic", summary={"max_len": max_len})
    for w, g in walk(cert.gens, max_len):
        report.checked += 1
        tr = trace(g.L)
        if tr == 2 or tr == -2:
            report.add(word=w, trace=str(tr))
    report.summary["words"] = report.checked
    return report


def local_commutativity_audit(cert: GeneratorCertificate, max_len: int) -> Report:
    """Words sharing a unique fixed point must commute.

    Every unordered pair of distinct nonempty words up to ``max_len`` is
    covered; only pairs with a common fixed point need a commutator check.
    """
    ctx = cert.ctx
    words = list(walk(cert.gens, max_len))
    by_point: dict = defaultdict(list)
    no_unique = []
    for w, g in words:
        try:
            x = fixed_point(g)
        except SingularLinearPart:
            x = None
        if x is None:
            no_unique.append(w)
        else:
            by_point[x].append((w, g))
    n = len(words)
    report = Report("local-commutativity", checked=n * (n - 1) // 2,
                    summary={"max_len": max_len, "words": n,
                             "words_without_unique_fixed_point": len(no_unique)})
    shared = 0
    for x, group in by_point.items():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                (u, g), (v, h) = group[i], group[j]
                shared += 1
                if not commute(g, h):
                    report.add(u=u, v=v, fixed_point=[format_elem(ctx, c) for c in x])
    report.summary["pairs_sharing_fixed_point"] = shared
    report.summary["skipped_words"] = no_unique
    return report


# ---------------------------------------------------------------------------
# Negative controls
# ---------------------------------------------------------------------------

FIXTURES = ("mutated-tau", "lambda-one", "degenerate")


def negative_fixture(name: str) -> GeneratorCertificate:
    """Deliberately broken certificates exercising the failure paths."""
    if name == "degenerate":
        good = build_magnus(FieldCtx.padic(2), 1, 2, Fraction(1, 2))
        return replace(good, b=good.a, label="degenerate: a = b")
    good = build_equal_char(FieldCtx.tadic(0), 1)
    alpha, beta, gamma, delta, tau1, tau2, lam = good.aux_params
    t = good.ctx.t
    if name == "mutated-tau":
        params = (alpha, beta, gamma, delta, -t ** 2, tau2, lam)
    elif name == "lambda-one":
        params = (alpha, beta, gamma, delta, tau1, tau2, good.ctx.one)
    else:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return equal_char_from_params(good.ctx, good.aux_ctx, params, good.eps,
                                  extra=good.params, label=name)

