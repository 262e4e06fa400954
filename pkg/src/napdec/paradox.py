"""Four-piece decompositions on truncated orbits and the paradoxicality verdict.

:func:`verdict` encodes the case split for ``(K^n, ||.||)``:

* ``K`` locally finite, or ``n = 1``: not paradoxical (the acting group is
  amenable);
* ``K`` nontrivially valued, ``n >= 2``, norm equivalent to the max norm:
  paradoxical with four pieces, witnessed by a generator certificate
  (embedded block-diagonally when ``n > 2``);
* ``K`` trivially valued, not locally finite: paradoxical iff the norm takes
  fewer than ``n`` nonzero values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .affine_group import AffineMap, embed, inverse, isometry_epsilon, sa_membership
from .errors import PreconditionViolated, StabilizedBasePoint, UnsupportedDescriptor
from .freegroup import INVERSE, LETTERS, Piece, classify
from .generators import GeneratorCertificate, build_for_field
from .normed_space import NormSpec, Region, equivalence_constants, max_norm, norm, region, sub
from .valued_fields import FieldCtx, format_elem


# ---------------------------------------------------------------------------
# Invariant balls and spheres
# ---------------------------------------------------------------------------


class SetKind(enum.Enum):
    CLOSED_BALL = "ClosedBall"
    OPEN_BALL = "OpenBall"
    SPHERE = "Sphere"


def invariance_epsilon(ctx: FieldCtx, x0: Sequence, r, spec: NormSpec, eps0) -> Fraction:
    """Congruence level at which ``SA(n, D_K, eps)`` preserves the balls about ``x0``."""
    r, eps0 = Fraction(r), Fraction(eps0)
    if r <= 0 or not 0 < eps0 <= 1:
        raise ValueError("need r > 0 and eps0 in (0, 1]")
    _, c = equivalence_constants(spec)
    terms = [eps0, r / c]
    x_norm = max_norm(ctx, x0)
    if x_norm:
        terms.append(r / (c * x_norm))
    return min(min(terms) / 2, Fraction(1))


def _in_set(ctx, spec, centre, r, kind: SetKind, y) -> bool:
    where = region(ctx, spec, centre, r, y)
    if kind is SetKind.CLOSED_BALL:
        return where is not Region.OUTSIDE
    if kind is SetKind.OPEN_BALL:
        return where is Region.OPEN_BALL
    return where is Region.SPHERE


def set_invariance_check(ctx: FieldCtx, spec: NormSpec, g: AffineMap, x0: Sequence, r,
                         kind: SetKind, samples: Sequence = (), eps0=None) -> bool:
    """Does ``g`` move ``x0`` by less than ``r`` (so it preserves the set)?

    ``samples`` are additionally checked pointwise: the set about ``g(x0)``
    agrees with the set about ``x0``, and ``g`` maps the set into itself.
    """
    eps0 = isometry_epsilon(spec) if eps0 is None else Fraction(eps0)
    eps = invariance_epsilon(ctx, x0, r, spec, eps0)
    if not sa_membership(ctx, g, eps):
        raise PreconditionViolated(f"map is not in SA(n, D_K, {eps})")
    gx0 = g(x0)
    if not norm(ctx, spec, sub(gx0, x0)) < Fraction(r):
        return False
    for y in samples:
        inside = _in_set(ctx, spec, x0, r, kind, y)
        if inside != _in_set(ctx, spec, gx0, r, kind, y):
            return False
        if inside != _in_set(ctx, spec, x0, r, kind, g(y)):
            return False
    return True


# ---------------------------------------------------------------------------
# Orbit decompositions
# ---------------------------------------------------------------------------


def _shortlex(w: str) -> tuple:
    return (len(w), [LETTERS.index(x) for x in w])


@dataclass
class OrbitDecomposition:
    base: tuple
    gens: tuple
    max_len: int
    assignment: dict  # word -> (point, Piece)
    injectivity_ok: bool
    collisions: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    interior: int = 0

    @property
    def ok(self) -> bool:
        return self.injectivity_ok and not self.violations

    def piece_sizes(self) -> dict:
        sizes = {p.name: 0 for p in Piece}
        for w, (_, piece) in self.assignment.items():
            if len(w) < self.max_len:
                sizes[piece.name] += 1
        return sizes


def build_orbit_decomposition(ctx: FieldCtx, cert: GeneratorCertificate, base: Sequence,
                              max_len: int, embedding_index: Optional[int] = None
                              ) -> OrbitDecomposition:
    """Label the truncated orbit of ``base`` and check both reassemblies.

    Point ``w.base`` gets the piece of ``w``.  On the interior (words shorter
    than ``max_len``) every orbit point must lie in exactly one of ``P1`` and
    ``a(P2)``, and in exactly one of ``P3`` and ``b(P4)``; membership in
    ``a(P2)`` is decided by actually applying ``a^-1`` to the point.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    base = tuple(ctx.elem(c) for c in base)
    a, b = cert.gens
    if len(base) != a.dim:
        n = len(base)
        i = embedding_index or 1
        a, b = embed(a, n, i), embed(b, n, i)
    maps = {"a": a, "A": inverse(a), "b": b, "B": inverse(b)}

    points = {"": base}
    level = [""]
    for _ in range(max_len):
        nxt = []
        for w in level:
            for x in LETTERS:
                if w and w[0] == INVERSE[x]:
                    continue
                points[x + w] = maps[x](points[w])
                nxt.append(x + w)
        level = nxt

    words = sorted(points, key=_shortlex)
    for w in words[1:]:
        if points[w] == base:
            raise StabilizedBasePoint(w)

    word_of: dict = {}
    collisions = []
    for w in words:
        q = points[w]
        if q in word_of:
            collisions.append((word_of[q], w))
        else:
            word_of[q] = w
    decomposition = OrbitDecomposition(
        base, (a, b), max_len, {w: (points[w], classify(w)) for w in words},
        injectivity_ok=not collisions, collisions=collisions)
    if collisions:
        return decomposition

    def piece_of(q):
        w = word_of.get(q)
        return None if w is None else classify(w)

    for w in words:
        if len(w) >= max_len:
            break
        decomposition.interior += 1
        q = points[w]
        for gen, inv, home, moved in (("a", "A", Piece.P1, Piece.P2),
                                      ("b", "B", Piece.P3, Piece.P4)):
            hits = (piece_of(q) is home) + (piece_of(maps[inv](q)) is moved)
            if hits != 1:
                decomposition.violations.append({
                    "word": w, "identity": f"{home.name} + {gen}({moved.name})", "hits": hits,
                    "point": [format_elem(ctx, c) for c in q]})
    return decomposition


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrivialNormDesc:
    """A norm over a trivially valued field, given by its filtration.

    ``values`` are the nonzero norm values ``a_1 < ... < a_s`` and ``dims``
    the dimensions ``d_1 < ... < d_s = n`` of the balls ``B[0, a_i]``.
    """

    n: int
    values: tuple
    dims: tuple

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dims", dims)
        s = len(values)
        if s == 0 or len(dims) != s or s > self.n:
            raise UnsupportedDescriptor("need 1 <= s <= n values with one dimension each")
        if values[0] <= 0 or any(u >= v for u, v in zip(values, values[1:])):
            raise UnsupportedDescriptor("values must be positive and strictly increasing")
        if any(d >= e for d, e in zip(dims, dims[1:])) or dims[-1] != self.n:
            raise UnsupportedDescriptor("dims must increase strictly up to n")
        if any(d < i for i, d in enumerate(dims, start=1)):
            raise UnsupportedDescriptor("dims must satisfy d_i >= i")

    @property
    def s(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {"kind": "trivial", "n": self.n, "values": [str(v) for v in self.values],
                "dims": list(self.dims)}


@dataclass(frozen=True)
class FieldDescriptor:
    """The field of scalars as the verdict engine sees it.

    ``ctx`` is the valuation of ``K`` when it is nontrivial.  For a trivially
    valued ``K``, ``model`` is some nontrivial valuation on the same field,
    used only to build generators.
    """

    name: str
    ctx: Optional[FieldCtx] = None
    trivially_valued: bool = False
    locally_finite: bool = False
    model: Optional[FieldCtx] = None

    @classmethod
    def valued(cls, ctx: FieldCtx) -> "FieldDescriptor":
        return cls(ctx.describe(), ctx=ctx)

    @classmethod
    def trivial(cls, base: str) -> "FieldDescriptor":
        base = base.strip()
        if base == "Q":
            model = FieldCtx.padic(2)
        elif base == "Q(t)":
            model = FieldCtx.tadic(0)
        elif base.startswith("F_") and base.endswith("(t)"):
            model = FieldCtx.tadic(int(base[2:-3]))
        else:
            raise UnsupportedDescriptor(f"no model valuation known for {base!r}")
        return cls(f"{base}, trivially valued", trivially_valued=True, model=model)

    @classmethod
    def locally_finite_field(cls, name: str = "algebraic closure of F_p") -> "FieldDescriptor":
        return cls(name, trivially_valued=True, locally_finite=True)


PARADOXICAL = "ParadoxicalFourPieces"
NOT_PARADOXICAL = "NotParadoxicalAmenable"


@dataclass(frozen=True)
class Verdict:
    kind: str
    n: int
    reason: Optional[str] = None
    certificate: Optional[GeneratorCertificate] = None
    embedding_index: Optional[int] = None

    @property
    def paradoxical(self) -> bool:
        return self.kind == PARADOXICAL

    def generators(self) -> tuple[AffineMap, AffineMap]:
        """The certificate's pair acting on ``K^n``."""
        a, b = self.certificate.gens
        if self.n == 2:
            return a, b
        return embed(a, self.n, self.embedding_index), embed(b, self.n, self.embedding_index)

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "n": self.n, "reason": self.reason}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
            out["embedding_index"] = self.embedding_index
        return out


def verdict(field_desc: FieldDescriptor, n: int,
            norm_desc: Union[NormSpec, TrivialNormDesc], ball: Optional[tuple] = None) -> Verdict:
    """Decide paradoxicality of ``K^n`` and attach a certificate when it holds.

    ``ball = (x0, r)`` asks for generators that also preserve ``B[x0, r]``
    and ``S[x0, r]``; the certificate is then built at the invariance level.
    """
    if n < 1:
        raise UnsupportedDescriptor("dimension must be positive")
    if field_desc.locally_finite:
        return Verdict(NOT_PARADOXICAL, n, reason="LocallyFinite")
    if n == 1:
        return Verdict(NOT_PARADOXICAL, n, reason="SolvableGA1")
    if field_desc.trivially_valued:
        if not isinstance(norm_desc, TrivialNormDesc) or norm_desc.n != n:
            raise UnsupportedDescriptor("a trivially valued field needs a filtration of K^n")
        if ball is not None:
            raise UnsupportedDescriptor("ball invariance needs a nontrivial valuation")
        if field_desc.model is None:
            raise UnsupportedDescriptor("no nontrivial valuation to build generators from")
        if norm_desc.s == n:
            return Verdict(NOT_PARADOXICAL, n, reason="SolvableTriangular")
        dims = (0,) + norm_desc.dims
        k = next(k for k in range(1, len(dims)) if dims[k] - dims[k - 1] >= 2)
        cert = build_for_field(field_desc.model, 1)
        return Verdict(PARADOXICAL, n, certificate=cert, embedding_index=dims[k - 1] + 1)
    if field_desc.ctx is None:
        raise UnsupportedDescriptor("a nontrivially valued field needs a valuation")
    if not isinstance(norm_desc, NormSpec):
        raise UnsupportedDescriptor("nontrivially valued fields take max or weighted norms")
    if norm_desc.weights is not None and len(norm_desc.weights) != n:
        raise UnsupportedDescriptor(f"{len(norm_desc.weights)} weights for n = {n}")
    eps = isometry_epsilon(norm_desc)
    if ball is not None:
        x0, r = ball
        if len(x0) != n:
            raise UnsupportedDescriptor(f"ball centre has {len(x0)} coordinates, n = {n}")
        eps = invariance_epsilon(field_desc.ctx, [field_desc.ctx.elem(c) for c in x0], r,
                                 norm_desc, eps)
    cert = build_for_field(field_desc.ctx, eps)
    return Verdict(PARADOXICAL, n, certificate=cert, embedding_index=1 if n > 2 else None)
