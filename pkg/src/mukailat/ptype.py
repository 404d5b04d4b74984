"""Rank-2 pointed sublattices and the P-type condition.

A pointed sublattice is a rank-2 saturated sublattice of the Mukai lattice
containing the distinguished vector ``v``.  It is of P-type when ``v^2/2``
equals the minimum of ``|(a, v)|`` over its primitive isotropic classes,
the numerical shadow of a wall contracting a lagrangian plane: such a
lattice carries a decomposition ``v = s + t`` into two primitive isotropic
classes, each pairing to ``v^2/2`` against ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, isqrt

from .errors import LatticeError
from .intlinalg import IntMatrix, freeze_matrix
from .lattice import Sublattice
from .mukai import MukaiSetup, MukaiVector


def _reduce_line(x: int, y: int) -> tuple[int, int]:
    g = gcd(x, y)
    x //= g
    y //= g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return x, y


def form_value(gram2, xy) -> int:
    """Value of the binary form ``a*x^2 + 2*b*x*y + c*y^2`` at ``(x, y)``."""
    x, y = xy
    return gram2[0][0] * x * x + 2 * gram2[0][1] * x * y + gram2[1][1] * y * y


def form_pair(gram2, xy, pq) -> int:
    x, y = xy
    p, q = pq
    return (gram2[0][0] * x + gram2[0][1] * y) * p + (gram2[0][1] * x + gram2[1][1] * y) * q


def isotropic_lines(gram2) -> tuple[tuple[int, int], ...]:
    """Primitive isotropic vectors of a binary form, one per line, at most two.

    Solves ``a*x^2 + 2*b*x*y + c*y^2 = 0`` exactly: rational lines exist iff
    ``b^2 - a*c`` is a perfect square.  Each line is returned by its
    primitive generator with canonical sign (first nonzero coordinate
    positive), sorted lexicographically.
    """
    g = freeze_matrix(gram2)
    if len(g) != 2 or len(g[0]) != 2 or g[0][1] != g[1][0]:
        raise LatticeError("invalid-matrix", "need a symmetric 2x2 Gram matrix")
    a, b, c = g[0][0], g[0][1], g[1][1]
    if a == 0 and b == 0 and c == 0:
        raise LatticeError("totally-isotropic", "the form vanishes identically")
    if a == 0:
        lines = [(1, 0)]
        if b != 0:
            lines.append(_reduce_line(-c, 2 * b))
    else:
        disc = b * b - a * c
        if disc < 0:
            lines = []
        elif disc == 0:
            lines = [_reduce_line(-b, a)]
        else:
            k = isqrt(disc)
            if k * k != disc:
                lines = []
            else:
                lines = [_reduce_line(-b + k, a), _reduce_line(-b - k, a)]
    return tuple(sorted(set(lines)))


def is_p_type_form(gram2, v_xy) -> bool:
    """P-type test at the level of a rank-2 Gram matrix and coordinates of v.

    Requires ``v^2 > 0`` and primitive coordinates.  An empty isotropic
    census never qualifies (the minimum over the empty set is +infinity).
    """
    vsq = form_value(gram2, v_xy)
    if vsq <= 0:
        raise LatticeError("nonpositive-square", f"v^2 = {vsq} <= 0")
    if gcd(v_xy[0], v_xy[1]) != 1:
        raise LatticeError("imprimitive", "v is not primitive in the sublattice")
    lines = isotropic_lines(gram2)
    if not lines:
        return False
    return min(abs(form_pair(gram2, line, v_xy)) for line in lines) == vsq // 2


@dataclass(frozen=True)
class IsotropicCensus:
    """The primitive isotropic classes of a rank-2 sublattice, up to sign.

    Each class is given in ambient coordinates with the first nonzero
    coordinate positive; there are never more than two.
    """

    classes: tuple[MukaiVector, ...]


@dataclass(frozen=True)
class PTypeDecomposition:
    """``v = s + t`` with both parts primitive isotropic, pairing v^2/2 with v."""

    s: MukaiVector
    t: MukaiVector


def _canonical_sign(coords) -> tuple[int, ...]:
    first = next((x for x in coords if x), 0)
    if first < 0:
        return tuple(-x for x in coords)
    return tuple(coords)


@dataclass(frozen=True)
class PointedSublattice:
    """A rank-2 saturated sublattice of the Mukai lattice containing ``v``.

    ``basis`` is the canonical Hermite-form basis of the saturation,
    ``gram2`` the restricted Gram matrix and ``v_coords`` the (integer)
    coordinates of ``v`` in that basis.
    """

    setup: MukaiSetup
    v: MukaiVector
    basis: IntMatrix
    gram2: IntMatrix
    v_coords: tuple[int, int]

    @classmethod
    def span(cls, setup: MukaiSetup, v: MukaiVector, vectors) -> "PointedSublattice":
        """Saturated span of the given vectors, required to be rank 2 and to contain v."""
        setup._check(v)
        rows = []
        for vec in vectors:
            w = vec if isinstance(vec, MukaiVector) else setup.vector_from_coords(vec)
            setup._check(w)
            rows.append(w.coords)
        sub = Sublattice(setup.ambient, rows).saturate()
        if sub.rank != 2:
            raise LatticeError("rank-mismatch", f"span has rank {sub.rank}, expected 2")
        coords = sub.coords(v.coords)
        if coords is None:
            raise LatticeError("not-pointed", "v does not lie in the sublattice")
        return cls(setup, v, sub.basis, sub.gram(), coords)

    def sublattice(self) -> Sublattice:
        return Sublattice(self.setup.ambient, self.basis)

    def member(self, xy) -> MukaiVector:
        """The ambient vector with the given sublattice coordinates."""
        x, y = xy
        coords = tuple(x * b1 + y * b2 for b1, b2 in zip(self.basis[0], self.basis[1]))
        return MukaiVector.from_coords(coords)

    def isotropic_classes(self) -> IsotropicCensus:
        classes = []
        for line in isotropic_lines(self.gram2):
            vec = _canonical_sign(self.member(line).coords)
            classes.append(MukaiVector.from_coords(vec))
        classes.sort(key=lambda w: w.coords)
        return IsotropicCensus(tuple(classes))

    def is_p_type(self) -> bool:
        if not self.setup.is_primitive(self.v):
            raise LatticeError("imprimitive", "v must be primitive")
        return is_p_type_form(self.gram2, self.v_coords)

    def decomposition(self) -> PTypeDecomposition:
        """The canonical splitting ``v = s + t`` of a P-type lattice.

        ``s`` is the census class with positive pairing against ``v``,
        smallest in the (absolute value, sign) lexicographic order on
        coordinates; ``t = v - s``.
        """
        if not self.is_p_type():
            raise LatticeError("not-p-type", "lattice is not of P-type")
        vsq = self.setup.square(self.v)
        half = vsq // 2
        candidates = []
        for a in self.isotropic_classes().classes:
            pairing = self.setup.pair(a, self.v)
            if abs(pairing) == half:
                candidates.append(a if pairing > 0 else -a)
        s = min(candidates, key=lambda w: (tuple(abs(x) for x in w.coords), w.coords))
        return PTypeDecomposition(s=s, t=self.v - s)


def construct_p_type(setup: MukaiSetup, v: MukaiVector, a: MukaiVector) -> PointedSublattice:
    """Pointed sublattice spanned by a witness: the saturation of span{a, v - a}.

    Requires ``v`` primitive with ``v^2 >= 6`` and ``a`` primitive isotropic
    with ``(a, v) = v^2/2``; the complement ``v - a`` must be primitive as
    well (automatic when the witness comes from a primitive extremal ray),
    otherwise the saturation contains an isotropic class of strictly smaller
    pairing.  The result is always of P-type.
    """
    if not setup.is_primitive(v):
        raise LatticeError("imprimitive", "v must be primitive")
    vsq = setup.square(v)
    if vsq < 6:
        raise LatticeError("square-too-small", f"v^2 = {vsq} < 6")
    if setup.square(a) != 0:
        raise LatticeError("not-isotropic", f"a^2 = {setup.square(a)} != 0")
    if not setup.is_primitive(a):
        raise LatticeError("imprimitive", "a must be primitive")
    pairing = setup.pair(a, v)
    if pairing != vsq // 2:
        raise LatticeError("pairing-mismatch", f"(a, v) = {pairing}, expected {vsq // 2}")
    if not setup.is_primitive(v - a):
        raise LatticeError("imprimitive", "v - a must be primitive")
    return PointedSublattice.span(setup, v, [a, v - a])


def enumerate_p_type(setup: MukaiSetup, v: MukaiVector, bound: int) -> list[PointedSublattice]:
    """All P-type lattices with a witness in the coordinate box ``[-bound, bound]``.

    Scans every primitive isotropic ``a`` with ``(a, v) = v^2/2`` and all
    coordinates bounded by ``bound`` (keeping those whose complement
    ``v - a`` is primitive, so every span really is of P-type), and returns
    the deduplicated saturated spans, sorted by their Hermite bases.  The
    result is deterministic and independent of scan order.
    """
    if bound < 0:
        raise LatticeError("invalid-matrix", "bound must be nonnegative")
    if not setup.is_primitive(v):
        raise LatticeError("imprimitive", "v must be primitive")
    vsq = setup.square(v)
    if vsq < 6:
        raise LatticeError("square-too-small", f"v^2 = {vsq} < 6")
    half = vsq // 2
    found = {}
    for coords in product(range(-bound, bound + 1), repeat=setup.rank):
        if not any(coords):
            continue
        g = 0
        for x in coords:
            g = gcd(g, x)
        if g != 1:
            continue
        a = MukaiVector.from_coords(coords)
        if setup.square(a) != 0 or setup.pair(a, v) != half:
            continue
        if not setup.is_primitive(v - a):
            continue
        lattice = PointedSublattice.span(setup, v, [a, v - a])
        found.setdefault(lattice.basis, lattice)
    return [found[key] for key in sorted(found)]
