"""Line classes of lagrangian planes and the numerics of their contractions.

The second homology of the Kummer-type fibre is modelled as the dual of
``v_perp`` inside the Mukai lattice, and the dual Mukai homomorphism as the
orthogonal projection onto ``v_perp``.  A class ``a`` with ``a^2 = 0`` and
``(a, v) = v^2/2`` projects to a line class ``R`` with

    (R, R) = -v^2/4 = -(n+1)/2        (where v^2 = 2n + 2)

and order 2 in the discriminant group of ``v_perp``; the classification
verdict checks exactly these conditions and reconstructs the witnessing
P-type lattice.  Extremality of a ray is never decided here: candidate
generators of the cone of curves are merely enumerated against a chosen
positive class ``h``, and positive-cone generators are not produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .errors import LatticeError
from .lattice import Sublattice
from .mukai import MukaiSetup, MukaiVector
from .ptype import PointedSublattice, construct_p_type

# Codimension of the Albanese fibre inside the moduli space:
# (v^2 + 2) - (v^2 - 2).  This caps the total ext^1 of a contracted
# Jordan-Holder configuration.
ALBANESE_FIBRE_CODIM = 4


@dataclass(frozen=True)
class LineClass:
    """A rational class in ``v_perp`` with its square and torsion order.

    ``coords`` are exact ambient coordinates, ``square`` the value of the
    form, and ``disc_order`` the order of the class in the discriminant
    group of ``v_perp``.
    """

    v: MukaiVector
    coords: tuple[Fraction, ...]
    square: Fraction
    disc_order: int

    @property
    def two_r(self) -> tuple[int, ...] | None:
        """``2R`` as an integral vector when it lies in ``v_perp``, else None."""
        doubled = [2 * x for x in self.coords]
        if all(x.denominator == 1 for x in doubled):
            return tuple(int(x) for x in doubled)
        return None

    def __neg__(self) -> "LineClass":
        return LineClass(self.v, tuple(-x for x in self.coords), self.square, self.disc_order)


def v_perp(setup: MukaiSetup, v: MukaiVector) -> Sublattice:
    """The saturated orthogonal complement of ``v`` in the ambient lattice."""
    return setup.ambient.span([v.coords]).orthogonal_complement()


def _project(setup: MukaiSetup, v: MukaiVector, coords, vsq: int) -> tuple[Fraction, ...]:
    weight = Fraction(setup.ambient.pair(coords, v.coords), vsq)
    return tuple(Fraction(a) - weight * b for a, b in zip(coords, v.coords))


def _line_class(
    setup: MukaiSetup,
    v: MukaiVector,
    a: MukaiVector,
    vsq: int,
    perp: Sublattice,
) -> LineClass:
    coords = _project(setup, v, a.coords, vsq)
    square = Fraction(setup.ambient.pair(coords, coords))
    if not all(Fraction(p).denominator == 1 for p in (setup.ambient.pair(coords, b) for b in perp.basis)):
        raise LatticeError("not-in-dual", "projection left the dual of v_perp")
    if any(coords):
        rational = perp.rational_coords(coords)
        if rational is None:
            raise LatticeError("not-in-dual", "projection left the rational span of v_perp")
        disc_order = lcm(*(c.denominator for c in rational))
    else:
        disc_order = 1
    return LineClass(v=v, coords=coords, square=square, disc_order=disc_order)


def theta_dual(setup: MukaiSetup, v: MukaiVector, a: MukaiVector) -> LineClass:
    """Orthogonal projection of ``a`` onto ``v_perp``: R = a - ((a,v)/v^2) v.

    Fixes ``v_perp`` pointwise and kills ``v``; for an isotropic witness
    with ``(a, v) = v^2/2`` the square is ``-v^2/4``.
    """
    vsq = setup.square(v)
    if vsq <= 0:
        raise LatticeError("nonpositive-square", f"v^2 = {vsq} <= 0")
    return _line_class(setup, v, a, vsq, v_perp(setup, v))


def line_class_square(setup: MukaiSetup, v: MukaiVector, a: MukaiVector) -> Fraction:
    """``(R, R) = a^2 - (a, v)^2 / v^2``, computed exactly."""
    vsq = setup.square(v)
    if vsq <= 0:
        raise LatticeError("nonpositive-square", f"v^2 = {vsq} <= 0")
    pairing = setup.pair(a, v)
    return Fraction(setup.square(a)) - Fraction(pairing * pairing, vsq)


@dataclass(frozen=True)
class LineClassVerdict:
    """Outcome of the line-class criterion for a candidate witness ``a``.

    ``square_ok``: (R, R) equals -(n+1)/2.
    ``torsion_ok``: 2R is integral, i.e. the discriminant order divides 2.
    ``isotropic_witness_ok``: a^2 = 0 and |(a, v)| = v^2/2.
    ``lattice``: the P-type lattice spanned by the sign-fixed witness ``w``
    when every check passes and both ``w`` and ``v - w`` are primitive (an
    imprimitive witness or complement spans no P-type lattice even though
    the numeric checks can pass), else None.  Extremality of the ray is not
    part of this verdict.
    """

    line_class: LineClass
    n: int
    square_ok: bool
    torsion_ok: bool
    isotropic_witness_ok: bool
    lattice: PointedSublattice | None

    @property
    def all_ok(self) -> bool:
        return self.square_ok and self.torsion_ok and self.isotropic_witness_ok


def _classify(
    setup: MukaiSetup,
    v: MukaiVector,
    a: MukaiVector,
    vsq: int,
    perp: Sublattice,
    build_lattice: bool = True,
) -> LineClassVerdict:
    n = vsq // 2 - 1
    lc = _line_class(setup, v, a, vsq, perp)
    square_ok = lc.square == Fraction(-(n + 1), 2)
    torsion_ok = lc.two_r is not None
    pairing = setup.pair(a, v)
    isotropic_witness_ok = setup.square(a) == 0 and abs(pairing) == vsq // 2
    lattice = None
    if build_lattice and square_ok and torsion_ok and isotropic_witness_ok:
        witness = a if pairing > 0 else -a
        if setup.is_primitive(witness) and setup.is_primitive(v - witness):
            lattice = construct_p_type(setup, v, witness)
    return LineClassVerdict(
        line_class=lc,
        n=n,
        square_ok=square_ok,
        torsion_ok=torsion_ok,
        isotropic_witness_ok=isotropic_witness_ok,
        lattice=lattice,
    )


def classify_line_class(setup: MukaiSetup, v: MukaiVector, a: MukaiVector) -> LineClassVerdict:
    """Run the full line-class criterion for ``R = theta_dual(a)``.

    Requires ``v`` primitive with ``v^2 >= 6`` (so ``n = v^2/2 - 1 >= 2``).
    """
    if not setup.is_primitive(v):
        raise LatticeError("imprimitive", "v must be primitive")
    vsq = setup.square(v)
    if vsq < 6:
        raise LatticeError("square-too-small", f"v^2 = {vsq} < 6")
    return _classify(setup, v, a, vsq, v_perp(setup, v))


@dataclass(frozen=True)
class MoriCandidate:
    """A box-scan candidate generator of the cone of curves."""

    a: MukaiVector
    line_class: LineClass
    lagrangian: bool


def mori_candidates(
    setup: MukaiSetup,
    v: MukaiVector,
    h: MukaiVector,
    bound: int,
) -> list[MoriCandidate]:
    """Candidate curve-cone generators theta_dual(a) positive against ``h``.

    Scans integral ``a`` with coordinates in ``[-bound, bound]`` satisfying
    ``a^2 >= 0`` and ``|(a, v)| <= v^2/2``, keeping those whose projection
    pairs strictly positively with ``h`` (which must lie in ``v_perp`` and
    have ``h^2 > 0``).  Candidates passing the full line-class criterion and
    spanning a P-type lattice are flagged ``lagrangian``.  The list is
    sorted by the coordinates of ``a``; positive-cone generators are not
    enumerated.
    """
    if not setup.is_primitive(v):
        raise LatticeError("imprimitive", "v must be primitive")
    vsq = setup.square(v)
    if vsq < 6:
        raise LatticeError("square-too-small", f"v^2 = {vsq} < 6")
    if setup.pair(h, v) != 0:
        raise LatticeError("not-orthogonal", "h must be orthogonal to v")
    if setup.square(h) <= 0:
        raise LatticeError("nonpositive-square", f"h^2 = {setup.square(h)} <= 0")
    if bound < 0:
        raise LatticeError("invalid-matrix", "bound must be nonnegative")
    perp = v_perp(setup, v)
    half = vsq // 2
    out = []
    for coords in product(range(-bound, bound + 1), repeat=setup.rank):
        if not any(coords):
            continue
        a = MukaiVector.from_coords(coords)
        if setup.square(a) < 0 or abs(setup.pair(a, v)) > half:
            continue
        lc = _line_class(setup, v, a, vsq, perp)
        if setup.ambient.pair(lc.coords, h.coords) <= 0:
            continue
        verdict = _classify(setup, v, a, vsq, perp)
        out.append(MoriCandidate(a=a, line_class=lc, lagrangian=verdict.lattice is not None))
    out.sort(key=lambda cand: cand.a.coords)
    return out


@dataclass(frozen=True)
class PartitionReport:
    """Numerical feasibility of a partition ``v = sum(parts)``.

    ``jh_ok`` is the moduli-dimension inequality
    ``sum(a_i^2) + 2m <= v^2 + 2`` for a Jordan-Holder configuration;
    ``ext1_budget_ok`` bounds the total deformation space of the factors by
    the Albanese-fibre codimension, ``sum(a_i^2 + 2) <= 4``.  For two-part
    partitions ``ext1_cross = (a_1, a_2)`` and ``dim_identity_ok`` records
    whether ``2*((a_1, a_2) - 1) = v^2 - 2``.
    """

    parts: tuple[MukaiVector, ...]
    m: int
    jh_ok: bool
    ext1_budget_ok: bool
    ext1_cross: int | None
    dim_identity_ok: bool | None


def _report(setup: MukaiSetup, v: MukaiVector, parts: tuple[MukaiVector, ...]) -> PartitionReport:
    vsq = setup.square(v)
    squares = [setup.square(p) for p in parts]
    m = len(parts)
    jh_ok = sum(squares) + 2 * m <= vsq + 2
    ext1_budget_ok = sum(sq + 2 for sq in squares) <= ALBANESE_FIBRE_CODIM
    ext1_cross = None
    dim_identity_ok = None
    if m == 2:
        ext1_cross = setup.pair(parts[0], parts[1])
        dim_identity_ok = 2 * (ext1_cross - 1) == vsq - 2
    return PartitionReport(
        parts=parts,
        m=m,
        jh_ok=jh_ok,
        ext1_budget_ok=ext1_budget_ok,
        ext1_cross=ext1_cross,
        dim_identity_ok=dim_identity_ok,
    )


def _check_parts(setup: MukaiSetup, v: MukaiVector, parts) -> tuple[MukaiVector, ...]:
    parts = tuple(
        p if isinstance(p, MukaiVector) else setup.vector_from_coords(p) for p in parts
    )
    if not parts:
        raise LatticeError("empty-partition", "a partition needs at least one part")
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    if total != v:
        raise LatticeError("sum-mismatch", "parts do not sum to v")
    return parts


def jh_feasibility(setup: MukaiSetup, v: MukaiVector, parts) -> PartitionReport:
    """Dimension feasibility of a Jordan-Holder partition of ``v``."""
    return _report(setup, v, _check_parts(setup, v, parts))


def contraction_budget(setup: MukaiSetup, v: MukaiVector, parts) -> PartitionReport:
    """Ext^1 budget of a contracted configuration; parts must be primitive.

    Each simple factor contributes ``a_i^2 + 2`` to the deformation count,
    which the Albanese-fibre codimension caps at 4.
    """
    parts = _check_parts(setup, v, parts)
    for p in parts:
        if not setup.is_primitive(p):
            raise LatticeError("imprimitive", f"part {p.coords} is not primitive")
    return _report(setup, v, parts)


def line_class_from_wall_side(
    setup: MukaiSetup,
    lattice: PointedSublattice,
    side: str,
) -> LineClass:
    """The line class of a P-type wall, from one side or the other.

    ``side="plus"`` projects the canonical ``s`` of the decomposition
    ``v = s + t``, ``side="minus"`` projects ``t``; the two outputs are
    exact negatives (crossing the wall flips the sign of the class).
    """
    if side not in ("plus", "minus"):
        raise LatticeError("invalid-side", f"side must be 'plus' or 'minus', got {side!r}")
    if setup != lattice.setup:
        raise LatticeError("dimension-mismatch", "lattice belongs to a different setup")
    decomposition = lattice.decomposition()
    witness = decomposition.s if side == "plus" else decomposition.t
    return theta_dual(setup, lattice.v, witness)
