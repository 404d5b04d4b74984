"""The algebraic Mukai lattice of an abelian surface.

A vector ``(r, c, s)`` collects the rank, the first Chern class (in a fixed
basis of the Neron-Severi lattice) and the second Chern character of an
object; the Todd class of an abelian surface is trivial, so these are the
Mukai-vector components verbatim.  The pairing is

    ((r, c, s), (r', c', s')) = c.c' - r*s' - s*r'

which is even, symmetric and of signature ``(2, rho)`` on the rank
``rho + 2`` ambient lattice.  The Euler pairing of two objects is its
negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

from .errors import LatticeError
from .intlinalg import IntMatrix, freeze_matrix, freeze_vector
from .lattice import IntegralLattice


@dataclass(frozen=True)
class MukaiVector:
    """An integral class ``(r, c, s)``; ``c`` has one entry per NS generator."""

    r: int
    c: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "c", freeze_vector(self.c))
        if not isinstance(self.r, int) or isinstance(self.r, bool):
            raise LatticeError("invalid-matrix", "rank component must be an integer")
        if not isinstance(self.s, int) or isinstance(self.s, bool):
            raise LatticeError("invalid-matrix", "degree-4 component must be an integer")

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.r, *self.c, self.s)

    @classmethod
    def from_coords(cls, coords) -> "MukaiVector":
        coords = freeze_vector(coords)
        if len(coords) < 2:
            raise LatticeError("dimension-mismatch", "need at least rank and degree-4 parts")
        return cls(coords[0], coords[1:-1], coords[-1])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(
            self.r + other.r,
            tuple(a + b for a, b in zip(self.c, other.c, strict=True)),
            self.s + other.s,
        )

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return self + (-other)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, tuple(-x for x in self.c), -self.s)

    def __mul__(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, tuple(k * x for x in self.c), k * self.s)

    __rmul__ = __mul__


class MukaiSetup:
    """The rank ``rho + 2`` Mukai lattice built from a Neron-Severi Gram matrix.

    The NS matrix must be symmetric and even; by default it must also have
    the Hodge-index signature ``(1, rho - 1)``, which makes the ambient
    signature ``(2, rho)``.  Pass ``check_hodge_signature=False`` for
    abstract presets such as the full ``U^4`` lattice, whose NS block is the
    unimodular ``U^3`` of signature ``(3, 3)``.
    """

    def __init__(self, ns_gram, *, check_hodge_signature: bool = True):
        ns = freeze_matrix(ns_gram)
        rho = len(ns)
        if rho == 0 or any(len(row) != rho for row in ns):
            raise LatticeError("invalid-matrix", "NS Gram matrix must be square, rank >= 1")
        for i in range(rho):
            if ns[i][i] % 2:
                raise LatticeError("not-even", "NS Gram matrix must have even diagonal")
            for j in range(i + 1, rho):
                if ns[i][j] != ns[j][i]:
                    raise LatticeError("invalid-matrix", "NS Gram matrix must be symmetric")
        self.ns_gram: IntMatrix = ns
        ambient = []
        ambient.append((0,) + (0,) * rho + (-1,))
        for i in range(rho):
            ambient.append((0,) + ns[i] + (0,))
        ambient.append((-1,) + (0,) * rho + (0,))
        self.ambient = IntegralLattice(ambient, require_nondegenerate=True)
        if check_hodge_signature:
            sig = IntegralLattice(ns).signature()
            if sig != (1, rho - 1, 0):
                raise LatticeError(
                    "bad-signature",
                    f"NS signature {sig[:2]} is not (1, {rho - 1})",
                )

    @property
    def rho(self) -> int:
        return len(self.ns_gram)

    @property
    def rank(self) -> int:
        return self.rho + 2

    def vector(self, r: int, c, s: int) -> MukaiVector:
        v = MukaiVector(r, tuple(c), s)
        self._check(v)
        return v

    def vector_from_coords(self, coords) -> MukaiVector:
        v = MukaiVector.from_coords(coords)
        self._check(v)
        return v

    def from_chern(self, rank: int, c1, ch2: int) -> MukaiVector:
        """Mukai vector of an object with the given Chern data.

        The square root of the Todd class is 1 on an abelian surface, so the
        components pass through unchanged.
        """
        return self.vector(rank, c1, ch2)

    def _check(self, v: MukaiVector) -> None:
        if len(v.c) != self.rho:
            raise LatticeError(
                "dimension-mismatch",
                f"c has length {len(v.c)}, NS rank is {self.rho}",
            )

    def pair(self, v: MukaiVector, w: MukaiVector) -> int:
        self._check(v)
        self._check(w)
        cc = sum(
            v.c[i] * sum(g * w.c[j] for j, g in enumerate(self.ns_gram[i]) if g)
            for i in range(self.rho)
            if v.c[i]
        )
        return cc - v.r * w.s - v.s * w.r

    def square(self, v: MukaiVector) -> int:
        return self.pair(v, v)

    def euler_pairing(self, v: MukaiVector, w: MukaiVector) -> int:
        """Euler characteristic of a pair of objects: minus the Mukai pairing."""
        return -self.pair(v, w)

    def is_primitive(self, v: MukaiVector) -> bool:
        self._check(v)
        if v.is_zero():
            raise LatticeError("zero-vector", "primitivity is undefined for the zero vector")
        return reduce(gcd, v.coords, 0) == 1

    def moduli_dimension(self, v: MukaiVector) -> int:
        """Dimension ``v^2 + 2`` of the moduli space of stable objects.

        The space is nonempty exactly when this is nonnegative; below that
        threshold an ``empty-moduli`` error is raised.
        """
        sq = self.square(v)
        if sq + 2 < 0:
            raise LatticeError("empty-moduli", f"v^2 + 2 = {sq + 2} < 0: empty moduli")
        return sq + 2

    def kummer_dimension(self, v: MukaiVector) -> int:
        """Dimension ``v^2 - 2 = 2n`` of the Albanese fibre, a Kummer-type manifold.

        Requires ``v`` primitive with ``v^2 >= 6``.
        """
        if not self.is_primitive(v):
            raise LatticeError("imprimitive", "Kummer fibre needs a primitive Mukai vector")
        sq = self.square(v)
        if sq < 6:
            raise LatticeError("square-too-small", f"v^2 = {sq} < 6")
        return sq - 2

    def kummer_n(self, v: MukaiVector) -> int:
        """Half the fibre dimension: ``n = v^2/2 - 1``."""
        return self.kummer_dimension(v) // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, MukaiSetup) and self.ns_gram == other.ns_gram

    def __hash__(self) -> int:
        return hash(self.ns_gram)

    def __repr__(self) -> str:
        return f"MukaiSetup(rho={self.rho})"


def hyperbolic_gram() -> IntMatrix:
    """Gram matrix of the unimodular hyperbolic plane U."""
    return ((0, 1), (1, 0))


def rank_one_setup(degree: int) -> MukaiSetup:
    """Picard rank 1 setup with NS = <degree>; ``degree = 2d > 0`` must be even."""
    if degree <= 0 or degree % 2:
        raise LatticeError("invalid-matrix", "polarisation degree must be a positive even integer")
    return MukaiSetup([[degree]])


def kummer_mukai_setup() -> MukaiSetup:
    """The full Mukai lattice of an abelian surface, isometric to U^4.

    The NS block is U^3, so the Hodge-index check does not apply.
    """
    u = hyperbolic_gram()
    ns = [[0] * 6 for _ in range(6)]
    for b in range(3):
        for i in range(2):
            for j in range(2):
                ns[2 * b + i][2 * b + j] = u[i][j]
    return MukaiSetup(ns, check_hodge_signature=False)


def kummer_bbf_lattice(n: int) -> IntegralLattice:
    """Beauville-Bogomolov form of a generalised Kummer 2n-fold: U^3 + <-(2n+2)>."""
    if n < 1:
        raise LatticeError("invalid-matrix", "need n >= 1")
    u = hyperbolic_gram()
    size = 7
    gram = [[0] * size for _ in range(size)]
    for b in range(3):
        for i in range(2):
            for j in range(2):
                gram[2 * b + i][2 * b + j] = u[i][j]
    gram[6][6] = -(2 * n + 2)
    return IntegralLattice(gram, require_nondegenerate=True)
