"""Integral lattices: bilinear forms, sublattices, saturation, discriminants.

An :class:`IntegralLattice` is a free Z-module of finite rank carrying an
integer symmetric bilinear form (its Gram matrix in a fixed basis).  Vectors
are plain tuples of integers, or of :class:`fractions.Fraction` where an
operation extends to the rational span.  All values are immutable and all
operations are pure functions, so everything is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from . import intlinalg
from .errors import LatticeError
from .intlinalg import IntMatrix


@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite abelian group dual/lattice for a nondegenerate lattice.

    ``invariant_factors`` are the elementary divisors larger than 1 in
    divisibility order; ``order`` is their product (1 for a unimodular
    lattice) and equals ``abs(det(gram))``.
    """

    invariant_factors: tuple[int, ...]
    order: int


class IntegralLattice:
    """A free Z-module with an integer symmetric bilinear form."""

    def __init__(self, gram, *, require_nondegenerate: bool = False):
        rows = intlinalg.freeze_matrix(gram)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise LatticeError("invalid-matrix", "Gram matrix must be square of positive rank")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError("invalid-matrix", "Gram matrix must be symmetric")
        self.gram: IntMatrix = rows
        self._det: int | None = None
        if require_nondegenerate and self.det() == 0:
            raise LatticeError("degenerate-lattice", "Gram matrix has determinant 0")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        if self._det is None:
            self._det = intlinalg.determinant(self.gram)
        return self._det

    def is_nondegenerate(self) -> bool:
        return self.det() != 0

    def _require_nondegenerate(self, op: str) -> None:
        if self.det() == 0:
            raise LatticeError("degenerate-lattice", f"{op} requires a nondegenerate lattice")

    def _check_length(self, x) -> None:
        if len(x) != self.rank:
            raise LatticeError(
                "dimension-mismatch",
                f"vector of length {len(x)} in a rank {self.rank} lattice",
            )

    def pair(self, x, y):
        """Bilinear form ``x^T . gram . y``; symmetric, exact, accepts Fractions."""
        self._check_length(x)
        self._check_length(y)
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = self.gram[i]
                total += xi * sum(g * yj for g, yj in zip(row, y) if g)
        return total

    def square(self, x):
        return self.pair(x, x)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_primitive(self, x) -> bool:
        """True iff the gcd of the coordinates is 1."""
        self._check_length(x)
        if not any(x):
            raise LatticeError("zero-vector", "primitivity is undefined for the zero vector")
        return reduce(gcd, x, 0) == 1

    def divisibility(self, x) -> int:
        """gcd of the pairings of ``x`` against the basis; always positive."""
        self._check_length(x)
        if not any(x):
            raise LatticeError("zero-vector", "divisibility is undefined for the zero vector")
        self._require_nondegenerate("divisibility")
        pairings = [sum(g * xi for g, xi in zip(row, x)) for row in self.gram]
        return reduce(gcd, pairings, 0)

    def dual_pairings(self, x) -> tuple:
        """Pairings of ``x`` (integral or rational) against the basis vectors."""
        self._check_length(x)
        return tuple(sum(g * xi for g, xi in zip(row, x)) for row in self.gram)

    def in_dual(self, x) -> bool:
        """True iff ``x`` pairs integrally with every lattice vector."""
        return all(Fraction(p).denominator == 1 for p in self.dual_pairings(x))

    def order_in_discriminant(self, x) -> int:
        """Smallest ``k >= 1`` with ``k*x`` in the lattice, for ``x`` in the dual."""
        self._require_nondegenerate("order_in_discriminant")
        if not self.in_dual(x):
            raise LatticeError("not-in-dual", "not a dual-lattice element")
        return lcm(*(Fraction(c).denominator for c in x))

    def discriminant_group(self) -> DiscriminantGroup:
        self._require_nondegenerate("discriminant_group")
        diag = intlinalg.smith_normal_form(self.gram).diagonal
        factors = tuple(d for d in diag if d > 1)
        order = 1
        for d in diag:
            order *= d
        return DiscriminantGroup(factors, order)

    def signature(self) -> tuple[int, int, int]:
        return intlinalg.signature(self.gram)

    def span(self, rows) -> "Sublattice":
        return Sublattice(self, rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegralLattice) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    def __repr__(self) -> str:
        return f"IntegralLattice(rank={self.rank})"


class Sublattice:
    """An integer row-span inside an ambient lattice.

    The stored basis is the row-style Hermite normal form of the input rows,
    so equal sublattices compare equal.  Input rows must be linearly
    independent.
    """

    def __init__(self, ambient: IntegralLattice, rows):
        frozen = intlinalg.freeze_matrix(rows)
        basis = intlinalg.hermite_basis(frozen)
        if len(basis) != len(frozen):
            raise LatticeError("dependent-rows", "basis rows are linearly dependent")
        for row in basis:
            if len(row) != ambient.rank:
                raise LatticeError("dimension-mismatch", "basis row length != ambient rank")
        self.ambient = ambient
        self.basis: IntMatrix = basis

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> IntMatrix:
        """Gram matrix of the form restricted to the stored basis."""
        return tuple(
            tuple(self.ambient.pair(b1, b2) for b2 in self.basis) for b1 in self.basis
        )

    def contains(self, x) -> bool:
        self.ambient._check_length(x)
        vec = list(x)
        for row in self.basis:
            j = next(i for i, val in enumerate(row) if val)
            if vec[j] % row[j]:
                return False
            q = vec[j] // row[j]
            if q:
                vec = [a - q * b for a, b in zip(vec, row)]
        return not any(vec)

    def rational_coords(self, x):
        """Coordinates of ``x`` in the stored basis over Q, or None."""
        return intlinalg.solve_rational(self.basis, x)

    def coords(self, x):
        """Integer coordinates of ``x`` in the stored basis, or None."""
        sol = self.rational_coords(x)
        if sol is None or any(c.denominator != 1 for c in sol):
            return None
        return tuple(int(c) for c in sol)

    def saturate(self) -> "Sublattice":
        """The saturation: rational span intersected with the ambient lattice.

        Same rank, torsion-free quotient in the ambient; idempotent.
        """
        snf = intlinalg.smith_normal_form(self.basis)
        vinv = intlinalg.invert_unimodular(snf.v)
        return Sublattice(self.ambient, vinv[: self.rank])

    def saturation_index(self) -> int:
        """Index of this sublattice inside its saturation."""
        index = 1
        for d in intlinalg.smith_normal_form(self.basis).diagonal:
            index *= d
        return index

    def is_saturated(self) -> bool:
        return self.basis == self.saturate().basis

    def orthogonal_complement(self) -> "Sublattice":
        """Saturated sublattice of everything pairing to zero with this span."""
        self.ambient._require_nondegenerate("orthogonal_complement")
        if self.rank == 0:
            return Sublattice(self.ambient, intlinalg.identity(self.ambient.rank))
        pairing_rows = tuple(self.ambient.dual_pairings(b) for b in self.basis)
        kernel = intlinalg.integer_kernel(pairing_rows)
        return Sublattice(self.ambient, kernel)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Sublattice)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Sublattice(rank={self.rank}, basis={self.basis})"
