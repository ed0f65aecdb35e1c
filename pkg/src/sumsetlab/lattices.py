"""Finite-index sublattices of Z^d in row-style Hermite normal form.

Convention (fixed so canonical equality is bit-exact): basis rows generate
the lattice, the matrix is upper triangular with positive diagonal, and in
every column j the entries above the diagonal are reduced into
[0, diagonal_j).  The index of the sublattice is the product of the
diagonal, i.e. |det|.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import CapacityError, PreconditionError
from .groups import QuotientGroup

DEFAULT_INDEX_MAX = 1 << 20


@dataclass(frozen=True)
class Sublattice:
    """Row lattice of a d x d HNF matrix."""

    hnf: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.hnf)
        for i, row in enumerate(self.hnf):
            if len(row) != d:
                raise PreconditionError("HNF matrix must be square")
            if row[i] <= 0:
                raise PreconditionError("HNF diagonal entries must be positive")
            if any(row[j] != 0 for j in range(i)):
                raise PreconditionError("HNF matrix must be upper triangular")
        for j in range(d):
            for i in range(j):
                if not 0 <= self.hnf[i][j] < self.hnf[j][j]:
                    raise PreconditionError("HNF off-diagonal entries must lie in [0, diagonal)")

    @property
    def dim(self) -> int:
        return len(self.hnf)

    @property
    def index(self) -> int:
        n = 1
        for i in range(self.dim):
            n *= self.hnf[i][i]
        return n

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.hnf]

    def flat(self) -> list[int]:
        """Row-major serialization."""
        return [e for row in self.hnf for e in row]

    def __repr__(self):
        return f"Sublattice({self.hnf}, index={self.index})"


def hnf_reduce(matrix) -> Sublattice:
    """Canonical HNF of the row lattice of an integer matrix.

    Accepts r x d input with r >= d provided the rows span a full-rank
    lattice (extra rows reduce away).  Uses exact integer row reduction:
    gcd-style elimination below each pivot, sign normalization, then
    reduction of the entries above each pivot.  Two generating matrices of
    the same lattice reduce identically.
    """
    rows = [list(map(int, row)) for row in matrix]
    if not rows:
        raise PreconditionError("matrix must be nonempty")
    d = len(rows[0])
    if any(len(row) != d for row in rows) or len(rows) < d:
        raise PreconditionError("matrix must be d x d or taller with equal-length rows")
    for col in range(d):
        pivot = None
        for i in range(col, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            raise PreconditionError("matrix is singular (rank-deficient rows)")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        # euclidean elimination below the pivot
        for i in range(col + 1, len(rows)):
            while rows[i][col] != 0:
                q = rows[col][col] // rows[i][col]
                rows[col] = [a - q * b for a, b in zip(rows[col], rows[i])]
                rows[col], rows[i] = rows[i], rows[col]
        if rows[col][col] < 0:
            rows[col] = [-a for a in rows[col]]
    if any(any(rows[i]) for i in range(d, len(rows))):
        raise PreconditionError("row reduction left a nonzero extra row")
    rows = rows[:d]
    # reduce entries above each diagonal
    for j in range(d):
        for i in range(j):
            q = rows[i][j] // rows[j][j]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[j])]
    return Sublattice(tuple(tuple(row) for row in rows))


def enumerate_sublattices(dim: int, index: int,
                          index_max: int = DEFAULT_INDEX_MAX) -> list[Sublattice]:
    """All sublattices of Z^dim of the given index, in canonical HNF.

    Generated directly from the HNF shape (diagonal factorizations times
    reduced off-diagonal entries), so the list is duplicate-free by
    construction.  For dim=2 the count is sigma(index).
    """
    if dim < 1 or dim > 3:
        raise CapacityError("sublattice enumeration supports dim 1..3")
    if index < 1 or index > index_max:
        raise CapacityError(f"index must be in [1, {index_max}]")

    def diagonals(d: int, n: int):
        if d == 1:
            yield (n,)
            return
        for first in range(1, n + 1):
            if n % first == 0:
                for rest in diagonals(d - 1, n // first):
                    yield (first,) + rest

    out = []
    for diag in diagonals(dim, index):
        free_cols = [(i, j) for j in range(dim) for i in range(j)]
        ranges = [range(diag[j]) for (_, j) in free_cols]
        for values in product(*ranges):
            rows = [[0] * dim for _ in range(dim)]
            for k in range(dim):
                rows[k][k] = diag[k]
            for (i, j), v in zip(free_cols, values):
                rows[i][j] = v
            out.append(Sublattice(tuple(tuple(r) for r in rows)))
    out.sort(key=lambda L: L.flat())
    return out


def reduce_mod_lattice(x, L: Sublattice) -> tuple[int, ...]:
    """Canonical representative of x modulo L in the fundamental box.

    Processes coordinates left to right with the triangular basis rows, so
    the result v satisfies 0 <= v_j < diagonal_j and x - v is in L.
    """
    v = list(map(int, x))
    if len(v) != L.dim:
        raise PreconditionError("vector dimension mismatch")
    for j in range(L.dim):
        q = v[j] // L.hnf[j][j]
        if q:
            for t in range(j, L.dim):
                v[t] -= q * L.hnf[j][t]
    return tuple(v)


def lattice_quotient(L: Sublattice, max_order: int = 1024) -> QuotientGroup:
    """Z^d / L as an explicit QuotientGroup of order L.index."""
    if L.index > max_order:
        raise CapacityError(f"lattice quotient order {L.index} exceeds maximum {max_order}")
    boxes = [range(L.hnf[j][j]) for j in range(L.dim)]
    reps = sorted(product(*boxes))

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(a):
        return tuple(-x for x in a)

    return QuotientGroup(
        reps,
        add_rep=add,
        neg_rep=neg,
        project=lambda v: reduce_mod_lattice(v, L),
        label=f"Z^{L.dim}/{L.flat()}",
        max_order=max_order,
    )
