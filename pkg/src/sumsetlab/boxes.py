"""Boxes in Z^d and exact counting of periodic d-dimensional sets.

Two kinds of d-dimensional sets are supported:

* arbitrary sets given by a vectorized membership predicate, counted by
  chunked enumeration over box cells (capped, exact);
* lattice-periodic sets R + L for a finite-index sublattice L, counted in
  closed form, with exact sumsets computed in the quotient Z^d / L.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BudgetError, PreconditionError
from .intervals import count_residue_class
from .lattices import Sublattice, reduce_mod_lattice

BOX_CELL_BUDGET = 10**8
_CHUNK = 1 << 20


@dataclass(frozen=True)
class Box:
    """Closed integer box prod_j [lo_j, hi_j] in Z^d."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or not self.lo:
            raise PreconditionError("box bounds must be nonempty and equal length")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise PreconditionError("box must be nonempty")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def size(self) -> int:
        n = 1
        for l, h in zip(self.lo, self.hi):
            n *= h - l + 1
        return n

    def shift(self, t) -> "Box":
        return Box(tuple(l + dt for l, dt in zip(self.lo, t)),
                   tuple(h + dt for h, dt in zip(self.hi, t)))

    def overlap(self, other: "Box") -> int:
        """|self intersect other|, exact."""
        n = 1
        for (l1, h1), (l2, h2) in zip(zip(self.lo, self.hi), zip(other.lo, other.hi)):
            w = min(h1, h2) - max(l1, l2) + 1
            if w <= 0:
                return 0
            n *= w
        return n

    def contains_box(self, other: "Box") -> bool:
        return all(l1 <= l2 and h2 <= h1 for (l1, h1), (l2, h2)
                   in zip(zip(self.lo, self.hi), zip(other.lo, other.hi)))

    def __repr__(self):
        ranges = "x".join(f"[{l},{h}]" for l, h in zip(self.lo, self.hi))
        return f"Box({ranges})"


def box_defect(box: Box, t) -> tuple[int, int]:
    """(|F symdiff (F+t)|, |F|) for a box window, in closed form."""
    size = box.size()
    inter = box.overlap(box.shift(t))
    return 2 * (size - inter), size


def count_predicate(predicate, box: Box, cell_budget: int = BOX_CELL_BUDGET) -> int:
    """Exact count of predicate-true cells in the box by chunked enumeration.

    predicate receives d int64 arrays (one per coordinate) and must return a
    boolean array of the same shape.
    """
    size = box.size()
    if size > cell_budget:
        raise BudgetError(f"box with {size} cells exceeds the {cell_budget} cell budget")
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(box.lo, box.hi)]
    widths = [len(a) for a in axes]
    total = 0
    done = 0
    while done < size:
        take = min(_CHUNK, size - done)
        flat = np.arange(done, done + take, dtype=np.int64)
        coords = []
        rem = flat
        for w, axis in zip(reversed(widths), reversed(axes)):
            coords.append(axis[rem % w])
            rem = rem // w
        coords.reverse()
        total += int(np.count_nonzero(predicate(*coords)))
        done += take
    return total


class PeriodicBoxSet:
    """A lattice-periodic subset R + L of Z^d, counted in closed form."""

    def __init__(self, lattice: Sublattice, residues):
        self.lattice = lattice
        canon = {reduce_mod_lattice(r, lattice) for r in residues}
        if not canon:
            raise PreconditionError("periodic box set needs at least one residue")
        self.residues = tuple(sorted(canon))
        # order of each unit vector in Z^d / L gives an axis-aligned period
        periods = []
        for j in range(lattice.dim):
            e = [0] * lattice.dim
            o = 0
            while True:
                o += 1
                e[j] += 1
                if reduce_mod_lattice(e, lattice) == tuple([0] * lattice.dim):
                    break
            periods.append(o)
        self.periods = tuple(periods)
        pattern_cells = 1
        for o in self.periods:
            pattern_cells *= o
        if pattern_cells > 10**6:
            raise BudgetError("axis-period pattern too large to tabulate")
        pattern = []
        rset = set(self.residues)
        for point in product(*[range(o) for o in self.periods]):
            if reduce_mod_lattice(point, lattice) in rset:
                pattern.append(point)
        self._pattern = tuple(pattern)

    def member(self, x) -> bool:
        return reduce_mod_lattice(x, self.lattice) in set(self.residues)

    def count_in(self, box: Box) -> int:
        """Exact |(R + L) intersect box| via the axis-aligned period pattern."""
        total = 0
        for point in self._pattern:
            n = 1
            for p, o, l, h in zip(point, self.periods, box.lo, box.hi):
                n *= count_residue_class(p, o, l, h)
                if n == 0:
                    break
            total += n
        return total

    def sumset(self, other: "PeriodicBoxSet") -> "PeriodicBoxSet":
        """(R1 + L) + (R2 + L) = (R1 + R2) + L, exact."""
        if self.lattice != other.lattice:
            raise PreconditionError("periodic box sets use different lattices")
        sums = {tuple(a + b for a, b in zip(r1, r2))
                for r1 in self.residues for r2 in other.residues}
        return PeriodicBoxSet(self.lattice, sums)

    def saturate(self, coarser: Sublattice) -> "PeriodicBoxSet":
        """Self + coarser lattice, as a set periodic under the coarser lattice.

        Valid when the coarser lattice contains self.lattice, so that
        (R + L) + L' = (R mod L') + L'.
        """
        return PeriodicBoxSet(coarser, {reduce_mod_lattice(r, coarser) for r in self.residues})

    def __repr__(self):
        return f"PeriodicBoxSet({len(self.residues)} residues mod {self.lattice.flat()})"
