"""Finite abelian groups Z_{n1} x ... x Z_{nd} with bitset-friendly indexing.

Elements are mixed-radix integers in [0, order): index = r1 + n1*(r2 + n2*(...)),
so a subset of the group is a single Python int whose bit p is element p.
Translation by a group element is then a handful of shift/mask operations
(a blockwise rotation per axis), which is what makes exhaustive sweeps and
stabilizer computations cheap.

Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, PreconditionError

DEFAULT_MAX_ORDER = 1 << 20
DEFAULT_SUBGROUP_SWEEP_MAX = 4096
DEFAULT_QUOTIENT_MAX = 1024


def bit_indices(mask: int) -> list[int]:
    """Positions of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class FiniteGroup:
    """A finite abelian group given by its list of cyclic moduli."""

    def __init__(self, moduli: Sequence[int], max_order: int = DEFAULT_MAX_ORDER):
        moduli = tuple(int(n) for n in moduli)
        if not moduli:
            raise PreconditionError("moduli must be nonempty")
        if any(n < 1 for n in moduli):
            raise PreconditionError("every modulus must be >= 1")
        order = 1
        for n in moduli:
            order *= n
        if order > max_order:
            raise CapacityError(f"group order {order} exceeds maximum {max_order}")
        self.moduli = moduli
        self.order = order
        strides = []
        s = 1
        for n in moduli:
            strides.append(s)
            s *= n
        self._strides = tuple(strides)
        self._full_mask = (1 << order) - 1
        self._rot_masks: dict[tuple[int, int], tuple[int, int, int, int]] = {}

    # -- element encoding ------------------------------------------------

    def encode(self, residues: Sequence[int]) -> int:
        if len(residues) != len(self.moduli):
            raise PreconditionError("residue tuple has wrong length")
        idx = 0
        for r, n, s in zip(residues, self.moduli, self._strides):
            r %= n
            idx += r * s
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise PreconditionError(f"element index {index} out of range")
        out = []
        for n in self.moduli:
            out.append(index % n)
            index //= n
        return tuple(out)

    def add(self, a: int, b: int) -> int:
        idx = 0
        for n, s in zip(self.moduli, self._strides):
            idx += (((a // s) % n + (b // s) % n) % n) * s
        return idx

    def neg(self, a: int) -> int:
        idx = 0
        for n, s in zip(self.moduli, self._strides):
            idx += ((n - (a // s) % n) % n) * s
        return idx

    def elements(self) -> range:
        return range(self.order)

    # -- bitset translation ----------------------------------------------

    def _axis_rot(self, axis: int, r: int) -> tuple[int, int, int, int]:
        key = (axis, r)
        cached = self._rot_masks.get(key)
        if cached is not None:
            return cached
        n = self.moduli[axis]
        stride = self._strides[axis]
        block = stride * n
        up = r * stride
        down = block - up
        low_pattern = (1 << down) - 1
        block_ones = (1 << block) - 1
        rep = self._full_mask // block_ones
        low_mask = low_pattern * rep
        high_mask = (block_ones ^ low_pattern) * rep
        cached = (low_mask, high_mask, up, down)
        self._rot_masks[key] = cached
        return cached

    def translate_bits(self, bits: int, g: int) -> int:
        """Bitset of {x + g : x in bits}."""
        if g == 0:
            return bits
        for axis, (n, s) in enumerate(zip(self.moduli, self._strides)):
            r = (g // s) % n
            if r == 0:
                continue
            low_mask, high_mask, up, down = self._axis_rot(axis, r)
            bits = ((bits & low_mask) << up) | ((bits & high_mask) >> down)
        return bits

    def negate_bits(self, bits: int) -> int:
        """Bitset of {-x : x in bits}."""
        out = 0
        for x in bit_indices(bits):
            out |= 1 << self.neg(x)
        return out

    # -- misc --------------------------------------------------------------

    @property
    def spec(self) -> str:
        return "x".join(str(n) for n in self.moduli)

    def element_str(self, index: int) -> str:
        if len(self.moduli) == 1:
            return str(index)
        return "(" + ",".join(str(r) for r in self.decode(index)) + ")"

    def __repr__(self):
        return f"FiniteGroup({self.spec})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(("FiniteGroup", self.moduli))


def make_group(moduli: Sequence[int], max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Construct Z_{n1} x ... x Z_{nd}; raises CapacityError above max_order."""
    return FiniteGroup(moduli, max_order=max_order)


def parse_group_spec(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Parse "6" or "2x4" into a FiniteGroup."""
    try:
        moduli = [int(part) for part in spec.lower().split("x")]
    except ValueError:
        raise PreconditionError(f"bad group spec {spec!r}: expected e.g. '6' or '2x4'")
    return make_group(moduli, max_order=max_order)


def parse_elements(group, text: str) -> list[int]:
    """Parse a set literal: "0,1,3,4" (indices) or "(0,1);(1,3)" (coordinates)."""
    text = text.strip()
    if not text:
        return []
    if text.startswith("("):
        out = []
        for part in text.split(";"):
            part = part.strip()
            if not (part.startswith("(") and part.endswith(")")):
                raise PreconditionError(f"bad coordinate tuple {part!r}")
            coords = [int(c) for c in part[1:-1].split(",")]
            out.append(group.encode(coords))
        return out
    return [int(part) for part in text.split(",")]


@dataclass(frozen=True)
class Subgroup:
    """An explicit subgroup, canonically a sorted tuple of element indices."""

    group: object
    elements: tuple[int, ...]
    mask: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))
        m = 0
        for x in self.elements:
            m |= 1 << x
        object.__setattr__(self, "mask", m)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.group.order // self.order

    def contains(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def validate(self) -> None:
        """Exhaustively check the subgroup axioms; raises PreconditionError."""
        G = self.group
        if not self.elements or self.elements[0] != 0:
            raise PreconditionError("subgroup must contain the identity")
        for x in self.elements:
            if not self.contains(G.neg(x)):
                raise PreconditionError(f"subgroup not closed under negation at {x}")
            for y in self.elements:
                if not self.contains(G.add(x, y)):
                    raise PreconditionError(f"subgroup not closed under addition at {x}+{y}")
        if G.order % self.order != 0:
            raise PreconditionError("subgroup order does not divide group order")

    def __repr__(self):
        return f"Subgroup({{{','.join(map(str, self.elements))}}} <= {getattr(self.group, 'spec', self.group)})"


def subgroup_closure(group, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing gens, by worklist closure under addition."""
    gens = list(gens)
    elems = {0}
    work = [0]
    while work:
        x = work.pop()
        for g in gens:
            y = group.add(x, g)
            if y not in elems:
                elems.add(y)
                work.append(y)
    return Subgroup(group, tuple(elems))


def enumerate_subgroups(group, max_order: int = DEFAULT_SUBGROUP_SWEEP_MAX) -> list[Subgroup]:
    """All subgroups, canonical and deduplicated.

    Grows each known subgroup by one new generator until no new subgroup
    appears; every subgroup is reachable this way because it has a finite
    generating chain.
    """
    if group.order > max_order:
        raise CapacityError(
            f"subgroup enumeration capped at order {max_order}, got {group.order}"
        )
    trivial = (0,)
    seen = {trivial}
    work = [trivial]
    while work:
        base = work.pop()
        base_set = set(base)
        for g in group.elements():
            if g in base_set:
                continue
            elems = set(base_set)
            frontier = [g]
            elems.add(g)
            while frontier:
                x = frontier.pop()
                for h in base:
                    y = group.add(x, h)
                    if y not in elems:
                        elems.add(y)
                        frontier.append(y)
                y = group.add(x, g)
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
            key = tuple(sorted(elems))
            if key not in seen:
                seen.add(key)
                work.append(key)
    return [Subgroup(group, key) for key in sorted(seen, key=lambda t: (len(t), t))]


class QuotientGroup:
    """An explicit coset-table quotient; itself usable as a group."""

    def __init__(self, reps, add_rep: Callable[[object, object], object],
                 neg_rep: Callable[[object], object],
                 project: Callable[[object], object],
                 label: str = "quotient",
                 max_order: int = DEFAULT_QUOTIENT_MAX):
        if len(reps) > max_order:
            raise CapacityError(f"quotient order {len(reps)} exceeds maximum {max_order}")
        self.reps = list(reps)
        self.order = len(self.reps)
        self.label = label
        self._rep_index = {rep: i for i, rep in enumerate(self.reps)}
        self._project_rep = project
        table = []
        for a in self.reps:
            row = [self._rep_index[project(add_rep(a, b))] for b in self.reps]
            table.append(row)
        self._table = table
        self._negs = [self._rep_index[project(neg_rep(a))] for a in self.reps]
        self._perms: dict[int, list[int]] = {}
        if self._table and self._table[0] != list(range(self.order)):
            raise PreconditionError("quotient representatives are not canonical: reps[0] must be the identity")

    def add(self, a: int, b: int) -> int:
        return self._table[a][b]

    def neg(self, a: int) -> int:
        return self._negs[a]

    def elements(self) -> range:
        return range(self.order)

    def project(self, ambient) -> int:
        """Coset index of an ambient element."""
        return self._rep_index[self._project_rep(ambient)]

    def translate_bits(self, bits: int, g: int) -> int:
        if g == 0:
            return bits
        perm = self._perms.get(g)
        if perm is None:
            perm = [row[g] for row in self._table]
            self._perms[g] = perm
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << perm[low.bit_length() - 1]
            bits ^= low
        return out

    def negate_bits(self, bits: int) -> int:
        out = 0
        for x in bit_indices(bits):
            out |= 1 << self._negs[x]
        return out

    @property
    def spec(self) -> str:
        return self.label

    def element_str(self, index: int) -> str:
        return f"[{self.reps[index]}]"

    def validate(self) -> None:
        """Exhaustive abelian group-law check of the coset table."""
        n = self.order
        for i in range(n):
            if self._table[i][0] != i or self._table[0][i] != i:
                raise PreconditionError("quotient identity law fails")
            if self._table[i][self._negs[i]] != 0:
                raise PreconditionError("quotient inverse law fails")
            for j in range(n):
                if self._table[i][j] != self._table[j][i]:
                    raise PreconditionError("quotient commutativity fails")
                for k in range(n):
                    if self._table[self._table[i][j]][k] != self._table[i][self._table[j][k]]:
                        raise PreconditionError("quotient associativity fails")

    def __repr__(self):
        return f"QuotientGroup({self.label}, order={self.order})"


def quotient(group: FiniteGroup, K: Subgroup,
             max_order: int = DEFAULT_QUOTIENT_MAX) -> QuotientGroup:
    """The quotient group/K as an explicit coset table.

    Coset representatives are the minimal element index of each coset, so
    the identity coset is represented by 0 and projection is constant on
    cosets by construction.
    """
    K.validate()
    if K.group is not group and K.group != group:
        raise PreconditionError("subgroup belongs to a different group")
    rep_of = {}
    for x in group.elements():
        if x in rep_of:
            continue
        coset = sorted(group.add(x, k) for k in K.elements)
        r = coset[0]
        for y in coset:
            rep_of[y] = r
    reps = sorted(set(rep_of.values()))
    return QuotientGroup(
        reps,
        add_rep=group.add,
        neg_rep=group.neg,
        project=lambda x: rep_of[x],
        label=f"{group.spec}/{{{','.join(map(str, K.elements))}}}",
        max_order=max_order,
    )
