"""Finite lattices given by their cover relation, plus the order-theoretic
primitives the polymatroid code needs: complements, decomposing complements,
maximal chains and layerings.

Elements are dense integer ids ``0..n-1``; display names are only used for
input/output and witnesses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import (
    CyclicCovers,
    DuplicateName,
    NoSuchComplement,
    NotALattice,
    NotComparable,
    NotMaximalChain,
    UnknownName,
)
from .report import Report, failed, passed


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class FiniteLattice:
    """Immutable finite lattice with materialised order, meet, join and height tables.

    Build instances with :func:`build_lattice` (or one of the builders); the
    constructor trusts its arguments.
    """

    def __init__(
        self,
        names: Sequence[str],
        leq: np.ndarray,
        meet: np.ndarray,
        join: np.ndarray,
        height: np.ndarray,
        data: Sequence[Any] | None = None,
    ):
        self.names = tuple(names)
        self.n = len(self.names)
        self.leq_table = _readonly(leq)
        self.meet_table = _readonly(meet)
        self.join_table = _readonly(join)
        self.heights = _readonly(height)
        self.bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        self.top = int(np.flatnonzero(leq.all(axis=0))[0])
        self.data = tuple(data) if data is not None else None

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, height={self.height(self.top)})"

    def __len__(self) -> int:
        return self.n

    # -- names -------------------------------------------------------------

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def idx(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownName(f"unknown element {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    # -- order primitives --------------------------------------------------

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq_table[a, b])

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.leq_table[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def height(self, a: int) -> int:
        return int(self.heights[a])

    def join_all(self, elems: Iterable[int]) -> int:
        """Join of a set of elements; the empty join is the bottom."""
        out = self.bottom
        for e in elems:
            out = int(self.join_table[out, e])
        return out

    def meet_all(self, elems: Iterable[int]) -> int:
        out = self.top
        for e in elems:
            out = int(self.meet_table[out, e])
        return out

    def below(self, x: int) -> np.ndarray:
        """Ids of all elements of [0, x], ascending."""
        return np.flatnonzero(self.leq_table[:, x])

    def interval(self, a: int, b: int) -> np.ndarray:
        if not self.le(a, b):
            raise NotComparable(f"{self.names[a]} is not below {self.names[b]}")
        return np.flatnonzero(self.leq_table[a, :] & self.leq_table[:, b])

    # -- covers ------------------------------------------------------------

    @cached_property
    def is_cover(self) -> np.ndarray:
        strict = self.leq_table & ~np.eye(self.n, dtype=bool)
        si = strict.astype(np.int64)
        return _readonly(strict & ~((si @ si) > 0))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        lo, hi = np.nonzero(self.is_cover)
        return tuple((int(a), int(b)) for a, b in zip(lo, hi))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(b) for b in np.flatnonzero(self.is_cover[a])) for a in range(self.n))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(a) for a in np.flatnonzero(self.is_cover[:, b])) for b in range(self.n))

    @cached_property
    def atoms_all(self) -> tuple[int, ...]:
        return self.upper_covers[self.bottom]

    @cached_property
    def atom_array(self) -> np.ndarray:
        return _readonly(np.array(self.atoms_all, dtype=np.int64))

    @cached_property
    def by_height(self) -> tuple[int, ...]:
        """Element ids sorted by (height, id)."""
        return tuple(int(i) for i in np.lexsort((np.arange(self.n), self.heights)))

    @cached_property
    def length2_intervals(self) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
        """All (A, B, interior) with len([A, B]) = 2 and A <= B."""
        out = []
        h = self.heights
        for a in range(self.n):
            for b in np.flatnonzero(self.leq_table[a] & (h == h[a] + 2)):
                inner = np.flatnonzero(self.is_cover[a] & self.is_cover[:, b])
                if inner.size:
                    out.append((a, int(b), tuple(int(x) for x in inner)))
        return tuple(out)

    # -- complements -------------------------------------------------------

    @cached_property
    def complement_mask(self) -> np.ndarray:
        return _readonly((self.meet_table == self.bottom) & (self.join_table == self.top))

    @cached_property
    def complement_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(c) for c in np.flatnonzero(row)) for row in self.complement_mask)

    @cached_property
    def comp_pad(self) -> np.ndarray:
        """Complements as an n x k table padded with -1 (for the kernels)."""
        k = max((len(c) for c in self.complement_lists), default=0)
        pad = np.full((self.n, max(k, 1)), -1, dtype=np.int64)
        for i, cs in enumerate(self.complement_lists):
            pad[i, : len(cs)] = cs
        return _readonly(pad)

    @cached_property
    def modular_report(self) -> Report:
        a, b, c = (int(v) for v in kernels.modular_witness(self.leq_table, self.meet_table, self.join_table))
        if a < 0:
            return passed("modular")
        nm = self.names
        lhs = self.join(self.meet(a, b), c)
        rhs = self.meet(a, self.join(b, c))
        return failed(
            "modular",
            f"(A^B)vC = {nm[lhs]} != A^(BvC) = {nm[rhs]} with C <= A",
            A=nm[a], B=nm[b], C=nm[c],
        )

    @cached_property
    def complemented_report(self) -> Report:
        for i, cs in enumerate(self.complement_lists):
            if not cs:
                return failed("complemented", "element has no complement", A=self.names[i])
        return passed("complemented")


class Interval(NamedTuple):
    lower: int
    upper: int


@dataclass(frozen=True)
class Layering:
    """Maximal chain bottom = H_m < ... < H_0 = X (stored bottom first) and its
    layers L_1..L_m."""

    chain: tuple[int, ...]
    layers: tuple[frozenset[int], ...]


# -- construction -----------------------------------------------------------


def build_lattice(
    elements: Sequence[str],
    covers: Iterable[tuple[str, str]],
    data: Sequence[Any] | None = None,
) -> FiniteLattice:
    """Build a lattice from element names and (lower, upper) cover pairs.

    Pairs that are not true covers (transitive edges) are accepted; the stored
    cover relation is the Hasse reduction of the generated order.
    """
    names = [str(e) for e in elements]
    if not names:
        raise NotALattice("a lattice needs at least one element")
    index: dict[str, int] = {}
    for i, nm in enumerate(names):
        if nm in index:
            raise DuplicateName(f"duplicate element name {nm!r}")
        index[nm] = i
    n = len(names)
    ups: list[set[int]] = [set() for _ in range(n)]
    for lo, hi in covers:
        if lo not in index:
            raise UnknownName(f"cover references unknown element {lo!r}")
        if hi not in index:
            raise UnknownName(f"cover references unknown element {hi!r}")
        a, b = index[lo], index[hi]
        if a == b:
            raise CyclicCovers(f"self-cover on {lo!r}")
        ups[a].add(b)

    indeg = [0] * n
    for a in range(n):
        for b in ups[a]:
            indeg[b] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while queue:
        a = queue.popleft()
        order.append(a)
        for b in sorted(ups[a]):
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if len(order) != n:
        stuck = min(i for i in range(n) if indeg[i] > 0)
        raise CyclicCovers(f"cover relation has a cycle through {names[stuck]!r}")

    ptr = np.zeros(n + 1, dtype=np.int64)
    for a in range(n):
        ptr[a + 1] = ptr[a] + len(ups[a])
    idx = np.array([b for a in range(n) for b in sorted(ups[a])], dtype=np.int64)
    leq = kernels.closure(ptr, idx, np.array(order, dtype=np.int64))

    meet, join, bad = kernels.meet_join(leq)
    if bad[0] >= 0:
        a, b, kind = (int(v) for v in bad)
        what = "meet" if kind == 0 else "join"
        raise NotALattice(
            f"{names[a]!r} and {names[b]!r} have no unique {what}", witness=(names[a], names[b])
        )

    # longest chain from the bottom, over the generating edges in topological order
    height = np.zeros(n, dtype=np.int64)
    for a in order:
        for b in ups[a]:
            if height[a] + 1 > height[b]:
                height[b] = height[a] + 1
    return FiniteLattice(names, leq, meet, join, height, data)


# -- module-level primitives --------------------------------------------------


def meet(L: FiniteLattice, a: int, b: int) -> int:
    return L.meet(a, b)


def join(L: FiniteLattice, a: int, b: int) -> int:
    return L.join(a, b)


def height(L: FiniteLattice, a: int) -> int:
    return L.height(a)


def atoms(L: FiniteLattice, x: int | None = None) -> frozenset[int]:
    """Atoms of L below ``x`` (all atoms when ``x`` is None)."""
    if x is None:
        return frozenset(L.atoms_all)
    return frozenset(a for a in L.atoms_all if L.leq_table[a, x])


def coatoms_below(L: FiniteLattice, x: int) -> frozenset[int]:
    """Elements covered by ``x``."""
    return frozenset(L.lower_covers[x])


def is_modular(L: FiniteLattice) -> Report:
    return L.modular_report


def is_complemented(L: FiniteLattice) -> Report:
    return L.complemented_report


def complements(L: FiniteLattice, a: int) -> frozenset[int]:
    return frozenset(L.complement_lists[a])


def decomposes(L: FiniteLattice, a: int, ac: int, b: int) -> bool:
    """True when the complement ``ac`` of ``a`` splits ``b`` as (ac^b) v (a^b) with
    trivial meet."""
    x = L.meet(ac, b)
    y = L.meet(a, b)
    return L.join(x, y) == b and L.meet(x, y) == L.bottom


def decomposing_complement_list(L: FiniteLattice, a: int, b: int) -> tuple[int, ...]:
    return tuple(c for c in L.complement_lists[a] if decomposes(L, a, c, b))


def decomposing_complements(L: FiniteLattice, a: int, b: int) -> frozenset[int]:
    """C(a; b): complements of ``a`` that decompose ``b``."""
    return frozenset(decomposing_complement_list(L, a, b))


def complement_extending(L: FiniteLattice, a: int, b: int) -> int:
    """Some complement of ``a`` lying above ``b`` (requires a ^ b = 0)."""
    if L.meet(a, b) != L.bottom:
        raise NoSuchComplement(f"{L.names[a]} and {L.names[b]} meet above the bottom")
    for c in L.complement_lists[a]:
        if L.leq_table[b, c]:
            return c
    raise NoSuchComplement(f"no complement of {L.names[a]} contains {L.names[b]}")


def complement_decomposing_both(L: FiniteLattice, c: int, a: int, b: int) -> int:
    """Some complement of ``c`` decomposing both ``a`` and ``b`` (requires a <= b)."""
    if not L.le(a, b):
        raise NotComparable(f"{L.names[a]} is not below {L.names[b]}")
    for cc in L.complement_lists[c]:
        if decomposes(L, c, cc, a) and decomposes(L, c, cc, b):
            return cc
    raise NoSuchComplement(
        f"no complement of {L.names[c]} decomposes both {L.names[a]} and {L.names[b]}"
    )


def maximal_chain(L: FiniteLattice, a: int, b: int) -> list[int]:
    """One saturated chain from ``a`` up to ``b``."""
    if not L.le(a, b):
        raise NotComparable(f"{L.names[a]} is not below {L.names[b]}")
    chain = [a]
    cur = a
    while cur != b:
        cur = next(u for u in L.upper_covers[cur] if L.leq_table[u, b])
        chain.append(cur)
    return chain


def all_maximal_chains(L: FiniteLattice, a: int, b: int) -> list[list[int]]:
    """Every saturated chain from ``a`` to ``b``; exponential in general."""
    if not L.le(a, b):
        raise NotComparable(f"{L.names[a]} is not below {L.names[b]}")
    out: list[list[int]] = []
    stack = [[a]]
    while stack:
        path = stack.pop()
        last = path[-1]
        if last == b:
            out.append(path)
            continue
        for u in reversed(L.upper_covers[last]):
            if L.leq_table[u, b]:
                stack.append(path + [u])
    return out


def is_saturated_chain(L: FiniteLattice, chain: Sequence[int]) -> bool:
    return len(chain) > 0 and all(L.is_cover[x, y] for x, y in zip(chain, chain[1:]))


def layering(L: FiniteLattice, chain: Sequence[int]) -> Layering:
    """Layers of a maximal chain from the bottom to X, given bottom first.

    With H_0 = X, ..., H_m = bottom, layer L_k holds the atoms of X that are below
    H_{k-1} but not below H_k.
    """
    chain = tuple(int(c) for c in chain)
    if not chain or chain[0] != L.bottom or not is_saturated_chain(L, chain):
        raise NotMaximalChain("expected a saturated chain starting at the bottom")
    m = len(chain) - 1
    x = chain[-1]
    H = chain[::-1]  # H[k] = H_k
    ats = [a for a in L.atoms_all if L.leq_table[a, x]]
    layers = tuple(
        frozenset(a for a in ats if L.leq_table[a, H[k - 1]] and not L.leq_table[a, H[k]])
        for k in range(1, m + 1)
    )
    return Layering(chain, layers)


def is_independent(L: FiniteLattice, atom_set: Iterable[int]) -> bool:
    s = list(atom_set)
    return L.height(L.join_all(s)) == len(s)


def up_related(L: FiniteLattice, i1: Interval, i2: Interval) -> bool:
    """[A,B] up-projects to [C,D]: A = B ^ C and D = B v C."""
    (a, b), (c, d) = i1, i2
    return a == L.meet(b, c) and d == L.join(b, c)


def down_related(L: FiniteLattice, i1: Interval, i2: Interval) -> bool:
    """[A,B] down-projects to [C,D]: C = A ^ D and B = A v D."""
    (a, b), (c, d) = i1, i2
    return c == L.meet(a, d) and b == L.join(a, d)


def atom_bases(L: FiniteLattice, x: int) -> list[frozenset[int]]:
    """All independent atom sets of size h(x) whose join is x."""
    h = L.height(x)
    ats = [a for a in L.atoms_all if L.leq_table[a, x]]
    return [frozenset(s) for s in combinations(ats, h) if L.join_all(s) == x]
