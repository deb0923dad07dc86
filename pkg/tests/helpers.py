"""Shared fixtures data and independent brute-force oracles.

Nothing here calls the package's checkers: meets and joins come from sets
and spans, and axiom checks are plain nested loops.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from latpoly.builders import boolean_lattice, m3_lattice, product_lattice, subspace_lattice
from latpoly.polymatroid import rank_function

RANK_TWO_ATOMS = {"<e1>", "<e2>", "<e1+e2>"}

# acceptance criterion number -> (passed, seconds, summary); printed by conftest
ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


@lru_cache(maxsize=None)
def f23():
    return subspace_lattice(2, 3)


def example_values(L) -> list[int]:
    """Atoms <e1>, <e2>, <e1+e2> have rank 2, the other atoms rank 1, and every
    element of height >= 2 rank 2."""
    out = []
    for i, name in enumerate(L.names):
        h = L.height(i)
        out.append(0 if h == 0 else 2 if (h >= 2 or name in RANK_TWO_ATOMS) else 1)
    return out


def f23_example():
    L = f23()
    return L, rank_function(L, example_values(L))


@lru_cache(maxsize=None)
def sample_lattices():
    """Modular complemented lattices used throughout."""
    return {
        "B2": boolean_lattice(2),
        "B3": boolean_lattice(3),
        "B4": boolean_lattice(4),
        "F22": subspace_lattice(2, 2),
        "F23": subspace_lattice(2, 3),
        "F32": subspace_lattice(3, 2),
        "M3xB1": product_lattice(m3_lattice(), boolean_lattice(1)),
    }


# -- set-based lattice oracles ---------------------------------------------------------


def span(vectors, p, n):
    """All F_p combinations of the given vectors (as a frozenset of tuples)."""
    out = {tuple([0] * n)}
    for v in vectors:
        new = set()
        for w in out:
            for c in range(p):
                new.add(tuple((a + c * b) % p for a, b in zip(w, v)))
        out = new
    return frozenset(out)


def subspace_oracle(L):
    """(meet, join, leq) as Python functions from the vector sets of each element."""
    p, n = L.data[0].p, L.data[0].n
    vecs = [e.vectors() for e in L.data]
    index = {v: i for i, v in enumerate(vecs)}

    def meet(a, b):
        return index[vecs[a] & vecs[b]]

    def join(a, b):
        return index[span(vecs[a] | vecs[b], p, n)]

    def leq(a, b):
        return vecs[a] <= vecs[b]

    return meet, join, leq


def boolean_oracle(L):
    sets = list(L.data)
    index = {s: i for i, s in enumerate(sets)}
    return (
        lambda a, b: index[sets[a] & sets[b]],
        lambda a, b: index[sets[a] | sets[b]],
        lambda a, b: sets[a] <= sets[b],
    )


# -- axiom oracles -----------------------------------------------------------------


def rank_axioms_hold(L, values, t=None) -> bool:
    n = L.n
    h = [L.height(i) for i in range(n)]
    if t is None:
        t = max((Fraction(values[i]) / h[i] for i in range(n) if h[i]), default=Fraction(0))
    for a in range(n):
        if values[a] < 0 or values[a] > t * h[a]:
            return False
        for b in range(n):
            if L.leq_table[a, b] and values[a] > values[b]:
                return False
            if values[a] + values[b] < values[L.join(a, b)] + values[L.meet(a, b)]:
                return False
    return True


def enumerate_polymatroids(L, max_atom_rank: int) -> set[tuple[int, ...]]:
    """Every integer function with r(X) <= max_atom_rank * h(X) passing
    (R1)-(R3), by exhaustive product; only for tiny lattices."""
    ranges = [range(max_atom_rank * L.height(i) + 1) for i in range(L.n)]
    return {vals for vals in product(*ranges) if rank_axioms_hold(L, vals, Fraction(max_atom_rank))}


def dfs_polymatroids(L, max_atom_rank: int):
    """Every integer (L, max_atom_rank)-polymatroid, by depth-first assignment in
    height order; each monotonicity or submodularity constraint is tested as
    soon as all of its elements have values."""
    order = sorted(range(L.n), key=L.height)
    pos = {x: i for i, x in enumerate(order)}
    due = [[] for _ in range(L.n)]
    for a in range(L.n):
        for b in range(a, L.n):
            jn, mt = L.join(a, b), L.meet(a, b)
            due[max(pos[a], pos[b], pos[jn], pos[mt])].append((a, b, jn, mt))
    r = [0] * L.n

    def ok(k):
        for a, b, jn, mt in due[k]:
            if r[mt] > min(r[a], r[b]) or r[jn] < max(r[a], r[b]):
                return False
            if r[a] + r[b] < r[jn] + r[mt]:
                return False
        return True

    def rec(k):
        if k == L.n:
            yield tuple(r)
            return
        x = order[k]
        for v in range(max_atom_rank * L.height(x) + 1):
            r[x] = v
            if ok(k):
                yield from rec(k + 1)
        r[x] = 0

    yield from rec(0)
