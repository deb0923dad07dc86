"""Standard lattices: Boolean lattices, subspace lattices of F_p^n, direct
products, and a few small named lattices used in tests."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import NotPrime, SizeLimit
from .lattice import FiniteLattice, build_lattice

MAX_BOOLEAN_RANK = 6
MAX_ELEMENTS = 512


@dataclass(frozen=True)
class SubspaceElement:
    """Subspace of F_p^n given by its reduced row-echelon basis."""

    p: int
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self) -> frozenset[tuple[int, ...]]:
        out = set()
        for coeffs in product(range(self.p), repeat=len(self.basis)):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                for j in range(self.n):
                    v[j] = (v[j] + c * row[j]) % self.p
            out.add(tuple(v))
        return frozenset(out)

    def label(self) -> str:
        if not self.basis:
            return "0"
        if self.dimension == self.n:
            return "E"
        return "<" + ",".join(_vector_label(row) for row in self.basis) + ">"


def _vector_label(row: tuple[int, ...]) -> str:
    terms = []
    for j, c in enumerate(row):
        if c == 1:
            terms.append(f"e{j + 1}")
        elif c:
            terms.append(f"{c}e{j + 1}")
    return "+".join(terms)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rref(rows, p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon form over F_p, zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        piv = next((i for i in range(pivot_row, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[pivot_row], m[piv] = m[piv], m[pivot_row]
        inv = pow(m[pivot_row][col], -1, p)
        m[pivot_row] = [(v * inv) % p for v in m[pivot_row]]
        for i in range(len(m)):
            if i != pivot_row and m[i][col] % p:
                c = m[i][col]
                m[i] = [(a - c * b) % p for a, b in zip(m[i], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return tuple(tuple(r) for r in m[:pivot_row])


def _rref_forms(p: int, n: int, k: int):
    """Every k x n RREF matrix over F_p, pivots in increasing order."""
    for pivots in combinations(range(n), k):
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivots]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def boolean_lattice(n: int, max_rank: int = MAX_BOOLEAN_RANK) -> FiniteLattice:
    """Subsets of {1..n} ordered by inclusion; names like ``{1,3}``."""
    if n < 0 or n > max_rank:
        raise SizeLimit(f"boolean lattice rank must be in 0..{max_rank}, got {n}")
    subsets = [frozenset(s) for k in range(n + 1) for s in combinations(range(1, n + 1), k)]
    names = ["{" + ",".join(str(i) for i in sorted(s)) + "}" for s in subsets]
    pos = {s: i for i, s in enumerate(subsets)}
    covers = [
        (names[pos[s]], names[pos[s | {e}]]) for s in subsets for e in range(1, n + 1) if e not in s
    ]
    return build_lattice(names, covers, data=subsets)


def subspace_lattice(p: int, n: int, max_elements: int = MAX_ELEMENTS) -> FiniteLattice:
    """All subspaces of F_p^n (p prime) ordered by inclusion.

    Element names spell the RREF basis, e.g. ``<e1+e2,e3>``; the zero space is
    ``0`` and the whole space ``E``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 0:
        raise SizeLimit("dimension must be non-negative")
    total = sum(gaussian_binomial(n, k, p) for k in range(n + 1))
    if total > max_elements:
        raise SizeLimit(f"L(F_{p}^{n}) has {total} elements, limit is {max_elements}")
    elems = [SubspaceElement(p, n, basis) for k in range(n + 1) for basis in _rref_forms(p, n, k)]
    vecs = [e.vectors() for e in elems]
    names = [e.label() for e in elems]
    covers = []
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if b.dimension == a.dimension + 1 and vecs[i] <= vecs[j]:
                covers.append((names[i], names[j]))
    return build_lattice(names, covers, data=elems)


def product_lattice(
    L1: FiniteLattice, L2: FiniteLattice, max_elements: int = MAX_ELEMENTS
) -> FiniteLattice:
    """Direct product with the componentwise order; names ``(a,b)``."""
    if L1.n * L2.n > max_elements:
        raise SizeLimit(f"product has {L1.n * L2.n} elements, limit is {max_elements}")
    pairs = [(a, b) for a in range(L1.n) for b in range(L2.n)]
    names = [f"({L1.names[a]},{L2.names[b]})" for a, b in pairs]
    pos = {pr: i for i, pr in enumerate(pairs)}
    covers = []
    for a, b in pairs:
        for a2 in L1.upper_covers[a]:
            covers.append((names[pos[a, b]], names[pos[a2, b]]))
        for b2 in L2.upper_covers[b]:
            covers.append((names[pos[a, b]], names[pos[a, b2]]))
    return build_lattice(names, covers, data=pairs)


def chain_lattice(k: int) -> FiniteLattice:
    """Chain 0 < 1 < ... < k."""
    names = [str(i) for i in range(k + 1)]
    return build_lattice(names, list(zip(names, names[1:])))


def m3_lattice() -> FiniteLattice:
    names = ["0", "a", "b", "c", "1"]
    covers = [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
    return build_lattice(names, covers)


def n5_lattice() -> FiniteLattice:
    names = ["0", "a", "b", "c", "1"]
    covers = [("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")]
    return build_lattice(names, covers)
