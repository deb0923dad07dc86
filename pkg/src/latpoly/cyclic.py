"""Flats, cyclic elements, closure and cyclic operators, the lattice of cyclic
flats, the atom-basis weight mu_f, quasi-modularity and rank reconstruction
from cyclic flats."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import EmptyZ, LatticeError, MissingValue, NegativeWeight, NotASublattice, RankAxiomViolation
from .lattice import FiniteLattice, atom_bases, decomposing_complement_list
from .polymatroid import RankFunction, check_rank_axioms
from .rational import as_fraction, common_denominator, format_rational, scale
from .report import Report, failed, passed


@dataclass(frozen=True, eq=False)
class AtomWeighting:
    """Non-negative weight on each atom of the lattice, aligned with
    ``lattice.atoms_all``."""

    lattice: FiniteLattice
    values: tuple[Fraction, ...]

    def __getitem__(self, atom: int) -> Fraction:
        return self.values[self._pos[atom]]

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.lattice.atoms_all)}

    def on_elements(self) -> list[Fraction]:
        """Per-element list, zero off the atoms."""
        out = [Fraction(0)] * self.lattice.n
        for a, v in zip(self.lattice.atoms_all, self.values):
            out[a] = v
        return out


def atom_weighting(L: FiniteLattice, values) -> AtomWeighting:
    """From a mapping keyed by atom name/id, or a sequence aligned with the atoms."""
    if isinstance(values, Mapping):
        got: dict[int, Fraction] = {}
        for key, v in values.items():
            i = L.idx(key) if isinstance(key, str) else int(key)
            if i not in L.atoms_all:
                raise LatticeError(f"{L.names[i]} is not an atom")
            got[i] = as_fraction(v)
        missing = [L.names[a] for a in L.atoms_all if a not in got]
        if missing:
            raise MissingValue(f"atom weight missing for {', '.join(missing)}")
        vals = tuple(got[a] for a in L.atoms_all)
    else:
        vals = tuple(as_fraction(v) for v in values)
        if len(vals) != len(L.atoms_all):
            raise MissingValue(f"need {len(L.atoms_all)} atom weights, got {len(vals)}")
    for a, v in zip(L.atoms_all, vals):
        if v < 0:
            raise NegativeWeight(f"atom {L.names[a]} has weight {format_rational(v)}")
    return AtomWeighting(L, vals)


def atom_ranks(rf: RankFunction) -> AtomWeighting:
    L = rf.lattice
    return AtomWeighting(L, tuple(rf.values[a] for a in L.atoms_all))


# -- mu_f ---------------------------------------------------------------------------


def mu_greedy(L: FiniteLattice, f: AtomWeighting, x: int, order: Sequence[int] | None = None) -> Fraction:
    """Greedy minimum-weight atom basis of ``x``.

    Repeatedly adds a cheapest atom of ``x`` not yet below the running join.
    ``order`` fixes tie-breaking among equally cheap atoms (default: by id).
    """
    order = list(L.atoms_all) if order is None else list(order)
    below = [a for a in order if L.leq_table[a, x]]
    v = L.bottom
    total = Fraction(0)
    while True:
        best = None
        for a in below:
            if not L.leq_table[a, v] and (best is None or f[a] < f[best]):
                best = a
        if best is None:
            return total
        total += f[best]
        v = L.join(v, best)


def mu_bruteforce(L: FiniteLattice, f: AtomWeighting, x: int) -> Fraction:
    """Minimum of the f-weight over all atom bases of ``x`` by enumeration."""
    if x == L.bottom:
        return Fraction(0)
    return min(sum((f[a] for a in beta), Fraction(0)) for beta in atom_bases(L, x))


def mu_scaled(L: FiniteLattice, f_int: np.ndarray, order: np.ndarray | None = None) -> np.ndarray:
    """Greedy mu for every element on integer weights (indexed by element id)."""
    atoms = L.atom_array if order is None else np.asarray(order, dtype=np.int64)
    return kernels.mu_greedy_all(f_int, atoms, L.leq_table, L.join_table, L.bottom)


def mu_table(L: FiniteLattice, f: AtomWeighting) -> tuple[Fraction, ...]:
    d = common_denominator(f.values)
    mu = mu_scaled(L, scale(f.on_elements(), d))
    return tuple(Fraction(int(v), d) for v in mu)


# -- flats and cycles -------------------------------------------------------------


def is_flat(rf: RankFunction, x: int, atoms_only: bool = True) -> bool:
    """r(X) < r(X v a) for every atom a not below X (or every element, when
    ``atoms_only`` is False)."""
    L = rf.lattice
    r = rf.values
    cands = L.atoms_all if atoms_only else range(L.n)
    return all(r[x] < r[L.join(x, a)] for a in cands if not L.leq_table[a, x])


def is_cyclic(rf: RankFunction, x: int) -> bool:
    """Each H covered by X has r(H) = r(X), or an atom a <= X, a not <= H with
    r(a) > r(X) - r(H) > 0."""
    L = rf.lattice
    r = rf.values
    for h in L.lower_covers[x]:
        d = r[x] - r[h]
        if d == 0:
            continue
        if d < 0:
            return False
        if not any(
            r[a] > d for a in L.atoms_all if L.leq_table[a, x] and not L.leq_table[a, h]
        ):
            return False
    return True


def flat_mask(rf: RankFunction) -> np.ndarray:
    L = rf.lattice
    r, _, _ = rf.scaled
    atoms = L.atom_array
    outside = ~L.leq_table[atoms, :].T  # [X, atom]
    grows = r[L.join_table[:, atoms]] > r[:, None]
    return (~outside | grows).all(axis=1)


def cyclic_mask(rf: RankFunction) -> np.ndarray:
    L = rf.lattice
    r, _, _ = rf.scaled
    out = np.ones(L.n, dtype=bool)
    if not L.covers:
        return out
    lo, hi = np.array(L.covers).T
    atoms = L.atom_array
    d = r[hi] - r[lo]
    fresh = L.leq_table[atoms][:, hi].T & ~L.leq_table[atoms][:, lo].T  # [cover, atom]
    witness = (fresh & (r[atoms][None, :] > d[:, None])).any(axis=1)
    ok = (d == 0) | ((d > 0) & witness)
    out[hi[~ok]] = False
    return out


def cyc(rf: RankFunction, x: int) -> int:
    """Join of all cyclic elements below X."""
    L = rf.lattice
    return L.join_all(int(y) for y in L.below(x) if is_cyclic(rf, int(y)))


def cl(rf: RankFunction, x: int) -> int:
    """Join of all elements y with r(X v y) = r(X)."""
    L = rf.lattice
    r = rf.values
    return L.join_all(y for y in range(L.n) if r[L.join(x, y)] == r[x])


def cl_atoms(rf: RankFunction, x: int) -> int:
    """Closure computed from atoms only: X joined with every atom a where
    r(X v a) = r(X)."""
    L = rf.lattice
    r = rf.values
    return L.join_all([x] + [a for a in L.atoms_all if r[L.join(x, a)] == r[x]])


def cyclic_flats(rf: RankFunction) -> tuple[int, ...]:
    mask = flat_mask(rf) & cyclic_mask(rf)
    return tuple(int(i) for i in np.flatnonzero(mask))


class CyclicFlatLattice:
    """A subset of L's elements ordered by L's order, with meet and join taken
    from that induced order (construction fails when they do not exist)."""

    def __init__(self, lattice: FiniteLattice, members: Sequence[int]):
        members = tuple(sorted(set(int(m) for m in members)))
        if not members:
            raise EmptyZ("the member set is empty")
        self.lattice = lattice
        self.members = members
        self.pos = {z: i for i, z in enumerate(members)}
        m = len(members)
        sub = lattice.leq_table[np.ix_(members, members)]
        meet = np.full((m, m), -1, dtype=np.int64)
        join = np.full((m, m), -1, dtype=np.int64)
        for i in range(m):
            for j in range(m):
                lbs = np.flatnonzero(sub[:, i] & sub[:, j])
                ubs = np.flatnonzero(sub[i, :] & sub[j, :])
                glb = [k for k in lbs if sub[lbs, k].all()]
                lub = [k for k in ubs if sub[k, ubs].all()]
                if not glb or not lub:
                    nm = lattice.names
                    raise NotASublattice(
                        f"{nm[members[i]]} and {nm[members[j]]} have no "
                        f"{'meet' if not glb else 'join'} among the members"
                    )
                meet[i, j] = members[glb[0]]
                join[i, j] = members[lub[0]]
        self.meet_table = meet
        self.join_table = join
        self.bottom = members[int(np.flatnonzero(sub.all(axis=1))[0])]
        self.top = members[int(np.flatnonzero(sub.all(axis=0))[0])]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.pos

    def __repr__(self) -> str:
        return "CyclicFlatLattice(" + ", ".join(self.lattice.names[z] for z in self.members) + ")"

    def meet(self, z1: int, z2: int) -> int:
        return int(self.meet_table[self.pos[z1], self.pos[z2]])

    def join(self, z1: int, z2: int) -> int:
        return int(self.join_table[self.pos[z1], self.pos[z2]])

    def same_structure(self, other: "CyclicFlatLattice") -> bool:
        return (
            self.members == other.members
            and np.array_equal(self.meet_table, other.meet_table)
            and np.array_equal(self.join_table, other.join_table)
        )


def cyclic_flat_lattice(rf: RankFunction) -> CyclicFlatLattice:
    rep = check_rank_axioms(rf)
    if not rep:
        raise RankAxiomViolation(rep)
    return CyclicFlatLattice(rf.lattice, cyclic_flats(rf))


# -- quasi-modularity ----------------------------------------------------------------


def is_quasi_modular(L: FiniteLattice, g: Sequence[Fraction], x: int) -> Report:
    """Every Y <= X has a complement Yc with g(X) = g(Y) + g(X ^ Yc).

    ``g`` is indexed by element id and must vanish at the bottom.
    """
    if g[L.bottom] != 0:
        raise LatticeError("quasi-modularity needs g(bottom) = 0")
    for y in L.below(x):
        y = int(y)
        if not any(g[x] == g[y] + g[L.meet(x, yc)] for yc in L.complement_lists[y]):
            return failed(
                "quasi-modular",
                f"no complement Yc of Y gives g(X) = g(Y) + g(X ^ Yc) (g(X) = "
                f"{format_rational(g[x])}, g(Y) = {format_rational(g[y])})",
                X=L.names[x], Y=L.names[y],
            )
    return passed("quasi-modular")


def quasi_modular_mask(L: FiniteLattice, g_int: np.ndarray) -> np.ndarray:
    """Per element W: is the integer function g quasi-modular on [0, W]?"""
    return kernels.quasi_modular_witness(g_int, L.leq_table, L.meet_table, L.comp_pad) < 0


# -- reconstruction -----------------------------------------------------------------


def reconstruct_rank(
    zl: CyclicFlatLattice, lam: Mapping[int, Fraction], f: AtomWeighting, x: int
) -> Fraction:
    """min over members Z and Zc in C(Z; X) of lam(Z) + mu_f(Zc ^ X)."""
    L = zl.lattice
    if not zl.members:
        raise EmptyZ("no cyclic flats given")
    best = None
    for z in zl.members:
        for zc in decomposing_complement_list(L, z, x):
            val = as_fraction(lam[z]) + mu_greedy(L, f, L.meet(zc, x))
            if best is None or val < best:
                best = val
    if best is None:
        raise EmptyZ(f"no member has a complement decomposing {L.names[x]}")
    return best
