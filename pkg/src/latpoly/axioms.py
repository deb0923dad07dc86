"""Weighted lattices of cyclic flats: the rank candidate rho, the six axioms
Z1-Z6, and conversion in both directions between such systems and rank
functions.

All arithmetic runs on integers: lambda and f are scaled by a common
denominator ``D``; mu_f scales linearly, so every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping

import numpy as np

from . import kernels
from .cyclic import (
    AtomWeighting,
    CyclicFlatLattice,
    atom_ranks,
    atom_weighting,
    cyclic_flat_lattice,
    mu_scaled,
    quasi_modular_mask,
)
from .errors import (
    AxiomViolation,
    EmptyDecomposingSet,
    EmptyZ,
    IncompleteSystem,
    MissingValue,
    NegativeWeight,
    NotAComplement,
    NotAMember,
    NotComplemented,
    NotModular,
    RankAxiomViolation,
)
from .lattice import FiniteLattice, decomposes
from .polymatroid import RankFunction, check_rank_axioms, rank_function
from .rational import as_fraction, common_denominator, format_rational, scale
from .report import Report, failed, passed

fmt = format_rational


@dataclass(frozen=True, eq=False)
class CyclicFlatSystem:
    """(Z, lambda, f): a lattice of elements of L with a weight lambda on each
    member and a weight f on each atom of L."""

    lattice: FiniteLattice
    zl: CyclicFlatLattice
    lam: tuple[Fraction, ...]  # aligned with zl.members
    f: AtomWeighting

    @property
    def members(self) -> tuple[int, ...]:
        return self.zl.members

    def lam_of(self, z: int) -> Fraction:
        if z not in self.zl.pos:
            raise NotAMember(f"{self.lattice.names[z]} is not a member")
        return self.lam[self.zl.pos[z]]

    def lam_dict(self) -> dict[str, Fraction]:
        return {self.lattice.names[z]: v for z, v in zip(self.members, self.lam)}

    # -- integer tables --------------------------------------------------------

    @cached_property
    def denom(self) -> int:
        return common_denominator(self.lam + self.f.values)

    @cached_property
    def lam_int(self) -> np.ndarray:
        return scale(self.lam, self.denom)

    @cached_property
    def mu_int(self) -> np.ndarray:
        """D * mu_f for every element of L."""
        return mu_scaled(self.lattice, scale(self.f.on_elements(), self.denom))

    @cached_property
    def qm_ok(self) -> np.ndarray:
        """Per W: mu_f is quasi-modular on [0, W]."""
        return quasi_modular_mask(self.lattice, self.mu_int)

    @cached_property
    def table(self):
        """(lo, hi, cnt, allqm), each indexed [member, X], over C(Z; X)."""
        L = self.lattice
        return kernels.rho_table(
            self.lam_int,
            np.asarray(self.members, dtype=np.int64),
            self.mu_int,
            self.qm_ok,
            L.meet_table,
            L.join_table,
            L.comp_pad,
            L.bottom,
        )

    @cached_property
    def rho_int(self) -> np.ndarray:
        lo, _, cnt, _ = self.table
        empty = np.flatnonzero((cnt == 0).all(axis=0))
        if empty.size:
            raise EmptyDecomposingSet(
                f"no member has a complement decomposing {self.lattice.names[int(empty[0])]}"
            )
        return np.where(cnt > 0, lo, np.iinfo(np.int64).max).min(axis=0)

    def frac(self, v) -> Fraction:
        return Fraction(int(v), self.denom)


def cyclic_flat_system(L: FiniteLattice, members, lam, f) -> CyclicFlatSystem:
    """Validated system from member names/ids, lambda keyed by member and f
    keyed by atom (or an :class:`AtomWeighting`)."""
    if not L.modular_report:
        raise NotModular(str(L.modular_report))
    if not L.complemented_report:
        raise NotComplemented(str(L.complemented_report))
    ids = [L.idx(m) if isinstance(m, str) else int(m) for m in members]
    if not ids:
        raise EmptyZ("the member set is empty")
    zl = CyclicFlatLattice(L, ids)
    got: dict[int, Fraction] = {}
    for key, v in dict(lam).items():
        z = L.idx(key) if isinstance(key, str) else int(key)
        if z not in zl.pos:
            raise NotAMember(f"lambda given for {L.names[z]}, which is not a member")
        got[z] = as_fraction(v)
    missing = [L.names[z] for z in zl.members if z not in got]
    if missing:
        raise IncompleteSystem(f"lambda missing for {', '.join(missing)}")
    for z, v in got.items():
        if v < 0:
            raise NegativeWeight(f"lambda({L.names[z]}) = {fmt(v)} is negative")
    if not isinstance(f, AtomWeighting):
        try:
            f = atom_weighting(L, f)
        except MissingValue as exc:
            raise IncompleteSystem(str(exc)) from None
    return CyclicFlatSystem(L, zl, tuple(got[z] for z in zl.members), f)


def system_from_rank(rf: RankFunction) -> CyclicFlatSystem:
    """Cyclic flats of ``rf`` with lambda = r on them and f = r on atoms."""
    zl = cyclic_flat_lattice(rf)
    return CyclicFlatSystem(rf.lattice, zl, tuple(rf.values[z] for z in zl.members), atom_ranks(rf))


# -- rho ------------------------------------------------------------------------


def rho_component(S: CyclicFlatSystem, x: int, z: int, zc: int) -> Fraction:
    """lambda(Z) + mu_f(X ^ Zc)."""
    L = S.lattice
    lam = S.lam_of(z)
    if zc not in L.complement_lists[z]:
        raise NotAComplement(f"{L.names[zc]} is not a complement of {L.names[z]}")
    return lam + S.frac(S.mu_int[L.meet(x, zc)])


def rho(S: CyclicFlatSystem, x: int) -> Fraction:
    return S.frac(S.rho_int[x])


def rho_all(S: CyclicFlatSystem) -> tuple[Fraction, ...]:
    return tuple(S.frac(v) for v in S.rho_int)


def minimizing_flats(S: CyclicFlatSystem, x: int) -> frozenset[int]:
    """Members attaining rho(X) for at least one complement in C(Z; X)."""
    lo, _, cnt, _ = S.table
    best = S.rho_int[x]
    return frozenset(z for i, z in enumerate(S.members) if cnt[i, x] and lo[i, x] == best)


# -- the axioms ---------------------------------------------------------------------


def _dec(L: FiniteLattice, z: int, x: int) -> list[int]:
    return [c for c in L.complement_lists[z] if decomposes(L, z, c, x)]


def check_Z1(S: CyclicFlatSystem) -> Report:
    """For every X some Z in Z(X) has every Zc in C(Z; X) attaining rho(X), with
    mu_f quasi-modular on [0, X ^ Zc] for each of them."""
    L = S.lattice
    nm = L.names
    lo, hi, cnt, allqm = S.table
    rho_x = S.rho_int
    mu = S.mu_int
    for x in range(L.n):
        qualifying = None
        for i, z in enumerate(S.members):
            in_zx = cnt[i, x] > 0 and lo[i, x] == rho_x[x]
            if in_zx and hi[i, x] == rho_x[x] and allqm[i, x]:
                qualifying = z
                break
        if qualifying is not None:
            continue
        misses = []
        for i, z in enumerate(S.members):
            if not (cnt[i, x] and lo[i, x] == rho_x[x]):
                continue
            for zc in _dec(L, z, x):
                w = L.meet(x, zc)
                val = S.lam_int[i] + mu[w]
                if val != rho_x[x]:
                    misses.append(f"Z={nm[z]} Zc={nm[zc]} gives {fmt(S.frac(val))}")
                    break
                if not S.qm_ok[w]:
                    misses.append(f"Z={nm[z]} Zc={nm[zc]}: mu_f not quasi-modular on [0, {nm[w]}]")
                    break
        return failed(
            "Z1",
            f"no Z in Z(X) qualifies (rho(X) = {fmt(S.frac(rho_x[x]))}; " + "; ".join(misses) + ")",
            X=nm[x],
        )
    return passed("Z1")


def check_Z2(S: CyclicFlatSystem, sample: int | None = None, seed=None) -> Report:
    """lambda(Z1) + lambda(Z2) >= lambda(Z1 ^_Z Z2) + lambda(Z1 v_Z Z2)
    + mu_f(A ^ Z1 ^ Z2 ^ Mc) for all Z1, Z2, complements Mc of Z1 ^_Z Z2 and A.

    With ``sample`` set, only that many random A per (Z1, Z2, Mc) are tried.
    """
    L = S.lattice
    nm = L.names
    zl = S.zl
    lam = S.lam_int
    mu = S.mu_int
    rng = np.random.default_rng(seed) if sample else None
    all_a = np.arange(L.n)
    for i, z1 in enumerate(S.members):
        for j, z2 in enumerate(S.members):
            mz = zl.meet(z1, z2)
            jz = zl.join(z1, z2)
            slack = lam[i] + lam[j] - lam[zl.pos[mz]] - lam[zl.pos[jz]]
            base = L.meet(z1, z2)
            for mc in L.complement_lists[mz]:
                a_set = all_a if rng is None else rng.integers(0, L.n, size=sample)
                vals = mu[L.meet_table[L.meet_table[a_set, base], mc]]
                bad = np.flatnonzero(vals > slack)
                if bad.size:
                    a = int(a_set[bad[0]])
                    return failed(
                        "Z2",
                        f"lambda(Z1)+lambda(Z2) = {fmt(S.frac(lam[i] + lam[j]))} < "
                        f"lambda(meet)+lambda(join)+mu_f(A^Z1^Z2^Mc) = "
                        f"{fmt(S.frac(lam[i] + lam[j] - slack + vals[bad[0]]))}",
                        exhaustive=rng is None,
                        Z1=nm[z1], Z2=nm[z2], Mc=nm[mc], A=nm[a],
                    )
    return passed("Z2", exhaustive=rng is None)


def check_Z3(S: CyclicFlatSystem) -> Report:
    """lambda(Z2) - lambda(Z1) <= mu_f(Z2 ^ Z1c) for Z1 <= Z2 and Z1c in C(Z1)."""
    L = S.lattice
    nm = L.names
    lam = S.lam_int
    mu = S.mu_int
    for i, z1 in enumerate(S.members):
        for j, z2 in enumerate(S.members):
            if not L.leq_table[z1, z2]:
                continue
            for z1c in L.complement_lists[z1]:
                m = mu[L.meet(z2, z1c)]
                if lam[j] - lam[i] > m:
                    return failed(
                        "Z3",
                        f"lambda(Z2)-lambda(Z1) = {fmt(S.frac(lam[j] - lam[i]))} > "
                        f"mu_f(Z2^Z1c) = {fmt(S.frac(m))}",
                        Z1=nm[z1], Z2=nm[z2], Z1c=nm[z1c],
                    )
    return passed("Z3")


def check_Z4(S: CyclicFlatSystem) -> Report:
    """For Z1 < Z2: lambda(Z1) < lambda(Z2), and for each Z1c in C(Z1) either
    lambda(Z2) - lambda(Z1) < mu_f(Z2 ^ Z1c), or every H covered by Z2 with
    Z1c in C(Z1; H) has some Hc in C(H) with
    mu_f(Z2 ^ Z1c) < mu_f(H ^ Z1c) + mu_f(Z2 ^ Hc)."""
    L = S.lattice
    nm = L.names
    lam = S.lam_int
    mu = S.mu_int
    for i, z1 in enumerate(S.members):
        for j, z2 in enumerate(S.members):
            if z1 == z2 or not L.leq_table[z1, z2]:
                continue
            if not lam[i] < lam[j]:
                return failed(
                    "Z4",
                    f"lambda(Z1) = {fmt(S.frac(lam[i]))} is not < lambda(Z2) = {fmt(S.frac(lam[j]))}",
                    Z1=nm[z1], Z2=nm[z2],
                )
            for z1c in L.complement_lists[z1]:
                top = mu[L.meet(z2, z1c)]
                if lam[j] - lam[i] < top:
                    continue
                for h in L.lower_covers[z2]:
                    if not decomposes(L, z1, z1c, h):
                        continue
                    if not any(
                        top < mu[L.meet(h, z1c)] + mu[L.meet(z2, hc)] for hc in L.complement_lists[h]
                    ):
                        return failed(
                            "Z4",
                            f"lambda(Z2)-lambda(Z1) = {fmt(S.frac(lam[j] - lam[i]))} >= "
                            f"mu_f(Z2^Z1c) = {fmt(S.frac(top))}, and no Hc in C(H) gives "
                            f"mu_f(Z2^Z1c) < mu_f(H^Z1c) + mu_f(Z2^Hc)",
                            Z1=nm[z1], Z2=nm[z2], Z1c=nm[z1c], H=nm[h],
                        )
    return passed("Z4")


def check_Z5(S: CyclicFlatSystem) -> Report:
    v = S.lam_of(S.zl.bottom)
    if v != 0:
        return failed("Z5", f"lambda(0_Z) = {fmt(v)} ≠ 0", **{"0_Z": S.lattice.names[S.zl.bottom]})
    return passed("Z5")


def check_Z6(S: CyclicFlatSystem) -> Report:
    """f(a) > 0 for every atom a not below 0_Z."""
    L = S.lattice
    zb = S.zl.bottom
    for a in L.atoms_all:
        if not L.leq_table[a, zb] and S.f[a] <= 0:
            return failed(
                "Z6",
                f"mu_f(a) = {fmt(S.f[a])} for an atom not below 0_Z",
                a=L.names[a], **{"0_Z": L.names[zb]},
            )
    return passed("Z6")


def check_all_axioms(S: CyclicFlatSystem, sample: int | None = None, seed=None) -> list[Report]:
    """All six verdicts; no check is skipped because another failed."""
    return [
        check_Z1(S),
        check_Z2(S, sample=sample, seed=seed),
        check_Z3(S),
        check_Z4(S),
        check_Z5(S),
        check_Z6(S),
    ]


# -- both directions -----------------------------------------------------------------


def _rank_of(S: CyclicFlatSystem) -> RankFunction:
    rf = rank_function(S.lattice, rho_all(S))
    rep = check_rank_axioms(rf)
    if not rep:
        raise RankAxiomViolation([rep])
    return rf


def build_polymatroid(S: CyclicFlatSystem, sample: int | None = None, seed=None) -> RankFunction:
    """X -> rho(X), after checking Z1-Z6; the result is re-checked against
    (R1)-(R3) before it is returned."""
    bad = [r for r in check_all_axioms(S, sample=sample, seed=seed) if not r]
    if bad:
        raise AxiomViolation(bad)
    return _rank_of(S)


def roundtrip_check(rf: RankFunction) -> Report:
    """rank -> cyclic flats -> rank -> cyclic flats.

    Leg a: the derived system satisfies Z1-Z6. Leg b: rho equals r everywhere.
    Leg c: the rebuilt rank has the same cyclic flats, operations and lambda.
    """
    L = rf.lattice
    nm = L.names
    S = system_from_rank(rf)
    bad = [r for r in check_all_axioms(S) if not r]
    if bad:
        return failed("roundtrip", "leg a: " + "; ".join(str(r) for r in bad), leg="a")
    diff = np.flatnonzero(S.rho_int * rf.scaled[2] != rf.scaled[0] * S.denom)
    if diff.size:
        x = int(diff[0])
        return failed(
            "roundtrip",
            f"leg b: rho(X) = {fmt(rho(S, x))} but r(X) = {fmt(rf.values[x])}",
            leg="b", X=nm[x],
        )
    try:
        rebuilt = _rank_of(S)
        zl2 = cyclic_flat_lattice(rebuilt)
    except RankAxiomViolation as exc:
        return failed("roundtrip", f"leg c: rebuilt rank invalid: {exc}", leg="c")
    if not S.zl.same_structure(zl2):
        return failed(
            "roundtrip",
            "leg c: cyclic flats changed: "
            f"{[nm[z] for z in S.members]} -> {[nm[z] for z in zl2.members]}",
            leg="c",
        )
    for z, lam in zip(S.members, S.lam):
        if rebuilt.values[z] != lam:
            return failed(
                "roundtrip",
                f"leg c: lambda(Z) = {fmt(lam)} but the rebuilt rank gives {fmt(rebuilt.values[z])}",
                leg="c", Z=nm[z],
            )
    flats = ", ".join(f"{nm[z]}:{fmt(v)}" for z, v in zip(S.members, S.lam))
    return passed("roundtrip", f"cyclic flats {flats}")
