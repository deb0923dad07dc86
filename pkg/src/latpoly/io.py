"""Lattice documents (JSON) and Graphviz DOT export.

A document is a JSON object with these keys, in this canonical order::

    {
      "elements": ["0", "a", "b", "1"],
      "covers": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]],
      "rank": {"0": "0", "a": "1", "b": "1", "1": "3/2"},
      "t": "1",
      "cover_weights": [["0", "a", "1"], ...],
      "cfs": {"members": [...], "lambda": {"0": "0"}, "f": {"a": "1"}}
    }

Only ``elements`` and ``covers`` are required. Rationals are strings such as
``"3"`` or ``"-2/7"``; bare JSON integers are accepted on input. Any other
key is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .axioms import CyclicFlatSystem, cyclic_flat_system
from .errors import BadRational, MissingValue, ParseError, UnknownName
from .lattice import FiniteLattice, build_lattice
from .polymatroid import CoverWeighting, RankFunction, cover_weighting, rank_function
from .rational import format_rational, parse_rational

TOP_KEYS = ("elements", "covers", "rank", "t", "cover_weights", "cfs")
CFS_KEYS = ("members", "lambda", "f")


@dataclass(frozen=True)
class CFSection:
    members: tuple[str, ...]
    lam: dict[str, Fraction]
    f: dict[str, Fraction]


@dataclass(frozen=True, eq=False)
class LatticeDocument:
    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    rank: dict[str, Fraction] | None = None
    t: Fraction | None = None
    cover_weights: dict[tuple[str, str], Fraction] | None = None
    cfs: CFSection | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeDocument):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.covers == other.covers
            and self.rank == other.rank
            and self.t == other.t
            and self.cover_weights == other.cover_weights
            and self.cfs == other.cfs
        )

    @cached_property
    def lattice(self) -> FiniteLattice:
        return build_lattice(list(self.elements), list(self.covers))

    def rank_function(self) -> RankFunction:
        if self.rank is None:
            raise MissingValue("the document has no rank section")
        return rank_function(self.lattice, self.rank, self.t)

    def cover_weighting(self) -> CoverWeighting:
        if self.cover_weights is None:
            raise MissingValue("the document has no cover_weights section")
        return cover_weighting(self.lattice, self.cover_weights)

    def system(self) -> CyclicFlatSystem:
        if self.cfs is None:
            raise MissingValue("the document has no cfs section")
        return cyclic_flat_system(self.lattice, self.cfs.members, self.cfs.lam, self.cfs.f)


def document_from(
    L: FiniteLattice,
    rf: RankFunction | None = None,
    cw: CoverWeighting | None = None,
    system: CyclicFlatSystem | None = None,
) -> LatticeDocument:
    nm = L.names
    return LatticeDocument(
        elements=tuple(nm),
        covers=tuple((nm[a], nm[b]) for a, b in L.covers),
        rank=None if rf is None else dict(zip(nm, rf.values)),
        t=rf.t if rf is not None and rf.declared_t else None,
        cover_weights=None
        if cw is None
        else {(nm[a], nm[b]): v for (a, b), v in cw.weights.items()},
        cfs=None
        if system is None
        else CFSection(
            tuple(nm[z] for z in system.members),
            system.lam_dict(),
            {nm[a]: v for a, v in zip(L.atoms_all, system.f.values)},
        ),
    )


# -- parsing --------------------------------------------------------------------


def _locate(text: str, needle: str) -> tuple[int, int]:
    pos = text.find(needle)
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text

    def error(self, message: str, near: str | None = None) -> ParseError:
        line, col = _locate(self.text, json.dumps(near)) if near is not None else (1, 1)
        return ParseError(message, line, col)

    def rational(self, value, where: str) -> Fraction:
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise BadRational(f"{where}: expected a rational string, got {json.dumps(value)}")
        if isinstance(value, int):
            return Fraction(value)
        try:
            return parse_rational(value)
        except BadRational as exc:
            raise BadRational(f"{where}: {exc}") from None

    def names(self, value, key: str) -> tuple[str, ...]:
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise self.error(f"'{key}' must be a list of strings", key)
        return tuple(value)

    def name_map(self, value, key: str, known: set[str]) -> dict[str, Fraction]:
        if not isinstance(value, dict):
            raise self.error(f"'{key}' must be an object", key)
        out = {}
        for k, v in value.items():
            if k not in known:
                raise UnknownName(f"'{key}' refers to undeclared element {k!r}")
            out[k] = self.rational(v, f"{key}[{k}]")
        return out

    def parse(self) -> LatticeDocument:
        try:
            raw = json.loads(self.text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(raw, dict):
            raise ParseError("the document must be a JSON object", 1, 1)
        for key in raw:
            if key not in TOP_KEYS:
                raise self.error(f"unknown key '{key}'", key)
        for key in ("elements", "covers"):
            if key not in raw:
                raise ParseError(f"missing required key '{key}'", 1, 1)
        elements = self.names(raw["elements"], "elements")
        known = set(elements)

        covers = raw["covers"]
        if not isinstance(covers, list) or not all(
            isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c) for c in covers
        ):
            raise self.error("'covers' must be a list of [lower, upper] name pairs", "covers")
        for a, b in covers:
            for x in (a, b):
                if x not in known:
                    raise UnknownName(f"cover ({a}, {b}) refers to undeclared element {x!r}")

        rank = self.name_map(raw["rank"], "rank", known) if "rank" in raw else None
        t = self.rational(raw["t"], "t") if "t" in raw else None

        cw = None
        if "cover_weights" in raw:
            items = raw["cover_weights"]
            if not isinstance(items, list) or not all(
                isinstance(c, list) and len(c) == 3 and isinstance(c[0], str) and isinstance(c[1], str)
                for c in items
            ):
                raise self.error(
                    "'cover_weights' must be a list of [lower, upper, weight] triples", "cover_weights"
                )
            cw = {}
            for a, b, v in items:
                for x in (a, b):
                    if x not in known:
                        raise UnknownName(f"cover weight ({a}, {b}) refers to undeclared element {x!r}")
                cw[a, b] = self.rational(v, f"cover_weights[{a}, {b}]")

        cfs = None
        if "cfs" in raw:
            sec = raw["cfs"]
            if not isinstance(sec, dict):
                raise self.error("'cfs' must be an object", "cfs")
            for key in sec:
                if key not in CFS_KEYS:
                    raise self.error(f"unknown key '{key}' in 'cfs'", key)
            for key in CFS_KEYS:
                if key not in sec:
                    raise self.error(f"'cfs' lacks '{key}'", "cfs")
            members = self.names(sec["members"], "members")
            for m in members:
                if m not in known:
                    raise UnknownName(f"cyclic-flat member {m!r} is not a declared element")
            cfs = CFSection(
                members,
                self.name_map(sec["lambda"], "lambda", known),
                self.name_map(sec["f"], "f", known),
            )
        return LatticeDocument(elements, tuple((a, b) for a, b in covers), rank, t, cw, cfs)


def parse_document(text: str) -> LatticeDocument:
    return _Parser(text).parse()


# -- writing --------------------------------------------------------------------


def _q(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def _rat(v: Fraction) -> str:
    return _q(format_rational(v))


def _block(items: list[str]) -> str:
    if not items:
        return "[]"
    return "[\n" + ",\n".join("    " + i for i in items) + "\n  ]"


def _obj(pairs: Iterable[tuple[str, Fraction]], indent: str = "    ") -> str:
    body = [f"{indent}{_q(k)}: {_rat(v)}" for k, v in pairs]
    if not body:
        return "{}"
    return "{\n" + ",\n".join(body) + "\n" + indent[:-2] + "}"


def write_document(doc: LatticeDocument) -> str:
    """Canonical text: fixed key order, one entry per line, rationals as strings."""
    order = {n: i for i, n in enumerate(doc.elements)}
    parts = [
        f'  "elements": [{", ".join(_q(e) for e in doc.elements)}]',
        '  "covers": ' + _block([f"[{_q(a)}, {_q(b)}]" for a, b in doc.covers]),
    ]
    if doc.rank is not None:
        parts.append('  "rank": ' + _obj(sorted(doc.rank.items(), key=lambda kv: order[kv[0]])))
    if doc.t is not None:
        parts.append(f'  "t": {_rat(doc.t)}')
    if doc.cover_weights is not None:
        items = [f"[{_q(a)}, {_q(b)}, {_rat(v)}]" for (a, b), v in doc.cover_weights.items()]
        parts.append('  "cover_weights": ' + _block(items))
    if doc.cfs is not None:
        c = doc.cfs
        lam = _obj(sorted(c.lam.items(), key=lambda kv: order[kv[0]]), "      ")
        f = _obj(sorted(c.f.items(), key=lambda kv: order[kv[0]]), "      ")
        parts.append(
            '  "cfs": {\n'
            f'    "members": [{", ".join(_q(m) for m in c.members)}],\n'
            f'    "lambda": {lam},\n'
            f'    "f": {f}\n'
            "  }"
        )
    return "{\n" + ",\n".join(parts) + "\n}\n"


# -- DOT ------------------------------------------------------------------------


def _dot_esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def write_dot(
    L: FiniteLattice,
    rf: RankFunction | None = None,
    cw: CoverWeighting | None = None,
    highlight: Iterable[int] = (),
) -> str:
    """Hasse diagram as a DOT digraph with edges pointing up.

    Node labels carry r(X) when ``rf`` is given; edge labels carry the cover
    weight when ``cw`` is given. Highlighted nodes are filled.
    """
    hl = set(highlight)
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
    for i, name in enumerate(L.names):
        label = _dot_esc(name)
        if rf is not None:
            label += f"\\nr={format_rational(rf.values[i])}"
        attrs = [f'label="{label}"']
        if i in hl:
            attrs += ["style=filled", 'fillcolor="lightblue"']
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for a, b in L.covers:
        attr = "" if cw is None else f' [label="{format_rational(cw.weights[a, b])}"]'
        lines.append(f"  n{a} -> n{b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
