"""Command-line interface.

Exit status: 0 when every check passes, 1 when a check fails (the failing
report is printed), 2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import builders
from .axioms import (
    build_polymatroid,
    check_all_axioms,
    rho_all,
    roundtrip_check,
    system_from_rank,
)
from .cyclic import cyclic_flat_lattice
from .errors import AxiomViolation, LatticeError, ReportError
from .io import LatticeDocument, document_from, parse_document, write_document, write_dot
from .polymatroid import (
    check_cover_weight_axioms,
    check_interval_weight_axioms,
    check_rank_axioms,
    rank_from_weight,
    sample_random_polymatroid,
    weight_from_rank,
)
from .rational import format_rational
from .report import Report

fmt = format_rational


class UsageError(Exception):
    pass


class Out:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def info(self, text: str) -> None:
        if not self.quiet:
            print(text)

    def report(self, rep: Report) -> None:
        if not rep or not self.quiet:
            print(str(rep))


def _read(path: str | None) -> LatticeDocument:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_document(text)


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _set(names, items) -> str:
    return "{" + ", ".join(names[i] for i in items) + "}"


def _gen_lattice(args):
    kind, params = args.kind, args.params

    def ints(k):
        if len(params) != k:
            raise UsageError(f"gen-lattice {kind} takes {k} integer argument(s)")
        try:
            return [int(p) for p in params]
        except ValueError:
            raise UsageError(f"gen-lattice {kind}: arguments must be integers") from None

    if kind == "boolean":
        (n,) = ints(1)
        return builders.boolean_lattice(n)
    if kind == "subspace":
        p, n = ints(2)
        return builders.subspace_lattice(p, n)
    if kind == "chain":
        (k,) = ints(1)
        return builders.chain_lattice(k)
    if kind in ("m3", "n5"):
        ints(0)
        return builders.m3_lattice() if kind == "m3" else builders.n5_lattice()
    if kind == "product":
        if len(params) != 2:
            raise UsageError("gen-lattice product takes two document files")
        return builders.product_lattice(_read(params[0]).lattice, _read(params[1]).lattice)
    raise UsageError(f"unknown lattice kind {kind!r}")


def cmd_gen_lattice(args, out: Out) -> int:
    L = _gen_lattice(args)
    rf = None
    if args.max_atom_rank is not None:
        rf = sample_random_polymatroid(L, args.max_atom_rank, seed=args.seed)
    _write(write_document(document_from(L, rf=rf)), args.output)
    return 0


def cmd_check_rank(args, out: Out) -> int:
    rep = check_rank_axioms(_read(args.input).rank_function())
    out.report(rep)
    return 0 if rep else 1


def cmd_check_weights(args, out: Out) -> int:
    doc = _read(args.input)
    L = doc.lattice
    if doc.cover_weights is not None:
        cw = doc.cover_weighting()
    else:
        cw = weight_from_rank(doc.rank_function())
        out.info("cover weights derived from the rank section")
    reports = [check_interval_weight_axioms(cw)]
    if L.modular_report:
        reports.append(check_cover_weight_axioms(cw))
    for rep in reports:
        out.report(rep)
    if not all(reports):
        return 1
    rw = rank_from_weight(cw)
    if weight_from_rank(rw).weights != cw.weights:
        out.report(Report("weights->rank->weights", False, detail="weights changed"))
        return 1
    if args.output:
        _write(write_document(document_from(L, rf=rw, cw=cw)), args.output)
    return 0


def cmd_cyclic_flats(args, out: Out) -> int:
    doc = _read(args.input)
    rf = doc.rank_function()
    S = system_from_rank(rf)
    nm = doc.lattice.names
    print("cyclic flats: " + _set(nm, S.members))
    print("lambda: {" + ", ".join(fmt(v) for v in S.lam) + "}")
    if args.output:
        _write(write_document(document_from(doc.lattice, rf=rf, system=S)), args.output)
    return 0


def _system(doc: LatticeDocument):
    if doc.cfs is not None:
        return doc.system()
    return system_from_rank(doc.rank_function())


def cmd_check_cf_axioms(args, out: Out) -> int:
    S = _system(_read(args.input))
    sample = args.samples if args.sample else None
    reports = check_all_axioms(S, sample=sample, seed=args.seed)
    for rep in reports:
        out.report(rep)
    return 0 if all(reports) else 1


def cmd_reconstruct(args, out: Out) -> int:
    doc = _read(args.input)
    S = _system(doc)
    L = doc.lattice
    try:
        rf = build_polymatroid(S, sample=args.samples if args.sample else None, seed=args.seed)
    except AxiomViolation as exc:
        for rep in exc.reports:
            out.report(rep)
        return 1
    for name, v in zip(L.names, rf.values):
        out.info(f"{name}: {fmt(v)}")
    code = 0
    if doc.rank is not None:
        given = doc.rank_function()
        for i, (a, b) in enumerate(zip(rho_all(S), given.values)):
            if a != b:
                print(f"reconstruct: rho({L.names[i]}) = {fmt(a)} but the document gives {fmt(b)}")
                code = 1
                break
        else:
            out.info("reconstruct: pass (matches the rank section)")
    if args.output:
        _write(write_document(document_from(L, rf=rf, system=S)), args.output)
    return code


def cmd_roundtrip(args, out: Out) -> int:
    doc = _read(args.input)
    L = doc.lattice
    if doc.rank is not None:
        rfs = [doc.rank_function()]
    else:
        if args.max_atom_rank is None:
            raise UsageError("roundtrip needs a rank section or --max-atom-rank for sampling")
        rfs = [
            sample_random_polymatroid(L, args.max_atom_rank, seed=(args.seed or 0) + i)
            for i in range(args.samples)
        ]
    failures = 0
    for rf in rfs:
        rep = roundtrip_check(rf)
        if not rep:
            failures += 1
            out.report(rep)
            continue
        if len(rfs) == 1:
            zl = cyclic_flat_lattice(rf)
            out.info("cyclic flats: " + _set(L.names, zl.members))
            out.info("lambda: {" + ", ".join(fmt(rf.values[z]) for z in zl.members) + "}")
            out.report(rep)
    if len(rfs) > 1:
        out.info(f"roundtrip: {len(rfs) - failures}/{len(rfs)} sampled rank functions pass")
    return 0 if failures == 0 else 1


def cmd_export_dot(args, out: Out) -> int:
    doc = _read(args.input)
    L = doc.lattice
    rf = doc.rank_function() if doc.rank is not None else None
    cw = doc.cover_weighting() if doc.cover_weights is not None else None
    if doc.cfs is not None:
        hl = [L.idx(m) for m in doc.cfs.members]
    elif rf is not None and check_rank_axioms(rf):
        hl = list(cyclic_flat_lattice(rf).members)
    else:
        hl = []
    _write(write_dot(L, rf=rf, cw=cw, highlight=hl), args.output)
    return 0


COMMANDS = {
    "gen-lattice": cmd_gen_lattice,
    "check-rank": cmd_check_rank,
    "check-weights": cmd_check_weights,
    "cyclic-flats": cmd_cyclic_flats,
    "check-cf-axioms": cmd_check_cf_axioms,
    "reconstruct": cmd_reconstruct,
    "roundtrip": cmd_roundtrip,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="document file (default: standard input)")
    common.add_argument("--output", "-o", help="output file (default: standard output)")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--samples", type=int, default=100, help="number of random samples")
    common.add_argument("--max-atom-rank", type=int, default=None, help="sample ranks with atoms up to this rank")
    common.add_argument("--sample", action="store_true", help="check Z2 on --samples random A only")
    common.add_argument("--quiet", "-q", action="store_true", help="print failures only")

    parser = argparse.ArgumentParser(prog="latpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    g = sub.add_parser(
        "gen-lattice",
        parents=[common],
        help="write a standard lattice as a document",
        description="kinds: boolean N | subspace P N | product FILE1 FILE2 | chain K | m3 | n5",
    )
    g.add_argument("kind", choices=["boolean", "subspace", "product", "chain", "m3", "n5"])
    g.add_argument("params", nargs="*")
    helps = {
        "check-rank": "check (R1)-(R3) on the rank section",
        "check-weights": "check the cover-weight axioms",
        "cyclic-flats": "list the cyclic flats of the rank section",
        "check-cf-axioms": "check Z1-Z6 on the cfs section (or the rank's cyclic flats)",
        "reconstruct": "rebuild the rank function from the cfs section",
        "roundtrip": "rank -> cyclic flats -> rank on the document or on samples",
        "export-dot": "write the Hasse diagram in DOT",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Out(args.quiet)
    try:
        return COMMANDS[args.command](args, out)
    except ReportError as exc:
        for rep in exc.reports:
            print(str(rep))
        return 1
    except (LatticeError, UsageError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
