"""Command-line front end.

Subcommands: `enum` (face listing + census check), `match` (matching dump
and verification), `basis` (homology basis chains, optional oracle
certification), `betti` (closed-form / census / oracle comparison table).
Every verification command prints a final machine-readable line
`RESULT pass ...` or `RESULT fail ...`; exit codes are 0 for pass, 1 for a
verification failure, 2 for a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import faces, morse, snf
from . import subcomplex as subc
from .chains import ChainComplex

ORACLE_N_CAP = 6  # SNF cost grows quickly; require --force beyond this


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--n", type=int, **({} if suppress else {"default": None}), **d)
    p.add_argument("--k", type=int, **({} if suppress else {"default": None}), **d)
    p.add_argument("--dim", type=int, **({} if suppress else {"default": None}), **d)
    p.add_argument("--format", choices=("jsonl", "csv"),
                   **({} if suppress else {"default": None}), **d)
    p.add_argument("--out", **({} if suppress else {"default": None}), **d)
    p.add_argument("--jobs", type=int, **({} if suppress else {"default": 1}), **d)
    p.add_argument("-v", "--verbose", action="store_true",
                   **({} if suppress else {"default": False}), **d)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="halfcube",
        description="Half-cube face complexes: enumeration, complete acyclic "
                    "matching, homology bases, Betti tables.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    enum = sub.add_parser("enum", help="enumerate faces and check the census")
    _global_flags(enum, suppress=True)

    match = sub.add_parser("match", help="dump the matching, optionally verify it")
    _global_flags(match, suppress=True)
    match.add_argument("--face", default=None,
                       help="print only this face's partner and rule")
    match.add_argument("--verify", action="store_true",
                       help="run involution/exclusivity/codimension/"
                            "completeness/acyclicity checks")

    basis = sub.add_parser("basis", help="homology basis chains for one (n, k)")
    _global_flags(basis, suppress=True)
    basis.add_argument("--certify", action="store_true",
                       help="certify independence/generation with the SNF oracle")

    betti = sub.add_parser("betti", help="Betti table across n and k")
    _global_flags(betti, suppress=True)
    betti.add_argument("--n-max", type=int, default=8)
    betti.add_argument("--n-min", type=int, default=4)
    betti.add_argument("--include-k-eq-n", action="store_true",
                       help="add the k = n rows (closed forms only)")
    betti.add_argument("--oracle", action="store_true",
                       help="fill the oracle column (n <= %d)" % ORACLE_N_CAP)
    betti.add_argument("--force", action="store_true",
                       help="run the oracle above the n cap")
    return p


class _Sink:
    """Data lines go to --out when given, otherwise to stdout."""

    def __init__(self, path: str | None):
        self.fh = open(path, "w") if path else sys.stdout
        self.owned = path is not None

    def line(self, s: str) -> None:
        print(s, file=self.fh)

    def close(self) -> None:
        if self.owned:
            self.fh.close()


def _require_n(args, parser) -> int:
    if args.n is None:
        parser.error("--n is required")
    if args.n < 4:
        parser.error(f"--n must be >= 4, got {args.n}")
    return args.n


def _require_k(args, parser, n: int) -> int:
    if args.k is None:
        parser.error("--k is required")
    if not 3 <= args.k < n:
        parser.error(f"--k must satisfy 3 <= k < n, got k={args.k}, n={n}")
    return args.k


def cmd_enum(args, parser) -> int:
    n = _require_n(args, parser)
    table = faces.enumerate_faces(n)
    sink = _Sink(args.out)
    dims = [args.dim] if args.dim is not None else sorted(table.cells)
    for d in dims:
        for f in table.faces(d):
            sink.line(faces.face_jsonl(f))
    sink.close()
    want = faces.expected_counts(n)
    got = table.counts()
    ok = got == want
    for d in sorted(got):
        mark = "ok" if got[d] == want.get(d) else f"MISMATCH expect {want.get(d)}"
        print(f"dim {d:2d}: {got[d]:8d} {mark}")
    print(f"RESULT {'pass' if ok else 'fail'} n={n} cells={table.size}")
    return 0 if ok else 1


def cmd_match(args, parser) -> int:
    n = _require_n(args, parser)
    if args.face is not None:
        try:
            f = faces.parse_seq(args.face, n)
        except faces.FaceError as e:
            parser.error(str(e))
        partner, rule = morse.match_face(f, n)
        print(json.dumps({"face": f, "partner": partner, "rule": rule}))
        print(f"RESULT pass n={n} face={f}")
        return 0
    table = faces.enumerate_faces(n)
    try:
        m = morse.build_matching(table)
    except morse.MorseError as e:
        print(f"RESULT fail n={n} error={e}")
        return 1
    sink = _Sink(args.out)
    for line in m.jsonl_lines(table):
        sink.line(line)
    sink.close()
    if args.verify:
        for f in table:
            apps = morse.rule_applicability(f)
            if apps != {m.rule[f]}:
                print(f"RESULT fail n={n} exclusivity face={f} rules={sorted(apps)}")
                return 1
        report = morse.verify_acyclic(m, table)
        unpaired = morse.morse_counts(m, table)
        if args.verbose:
            print(json.dumps(report))
        if not report["acyclic"] or unpaired:
            print(f"RESULT fail n={n} acyclic={report['acyclic']} unpaired={unpaired}")
            return 1
        print(f"pairs: {m.pair_count()}, unpaired: 0, cycles: none")
    print(f"RESULT pass n={n} pairs={m.pair_count()}")
    return 0


def cmd_basis(args, parser) -> int:
    n = _require_n(args, parser)
    k = _require_k(args, parser, n)
    table = faces.enumerate_faces(n)
    cx = ChainComplex(table)
    basis = subc.homology_basis(n, k, table, cx)
    sink = _Sink(args.out)
    for line in basis.jsonl_lines(table):
        sink.line(line)
    sink.close()
    expected = subc.betti_power(n, k)
    ok = len(basis.chains) == expected
    if args.certify:
        sub = subc.subcomplex_faces(n, k, table)
        verdict = snf.class_independence(basis.chains, sub, table, cx)
        print(f"independent and generating: {str(verdict.ok).lower()}")
        if args.verbose:
            print(json.dumps(verdict.detail))
        ok = ok and verdict.ok
    print(f"RESULT {'pass' if ok else 'fail'} n={n} k={k} chains={len(basis.chains)}")
    return 0 if ok else 1


def cmd_betti(args, parser) -> int:
    if args.n_min < 4:
        parser.error("--n-min must be >= 4")
    if args.n_max < args.n_min:
        parser.error("--n-max must be >= --n-min")
    rows = []
    ok = True
    for n in range(args.n_min, args.n_max + 1):
        table = faces.enumerate_faces(n)
        matching = morse.build_matching(table)
        cx = ChainComplex(table) if args.oracle else None
        k_top = n + 1 if args.include_k_eq_n else n
        for k in range(3, k_top):
            a = subc.betti_binomial(n, k)
            b = subc.betti_power(n, k)
            unmatched = oracle = ""
            if k < n:
                spec = subc.build_subcomplex(n, k, table, matching)
                u = morse.morse_counts(spec.pairing, table, spec.faces)
                unmatched = u.get(k - 1, 0)
                if set(u) - {k - 1}:
                    ok = False
                if unmatched != a:
                    ok = False
                if args.oracle and (n <= ORACLE_N_CAP or args.force):
                    h = snf.homology(spec.faces, table, k - 1, cx)
                    oracle = h["betti"]
                    if oracle != a or h["torsion"]:
                        ok = False
            if a != b:
                ok = False
            rows.append((n, k, a, b, unmatched, oracle))
    sink = _Sink(args.out)
    sink.line("n,k,betti_binomial,betti_power,unmatched,oracle_rank")
    for row in rows:
        sink.line(",".join(str(x) for x in row))
    sink.close()
    print(f"RESULT {'pass' if ok else 'fail'} rows={len(rows)}")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is not None and args.jobs < 1:
        parser.error("--jobs must be >= 1")
    handlers = {
        "enum": cmd_enum,
        "match": cmd_match,
        "basis": cmd_basis,
        "betti": cmd_betti,
    }
    return handlers[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
