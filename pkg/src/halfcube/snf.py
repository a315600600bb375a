"""Integer Smith normal form oracle for cellular homology.

Ground truth for ranks and torsion, independent of the matching machinery:
given any facet-closed face subset it computes reduced (or unreduced)
homology from exact Smith normal forms of the restricted boundary
matrices.  Elimination is gcd-based with smallest-pivot selection (ties
broken by a fill estimate, then position) over arbitrary-precision
integers; no modular or floating-point shortcuts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .chains import ChainComplex
from .faces import EMPTY, FaceTable, facets


class OracleError(Exception):
    pass


class NotClosed(OracleError):
    pass


class NotCycles(OracleError):
    pass


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors (positive, each dividing the next) and shape."""

    factors: tuple[int, ...]
    n_rows: int
    n_cols: int

    @property
    def rank(self) -> int:
        return len(self.factors)

    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f > 1)


def _divisibility_chain(values: list[int]) -> tuple[int, ...]:
    f = sorted(abs(v) for v in values)
    changed = True
    while changed:
        changed = False
        for i in range(len(f)):
            for j in range(i + 1, len(f)):
                if f[j] % f[i] != 0:
                    g = gcd(f[i], f[j])
                    f[i], f[j] = g, f[i] * f[j] // g
                    changed = True
        f.sort()
    return tuple(f)


def _sparse_snf(n_rows: int, n_cols: int, entries: dict[tuple[int, int], int]) -> SNFResult:
    rows: dict[int, dict[int, int]] = {}
    colrows: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            colrows.setdefault(c, set()).add(r)

    def row_op(dst: int, src: int, q: int) -> None:
        # row[dst] -= q * row[src]
        drow = rows.setdefault(dst, {})
        for c, v in rows[src].items():
            w = drow.get(c, 0) - q * v
            if w:
                if c not in drow:
                    colrows.setdefault(c, set()).add(dst)
                drow[c] = w
            elif c in drow:
                del drow[c]
                colrows[c].discard(dst)
        if not drow:
            del rows[dst]

    pivots: list[int] = []
    while rows:
        best = None
        for r in rows:
            row = rows[r]
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(colrows[c]) - 1), r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        _, r, c = best
        while True:
            v = rows[r][c]
            others = sorted(colrows[c] - {r})
            if others:
                for r2 in others:
                    q = rows[r2][c] // v
                    if q:
                        row_op(r2, r, q)
                rem = sorted(colrows[c] - {r})
                if rem:
                    r = min(rem, key=lambda rr: (abs(rows[rr][c]), rr))
                    continue
            row_others = sorted(c2 for c2 in rows[r] if c2 != c)
            if row_others:
                # column c is now zero off the pivot, so a column operation
                # c2 -= q*c only changes the pivot-row entry
                for c2 in row_others:
                    q = rows[r][c2] // v
                    if q:
                        w = rows[r][c2] - q * v
                        if w:
                            rows[r][c2] = w
                        else:
                            del rows[r][c2]
                            colrows[c2].discard(r)
                rem = sorted(c2 for c2 in rows[r] if c2 != c)
                if rem:
                    c = min(rem, key=lambda cc: (abs(rows[r][cc]), cc))
                    continue
            break
        pivots.append(rows[r][c])
        del rows[r]
        colrows[c].discard(r)
    return SNFResult(_divisibility_chain(pivots), n_rows, n_cols)


def smith_normal_form(matrix) -> SNFResult:
    """Smith normal form of an integer matrix.

    Accepts a dense list of rows or a tuple (n_rows, n_cols, entries) with
    `entries` a {(row, col): value} map.
    """
    if isinstance(matrix, tuple):
        n_rows, n_cols, entries = matrix
        return _sparse_snf(n_rows, n_cols, dict(entries))
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    entries = {(r, c): v
               for r, row in enumerate(matrix) for c, v in enumerate(row) if v}
    return _sparse_snf(n_rows, n_cols, entries)


def check_closed(subset, table: FaceTable, reduced: bool = True) -> set[str]:
    """Validate facet closure of a face subset; with `reduced`, the empty
    face must be present (it is the facet of every vertex)."""
    sub = set(subset)
    for f in sub:
        if f not in table:
            raise NotClosed(f"{f!r} is not a face of the table")
    if reduced and any(table.dim_of(f) == 0 for f in sub) and EMPTY not in sub:
        raise NotClosed("reduced homology needs the empty face in the subset")
    for f in sub:
        if f == EMPTY:
            continue
        for g in facets(f):
            if g == EMPTY and not reduced:
                continue
            if g not in sub:
                raise NotClosed(f"{g!r} missing: facet of {f!r}")
    return sub


def restricted_boundary(sub: set[str], table: FaceTable, d: int,
                        cx: ChainComplex) -> tuple[int, int, dict[tuple[int, int], int], list[str], list[str]]:
    """Boundary matrix of the subcomplex in dimension d with local indices."""
    col_faces = sorted(f for f in sub if f != EMPTY and table.dim_of(f) == d)
    if d == 0:
        rows = [EMPTY]
        entries = {(0, j): 1 for j in range(len(col_faces))}
        return 1, len(col_faces), entries, rows, col_faces
    row_faces = sorted(f for f in sub if f != EMPTY and table.dim_of(f) == d - 1)
    if not col_faces:
        return len(row_faces), 0, {}, row_faces, []
    row_pos = {f: i for i, f in enumerate(row_faces)}
    bmat = cx.boundary(d)
    cells = table.faces(d - 1)
    entries: dict[tuple[int, int], int] = {}
    for j, f in enumerate(col_faces):
        for i, v in bmat.cols[table.index_of(f)].items():
            entries[(row_pos[cells[i]], j)] = v
    return len(row_faces), len(col_faces), entries, row_faces, col_faces


def homology(subset, table: FaceTable, degree: int,
             cx: ChainComplex | None = None, reduced: bool = True) -> dict:
    """Betti number and torsion coefficients of a facet-closed subset in
    one degree: betti = dim ker of the degree map minus the rank of the
    next boundary; torsion from the next boundary's invariant factors."""
    sub = check_closed(subset, table, reduced)
    if cx is None:
        cx = ChainComplex(table)
    n_cells = sum(1 for f in sub if f != EMPTY and table.dim_of(f) == degree)
    if degree == 0 and not reduced:
        rank_d = 0
    else:
        r, c, entries, _, _ = restricted_boundary(sub, table, degree, cx)
        rank_d = _sparse_snf(r, c, entries).rank
    r2, c2, entries2, _, _ = restricted_boundary(sub, table, degree + 1, cx)
    nxt = _sparse_snf(r2, c2, entries2)
    betti = n_cells - rank_d - nxt.rank
    return {"degree": degree, "betti": betti, "torsion": list(nxt.torsion())}


def homology_report(subset, table: FaceTable, cx: ChainComplex | None = None,
                    reduced: bool = True, label: str = "") -> dict:
    """Per-degree reduced Betti numbers and torsion for a face subset."""
    sub = check_closed(subset, table, reduced)
    if cx is None:
        cx = ChainComplex(table)
    top = max((table.dim_of(f) for f in sub if f != EMPTY), default=-1)
    betti: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    for d in range(0, top + 1):
        h = homology(sub, table, d, cx, reduced)
        betti[d] = h["betti"]
        if h["torsion"]:
            torsion[d] = h["torsion"]
    return {"subset": label, "betti": betti, "torsion": torsion}


def report_json(report: dict) -> str:
    return json.dumps({
        "subset": report["subset"],
        "betti": {str(d): b for d, b in report["betti"].items() if b},
        "torsion": {str(d): t for d, t in report["torsion"].items()},
    })


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    generating: bool
    detail: dict

    @property
    def ok(self) -> bool:
        return self.independent and self.generating


def class_independence(cycles, subset, table: FaceTable,
                       cx: ChainComplex | None = None) -> IndependenceVerdict:
    """Certify that the homology classes of the given cycles form a free
    basis of the subset's homology in their degree.

    The certificate compares Smith normal forms of the boundary-image
    matrix and of that matrix stacked with the cycle columns: the classes
    are independent when the stack gains full extra rank, and generating
    when the stacked lattice fills the whole cycle kernel (full kernel
    rank, all invariant factors 1).
    """
    if not cycles:
        raise NotCycles("no cycles given")
    if cx is None:
        cx = ChainComplex(table)
    degree = cycles[0].dim
    sub = check_closed(subset, table, reduced=True)
    cells = table.faces(degree)
    row_faces = sorted(f for f in sub if f != EMPTY and table.dim_of(f) == degree)
    row_pos = {f: i for i, f in enumerate(row_faces)}
    for ch in cycles:
        if ch.dim != degree:
            raise NotCycles("cycles of mixed degree")
        if not cx.apply(ch).is_zero():
            raise NotCycles("input chain has nonzero boundary")
        for i in ch.coeffs:
            if cells[i] not in row_pos:
                raise NotCycles(f"cycle leaves the subset at {cells[i]!r}")

    rb, cb, entries_b, _, _ = restricted_boundary(sub, table, degree + 1, cx)
    rank_b = _sparse_snf(rb, cb, dict(entries_b)).rank
    stacked = dict(entries_b)
    for j, ch in enumerate(cycles):
        for i, v in ch.coeffs.items():
            stacked[(row_pos[cells[i]], cb + j)] = v
    snf_stack = _sparse_snf(rb, cb + len(cycles), stacked)

    rd, cd, entries_d, _, _ = restricted_boundary(sub, table, degree, cx)
    kernel_rank = len(row_faces) - _sparse_snf(rd, cd, entries_d).rank

    independent = snf_stack.rank == rank_b + len(cycles)
    generating = (snf_stack.rank == kernel_rank
                  and not snf_stack.torsion())
    return IndependenceVerdict(independent, generating, {
        "degree": degree,
        "cycles": len(cycles),
        "rank_boundaries": rank_b,
        "rank_stacked": snf_stack.rank,
        "kernel_rank": kernel_rank,
        "stacked_torsion": list(snf_stack.torsion()),
    })
