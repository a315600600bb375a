"""Oriented cellular chain complex of the half cube over the integers.

Each cell of dimension >= 1 is oriented by a deterministic geometric frame:
the lexicographically smallest vertex as base point plus a greedy maximal
set of exact integer edge vectors.  The incidence number of a facet is the
sign of an exact determinant comparing the facet's frame, preceded by the
outward centroid direction, against the cell's frame.  All arithmetic is
arbitrary-precision integer; signs are never computed in floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .faces import EMPTY, FaceTable, Kind, classify, facets, vertices_of


class ChainError(Exception):
    pass


class DegenerateFace(ChainError):
    pass


class DimensionMismatch(ChainError):
    pass


def det_sign(m: list[list[int]]) -> int:
    """Sign of the determinant of a square integer matrix, by fraction-free
    (Bareiss) elimination."""
    a = [row[:] for row in m]
    k = len(a)
    sign = 1
    prev = 1
    for i in range(k):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[i][i]
        for r in range(i + 1, k):
            arc = a[r]
            aic = a[i]
            fac = arc[i]
            for c in range(i + 1, k):
                arc[c] = (arc[c] * piv - fac * aic[c]) // prev
            arc[i] = 0
        prev = piv
    d = a[k - 1][k - 1] if k else 1
    return sign * (1 if d > 0 else -1 if d < 0 else 0)


def int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination with row and
    column pivoting."""
    a = [row[:] for row in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    rank = 0
    prev = 1
    while rank < nr and rank < nc:
        pr = pc = -1
        for r in range(rank, nr):
            row = a[r]
            for c in range(rank, nc):
                if row[c] != 0:
                    pr, pc = r, c
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        a[rank], a[pr] = a[pr], a[rank]
        if pc != rank:
            for row in a:
                row[rank], row[pc] = row[pc], row[rank]
        piv = a[rank][rank]
        for r in range(rank + 1, nr):
            arc = a[r]
            fac = arc[rank]
            base = a[rank]
            for c in range(rank + 1, nc):
                arc[c] = (arc[c] * piv - fac * base[c]) // prev
            arc[rank] = 0
        prev = piv
        rank += 1
    return rank


def vertex_point(v: str) -> tuple[int, ...]:
    """Coordinates of a vertex sequence: digit '0' is +1, digit '1' is -1."""
    return tuple(1 if c == "0" else -1 for c in v)


@dataclass(frozen=True)
class OrientationFrame:
    base: str
    vectors: tuple[tuple[int, ...], ...]


def orientation_frame(f: str) -> OrientationFrame:
    """Deterministic orientation frame of a face of dimension >= 1.

    Base is the lexicographically smallest vertex; frame vectors are picked
    greedily from the remaining vertices in lexicographic order, keeping a
    vector whenever it raises the exact rank.
    """
    kind, d = classify(f)
    if d < 1:
        raise ChainError(f"no frame for a face of dimension {d}")
    verts = sorted(vertices_of(f))
    base = vertex_point(verts[0])
    vecs: list[tuple[int, ...]] = []
    rows: list[list[int]] = []
    for v in verts[1:]:
        if len(vecs) == d:
            break
        cand = tuple(a - b for a, b in zip(vertex_point(v), base))
        if int_rank(rows + [list(cand)]) > len(vecs):
            vecs.append(cand)
            rows.append(list(cand))
    if len(vecs) != d:
        raise DegenerateFace(f"rank {len(vecs)} < {d} for {f!r}")
    return OrientationFrame(verts[0], tuple(vecs))


def _vertex_sum(f: str) -> tuple[tuple[int, ...], int]:
    verts = vertices_of(f)
    n = len(f)
    total = [0] * n
    for v in verts:
        for i, x in enumerate(vertex_point(v)):
            total[i] += x
    return tuple(total), len(verts)


def _facet_incidence(f: str, g: str, frame) -> int:
    # sign of the facet g inside the boundary of f; g must be a facet of f
    dg = -1 if g == EMPTY else classify(g).dim
    if dg == -1:
        return 1  # augmentation: every vertex hits the empty cell with +1
    frame_f = frame(f)
    if dg == 0:
        # +1 on the head vertex of the frame vector, -1 on the base
        return -1 if g == frame_f.base else 1
    frame_g = frame(g)
    sum_f, nf = _vertex_sum(f)
    sum_g, ng = _vertex_sum(g)
    # nf*ng * (centroid(g) - centroid(f)), an exact outward direction
    u = [nf * sg - ng * sf for sf, sg in zip(sum_f, sum_g)]
    cols = [u] + [list(v) for v in frame_g.vectors]
    m = [[sum(fv[i] * col[i] for i in range(len(fv))) for col in cols]
         for fv in frame_f.vectors]
    s = det_sign(m)
    if s == 0:
        raise ChainError(f"degenerate incidence determinant for {f!r}:{g!r}")
    return s


def incidence(f: str, g: str) -> int:
    """Incidence number of the facet g in the boundary of f: 0 when g is
    not a facet, otherwise +1 or -1 from the induced orientation."""
    df = -1 if f == EMPTY else classify(f).dim
    dg = -1 if g == EMPTY else classify(g).dim
    if df != dg + 1:
        raise DimensionMismatch(f"dim {df} vs {dg}")
    if g not in facets(f):
        return 0
    return _facet_incidence(f, g, orientation_frame)


@dataclass
class ChainVector:
    """Sparse integer chain: face index -> coefficient, zero-free."""

    dim: int
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {i: c for i, c in self.coeffs.items() if c != 0}

    def is_zero(self) -> bool:
        return not self.coeffs

    def add_scaled(self, other: "ChainVector", scale: int = 1) -> "ChainVector":
        if other.dim != self.dim:
            raise DimensionMismatch(f"chain dims {self.dim} vs {other.dim}")
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            v = out.get(i, 0) + scale * c
            if v:
                out[i] = v
            else:
                out.pop(i, None)
        return ChainVector(self.dim, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChainVector)
                and self.dim == other.dim and self.coeffs == other.coeffs)

    def support_faces(self, table: FaceTable) -> list[str]:
        cells = table.faces(self.dim)
        return [cells[i] for i in sorted(self.coeffs)]


@dataclass
class BoundaryMatrix:
    """Sparse incidence matrix from d-cells (columns) to (d-1)-cells (rows).

    Row index -1 cells: for d = 0 there is a single augmentation row onto
    the empty face.
    """

    d: int
    n_rows: int
    n_cols: int
    cols: list[dict[int, int]]

    def entry(self, i: int, j: int) -> int:
        return self.cols[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def column_chain(self, j: int) -> ChainVector:
        return ChainVector(self.d - 1, dict(self.cols[j]))

    def jsonl_lines(self, n: int) -> list[str]:
        lines = [json.dumps({"dim": self.d, "rows": self.n_rows,
                             "cols": self.n_cols, "n": n})]
        for j, col in enumerate(self.cols):
            for i in sorted(col):
                lines.append(json.dumps({"row": i, "col": j, "val": col[i]}))
        return lines


def boundary_matrix(table: FaceTable, d: int) -> BoundaryMatrix:
    """Boundary operator of the full complex in dimension d (0 <= d <= n);
    d = 0 yields the all-ones augmentation row."""
    if d < 0 or d > table.n:
        raise DimensionMismatch(f"no boundary in dimension {d}")
    cells = table.faces(d)
    rows = table.faces(d - 1)
    cols: list[dict[int, int]] = []
    if d == 0:
        for _ in cells:
            cols.append({0: 1})
        return BoundaryMatrix(d, len(rows), len(cells), cols)
    frames: dict[str, OrientationFrame] = {}

    def frame(x: str) -> OrientationFrame:
        fr = frames.get(x)
        if fr is None:
            fr = frames[x] = orientation_frame(x)
        return fr

    for f in cells:
        col: dict[int, int] = {}
        for g in facets(f):
            col[table.index_of(g)] = _facet_incidence(f, g, frame)
        cols.append(col)
    return BoundaryMatrix(d, len(rows), len(cells), cols)


class ChainComplex:
    """Boundary matrices of a face table, built once per dimension and
    shared; frames and facet lists are cached for reuse."""

    def __init__(self, table: FaceTable):
        self.table = table
        self._frames: dict[str, OrientationFrame] = {}
        self._bmats: dict[int, BoundaryMatrix] = {}

    def frame(self, f: str) -> OrientationFrame:
        fr = self._frames.get(f)
        if fr is None:
            fr = self._frames[f] = orientation_frame(f)
        return fr

    def incidence(self, f: str, g: str) -> int:
        d = self.table.dim_of(f)
        b = self.boundary(d)
        return b.entry(self.table.index_of(g), self.table.index_of(f))

    def boundary(self, d: int) -> BoundaryMatrix:
        b = self._bmats.get(d)
        if b is None:
            b = self._bmats[d] = boundary_matrix(self.table, d)
        return b

    def apply(self, c: ChainVector) -> ChainVector:
        if c.dim < 0:
            return ChainVector(c.dim - 1, {})
        b = self.boundary(c.dim)
        out: dict[int, int] = {}
        for j, lam in c.coeffs.items():
            for i, v in b.cols[j].items():
                w = out.get(i, 0) + lam * v
                if w:
                    out[i] = w
                else:
                    del out[i]
        return ChainVector(c.dim - 1, out)


def apply_boundary(c: ChainVector, table: FaceTable) -> ChainVector:
    return ChainComplex(table).apply(c)
