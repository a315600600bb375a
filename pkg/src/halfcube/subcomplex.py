"""Subcomplexes of the half cube with the large half-cube cells removed.

For 3 <= k < n, deleting the interiors of every half-cube shaped face of
dimension >= k leaves a subcomplex whose reduced homology is free and
concentrated in degree k-1.  Restricting the complete matching to the
subcomplex leaves unpaired exactly the (k-1)-cells whose original partner
was a deleted k-dimensional half-cube cell; the boundaries of those
external partners are explicit integral homology basis chains.  Two closed
forms count the basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .chains import ChainComplex, ChainVector
from .faces import EMPTY, PLAIN1, STAR, FaceTable, Kind, classify, facets
from .morse import MorseMatching, build_matching


class SubcomplexError(Exception):
    pass


class BadRange(SubcomplexError):
    pass


class SupportLeak(SubcomplexError):
    pass


def betti_binomial(n: int, k: int) -> int:
    """Binomial-product form of the homology rank in degree k-1:
    sum over i = k..n of C(n,i) * C(i-1,k-1)."""
    if not 3 <= k <= n:
        raise BadRange(f"need 3 <= k <= n, got k={k}, n={n}")
    return sum(comb(n, i) * comb(i - 1, k - 1) for i in range(k, n + 1))


def betti_power(n: int, k: int) -> int:
    """Power-of-two form of the same rank: sum over i = 1..n of
    2**(i-k) * C(i-1,k-1); terms with i < k vanish with the binomial."""
    if not 3 <= k <= n:
        raise BadRange(f"need 3 <= k <= n, got k={k}, n={n}")
    return sum((2 ** (i - k)) * comb(i - 1, k - 1) for i in range(k, n + 1))


def subcomplex_faces(n: int, k: int, table: FaceTable) -> set[str]:
    """Every face of the half cube except the half-cube shaped faces of
    dimension >= k; the empty face is kept."""
    out = set()
    for f in table:
        kind, d = classify(f)
        if kind is Kind.HALFCUBE and d >= k:
            continue
        out.add(f)
    return out


@dataclass
class SubcomplexSpec:
    """A deleted-cell subcomplex with its restricted matching.

    `faces` is the retained face set (empty face included); `pairing` the
    matching pairs lying entirely inside it; `unmatched` the faces left
    unpaired (all of dimension k-1); `external` their original partners,
    the deleted k-dimensional half-cube cells.
    """

    n: int
    k: int
    faces: frozenset[str]
    pairing: dict[str, str]
    unmatched: list[str]
    external: list[str]


def build_subcomplex(n: int, k: int, table: FaceTable,
                     matching: MorseMatching | None = None) -> SubcomplexSpec:
    """Build the subcomplex for 3 <= k < n, restrict the matching, and
    validate: facet closure, unmatched cells concentrated in dimension
    k-1, and every external partner a k-dimensional half-cube cell whose
    facets all remain inside."""
    if not 3 <= k < n:
        raise BadRange(f"need 3 <= k < n, got k={k}, n={n}")
    if matching is None:
        matching = build_matching(table)
    faces_y = subcomplex_faces(n, k, table)
    pairing: dict[str, str] = {}
    unmatched: list[str] = []
    external: list[str] = []
    for f in faces_y:
        p = matching.partner[f]
        if p in faces_y:
            pairing[f] = p
        else:
            unmatched.append(f)
            external.append(p)
    unmatched.sort()
    external.sort()

    for f in faces_y:
        if f == EMPTY:
            continue
        for g in facets(f):
            if g not in faces_y:
                raise SubcomplexError(f"not facet-closed: {g!r} missing under {f!r}")
    for f in unmatched:
        if table.dim_of(f) != k - 1:
            raise SubcomplexError(f"unmatched cell {f!r} has dim != {k - 1}")
    if len(unmatched) != len(external):
        raise SubcomplexError("unmatched/external size mismatch")
    for b in external:
        kind, d = classify(b)
        if kind is not Kind.HALFCUBE or d != k:
            raise SubcomplexError(f"external partner {b!r} is not a k-half-cube")
        for g in facets(b):
            if g not in faces_y:
                raise SupportLeak(f"facet {g!r} of external {b!r} left the subcomplex")
    return SubcomplexSpec(n, k, frozenset(faces_y), pairing, unmatched, external)


def basis_faces(n: int, k: int, table: FaceTable) -> list[str]:
    """The k-dimensional half-cube faces with no '1' strictly right of the
    rightmost '*', in lexicographic order."""
    if not 3 <= k < n:
        raise BadRange(f"need 3 <= k < n, got k={k}, n={n}")
    out = []
    for f in table.faces(k):
        if STAR not in f:
            continue
        if PLAIN1 not in f[f.rfind(STAR) + 1:]:
            out.append(f)
    return out


@dataclass
class HomologyBasis:
    """Basis chains in degree k-1: one boundary chain per basis face."""

    n: int
    k: int
    faces: list[str]
    chains: list[ChainVector]

    def jsonl_lines(self, table: FaceTable) -> list[str]:
        cells = table.faces(self.k - 1)
        lines = []
        for f, ch in zip(self.faces, self.chains):
            terms = [{"face": cells[i], "coeff": ch.coeffs[i]}
                     for i in sorted(ch.coeffs)]
            lines.append(json.dumps({"bface": f, "chain": terms}))
        return lines


def homology_basis(n: int, k: int, table: FaceTable,
                   cx: ChainComplex | None = None) -> HomologyBasis:
    """Boundary chains of the basis faces, each checked to be a cycle
    supported inside the subcomplex."""
    if cx is None:
        cx = ChainComplex(table)
    bfaces = basis_faces(n, k, table)
    faces_y = subcomplex_faces(n, k, table)
    bmat = cx.boundary(k)
    cells = table.faces(k - 1)
    chains = []
    for b in bfaces:
        ch = bmat.column_chain(table.index_of(b))
        for i in ch.coeffs:
            if cells[i] not in faces_y:
                raise SupportLeak(f"boundary of {b!r} touches {cells[i]!r}")
        if not cx.apply(ch).is_zero():
            raise SubcomplexError(f"boundary of {b!r} is not a cycle")
        chains.append(ch)
    return HomologyBasis(n, k, bfaces, chains)
