import itertools
import random
from math import gcd

import pytest

from halfcube import faces
from halfcube.chains import ChainVector, int_rank
from halfcube.snf import (
    NotClosed,
    NotCycles,
    class_independence,
    check_closed,
    homology,
    homology_report,
    report_json,
    restricted_boundary,
    smith_normal_form,
)
from halfcube.subcomplex import betti_power, homology_basis, subcomplex_faces


def minor_gcd_factors(m):
    # independent reference: d_k = gcd of all k x k minors, f_k = d_k/d_{k-1}
    nr, nc = len(m), len(m[0]) if m else 0

    def det(rows, cols):
        sub = [[m[r][c] for c in cols] for r in rows]
        k = len(sub)
        if k == 1:
            return sub[0][0]
        total = 0
        for j in range(k):
            if sub[0][j]:
                minor = [row[:j] + row[j + 1:] for row in sub[1:]]
                total += (-1) ** j * sub[0][j] * _det(minor)
        return total

    def _det(s):
        if len(s) == 1:
            return s[0][0]
        total = 0
        for j in range(len(s)):
            if s[0][j]:
                minor = [row[:j] + row[j + 1:] for row in s[1:]]
                total += (-1) ** j * s[0][j] * _det(minor)
        return total

    factors = []
    prev = 1
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                g = gcd(g, det(rows, cols))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return tuple(factors)


class TestSmithNormalForm:
    def test_identity(self):
        assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).factors == (1, 1, 1)

    def test_zero(self):
        res = smith_normal_form([[0, 0], [0, 0]])
        assert res.factors == () and res.rank == 0

    def test_diagonal_torsion(self):
        assert smith_normal_form([[2, 0], [0, 3]]).factors == (1, 6)
        assert smith_normal_form([[6, 0], [0, 10]]).factors == (2, 30)

    def test_single_row(self):
        assert smith_normal_form([[4, 6, 10]]).factors == (2,)

    def test_sparse_input(self):
        res = smith_normal_form((3, 3, {(0, 0): 2, (1, 1): 4, (2, 2): 8}))
        assert res.factors == (2, 4, 8)

    def test_divisibility_chain_random(self):
        rng = random.Random(99)
        for _ in range(150):
            nr, nc = rng.randint(1, 4), rng.randint(1, 4)
            m = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
            res = smith_normal_form(m)
            for a, b in zip(res.factors, res.factors[1:]):
                assert b % a == 0
            assert res.factors == minor_gcd_factors(m)
            assert res.rank == int_rank(m)

    def test_determinism(self):
        m = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
        assert smith_normal_form(m) == smith_normal_form(m)


class TestHomology:
    def test_d1_rank_two_methods(self, tables, complexes):
        t, cx = tables(4), complexes(4)
        full = set(t)
        r, c, entries, _, _ = restricted_boundary(full, t, 1, cx)
        dense = [[0] * c for _ in range(r)]
        for (i, j), v in entries.items():
            dense[i][j] = v
        assert smith_normal_form((r, c, entries)).rank == int_rank(dense)

    @pytest.mark.parametrize("n", [4, 5])
    def test_full_complex_contractible(self, tables, complexes, n):
        rep = homology_report(set(tables(n)), tables(n), complexes(n))
        assert all(b == 0 for b in rep["betti"].values())
        assert not rep["torsion"]

    @pytest.mark.parametrize("n", [4, 5])
    def test_boundary_complex_is_sphere(self, tables, complexes, n):
        t = tables(n)
        bd = {f for f in t if t.dim_of(f) <= n - 1}
        rep = homology_report(bd, t, complexes(n))
        assert rep["betti"] == {d: (1 if d == n - 1 else 0) for d in range(n)}
        assert not rep["torsion"]

    def test_c43_reduced_homology(self, tables, complexes):
        t = tables(4)
        sub = subcomplex_faces(4, 3, t)
        rep = homology_report(sub, t, complexes(4), label="C_{4,3}")
        assert rep["betti"] == {0: 0, 1: 0, 2: 7, 3: 0}
        assert not rep["torsion"]
        assert report_json(rep) == (
            '{"subset": "C_{4,3}", "betti": {"2": 7}, "torsion": {}}')

    def test_not_closed(self, tables):
        t = tables(4)
        with pytest.raises(NotClosed):
            check_closed({t.faces(2)[0], faces.EMPTY}, t)
        with pytest.raises(NotClosed):
            homology({t.faces(0)[0]}, t, 0)  # vertex without the empty face

    def test_rank_consistency(self, tables, complexes):
        # per degree: SNF rank agrees with the fraction-free rank, and
        # rank + kernel dimension = number of cells
        t, cx = tables(4), complexes(4)
        full = set(t)
        for d in range(0, 5):
            r, c, entries, _, col_faces = restricted_boundary(full, t, d, cx)
            rank = smith_normal_form((r, c, entries)).rank
            dense = [[0] * c for _ in range(r)]
            for (i, j), v in entries.items():
                dense[i][j] = v
            assert rank == int_rank(dense)
            assert len(col_faces) == len(t.faces(d))
            kernel = len(col_faces) - rank
            assert kernel >= 0
            assert rank + kernel == len(col_faces)

    def test_unreduced_counts_components(self, tables, complexes):
        t = tables(4)
        verts = set(t.faces(0))
        edges = set(t.faces(1))
        h0 = homology(verts | edges | {faces.EMPTY}, t, 0,
                      complexes(4), reduced=False)
        assert h0["betti"] == 1  # the half-cube graph is connected


class TestClassIndependence:
    def test_c43_basis_certified(self, tables, complexes):
        t, cx = tables(4), complexes(4)
        sub = subcomplex_faces(4, 3, t)
        hb = homology_basis(4, 3, t, cx)
        verdict = class_independence(hb.chains, sub, t, cx)
        assert verdict.ok
        assert verdict.detail["cycles"] == 7

    @pytest.mark.parametrize("n,k", [(5, 3), (5, 4)])
    def test_n5_bases_certified(self, tables, complexes, n, k):
        t, cx = tables(n), complexes(n)
        sub = subcomplex_faces(n, k, t)
        hb = homology_basis(n, k, t, cx)
        verdict = class_independence(hb.chains, sub, t, cx)
        assert verdict.ok
        assert verdict.detail["cycles"] == betti_power(n, k)

    def test_single_boundary_chain_dependent(self, tables, complexes):
        t, cx = tables(4), complexes(4)
        bd = {f for f in t if t.dim_of(f) <= 3}
        chain = cx.boundary(3).column_chain(0)
        verdict = class_independence([chain], bd, t, cx)
        assert not verdict.independent

    def test_non_cycle_rejected(self, tables, complexes):
        t, cx = tables(4), complexes(4)
        bd = {f for f in t if t.dim_of(f) <= 3}
        with pytest.raises(NotCycles):
            class_independence([ChainVector(1, {0: 1})], bd, t, cx)

    def test_dropping_one_chain_stops_generating(self, tables, complexes):
        t, cx = tables(4), complexes(4)
        sub = subcomplex_faces(4, 3, t)
        hb = homology_basis(4, 3, t, cx)
        verdict = class_independence(hb.chains[:-1], sub, t, cx)
        assert verdict.independent and not verdict.generating
