import json
from math import comb

import pytest

from halfcube.faces import EMPTY, STAR, Kind, classify, facets
from halfcube.morse import morse_counts
from halfcube.subcomplex import (
    BadRange,
    basis_faces,
    betti_binomial,
    betti_power,
    build_subcomplex,
    homology_basis,
    subcomplex_faces,
)


class TestBettiForms:
    def test_anchor_4_3(self):
        # term by term: C(4,3)C(2,2) + C(4,4)C(3,2) = 4 + 3
        assert betti_binomial(4, 3) == 7
        # 2**0*C(2,2) + 2**1*C(3,2) = 1 + 6
        assert betti_power(4, 3) == 7

    def test_anchor_5_4(self):
        assert betti_binomial(5, 4) == comb(5, 4) * comb(3, 3) + comb(5, 5) * comb(4, 3)
        assert betti_binomial(5, 4) == 9
        assert betti_power(5, 4) == 9

    def test_anchor_5_3(self):
        assert betti_power(5, 3) == 1 + 6 + 24 == 31
        assert betti_binomial(5, 3) == 31

    def test_k_equals_n(self):
        for n in range(3, 12):
            assert betti_binomial(n, n) == 1
            assert betti_power(n, n) == 1

    def test_identity_up_to_30(self):
        for n in range(3, 31):
            for k in range(3, n + 1):
                assert betti_binomial(n, k) == betti_power(n, k)

    def test_range_errors(self):
        with pytest.raises(BadRange):
            betti_binomial(5, 2)
        with pytest.raises(BadRange):
            betti_power(4, 5)


class TestBuildSubcomplex:
    def test_5_4_excluded_faces(self, tables, matchings):
        t = tables(5)
        spec = build_subcomplex(5, 4, t, matchings(5))
        removed = set(t) - set(spec.faces)
        # the dim-4 half-cube cells plus the top cell
        assert removed == {f for f in t if classify(f).kind is Kind.HALFCUBE
                           and classify(f).dim >= 4}
        assert len(removed) == 2 * comb(5, 4) + 1

    def test_4_3_unmatched_are_triangles(self, tables, matchings):
        spec = build_subcomplex(4, 3, tables(4), matchings(4))
        assert all(classify(f) == (Kind.SIMPLEX, 2) for f in spec.unmatched)

    def test_facet_closed(self, tables, matchings):
        spec = build_subcomplex(5, 3, tables(5), matchings(5))
        for f in spec.faces:
            if f == EMPTY:
                continue
            assert set(facets(f)) <= spec.faces

    def test_externals_are_k_halfcubes_with_inner_facets(self, tables, matchings):
        spec = build_subcomplex(5, 4, tables(5), matchings(5))
        assert len(spec.unmatched) == len(spec.external)
        for b in spec.external:
            assert classify(b) == (Kind.HALFCUBE, 4)
            assert set(facets(b)) <= spec.faces

    def test_bad_range(self, tables):
        with pytest.raises(BadRange):
            build_subcomplex(5, 5, tables(5))
        with pytest.raises(BadRange):
            build_subcomplex(5, 2, tables(5))

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_unmatched_census(self, tables, matchings, n):
        t = tables(n)
        for k in range(3, n):
            spec = build_subcomplex(n, k, t, matchings(n))
            u = morse_counts(spec.pairing, t, spec.faces)
            assert u == {k - 1: betti_power(n, k)}


class TestBasisFaces:
    @pytest.mark.parametrize("n,k", [(4, 3), (5, 3), (5, 4), (6, 3), (6, 4), (6, 5)])
    def test_count_matches_closed_form(self, tables, n, k):
        assert len(basis_faces(n, k, tables(n))) == betti_power(n, k)

    def test_4_3_is_seven(self, tables):
        assert len(basis_faces(4, 3, tables(4))) == 7

    def test_tail_is_star_then_zeros(self, tables):
        for f in basis_faces(5, 3, tables(5)):
            tail = f[f.rfind(STAR):]
            assert tail[0] == STAR
            assert set(tail[1:]) <= {"0"}

    @pytest.mark.parametrize("n,k", [(4, 3), (5, 3), (5, 4), (6, 4)])
    def test_equals_external_partner_set(self, tables, matchings, n, k):
        spec = build_subcomplex(n, k, tables(n), matchings(n))
        assert basis_faces(n, k, tables(n)) == spec.external


class TestHomologyBasis:
    def test_chains_are_cycles(self, tables, complexes):
        cx = complexes(4)
        hb = homology_basis(4, 3, tables(4), cx)
        for ch in hb.chains:
            assert cx.apply(ch).is_zero()

    def test_5_3_has_31_chains(self, tables, complexes):
        hb = homology_basis(5, 3, tables(5), complexes(5))
        assert len(hb.chains) == 31

    def test_support_in_facets_of_bface(self, tables, complexes):
        t = tables(4)
        hb = homology_basis(4, 3, t, complexes(4))
        cells = t.faces(2)
        for b, ch in zip(hb.faces, hb.chains):
            support = {cells[i] for i in ch.coeffs}
            assert support == set(facets(b))

    def test_jsonl_format(self, tables, complexes):
        hb = homology_basis(4, 3, tables(4), complexes(4))
        line = json.loads(hb.jsonl_lines(tables(4))[0])
        assert set(line) == {"bface", "chain"}
        assert all(set(t) == {"face", "coeff"} for t in line["chain"])
        assert [l for l in hb.jsonl_lines(tables(4))] == sorted(
            hb.jsonl_lines(tables(4)), key=lambda s: json.loads(s)["bface"])
