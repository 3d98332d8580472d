import math
import os

import pytest

from braidcong.braid import BraidWord, compose, pure_generator
from braidcong.enumeration import rep_image
from braidcong.rep import in_congruence
from braidcong.tc import (
    Presentation,
    check_table,
    coset_enumerate,
    h_relations,
    pair_index,
    parse_presentation,
    presentation_G,
    presentation_H,
    presentation_S,
)


def test_presentation_examples():
    G = presentation_G(3, 3)
    assert G.gens == 2
    assert G.relators == ((1, 2, 1, -2, -1, -2), (1, 1, 1))
    S = presentation_S(3)
    assert S.relators == ((1, 1), (2, 2), (1, 2, 1, 2, 1, 2))
    H = presentation_H(3, 3)
    assert H.gens == 3 and H.names == ("a12", "a13", "a23")
    labels = [lab.split("[")[0] for lab, _ in h_relations(3, 3)]
    assert {"PR1", "PR2", "PR8", "PR9"} <= set(labels)
    assert "PR3" not in labels and "PR10" not in labels
    assert "PR3" in [lab for lab, _ in h_relations(3, 5)]
    assert "PR10" in [lab for lab, _ in h_relations(5, 3)]
    assert len(presentation_G(5, 5).relators) == len(presentation_G(5, 3).relators) + 2


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(2, ((1, 3),))
    with pytest.raises(ValueError):
        Presentation(2, ((0,),))
    P = Presentation(2, ((1, 2, -2, -1), (1, -1, 2)))
    assert P.relators == ((2,),)


def test_text_format_roundtrip():
    P = presentation_H(3, 3)
    Q = parse_presentation(P.to_text())
    assert Q.gens == P.gens and Q.relators == P.relators
    R = parse_presentation("# S3\ngens: 2\n1 1\n2, 2\n1 2 1 2 1 2\nsub: 1\n")
    assert R.subgroup == ((1,),)
    assert coset_enumerate(R).size == 3
    with pytest.raises(ValueError):
        parse_presentation("1 2\n")
    with pytest.raises(ValueError):
        parse_presentation("gens: 2\n1 x\n")


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symmetric(n):
    P = presentation_S(n)
    T = coset_enumerate(P)
    assert T.complete and T.size == math.factorial(n)
    assert check_table(P, T)


@pytest.mark.parametrize("n,p,order", [(3, 3, 24), (3, 5, 120), (3, 7, 336), (4, 3, 648)])
def test_G_orders(n, p, order):
    P = presentation_G(n, p)
    T = coset_enumerate(P)
    assert T.size == order == rep_image(n, p).order
    assert check_table(P, T)


@pytest.mark.parametrize("n,p,order", [(3, 3, 24), (3, 5, 120), (4, 3, 648)])
def test_H_orders(n, p, order):
    P = presentation_H(n, p)
    T = coset_enumerate(P)
    assert T.size == order
    assert check_table(P, T)


def test_H_relators_map_into_congruence_subgroup():
    # substituting a_ij -> pure_generator gives words in B_n[p]
    for n, p in ((3, 3), (4, 5), (5, 3)):
        idx = {g: pq for pq, g in pair_index(n).items()}
        for label, rel in h_relations(n, p):
            parts = []
            for x in rel:
                w = pure_generator(*idx[abs(x)], n)
                parts.append(w if x > 0 else w ** -1)
            w = compose(*parts) if parts else BraidWord(n, ())
            assert in_congruence(w, p), label


def test_subgroup_index():
    # <s1> has index 3 in S_3; <s1, s2> is everything
    P = presentation_S(3)
    assert coset_enumerate(Presentation(2, P.relators, ((1,),))).size == 3
    assert coset_enumerate(Presentation(2, P.relators, ((1,), (2,)))).size == 1


def test_limit_reported():
    T = coset_enumerate(presentation_S(5), max_cosets=20)
    assert T.status == "limit-exceeded" and not T.complete
    assert T.to_report()["index"] is None
    assert not check_table(presentation_S(5), T)
    with pytest.raises(ValueError):
        coset_enumerate(presentation_S(3), max_cosets=0)


def test_deterministic():
    a = coset_enumerate(presentation_G(4, 3))
    b = coset_enumerate(presentation_G(4, 3))
    assert a.table == b.table and a.defined == b.defined


def test_coset_action_matches_matrix_group():
    # the coset action of G(3,3) is the regular representation of a group of order 24
    T = coset_enumerate(presentation_G(3, 3))
    perms = T.permutations()
    seen, frontier = {tuple(range(T.size))}, [tuple(range(T.size))]
    while frontier:
        new = []
        for q in frontier:
            for g in perms:
                r = tuple(g[q[i]] for i in range(T.size))
                if r not in seen:
                    seen.add(r)
                    new.append(r)
        frontier = new
    assert len(seen) == 24


def test_infinite_group_hits_limit():
    # Z^2 is infinite
    P = Presentation(2, ((1, 2, -1, -2),))
    assert coset_enumerate(P, max_cosets=2000).status == "limit-exceeded"


@pytest.mark.skipif(not os.environ.get("BRAIDCONG_FULL"), reason="about 30s; set BRAIDCONG_FULL=1")
def test_rank_four_orders():
    for P in (presentation_G(5, 3), presentation_H(5, 3)):
        T = coset_enumerate(P)
        assert T.size == 51840
