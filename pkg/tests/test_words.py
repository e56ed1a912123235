import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hirzebruch.words import (CUSP_INDEX, GEN_MATRICES, IDENTITY, Mat2Z, NTTag, S, T, TS,
                              GenWord, WordSyntaxError, abelianize_mod5, conjugated_square,
                              cyclic_reduce, eval_psl2, eval_sl2, free_conjugate, gen,
                              in_pi1Cu, invert, nt_classify, parse, pi1Cu_generating_set,
                              pi1Cu_rank, read_corpus, reduce)

from .conftest import gen_words


def test_parse_examples():
    assert parse("Tinf^2 T0").letters == (("Tinf", 2), ("T0", 1))
    assert parse("T1 T1^-1").letters == ()
    assert parse("T1 T0 Tinf").letters == (("T1", 1), ("T0", 1), ("Tinf", 1))


def test_parse_shorthand():
    assert parse("[T1,T0]") == parse("T1 T0 T1^-1 T0^-1")
    assert parse("(Tinf T0)^2") == parse("Tinf T0 Tinf T0")
    assert parse("[T1,T0]^2") == parse("[T1,T0] [T1,T0]")
    assert parse("(T0)^-3") == gen("T0", -3)


@pytest.mark.parametrize("text,pos", [("Tinf T2", 5), ("Tinf^", 4), ("[T0,T1", 6),
                                      ("Tinf^0", 0), ("(T0", 3), ("x", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(WordSyntaxError) as err:
        parse(text)
    assert err.value.position == pos


def test_plain_grammar_rejects_shorthand():
    with pytest.raises(WordSyntaxError):
        parse("[T1,T0]", shorthand=False)


def test_eval_examples():
    assert eval_psl2(parse("Tinf T0 T1")) == IDENTITY
    assert eval_sl2(parse("Tinf T0 T1")) == Mat2Z(-1, 0, 0, -1)
    assert eval_psl2(parse("T1 T0 Tinf")) == Mat2Z(5, 8, 8, 13)
    assert eval_psl2(GenWord()) == IDENTITY


def test_displayed_identities():
    assert S == Mat2Z(0, -1, 1, 0) and T == Mat2Z(1, 1, 0, 1)
    for g, i in CUSP_INDEX.items():
        assert conjugated_square(i) == GEN_MATRICES[g]


def test_nt_examples():
    assert nt_classify(gen("Tinf")).tag is NTTag.REDUCIBLE
    assert nt_classify(gen("Tinf")).trace == 2
    c = nt_classify(parse("T1 T0 Tinf"))
    assert c.tag is NTTag.PSEUDO_ANOSOV and c.trace == 18
    assert nt_classify(GenWord()).tag is NTTag.IDENTITY


def test_reduce_examples():
    assert reduce(gen("T1")).letters == (("T0", -1), ("Tinf", -1))
    assert cyclic_reduce(parse("Tinf T0 Tinf^-1")).letters == (("T0", 1),)
    assert invert(parse("Tinf T0")) == parse("T0^-1 Tinf^-1")


def test_free_conjugate_examples():
    assert free_conjugate(parse("Tinf T0"), parse("T0 Tinf"))
    assert not free_conjugate(gen("Tinf"), gen("T0"))


def test_abelianization_examples():
    assert abelianize_mod5(gen("T1")) == (4, 4)
    assert abelianize_mod5(gen("Tinf", 5)) == (0, 0)
    assert abelianize_mod5(parse("T1 T0 Tinf")) == (0, 0)


def test_membership_examples():
    assert in_pi1Cu(gen("Tinf", 5))
    assert not in_pi1Cu(gen("Tinf"))
    assert in_pi1Cu(parse("[T1,T0]"))


def test_generating_set_and_rank():
    gens = pi1Cu_generating_set()
    assert len(gens) == 27
    assert all(in_pi1Cu(g) for g in gens)
    assert pi1Cu_rank() == 26


def _fold(generators):
    """Stallings folding of the bouquet of reduced generator loops; returns (vertices, edges)."""
    edges = set()
    count = [1]

    def new():
        count[0] += 1
        return count[0] - 1

    for w in generators:
        letters = []
        for g, e in reduce(w).letters:
            letters += [(g, 1 if e > 0 else -1)] * abs(e)
        v = 0
        for i, (g, s) in enumerate(letters):
            u = 0 if i == len(letters) - 1 else new()
            edges.add((v, g, u) if s > 0 else (u, g, v))
            v = u
    parent = list(range(count[0]))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        edges = {(find(a), g, find(b)) for a, g, b in edges}
        out, inc = {}, {}
        for a, g, b in sorted(edges):
            for key, other, table in (((a, g), b, out), ((b, g), a, inc)):
                if key in table and find(table[key]) != find(other):
                    parent[find(other)] = find(table[key])
                    changed = True
                table.setdefault(key, other)
    verts = {find(v) for v in range(count[0])}
    return verts, edges


def test_generating_set_has_index_25_by_folding():
    verts, edges = _fold(pi1Cu_generating_set())
    # a finite-index subgroup folds to a complete covering graph: 2 out, 2 in at each vertex
    assert len(verts) == 25
    assert len(edges) == 50
    rank = len(edges) - len(verts) + 1
    assert rank == pi1Cu_rank() == 2 * 6 + 15 - 1


@given(gen_words, gen_words)
def test_eval_homomorphism(w1, w2):
    assert eval_psl2(w1 * w2).psl_equal(eval_psl2(w1) * eval_psl2(w2))


@given(gen_words)
def test_image_in_gamma2_and_trace_positive(w):
    m = eval_psl2(w)
    assert m.a * m.d - m.b * m.c == 1
    assert m.a % 2 == 1 and m.d % 2 == 1 and m.b % 2 == 0 and m.c % 2 == 0
    assert m.trace > 0


@given(gen_words, gen_words)
def test_nt_class_conjugation_invariant(w, g):
    assert nt_classify(w) == nt_classify(g * w * invert(g))


@given(gen_words)
def test_double_inverse(w):
    assert reduce(invert(invert(w))) == reduce(w)


@given(gen_words, gen_words, gen_words)
def test_free_conjugacy_equivalence(a, g, h):
    b = g * a * invert(g)
    c = h * b * invert(h)
    assert free_conjugate(a, a)
    assert free_conjugate(a, b) and free_conjugate(b, a)
    assert free_conjugate(a, c)


@given(gen_words, gen_words)
def test_abelianization_additive(w1, w2):
    x1, y1 = abelianize_mod5(w1)
    x2, y2 = abelianize_mod5(w2)
    assert abelianize_mod5(w1 * w2) == ((x1 + x2) % 5, (y1 + y2) % 5)


@given(gen_words, gen_words)
def test_free_conjugacy_matches_matrix_invariant(w1, w2):
    # conjugate words have conjugate matrices, hence equal traces
    if free_conjugate(w1, w2):
        assert eval_psl2(w1).trace == eval_psl2(w2).trace


@given(gen_words)
def test_parse_roundtrip(w):
    assert parse(str(w)) == w


def test_corpus_reader():
    lines = ["# header\n", "Tinf^5\n", "\n", "T1 T0 Tinf  # the commutator\n"]
    assert read_corpus(lines) == [(2, "Tinf^5"), (4, "T1 T0 Tinf")]
