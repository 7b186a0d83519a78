import random

import pytest
from hypothesis import given, settings, strategies as st

from spin_twist.dynkin_catalog import CATALOG, build_gabrielov, frame_vectors
from spin_twist.exact_lattice import inner_product
from spin_twist.mutation import (
    BraidWord,
    BraidWordError,
    apply_braid_word,
    mutate_alpha,
    mutate_beta,
    parse_braid_word,
    random_braid_word,
)
from spin_twist.picard_lefschetz import SphereSeq, compose, is_homologically_trivial
from spin_twist.spin_number import spin_number

LATTICES = [build_gabrielov(e.diagram) for e in CATALOG]


def vecs(seq):
    return [c.vec for c in seq.classes]


def e(n, *idx):
    return tuple(int(i in idx) for i in range(n))


@st.composite
def subsequences(draw, min_len=2):
    """A window of a mutated catalog configuration."""
    k = draw(st.integers(0, len(CATALOG) - 1))
    L = LATTICES[k]
    rng = random.Random(draw(st.integers(0, 2**32)))
    full = SphereSeq.basis(L, 2).expanded()
    full = apply_braid_word(full, random_braid_word(rng, len(full), 6))
    start = draw(st.integers(0, len(full.classes) - min_len))
    stop = draw(st.integers(start + min_len, min(len(full.classes), start + 8)))
    return SphereSeq(L, full.classes[start:stop])


def test_alpha_beta_examples(e12):
    L, _ = e12
    # e2 and e3 are adjacent on the second arm: pairing 1
    seq = SphereSeq(L, (e(12, 1), e(12, 2)))
    assert vecs(mutate_alpha(seq, 1)) == [e(12, 1, 2), e(12, 1)]
    assert vecs(mutate_beta(seq, 1)) == [e(12, 2), e(12, 1, 2)]


def test_orthogonal_pair_swaps(e12):
    L, _ = e12
    seq = SphereSeq(L, (e(12, 1), e(12, 5)))
    assert vecs(mutate_alpha(seq, 1)) == [e(12, 5), e(12, 1)]
    assert vecs(mutate_beta(seq, 1)) == [e(12, 5), e(12, 1)]


def test_index_errors(e12):
    L, _ = e12
    seq = SphereSeq.basis(L)
    for j in (0, 12, 13):
        with pytest.raises(BraidWordError, match="out of range"):
            mutate_alpha(seq, j)
    with pytest.raises(BraidWordError, match="repeat"):
        mutate_alpha(SphereSeq.basis(L, 2), 1)


def test_parse_braid_word():
    w = parse_braid_word("a3 b1  a2")
    assert w.letters == ((3, 1), (1, -1), (2, 1))
    assert str(w) == "a3 b1 a2"
    assert parse_braid_word("") == BraidWord()
    for bad in ("c1", "a", "a-1", "a0", "A1"):
        with pytest.raises(BraidWordError):
            parse_braid_word(bad)


def test_empty_and_inverse_words(e12):
    L, _ = e12
    seq = SphereSeq.basis(L)
    assert apply_braid_word(seq, BraidWord()) == seq
    assert apply_braid_word(seq, parse_braid_word("a1 b1")) == seq
    assert apply_braid_word(seq, parse_braid_word("b7 a7 a3 b3")) == seq


@settings(max_examples=100, deadline=None)
@given(subsequences(), st.data())
def test_alpha_beta_inverse(seq, data):
    j = data.draw(st.integers(1, len(seq.classes) - 1))
    assert mutate_beta(mutate_alpha(seq, j), j) == seq
    assert mutate_alpha(mutate_beta(seq, j), j) == seq


@settings(max_examples=100, deadline=None)
@given(subsequences(min_len=4), st.data())
def test_far_commutation(seq, data):
    n = len(seq.classes)
    i = data.draw(st.integers(1, n - 3))
    j = data.draw(st.integers(i + 2, n - 1))
    assert mutate_alpha(mutate_alpha(seq, i), j) == mutate_alpha(mutate_alpha(seq, j), i)


@settings(max_examples=100, deadline=None)
@given(subsequences(min_len=3), st.data())
def test_braid_relation(seq, data):
    j = data.draw(st.integers(1, len(seq.classes) - 2))
    w1 = BraidWord(((j, 1), (j + 1, 1), (j, 1)))
    w2 = BraidWord(((j + 1, 1), (j, 1), (j + 1, 1)))
    assert apply_braid_word(seq, w1) == apply_braid_word(seq, w2)


@settings(max_examples=100, deadline=None)
@given(subsequences(), st.integers(0, 2**32))
def test_mutation_preserves_product_and_squares(seq, seed):
    w = random_braid_word(random.Random(seed), len(seq.classes), 10)
    out = apply_braid_word(seq, w)
    assert compose(out) == compose(seq)
    L = seq.lattice
    assert all(inner_product(L, c.vec, c.vec) == -2 for c in out.classes)


@pytest.mark.parametrize("idx", [0, 6, 13], ids=lambda i: CATALOG[i].name)
def test_mutation_keeps_triviality_and_winding(idx):
    entry = CATALOG[idx]
    L = LATTICES[idx]
    f = frame_vectors(entry.diagram)
    seq = SphereSeq.basis(L, entry.monodromy_order).expanded()
    rng = random.Random(idx)
    for _ in range(3):
        out = apply_braid_word(seq, random_braid_word(rng, len(seq.classes), 20))
        assert is_homologically_trivial(out)
        assert spin_number(out, f).winding == -1
