import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from twistlab.catalog import get_scenario
from twistlab.errors import AtlasError, ParseError, PreconditionError, UnsupportedInput
from twistlab.homology import HomologyClass, intersection_pairing
from twistlab.words import (
    Alphabet,
    Atlas,
    Curve,
    CyclicWord,
    abelianize,
    busted_dichotomy,
    check_admissible,
    dehn_essential_test,
    dehn_reduce,
    disc_bound_test,
    homotopy_status,
    is_disc_busting,
    least_rotation,
    parse_word,
    reduce,
)

W = CyclicWord.parse
NAMES = {1: "x1", 2: "x2", 3: "x3"}

int_words = st.lists(st.sampled_from([1, 2, 3, -1, -2, -3]), max_size=14)


def from_ints(w, names=NAMES):
    return CyclicWord(tuple((names[abs(x)], 1 if x > 0 else -1) for x in w))


# Parsing and printing.

def test_parse_and_print():
    w = W("x1 x2' x1")
    assert w.letters == (("x1", 1), ("x2", -1), ("x1", 1))
    assert str(w) == "x1 x2' x1"
    assert str(W("")) == ""


@pytest.mark.parametrize("bad", ["x1''", "'", "x1 ''"])
def test_parse_rejects_bad_tokens(bad):
    with pytest.raises(ParseError):
        W(bad)


@given(int_words)
def test_print_parse_round_trip(w):
    cw = from_ints(w)
    assert parse_word(str(cw)) == cw


# Reduction.

def test_reduce_examples():
    assert reduce(W("x1 x1'")) == W("")
    assert reduce(W("x2' x1 x2")) == W("x1")
    assert reduce(W("x1 x2 x2' x1")) == W("x1 x1")


def test_reduce_canonical_rotation():
    assert reduce(W("x2 x1")) == reduce(W("x1 x2"))
    assert str(reduce(W("x2 x1"))) == "x1 x2"


@given(int_words)
def test_reduce_matches_stack_oracle(w):
    expected = oracles.stack_reduce(w)
    got = reduce(from_ints(w))
    assert got.is_reduced
    assert len(got) == len(expected)
    assert got == reduce(from_ints(expected))


@given(int_words, st.integers(0, 2**32 - 1))
def test_reduce_independent_of_cancellation_order(w, seed):
    shuffled = oracles.random_order_reduce(w, random.Random(seed))
    assert reduce(from_ints(shuffled)) == reduce(from_ints(w))


@given(int_words, st.integers(0, 20))
def test_reduce_is_rotation_invariant_and_idempotent(w, k):
    r = reduce(from_ints(w))
    if w:
        k %= len(w)
        assert reduce(from_ints(w[k:] + w[:k])) == r
    assert reduce(r) == r


@given(int_words)
def test_least_rotation_is_a_rotation(w):
    letters = from_ints(w).letters
    rot = least_rotation(letters)
    assert len(rot) == len(letters)
    assert any(rot == letters[i:] + letters[:i] for i in range(max(len(letters), 1)))


@given(int_words)
def test_inverse_word_reduces_with_word(w):
    cw = from_ints(w)
    assert reduce(CyclicWord(cw.letters + cw.inverse().letters)) == W("")


# Surface group.

def test_abelianize():
    assert abelianize(W("a1 b1 a1' b1'"), 2) == HomologyClass(2, (0, 0, 0, 0))
    assert abelianize(W("a2 a2 b1'"), 2) == HomologyClass(2, (0, -1, 2, 0))
    with pytest.raises(UnsupportedInput):
        abelianize(W("a3"), 2)


def test_dehn_examples():
    assert dehn_essential_test(2, W("a1 b1 a1' b1' a2 b2 a2' b2'")) == "Trivial"
    assert dehn_essential_test(2, W("a1")) == "Essential"
    assert dehn_essential_test(2, W("a1 b1 a1' b1'")) == "Essential"


def test_dehn_genus_one_unsupported():
    with pytest.raises(UnsupportedInput):
        dehn_essential_test(1, W("a1"))


def test_dehn_rejects_foreign_letters():
    with pytest.raises(UnsupportedInput):
        dehn_essential_test(2, W("x1"))


def test_separating_commutator_is_not_trivialized_by_the_oracle():
    triv = oracles.trivial_words_genus2()
    assert oracles.canon([1, 2, -1, -2]) not in triv
    assert oracles.canon(oracles.surface_relator(2)) in triv


@given(st.lists(st.sampled_from([1, 2, 3, 4, -1, -2, -3, -4]), max_size=8))
def test_dehn_matches_oracle_on_random_words(w):
    red = oracles.stack_reduce(w)
    expected = "Trivial" if oracles.canon(red) in oracles.trivial_words_genus2() else "Essential"
    assert dehn_essential_test(2, from_ints(w, oracles.genus2_names())) == expected


@given(st.lists(st.sampled_from([1, 2, 3, 4, -1, -2, -3, -4]), max_size=10), st.integers(0, 7))
def test_dehn_kills_inserted_relators(w, pos):
    rel = oracles.surface_relator(2)
    pos %= len(w) + 1
    names = oracles.genus2_names()
    plain = dehn_essential_test(2, from_ints(w, names))
    padded = dehn_essential_test(2, from_ints(w[:pos] + rel + w[pos:], names))
    assert plain == padded


@given(st.lists(st.sampled_from([1, 2, 3, 4, -1, -2, -3, -4]), max_size=10))
def test_dehn_reduced_word_is_stable(w):
    r = dehn_reduce(2, from_ints(w, oracles.genus2_names()))
    assert dehn_reduce(2, r) == r


def test_homotopy_status():
    def c(coords, pi1=None):
        h = HomologyClass(len(coords) // 2, coords)
        return Curve("c", W(""), h, h.is_zero(), None if pi1 is None else W(pi1))

    assert homotopy_status(c((1, 0))) == "essential"
    assert homotopy_status(c((0, 0))) == "trivial"
    assert homotopy_status(c((0, 0, 0, 0))) == "unknown"
    assert homotopy_status(c((0, 0, 0, 0), "a1 b1 a1' b1'")) == "essential"
    assert homotopy_status(c((0, 0, 0, 0), "b1 b1'")) == "trivial"


def test_curve_validation():
    with pytest.raises(AtlasError):
        Curve("c", W(""), HomologyClass(1, (1, 0)), True)
    with pytest.raises(AtlasError):
        Curve("c", W(""), HomologyClass(1, (1, 0)), False, W("b1"))


# Disc tests on the trefoil scenario.

@pytest.fixture
def trefoil():
    return get_scenario("trefoil")


def _curve(name, word, coords):
    h = HomologyClass(len(coords) // 2, tuple(coords))
    return Curve(name, W(word), h, h.is_zero())


def test_disc_bound_examples(trefoil):
    x = trefoil.alphabet
    assert disc_bound_test(x, _curve("y", "", (0, 1, -1, 0)))
    assert not disc_bound_test(x, _curve("y", "x1", (1, 0, 0, 0)))
    assert disc_bound_test(x, _curve("y", "x1 x2 x2' x1'", (0, 0, 0, 0)))
    with pytest.raises(AtlasError):
        disc_bound_test(x, _curve("y", "x9", (1, 0, 0, 0)))


def test_knot_is_disc_busting_up_to_atlas(trefoil):
    v = is_disc_busting(trefoil.alphabet, trefoil.atlas.curve("K"), trefoil.atlas)
    assert v.kind == "DiscBustingUpToAtlas"


def test_meridian_pushoff_is_a_witness(trefoil):
    a = trefoil.atlas
    v = is_disc_busting(trefoil.alphabet, a.curve("a"), a)
    assert v.kind == "NotDiscBusting"
    assert a.geom(v.witness, "a") == 0
    assert disc_bound_test(trefoil.alphabet, a.curve(v.witness))


def test_degenerate_gamma(trefoil):
    assert is_disc_busting(trefoil.alphabet, trefoil.atlas.curve("L1"), trefoil.atlas).kind == "Degenerate"


def _atlas(curves, geom):
    alg = [[intersection_pairing(c.homology, d.homology) for d in curves] for c in curves]
    return Atlas(tuple(curves), geom, alg)


def test_check_admissible(trefoil):
    a = trefoil.atlas
    assert check_admissible(trefoil.alphabet, a.curve("K"), a)
    x = _curve("x", "", (1, 0))
    for geom, gamma_coords in ((2, (0, 2)), (4, (0, 0))):
        gamma = _curve("g", "x", gamma_coords)
        at = _atlas([x, gamma], [[0, geom], [geom, 0]])
        assert not check_admissible(Alphabet(("x",)), gamma, at)
    with pytest.raises(AtlasError):
        check_admissible(Alphabet(("zz",)), a.curve("K"), a)


def _twisted(k_word, witness_geom, extra_name="x1"):
    k_prime = _curve("K", k_word, (0, 0, 0, 0))
    w = _curve(extra_name, "", (0, 1, -1, 0))
    return _atlas([k_prime, w], [[0, witness_geom], [witness_geom, 0]])


def test_busted_dichotomy_case_a_when_z_bounds(trefoil):
    a, x = trefoil.atlas, trefoil.alphabet
    v = busted_dichotomy(x, a.curve("K"), a.curve("L1"), 3, a, _twisted("x1 x2 x1' x2'", 2))
    assert v.kind == "CaseA"


def test_busted_dichotomy_case_a_when_still_busting(trefoil):
    a, x = trefoil.atlas, trefoil.alphabet
    v = busted_dichotomy(x, a.curve("K"), a.curve("g(L1)"), 1, a, _twisted("x1 x2 x1' x2'", 2))
    assert v.kind == "CaseA"


def test_busted_dichotomy_case_b(trefoil):
    a, x = trefoil.atlas, trefoil.alphabet
    v = busted_dichotomy(x, a.curve("K"), a.curve("g(L1)"), 1, a, _twisted("x1 x2 x1' x2'", 0))
    assert v.kind == "CaseB"
    assert a.geom(v.witness, "g(L1)") == 1 and a.geom(v.witness, "K") == 2


def test_busted_dichotomy_inconsistent_atlas(trefoil):
    a, x = trefoil.atlas, trefoil.alphabet
    with pytest.raises(AtlasError):
        busted_dichotomy(x, a.curve("K"), a.curve("g(L1)"), 1, a, _twisted("x1 x2 x1' x2'", 0, "stray"))


def test_busted_dichotomy_preconditions(trefoil):
    a, x = trefoil.atlas, trefoil.alphabet
    tw = _twisted("x1 x2 x1' x2'", 2)
    with pytest.raises(PreconditionError):
        busted_dichotomy(x, a.curve("K"), a.curve("L1"), 0, a, tw)
    with pytest.raises(PreconditionError):
        busted_dichotomy(x, a.curve("K"), a.curve("a"), 1, a, tw)


def test_atlas_validation():
    c1 = _curve("c1", "", (1, 0))
    c2 = _curve("c2", "", (0, 1))
    with pytest.raises(AtlasError):
        Atlas((c1, c2), ((0, 1), (1, 0)), ((0, -1), (1, 0)))
    with pytest.raises(AtlasError):
        Atlas((c1, c2), ((0, 2), (2, 0)), ((0, 1), (-1, 0)))
    with pytest.raises(AtlasError):
        Atlas((c1, c1), ((0, 0), (0, 0)), ((0, 0), (0, 0)))
    at = Atlas((c1, c2), ((0, 1), (1, 0)), ((0, 1), (-1, 0)))
    assert at.alg("c2", "c1") == -1
    with pytest.raises(AtlasError):
        at.curve("nope")
