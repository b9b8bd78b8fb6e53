import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opkoszul import trees
from opkoszul.errors import CapExceededError
from opkoszul.permutations import S3, all_perms, compose
from opkoszul.trees import (
    TreeMonomial,
    act,
    count_monomials,
    enumerate_monomials,
    graft,
    mirror,
    occurrences,
)

M = TreeMonomial.from_string


def test_from_string_round_trip():
    for text in ["a", "(ab)c", "a(cb)", "((ab)c)d", "(ab)(cd)", "a((cb)d)"]:
        assert str(M(text)) == text


def test_counts_match_closed_form():
    for n in range(1, 6):
        ms = list(enumerate_monomials(n))
        assert len(ms) == count_monomials(n)
        assert len(set(ms)) == len(ms)


def test_arity_5_count_is_1680():
    assert count_monomials(5) == 1680
    assert sum(1 for _ in enumerate_monomials(5)) == 1680


def test_enumeration_is_sorted_by_canonical_key():
    for n in (3, 4):
        keys = [m.key for m in enumerate_monomials(n)]
        assert keys == sorted(keys)


def test_cap_exceeded():
    with pytest.raises(CapExceededError):
        list(enumerate_monomials(4, cap=3))


def test_label_word_must_be_permutation():
    with pytest.raises(ValueError):
        TreeMonomial(((1, 1), 2))


# --- the symmetric-group action, pinned against the arity-3 action graph ---

T12 = (2, 1, 3)
T23 = (1, 3, 2)
T13 = (3, 2, 1)
C123 = (2, 3, 1)  # 1 -> 2 -> 3 -> 1


def test_action_black_edges_transposition_12():
    assert act(M("(ab)c"), T12) == M("(ba)c")
    assert act(M("a(bc)"), T12) == M("b(ac)")


def test_action_red_edges_transposition_23():
    assert act(M("(ab)c"), T23) == M("(ac)b")
    assert act(M("(ca)b"), T23) == M("(ba)c")
    assert act(M("a(bc)"), T23) == M("a(cb)")


def test_action_blue_edges_transposition_13():
    assert act(M("(ab)c"), T13) == M("(cb)a")
    assert act(M("(ac)b"), T13) == M("(ca)b")
    assert act(M("a(bc)"), T13) == M("c(ba)")


def test_action_green_triangle():
    triangle = {M("(ab)c"), M("(ca)b"), M("(bc)a")}
    m = M("(ab)c")
    for sigma in (C123, (3, 1, 2)):
        assert act(m, sigma) in triangle


def test_identity_action():
    for m in enumerate_monomials(3):
        assert act(m, (1, 2, 3)) == m


def test_action_degree_mismatch():
    with pytest.raises(ValueError):
        act(M("(ab)c"), (2, 1))


def test_two_orbits_of_size_six_exchanged_by_mirror():
    orbits = set()
    for m in enumerate_monomials(3):
        orbits.add(trees.s3_orbit(m))
    assert len(orbits) == 2
    assert all(len(o) == 6 for o in orbits)
    a, b = orbits
    assert frozenset(mirror(m) for m in a) == b


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_action_is_a_group_action(data):
    n = data.draw(st.integers(min_value=2, max_value=5))
    ms = list(enumerate_monomials(n))
    m = data.draw(st.sampled_from(ms))
    perms = all_perms(n)
    s = data.draw(st.sampled_from(perms))
    t = data.draw(st.sampled_from(perms))
    assert act(act(m, s), t) == act(m, compose(t, s))


def test_mirror_is_involution_and_commutes_with_action():
    for n in (2, 3, 4):
        perms = all_perms(n)
        for m in enumerate_monomials(n):
            assert mirror(mirror(m)) == m
            for s in (perms[0], perms[-1]):
                assert mirror(act(m, s)) == act(mirror(m), s)


def test_mirror_examples():
    assert mirror(trees.LEAF) == trees.LEAF
    assert mirror(M("(ab)c")) == M("c(ba)")
    assert mirror(trees.X) == trees.Y


# --- grafting ---


def test_graft_left_and_right_combs():
    assert graft(trees.X, 1, trees.X) == M("(ab)c")
    assert graft(trees.X, 2, trees.X) == M("a(bc)")


def test_graft_unit_laws():
    for m in enumerate_monomials(3):
        for i in (1, 2, 3):
            assert graft(m, i, trees.LEAF) == m
        assert graft(trees.LEAF, 1, m) == m


def test_graft_out_of_range():
    with pytest.raises(ValueError):
        graft(trees.X, 3, trees.X)


def test_graft_relabels_like_partial_composition():
    m = graft(M("(ab)c"), 2, trees.X)
    # substituting into the leaf labeled 2 widens labels 3.. by one
    assert m == M("(a(bc))d")


def test_graft_associativity_on_samples():
    import random

    rng = random.Random(7)
    pool2 = list(enumerate_monomials(2))
    pool3 = list(enumerate_monomials(3))
    for _ in range(40):
        f = rng.choice(pool3)
        g = rng.choice(pool2)
        h = rng.choice(pool2)
        i = rng.randint(1, 3)
        j = rng.randint(1, 3)
        if j < i:
            # disjoint slots commute after reindexing
            lhs = graft(graft(f, i, g), j, h)
            rhs = graft(graft(f, j, h), i + h.arity - 1, g)
            assert lhs == rhs
        else:
            # nested: substitute into the grafted factor
            k = rng.randint(1, g.arity)
            lhs = graft(graft(f, i, g), i + k - 1, h)
            rhs = graft(f, i, graft(g, k, h))
            assert lhs == rhs


# --- occurrences ---


def test_single_occurrence_of_left_comb():
    occs = occurrences(M("(ab)c"))
    assert len(occs) == 1
    assert occs[0].frame == M("(ab)c")


def test_occurrence_counts():
    assert len(occurrences(M("((ab)c)d"))) == 2
    for m in itertools.islice(enumerate_monomials(6), 0, 500, 37):
        assert len(occurrences(m)) == 4
    assert occurrences(trees.X) == []
    assert occurrences(trees.LEAF) == []


def test_occurrence_frames_are_arity_3_monomials():
    for m in enumerate_monomials(4):
        for occ in occurrences(m):
            assert occ.frame in trees.MAG3_INDEX


def test_reassembly_round_trip():
    for n in (3, 4, 5):
        for m in enumerate_monomials(n):
            for occ in occurrences(m):
                assert occ.reassemble(occ.frame) == m


def test_reassembly_of_other_frame():
    m = M("((ab)c)d")
    occ = occurrences(m)[0]  # edge at the root, frame (ab)c on slots (ab), c, d
    assert occ.frame == M("(ab)c")
    assert occ.reassemble(M("(ca)b")) == M("(d(ab))c")
