import itertools

import pytest

from cluster_dual import cartan as weyl
from cluster_dual import words
from cluster_dual.errors import InapplicableMove, NoPath, PreconditionFailed
from cluster_dual.words import DoubleWord, Move

from conftest import W


def test_classify_examples():
    a1 = weyl.build_cartan("A1")
    kind, u, v = words.classify(W("-1,1"), a1)
    assert kind == "reduced" and u.length() == 1 and v.length() == 1
    kind, u, v = words.classify(W("1,1"), a1)
    assert kind == "not_reduced" and u.is_identity()
    a2 = weyl.build_cartan("A2")
    kind, u, v = words.classify(W("-1,2,1"), a2)
    assert kind == "reduced" and u == weyl.simple(a2, 1) and v.length() == 2


def test_bar_is_involution():
    w = W("1,-2,1")
    assert w.bar().bar() == w


def test_apply_move_examples():
    a1 = weyl.build_cartan("A1")
    assert words.apply_move(W("-1,1"), Move("mixed2", 0, 2), a1) == W("1,-1")
    a2 = weyl.build_cartan("A2")
    assert words.apply_move(W("1,2,1"), Move("positive_d", 0, 3), a2) == W("2,1,2")
    assert words.apply_move(W("-1,1"), Move("tau_right", 1), a1) == W("-1,-1")
    with pytest.raises(InapplicableMove):
        words.apply_move(W("1,1"), Move("mixed2", 0, 2), a1)
    with pytest.raises(InapplicableMove):
        words.apply_move(W("1,2"), Move("positive_d", 0, 3), a2)


def test_dual_move_examples():
    a1 = weyl.build_cartan("A1")
    assert words.apply_move(W("-1,1"), Move("dual", 0), a1) == W("1,-1")
    assert words.apply_move(W("1,-1"), Move("dual", 0), a1) == W("-1,1")
    a2 = weyl.build_cartan("A2")
    assert words.apply_move(W("-1,1,2,1"), Move("dual", 0), a2) == W("2,-1,-2,-1")
    # the dual move pairs off as an involution between the two shapes
    for s in ("-1,1,2,1", "-2,2,1,2", "-2,-1,1,2,1"):
        w = W(s)
        mv = Move("dual", len(w) - 1 - words.dual_block_length(a2))
        image = words.apply_move(w, mv, a2)
        again = words.apply_move(image, Move("dual", len(image) - 4), a2)
        assert again == w


def test_move_path_examples():
    a1 = weyl.build_cartan("A1")
    path = words.move_path(W("-1,1"), W("1,-1"), a1, ("mixed2",))
    assert len(path) == 1 and path[0].kind == "mixed2"
    a2 = weyl.build_cartan("A2")
    path = words.move_path(W("1,2,1"), W("2,1,2"), a2, ("positive_d",))
    assert len(path) == 1 and path[0].order == 3
    with pytest.raises(NoPath):
        words.move_path(W("-1,1"), W("1,-1"), a1, ("positive_d",))


def test_move_reversibility(rng):
    a2 = weyl.build_cartan("A2")
    pool = [W(s) for s in ("1,2,1", "-1,2,1", "1,-2,1,2", "-1,-2,-1,1,2,1")]
    for w in pool:
        for mv in words.applicable_moves(w, a2):
            image = words.apply_move(w, mv, a2)
            undo = [m for m in words.applicable_moves(image, a2)
                    if words.apply_move(image, m, a2) == w]
            assert undo, (w, mv)


def _all_double_reduced(u, v, cdata):
    out = set()
    for ru in weyl.reduced_words(u):
        for rv in weyl.reduced_words(v):
            neg = tuple(-x for x in ru)
            for pattern in itertools.combinations(range(len(ru) + len(rv)), len(ru)):
                word = []
                i = j = 0
                for pos in range(len(ru) + len(rv)):
                    if pos in pattern:
                        word.append(neg[i])
                        i += 1
                    else:
                        word.append(rv[j])
                        j += 1
                out.add(DoubleWord(tuple(word)))
    return out


def test_generalized_dmoves_connect_classes_exhaustively():
    a2 = weyl.build_cartan("A2")
    elements = list(weyl.weyl_iter(a2))
    for u in elements:
        for v in elements:
            family = _all_double_reduced(u, v, a2)
            assert len(family) <= 80
            start = next(iter(family))
            seen = {start}
            frontier = [start]
            while frontier:
                cur = frontier.pop()
                for mv in words.applicable_moves(cur, a2, words.D_KINDS):
                    nxt = words.apply_move(cur, mv, a2)
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
            assert seen == family, (u.reduced_word(), v.reduced_word())


def test_section_and_square_words():
    a2 = weyl.build_cartan("A2")
    assert words.square_word(W("1,2"), a2) == W("-2,-1")
    a1 = weyl.build_cartan("A1")
    assert words.square_word(W("1"), a1) == W("-1")
    w = W("1,2,1")
    # sections interpolate between the word and its square
    assert words.section_word(w, 4, a2) == w
    assert words.section_word(w, 1, a2) == W("-1,-2,-1")
    assert words.section_word(w, 3, a2) == W("-1,1,2")
    with pytest.raises(PreconditionFailed):
        words.section_word(W("1,-2"), 1, a2)


def test_star_word():
    a2 = weyl.build_cartan("A2")
    assert words.star_word(W("1"), a2) == W("-2")
    assert words.star_word(W("1,-2"), a2) == W("-2,1")
    w = W("1,2,-1")
    assert words.star_word(words.star_word(w, a2), a2) == w


def test_trivial_vword_construction():
    a2 = weyl.build_cartan("A2")
    w0 = weyl.longest_element(a2)
    e = weyl.identity_element(a2)
    word = words.trivial_vword(a2, e, e, w0)
    assert word.positive_subword == (1, 2, 1) * 2
    with pytest.raises(PreconditionFailed):
        words.trivial_vword(a2, w0, e, weyl.simple(a2, 1))


def test_membership_examples():
    a1 = weyl.build_cartan("A1")
    s1 = weyl.simple(a1, 1)
    witness = words.membership(W("-1,1"), a1, s1, w1=s1)
    assert witness is not None and witness.w2.is_identity()
    witness = words.membership(W("1,1"), a1, s1)
    assert witness is not None and witness.w1.is_identity()
    a2 = weyl.build_cartan("A2")
    assert words.membership(W("1,1"), a2, weyl.longest_element(a2)) is None


def test_membership_witness_chain_applies():
    a2 = weyl.build_cartan("A2")
    w0 = weyl.longest_element(a2)
    scrambled = W("1,-1,2,-2,1,-1")
    witness = words.membership(scrambled, a2, w0)
    assert witness is not None
    cur = scrambled
    for mv in witness.chain:
        cur = words.apply_move(cur, mv, a2)
    assert cur == witness.trivial_word
    assert words.trivial_decompositions(cur, a2, w0)


def test_dual_move_classes():
    a2 = weyl.build_cartan("A2")
    src_w1, tgt_w1 = words.dual_move_classes(W("-1,1,2,1"), a2)
    assert src_w1 == weyl.simple(a2, 2)  # the star of the moving letter
    assert tgt_w1.is_identity()
    back_src, back_tgt = words.dual_move_classes(W("2,-1,-2,-1"), a2)
    assert back_src == tgt_w1 and back_tgt == src_w1
