import pytest

from cluster_dual import cartan as weyl
from cluster_dual.errors import UnsupportedType


def test_build_cartan_examples():
    a1 = weyl.build_cartan("A1")
    assert a1.a == ((2,),) and a1.d == (1,)
    a2 = weyl.build_cartan("A2")
    assert a2.a == ((2, -1), (-1, 2)) and a2.m_order(1, 2) == 3
    g2 = weyl.build_cartan("G2")
    assert g2.a[0][1] * g2.a[1][0] == 3 and g2.m_order(1, 2) == 6
    b2 = weyl.build_cartan("B2")
    assert b2.m_order(1, 2) == 4
    with pytest.raises(UnsupportedType):
        weyl.build_cartan("H3")
    with pytest.raises(UnsupportedType):
        weyl.build_cartan("G5")


@pytest.mark.parametrize("label,n_roots", [("A1", 1), ("A2", 3), ("B2", 4),
                                           ("G2", 6), ("A3", 6)])
def test_longest_element_length_is_root_count(label, n_roots):
    cdata = weyl.build_cartan(label)
    w0 = weyl.longest_element(cdata)
    assert w0.length() == n_roots
    assert len(weyl.positive_roots(cdata)) == n_roots


def test_reduced_words_examples():
    a2 = weyl.build_cartan("A2")
    w = weyl.from_word(a2, (1, 2, 1))
    assert weyl.reduced_words(w) == {(1, 2, 1), (2, 1, 2)}
    assert weyl.reduced_words(weyl.identity_element(a2)) == {()}
    w0 = weyl.longest_element(a2)
    assert w0.length() == 3 and len(weyl.reduced_words(w0)) == 2
    # exhaustively: the full group has 6 elements
    assert sum(1 for _ in weyl.weyl_iter(a2)) == 6


def test_longest_element_of_subsets():
    a1 = weyl.build_cartan("A1")
    assert weyl.longest_element(a1, (1,)) == weyl.simple(a1, 1)
    a3 = weyl.build_cartan("A3")
    w = weyl.longest_element(a3, (1, 3))
    assert w == weyl.from_word(a3, (1, 3)) and w.length() == 2
    for j in (1, 3):
        assert j in [word[0] for word in weyl.reduced_words(w)]


def test_parabolic_longest_has_every_first_letter():
    a2 = weyl.build_cartan("A2")
    w0 = weyl.longest_element(a2)
    firsts = {word[0] for word in weyl.reduced_words(w0)}
    assert firsts == {1, 2}


def test_star_involution():
    assert weyl.star_involution(weyl.build_cartan("A1"))[1] == 1
    a2 = weyl.build_cartan("A2")
    assert weyl.star(a2, 1) == 2 and weyl.star(a2, 2) == 1
    d4 = weyl.build_cartan("D4")
    assert all(weyl.star(d4, i) == i for i in range(1, 5))
    for label in ("A2", "A3", "B2", "G2"):
        cdata = weyl.build_cartan(label)
        star = weyl.star_involution(cdata)
        assert all(star[star[i]] == i for i in range(1, cdata.rank + 1))


def test_star_element_involutive_exhaustive():
    for label in ("A2", "A3"):
        cdata = weyl.build_cartan(label)
        for w in weyl.weyl_iter(cdata):
            assert weyl.star_element(weyl.star_element(w)) == w


def test_weyl_action_examples():
    a1 = weyl.build_cartan("A1")
    s1 = weyl.simple(a1, 1)
    assert s1.act_on_root((1,)) == (-1,)
    a2 = weyl.build_cartan("A2")
    s1 = weyl.simple(a2, 1)
    # s1(omega1) = omega1 - alpha1 in weight coordinates
    assert s1.act_on_weight((1, 0)) == (-1, 1)
    assert s1.act_on_weight((0, 1)) == (0, 1)


def test_right_weak_order():
    a2 = weyl.build_cartan("A2")
    e = weyl.identity_element(a2)
    s1 = weyl.simple(a2, 1)
    w0 = weyl.longest_element(a2)
    assert weyl.right_weak_leq(e, w0)
    assert weyl.right_weak_leq(s1, w0)
    assert not weyl.right_weak_leq(w0, s1)


def test_descent_stripping_round_trip():
    for label in ("A2", "B2", "G2", "A3"):
        cdata = weyl.build_cartan(label)
        for w in weyl.weyl_iter(cdata):
            word = w.reduced_word()
            assert weyl.from_word(cdata, word) == w
            assert weyl.is_reduced(cdata, word)
