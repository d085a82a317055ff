from fractions import Fraction as F

import pytest

from cluster_dual.arith import (DEFAULT_PRIME, Fp, TrialConfig,
                                field_arithmetic, is_probable_prime, jet_const,
                                jet_lift, jet_point, maps_equal_probabilistic,
                                spow)
from cluster_dual.errors import DivisionByZero, IndexOutOfRange, SingularPoint


def test_rational_examples():
    assert field_arithmetic(F(1, 2), F(1, 3), "+") == F(5, 6)
    assert F(2, 4) == F(1, 2)  # lowest terms on construction
    assert F(2, 4).denominator == 2


def test_prime_field_division():
    a, b = Fp(3, 7), Fp(5, 7)
    assert a / b == Fp(2, 7)
    assert Fp(5, 7) * Fp(2, 7) == Fp(3, 7)
    with pytest.raises(DivisionByZero):
        a / Fp(0, 7)


def test_prime_field_mixed_arithmetic():
    a = Fp(3, 11)
    assert a + 1 == Fp(4, 11)
    assert 2 * a == Fp(6, 11)
    assert 1 / a == Fp(4, 11)
    assert a + F(1, 2) == Fp(3, 11) + Fp(6, 11)
    assert spow(a, -2) == (a * a).inverse()


def test_rational_vs_prime_field_agreement(rng):
    p = 2 ** 31 + 11
    for _ in range(100):
        a = F(rng.randrange(-50, 50), rng.randrange(1, 30))
        b = F(rng.randrange(1, 50), rng.randrange(1, 30))
        for op in "+-*/":
            exact = field_arithmetic(a, b, op)
            if exact.denominator % p == 0:
                continue
            modp = field_arithmetic(Fp(a.numerator, p) / Fp(a.denominator, p),
                                    Fp(b.numerator, p) / Fp(b.denominator, p), op)
            assert modp == Fp(exact.numerator, p) / Fp(exact.denominator, p)


def test_jet_lift_examples():
    j0 = jet_lift((F(3), F(5)), 0)
    assert j0.value == 3 and j0.partials == (F(1), F(0))
    j1 = jet_lift((F(3), F(5)), 1)
    assert j1.value == 5 and j1.partials == (F(0), F(1))
    assert jet_const(F(7), 2).partials == (F(0), F(0))
    with pytest.raises(IndexOutOfRange):
        jet_lift((F(1),), 3)


def test_jet_leibniz_and_quotient():
    x, y = jet_point((F(2), F(5)))
    prod = x * y
    assert prod.value == 10 and prod.partials == (F(5), F(2))
    quot = x / y
    assert quot.value == F(2, 5)
    assert quot.partials == (F(1, 5), F(-2, 25))
    with pytest.raises(DivisionByZero):
        x / (y - 5)


def test_jet_chain_rule_against_hand_expansion(rng):
    # f(x) = (x0^2 x1, x1 x2, x0 x2^2), g(y) = (y0 y1, y2^2 y0): the composite
    # partials must be the matrix product of the factors' Jacobians.
    def f(v):
        return (v[0] * v[0] * v[1], v[1] * v[2], v[0] * v[2] * v[2])

    def g(v):
        return (v[0] * v[1], v[2] * v[2] * v[0])

    for _ in range(10):
        pt = tuple(F(rng.randrange(1, 12)) for _ in range(3))
        jets = jet_point(pt)
        composite = g(f(jets))
        fv = f(pt)
        jac_f = [[2 * pt[0] * pt[1], pt[0] * pt[0], F(0)],
                 [F(0), pt[2], pt[1]],
                 [pt[2] * pt[2], F(0), 2 * pt[0] * pt[2]]]
        jac_g = [[fv[1], fv[0], F(0)],
                 [fv[2] * fv[2], F(0), 2 * fv[2] * fv[0]]]
        hand = [[sum(jac_g[r][k] * jac_f[k][c] for k in range(3)) for c in range(3)]
                for r in range(2)]
        for r in range(2):
            assert composite[r].partials == tuple(hand[r])


def test_trial_config_validation():
    assert is_probable_prime(DEFAULT_PRIME)
    with pytest.raises(ValueError):
        TrialConfig(prime=10)
    with pytest.raises(ValueError):
        TrialConfig(trials=0)


def test_maps_equal_identity_and_counterexample():
    cfg = TrialConfig(trials=10, rng_seed=4)
    ident = lambda p: p
    assert maps_equal_probabilistic(ident, ident, 3, cfg).is_equal
    shifted = lambda p: tuple(x + 1 for x in p)
    verdict = maps_equal_probabilistic(ident, shifted, 1, cfg)
    assert verdict.status == "counterexample"
    # the counterexample is confirmed over the rationals
    assert verdict.point and ident(verdict.point) != shifted(verdict.point)


def test_maps_equal_mutation_involution():
    from cluster_dual import cartan as weyl
    from cluster_dual import maps, seeds, words
    cdata = weyl.build_cartan("A1")
    w = words.DoubleWord.from_string("1,1")
    seed = seeds.seed_for_word(w, cdata)
    ixs = words.seed_indices(w, 1)

    def twice(point):
        vals = dict(zip(ixs, point))
        once = maps.mutate_point(seed, vals, (1, 1))
        back = maps.mutate_point(seeds.mutate_seed(seed, (1, 1)), once, (1, 1))
        return tuple(back[i] for i in ixs)

    cfg = TrialConfig(trials=50, rng_seed=9)
    assert maps_equal_probabilistic(lambda p: p, twice, len(ixs), cfg).is_equal


def test_maps_equal_skips_singular_points():
    cfg = TrialConfig(trials=5, rng_seed=1)

    def touchy(point):
        if point[0] == point[1]:
            raise SingularPoint("diagonal")
        return point

    assert maps_equal_probabilistic(touchy, touchy, 2, cfg).is_equal
