from fractions import Fraction as F

import pytest

from cluster_dual import cartan as weyl
from cluster_dual import golden, maps, seeds, words
from cluster_dual.arith import TrialConfig
from cluster_dual.errors import FrozenDirection, NoPath, SingularPoint
from cluster_dual.words import Move

from conftest import W, rational_point


A1 = weyl.build_cartan("A1")
A2 = weyl.build_cartan("A2")


def test_mutate_point_formula_and_involution(rng):
    s = seeds.seed_for_word(W("-1,1"), A1)
    vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(5)}
    out = maps.mutate_point(s, vals, (1, 1))
    # eps[(1,0),(1,1)] = +1: x0 -> x0 x1 / (1+x1)
    assert out[(1, 1)] == F(1, 3)
    assert out[(1, 0)] == F(2) * F(3) / (1 + F(3))
    back = maps.mutate_point(seeds.mutate_seed(s, (1, 1)), out, (1, 1))
    assert back == vals
    with pytest.raises(FrozenDirection):
        maps.mutate_point(s, vals, (1, 0))
    bad = {**vals, (1, 1): F(-1)}
    with pytest.raises(SingularPoint):
        maps.mutate_point(s, bad, (1, 1))


def test_tropical_point_examples():
    s = seeds.seed_for_word(W("1,1"), A1)
    vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(5)}
    out = maps.tropical_mutate_point(s, vals, (1, 0))
    assert out == {(1, 0): F(1, 2), (1, 1): F(3), (1, 2): F(5)}
    # two frozen slots in one cover set: the mate picks up a monomial factor
    s2 = seeds.seed_for_word(W("1,2"), A2)
    vals2 = {(1, 0): F(2), (1, 1): F(3), (2, 0): F(5), (2, 1): F(7)}
    out2 = maps.tropical_mutate_point(s2, vals2, (2, 1))
    assert out2[(2, 1)] == F(1, 7)
    assert out2[(1, 1)] == F(3) * F(7)  # exponent +1 toward the other mate
    assert out2[(1, 0)] == F(2) and out2[(2, 0)] == F(5)


def test_amalgamate_split_round_trip(rng):
    w = W("-1,2,1")
    vals = rational_point(w, A2, rng)
    (lw, lv), (rw, rv) = maps.split_point(w, vals, 2, 2)
    joined_word, joined = maps.amalgamate_points(lw, lv, rw, rv)
    assert joined_word == w and joined == vals
    # amalgamation multiplies glued slots
    a1vals = {(1, 0): F(2), (1, 1): F(3)}
    b1vals = {(1, 0): F(5), (1, 1): F(7)}
    word, glued = maps.amalgamate_points(W("1"), a1vals, W("1"), b1vals)
    assert word == W("1,1")
    assert glued == {(1, 0): F(2), (1, 1): F(15), (1, 2): F(7)}


def test_dmove_transform_examples(rng):
    mu = maps.dmove_transform(W("-1,1"), Move("mixed2", 0, 2), A1)
    vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(5)}
    out = mu.apply(vals)
    assert out[(1, 1)] == F(1, 3)
    # mixed 2-move on distinct wires is the identity on points
    mu2 = maps.dmove_transform(W("1,-2"), Move("mixed2", 0, 2), A2)
    vals2 = rational_point(W("1,-2"), A2, rng)
    assert mu2.apply(vals2) == vals2


def test_restricted_path_matches_golden():
    mu = maps.path_transform(W("-1,1"), W("1,-1"), A1, ("mixed2",), restricted=True)
    vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(5)}
    got = mu.apply(vals)
    want = golden.eval_map("mu_m11_to_1m1", {"y0": F(2), "y1": F(3), "t": F(5)})
    assert tuple(got[(1, k)] for k in range(3)) == want


def test_path_transform_empty_and_nopath():
    assert maps.path_transform(W("1,1"), W("1,1"), A1).steps == ()
    with pytest.raises(NoPath):
        maps.path_transform(W("-1,1"), W("1,-1"), A1, ("positive_d",))


def test_two_paths_agree_pointwise():
    src, tgt = W("1,-2,1"), W("1,1,-2")
    direct = maps.path_transform(src, tgt, A2, words.D_KINDS)
    detour = maps.path_transform(src, W("-2,1,1"), A2, words.D_KINDS).then(
        maps.path_transform(W("-2,1,1"), tgt, A2, words.D_KINDS))
    cfg = TrialConfig(trials=25, rng_seed=3)
    ixs = words.seed_indices(src, 2)
    from cluster_dual.arith import maps_equal_probabilistic
    verdict = maps_equal_probabilistic(
        lambda p: direct.apply_tuple(p), lambda p: detour.apply_tuple(p),
        len(ixs), cfg)
    assert verdict.is_equal


def test_zeta_examples():
    z = maps.zeta_map(W("1"), A1)
    assert z.target_word == W("-1")
    vals = {(1, 0): F(2), (1, 1): F(3)}
    assert z.apply(vals) == {(1, 0): F(2), (1, 1): F(1, 3)}
    assert maps.zeta_map(W(""), A1).steps == ()
    z2 = maps.zeta_map(W("1,2,1"), A2)
    assert z2.target_word == W("-1,-2,-1")
    # negative-word mirror
    z3 = maps.zeta_map(W("-1,-2,-1"), A2)
    assert z3.target_word == W("1,2,1")


def test_tormut_square_transport(rng):
    src, tgt = W("1,2,1"), W("2,1,2")
    zs, zt = maps.zeta_map(src, A2), maps.zeta_map(tgt, A2)
    mu = maps.path_transform(src, tgt, A2, words.D_KINDS)
    mu_sq = maps.path_transform(zs.target_word, zt.target_word, A2, words.D_KINDS)
    for _ in range(5):
        vals = rational_point(src, A2, rng)
        assert mu_sq.apply(zs.apply(vals)) == zt.apply(mu.apply(vals))


def test_xi_saltation_golden_and_inverse(rng):
    xi = maps.xi_saltation(W("-1,1"), A1)
    vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(5)}
    got = xi.apply(vals)
    want = golden.eval_map("xi_s1", {"y0": F(2), "y1": F(3), "t": F(5)})
    assert tuple(got[(1, k)] for k in range(3)) == want
    assert xi.inverse().apply(got) == vals
    for s in ("-1,1,2,1", "-2,2,1,2", "-2,-1,1,2,1"):
        src = W(s)
        xi = maps.xi_saltation(src, A2)
        for _ in range(3):
            vals = rational_point(src, A2, rng)
            assert xi.inverse().apply(xi.apply(vals)) == vals


def test_mu_hat_identity_and_saltation_route():
    ident = maps.mu_hat(W("1,1"), W("1,1"), A1, weyl.longest_element(A1))
    assert ident.steps == ()
    route = maps.mu_hat(W("-1,1"), W("1,1"), A1, weyl.longest_element(A1))
    kinds = [step.describe()["step"] for step in route.steps]
    assert any("saltation" in kind for kind in kinds)


def test_artin_T_golden_forms():
    t1 = maps.artin_T(W("1,1"), 1, A1)
    vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(5)}
    got = t1.apply(vals)
    want = golden.eval_map("T1", {"z0": F(2), "z1": F(3), "t": F(5)})
    assert tuple(got[(1, k)] for k in range(3)) == want
    twice = t1.apply(got)
    derived = golden.eval_map("T1_squared_derived", {"z0": F(2), "z1": F(3), "t": F(5)})
    assert tuple(twice[(1, k)] for k in range(3)) == derived


def test_artin_T_base_word_independence(rng):
    word = W("1,2,1,1,2,1")
    default = maps.artin_T(word, 1, A2)
    alt_base = words.DoubleWord((-1, -2, -1, 2, 1, 2))
    other = maps.artin_T(word, 1, A2, base=alt_base)
    for _ in range(4):
        vals = rational_point(word, A2, rng)
        assert default.apply(vals) == other.apply(vals)


def test_braid_relation_probabilistic():
    word = W("1,2,1,1,2,1")
    lhs = maps.artin_T_word(word, (1, 2, 1), A2)
    rhs = maps.artin_T_word(word, (2, 1, 2), A2)
    cfg = TrialConfig(trials=6, rng_seed=11)
    ixs = words.seed_indices(word, 2)
    from cluster_dual.arith import maps_equal_probabilistic
    assert maps_equal_probabilistic(
        lambda p: lhs.apply_tuple(p), lambda p: rhs.apply_tuple(p),
        len(ixs), cfg).is_equal


def test_poisson_bracket_at_defining_cases(rng):
    s = seeds.bracket_seed(seeds.seed_for_word(W("-1,1"), A1))
    vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(5)}
    br = maps.poisson_bracket_at(s, (1, 0), (1, 1), vals)
    assert br == s.eps_hat((1, 0), (1, 1)) * F(2) * F(3) == F(6)
    assert maps.poisson_bracket_at(s, (1, 0), (1, 0), vals) == 0
    # the right frozen variable is central for the bracket seed
    assert maps.poisson_bracket_at(s, (1, 0), (1, 2), vals) == 0
    assert maps.poisson_bracket_at(s, (1, 1), (1, 2), vals) == 0


def test_is_poisson_map_positive_and_negative():
    cfg = TrialConfig(trials=4, rng_seed=2)
    mu = maps.dmove_transform(W("1,-2,1"), Move("mixed2", 1, 2), A2)
    assert maps.is_poisson_map(mu, cfg).is_equal
    trop = maps.dmove_transform(W("1,1"), Move("tau_left", 0), A1)
    assert maps.is_poisson_map(trop, cfg).is_equal
    trop_r = maps.dmove_transform(W("-1,1"), Move("tau_right", 1), A1)
    assert maps.is_poisson_map(trop_r, cfg).is_equal

    class Corrupted(maps.RationalMap):
        def apply(self, values):
            out = super().apply(values)
            k = (1, 1)
            out[k] = out[k] * out[(1, 0)]  # exponent deliberately off by one
            return out

    bad = Corrupted(mu.cdata, mu.source_word, mu.target_word, mu.steps, mu.restricted)
    assert maps.is_poisson_map(bad, cfg).status == "counterexample"


def test_saltation_is_poisson():
    cfg = TrialConfig(trials=4, rng_seed=5)
    xi = maps.xi_saltation(W("-1,1"), A1)
    assert maps.is_poisson_map(xi, cfg).is_equal
    xi2 = maps.xi_saltation(W("-1,1,2,1"), A2)
    assert maps.is_poisson_map(xi2, cfg).is_equal


def test_disjoint_moves_commute_pointwise(rng):
    word = W("1,-2,1,-2")
    first = Move("mixed2", 0, 2)
    second = Move("mixed2", 2, 2)
    one = maps.dmove_transform(word, first, A2)
    one_then = maps.dmove_transform(one.target_word, second, A2)
    two = maps.dmove_transform(word, second, A2)
    two_then = maps.dmove_transform(two.target_word, first, A2)
    assert one_then.target_word == two_then.target_word
    for _ in range(10):
        vals = rational_point(word, A2, rng)
        assert one_then.apply(one.apply(vals)) == two_then.apply(two.apply(vals))


def test_mutation_commutes_with_amalgamation(rng):
    # mutate the right factor, then glue; or glue, then mutate at the
    # occurrence-shifted index
    left, right = W("1"), W("1,2,1")
    seed_right = seeds.seed_for_word(right, A2)
    glued_word = left.concat(right)
    seed_glued = seeds.seed_for_word(glued_word, A2)
    for _ in range(10):
        lv = rational_point(left, A2, rng)
        rv = rational_point(right, A2, rng)
        moved_right = maps.mutate_point(seed_right, rv, (1, 1))
        _, then_glue = maps.amalgamate_points(left, lv, right, moved_right)
        _, glue_first = maps.amalgamate_points(left, lv, right, rv)
        glue_then_move = maps.mutate_point(seed_glued, glue_first, (1, 2))
        assert then_glue == glue_then_move


def test_artin_generator_is_poisson():
    cfg = TrialConfig(trials=3, rng_seed=6)
    t1 = maps.artin_T(W("1,1"), 1, A1)
    assert t1.restricted  # bracket-torus endomorphism
    assert maps.is_poisson_map(t1, cfg).is_equal
    mu = maps.mu_hat(W("-1,1"), W("1,1"), A1, weyl.longest_element(A1))
    assert maps.is_poisson_map(mu, cfg).is_equal
