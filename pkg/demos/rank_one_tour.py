"""A guided tour of the rank-one picture.

Everything the library does can be seen in miniature on the two-element Weyl
group: the four two-letter double words share two bracket matrices, their
twisted evaluations parameterize the big cell, a single saltation glues the
two charts, and the Artin generator acts by a conjugated bar flip whose
square translates the first coordinate by z1^{-2} t.

Run:  python3 demos/rank_one_tour.py
"""

from fractions import Fraction as F

from cluster_dual import cartan, evals, golden, group, maps, seeds, words

A1 = cartan.build_cartan("A1")
W = words.DoubleWord.from_string


def show(title):
    print(f"\n=== {title}")


show("Seeds and bracket matrices of the two-letter words")
for text in ("1,1", "1,-1", "-1,1", "-1,-1"):
    seed = seeds.seed_for_word(W(text), A1)
    eta = seeds.bracket_seed(seed)
    print(f"word {text:>6}:  eta rows {[[str(x) for x in row] for row in eta.matrix()]}")

show("Twisted evaluation of the word 1,1 at (z0, z1, t) = (2, 3, 25)")
ctx = evals.make_context(W("1,1"), A1)
vals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(25)}
m = evals.ev_hat(ctx, vals)
for row in m.rows:
    print("  ", [str(x) for x in row])
print("matches the golden closed form (t = s^2, s = 5):",
      group.projective_eq(m, golden.eval_matrix(
          "ev_hat_11", {"z0": F(2), "z1": F(3), "s": F(5)})))

show("The saltation joining the two charts")
xi = maps.xi_saltation(W("-1,1"), A1)
yvals = {(1, 0): F(2), (1, 1): F(3), (1, 2): F(25)}
image = xi.apply(yvals)
print("(y0, y1, t) = (2, 3, 25)  ->  (z0, z1, t) =",
      tuple(str(image[(1, k)]) for k in range(3)))
ctx_y = evals.make_context(W("-1,1"), A1)
ctx_z = evals.make_context(xi.target_word, A1)
print("intertwines the twisted evaluations:",
      group.projective_eq(evals.ev_hat(ctx_y, yvals), evals.ev_hat(ctx_z, image)))

show("The Artin generator and its square")
t1 = maps.artin_T(W("1,1"), 1, A1)
once = t1.apply(vals)
twice = t1.apply(once)
print("T1(2, 3, 25)   =", tuple(str(once[(1, k)]) for k in range(3)))
print("T1^2(2, 3, 25) =", tuple(str(twice[(1, k)]) for k in range(3)),
      " (z0 z1^-2 t, z1, t)")

show("The dressing automorphism acts the same way on matrices")
g = evals.ev_hat(ctx, vals)
lhs = group.dckp_T(g, 1)
rhs = evals.ev_hat(ctx, once)
print("T_1(ev_hat(x)) == ev_hat(T1(x)) projectively:", group.projective_eq(lhs, rhs))
