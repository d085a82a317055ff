"""Type-A matrix realization: PGL(n+1) generators, Weyl representatives,
Gauss decomposition and the Cartan involution.

Matrices are exact ((n+1) x (n+1), entries in Q, F_p or jets) and compared
projectively: g == lambda * h for a nonzero scalar.  The torus generator
H^i(x) is realized as diag(x,...,x,1,...,1) with i leading x's -- the
determinant-one normalization differs from it by a central scalar only, and
this lift keeps every entry a Laurent polynomial in the inputs.  With that
lift, H^j commutes with E^i and F^i for j != i, which is what makes the
letter-by-letter evaluation of amalgamated words well defined.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .arith import _coerce_int, _is_nonzero
from .cartan import CartanData, WeylElement
from .errors import InvalidParameter, NotInBigCell, SingularPoint, UnsupportedForType


class GroupMatrix:
    """Immutable exact matrix with projective equality helpers."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def __repr__(self):
        return "GroupMatrix(" + "; ".join(
            " ".join(str(x) for x in row) for row in self.rows) + ")"

    def __mul__(self, other: "GroupMatrix") -> "GroupMatrix":
        n = self.n
        a, b = self.rows, other.rows
        return GroupMatrix([
            [sum((a[i][k] * b[k][j] for k in range(n)),
                 start=_zero_of(a[i][0])) for j in range(n)]
            for i in range(n)
        ])

    def __eq__(self, other):
        return isinstance(other, GroupMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def transpose(self) -> "GroupMatrix":
        return GroupMatrix(list(zip(*self.rows)))

    def scale(self, c) -> "GroupMatrix":
        return GroupMatrix([[c * x for x in row] for row in self.rows])

    def inverse(self) -> "GroupMatrix":
        """Exact Gauss-Jordan inverse; SingularPoint when not invertible."""
        n = self.n
        one = _one_of(self.rows[0][0])
        zero = _zero_of(self.rows[0][0])
        aug = [list(row) + [one if i == j else zero for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if _is_nonzero(aug[r][col])), None)
            if pivot is None:
                raise SingularPoint("matrix not invertible")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and _is_nonzero(aug[r][col]):
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return GroupMatrix([row[n:] for row in aug])

    def det(self):
        n = self.n
        mat = [list(row) for row in self.rows]
        det = _one_of(self.rows[0][0])
        for col in range(n):
            pivot = next((r for r in range(col, n) if _is_nonzero(mat[r][col])), None)
            if pivot is None:
                return _zero_of(self.rows[0][0])
            if pivot != col:
                mat[col], mat[pivot] = mat[pivot], mat[col]
                det = -det
            det = det * mat[col][col]
            inv = mat[col][col]
            for r in range(col + 1, n):
                if _is_nonzero(mat[r][col]):
                    f = mat[r][col] / inv
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
        return det


def _zero_of(x):
    return _coerce_int(0, x) if not isinstance(x, int) else Fraction(0)


def _one_of(x):
    return _coerce_int(1, x) if not isinstance(x, int) else Fraction(1)


def identity(n: int, like=Fraction(1)) -> GroupMatrix:
    one = _one_of(like)
    zero = _zero_of(like)
    return GroupMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])


def projective_eq(g: GroupMatrix, h: GroupMatrix) -> bool:
    """g == lambda h for some nonzero scalar lambda."""
    if g.n != h.n:
        return False
    lam = None
    for i in range(g.n):
        for j in range(g.n):
            gz, hz = _is_nonzero(g[i][j]), _is_nonzero(h[i][j])
            if gz != hz:
                return False
            if gz and lam is None:
                lam = g[i][j] / h[i][j]
    if lam is None:
        return True
    for i in range(g.n):
        for j in range(g.n):
            if g[i][j] != lam * h[i][j]:
                return False
    return True


def _require_range(i: int, rank: int):
    if not 1 <= i <= rank:
        raise InvalidParameter(f"generator index {i} outside [1,{rank}]")


def e_gen(rank: int, i: int, like=Fraction(1)) -> GroupMatrix:
    _require_range(i, rank)
    m = [list(row) for row in identity(rank + 1, like).rows]
    m[i - 1][i] = _one_of(like)
    return GroupMatrix(m)


def f_gen(rank: int, i: int, like=Fraction(1)) -> GroupMatrix:
    _require_range(i, rank)
    m = [list(row) for row in identity(rank + 1, like).rows]
    m[i][i - 1] = _one_of(like)
    return GroupMatrix(m)


def h_gen(rank: int, i: int, x) -> GroupMatrix:
    """PGL lift of the one-parameter torus of the i-th coweight basis element:
    diag(x,...,x,1,...,1) with i leading x's."""
    _require_range(i, rank)
    if not _is_nonzero(x):
        raise InvalidParameter("torus parameter must be nonzero")
    one = _one_of(x)
    zero = _zero_of(x)
    return GroupMatrix([[(x if r < i else one) if r == c else zero
                         for c in range(rank + 1)] for r in range(rank + 1)])


def x_pos(rank: int, i: int, t) -> GroupMatrix:
    _require_range(i, rank)
    m = [list(row) for row in identity(rank + 1, _one_of(t)).rows]
    m[i - 1][i] = t
    return GroupMatrix(m)


def x_neg(rank: int, i: int, t) -> GroupMatrix:
    _require_range(i, rank)
    m = [list(row) for row in identity(rank + 1, _one_of(t)).rows]
    m[i][i - 1] = t
    return GroupMatrix(m)


def s_hat(rank: int, i: int, like=Fraction(1)) -> GroupMatrix:
    """Representative of the simple reflection: 2x2 block [[0,-1],[1,0]]."""
    _require_range(i, rank)
    one = _one_of(like)
    m = [list(row) for row in identity(rank + 1, like).rows]
    m[i - 1][i - 1] = _zero_of(like)
    m[i][i] = _zero_of(like)
    m[i - 1][i] = -one
    m[i][i - 1] = one
    return GroupMatrix(m)


def generator(kind: str, rank: int, i: int, x=None) -> GroupMatrix:
    table = {"E": e_gen, "F": f_gen, "s_hat": s_hat}
    if kind in table:
        return table[kind](rank, i)
    if kind == "H":
        return h_gen(rank, i, x)
    if kind == "x_pos":
        return x_pos(rank, i, x)
    if kind == "x_neg":
        return x_neg(rank, i, x)
    raise InvalidParameter(f"unknown generator kind {kind!r}")


def require_type_a(cdata: CartanData) -> int:
    if cdata.type_label[0] != "A":
        raise UnsupportedForType(
            f"matrix layer supports type A only, not {cdata.type_label}")
    return cdata.rank


def word_representative(rank: int, letters: Sequence[int], like=Fraction(1)) -> GroupMatrix:
    out = identity(rank + 1, like)
    for i in letters:
        out = out * s_hat(rank, i, like)
    return out


def weyl_representative(w: WeylElement, like=Fraction(1)) -> GroupMatrix:
    rank = require_type_a(w.cartan)
    return word_representative(rank, w.reduced_word(), like)


def gauss(g: GroupMatrix) -> tuple[GroupMatrix, GroupMatrix, GroupMatrix]:
    """LDU factorization g = lower * diag * upper with unitriangular outer
    factors; NotInBigCell(k) when the k-th leading principal minor vanishes.
    No row exchanges: pivots are exactly the ratios of leading minors."""
    n = g.n
    one = _one_of(g[0][0])
    zero = _zero_of(g[0][0])
    mat = [list(row) for row in g.rows]
    lower = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        if not _is_nonzero(mat[col][col]):
            raise NotInBigCell(col)
        for r in range(col + 1, n):
            if _is_nonzero(mat[r][col]):
                f = mat[r][col] / mat[col][col]
                lower[r][col] = f
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
    diag = [[mat[i][i] if i == j else zero for j in range(n)] for i in range(n)]
    upper = [[mat[i][j] / mat[i][i] if j >= i else zero for j in range(n)]
             for i in range(n)]
    return GroupMatrix(lower), GroupMatrix(diag), GroupMatrix(upper)


def gauss_leq0(g: GroupMatrix) -> GroupMatrix:
    lower, diag, _ = gauss(g)
    return lower * diag


def gauss_geq0(g: GroupMatrix) -> GroupMatrix:
    _, diag, upper = gauss(g)
    return diag * upper


def theta(g: GroupMatrix) -> GroupMatrix:
    """Cartan involution: inverse-transpose twisted by diag(1,-1,1,...).

    Swaps E^i with F^i and inverts the torus, and is an involutive group
    automorphism."""
    n = g.n
    inv_t = g.transpose().inverse()
    return GroupMatrix([[inv_t[i][j] if (i + j) % 2 == 0 else -inv_t[i][j]
                         for j in range(n)] for i in range(n)])


def gauss_g0(g: GroupMatrix) -> tuple[GroupMatrix, GroupMatrix, GroupMatrix]:
    """Factor g = n_plus * a * n_minus^{-1} with unipotent n_plus/n_minus and
    diagonal a, via the Gauss decomposition of g^{-1}."""
    lower, diag, upper = gauss(g.inverse())
    return upper.inverse(), diag.inverse(), lower


def xi_and_ddminus(g: GroupMatrix, j: int) -> tuple[GroupMatrix, GroupMatrix]:
    """The N_- factor of g = n_+ a n_-^{-1} and the inverse of its simple-root
    slice: b_j = x_neg(j, -c) with c the (j+1, j) entry of n_-.

    Height-one subdiagonal entries add up under products of negative root
    elements, so c is the alpha_j-coordinate in any factorization order."""
    rank = g.n - 1
    _require_range(j, rank)
    _, _, n_minus = gauss_g0(g)
    c = n_minus[j][j - 1]
    return n_minus, x_neg(rank, j, -c)


def dckp_T(g: GroupMatrix, j: int) -> GroupMatrix:
    """The dressing-type Poisson automorphism on the big-cell factorization:
    conjugation by s_hat(j) * b_j."""
    rank = g.n - 1
    _, b = xi_and_ddminus(g, j)
    u = s_hat(rank, j, g[0][0]) * b
    return u * g * u.inverse()
