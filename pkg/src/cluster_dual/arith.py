"""Exact scalar arithmetic and randomized map-equality testing.

Scalars come in three flavours, all exact:

- ``fractions.Fraction`` for rational computations (always lowest terms,
  positive denominator -- the stdlib maintains the invariant);
- ``Fp`` for arithmetic in a prime field, used by the Schwartz-Zippel
  style identity tester;
- ``Jet`` for first-order jets ``value + sum_i partials[i] * eps_i``,
  which turn any exact evaluation into an exact gradient computation
  (the Leibniz rule holds on the nose, no finite differences anywhere).

A "rational map" in this module is simply a callable taking a tuple of
scalars and returning a tuple of scalars; it must raise
:class:`~cluster_dual.errors.SingularPoint` when asked to evaluate on its
exceptional locus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import DivisionByZero, IndexOutOfRange, SingularPoint

# Scalars the library computes with.  Jet is defined below; plain ints are
# accepted on input and coerced.
Scalar = Union[Fraction, "Fp", "Jet", int]


class Fp:
    """An element of the prime field F_p.

    Instances are immutable and interoperate with plain ints.  Division is
    exact (Fermat inverse); dividing by zero raises DivisionByZero like the
    rational backend does.
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def __repr__(self):
        return f"Fp({self.value} mod {self.p})"

    def _lift(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator, self.p) / Fp(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.value == 0:
            raise DivisionByZero("division by zero in F_p")
        return Fp(self.value * pow(o.value, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.value, n, self.p), self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise DivisionByZero("inverting zero in F_p")
        return Fp(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, Fraction):
            return other.denominator % self.p != 0 and self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0


class Jet:
    """First-order jet: a value together with one partial per tracked coordinate.

    Arithmetic satisfies the Leibniz rule exactly; division requires a
    nonzero value part.  The partials live in the same field as the value.
    """

    __slots__ = ("value", "partials")

    def __init__(self, value, partials: tuple):
        self.value = value
        self.partials = tuple(partials)

    def __repr__(self):
        return f"Jet({self.value}; {self.partials})"

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, Fraction, Fp)):
            zero = _zero_like(self.value)
            return Jet(other if not isinstance(other, int) else _coerce_int(other, self.value),
                       tuple(zero for _ in self.partials))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet(self.value + o.value,
                   tuple(a + b for a, b in zip(self.partials, o.partials)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, tuple(-a for a in self.partials))

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet(self.value * o.value,
                   tuple(a * o.value + self.value * b
                         for a, b in zip(self.partials, o.partials)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not _is_nonzero(o.value):
            raise DivisionByZero("division by a jet with zero value")
        v = self.value / o.value
        return Jet(v, tuple((a - v * b) / o.value
                            for a, b in zip(self.partials, o.partials)))

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o / self

    def __pow__(self, n: int):
        return spow(self, n)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.value == other.value and self.partials == other.partials
        return self.value == other and all(not _is_nonzero(a) for a in self.partials)

    def __hash__(self):
        return hash((self.value, self.partials))

    def __bool__(self):
        return _is_nonzero(self.value)


def _coerce_int(n: int, like):
    if isinstance(like, Fp):
        return Fp(n, like.p)
    if isinstance(like, Jet):
        return _coerce_int(n, like.value)
    return Fraction(n)


def _zero_like(x):
    return _coerce_int(0, x) if not isinstance(x, int) else Fraction(0)


def _is_nonzero(x) -> bool:
    if isinstance(x, Fp):
        return x.value != 0
    if isinstance(x, Jet):
        return _is_nonzero(x.value)
    return x != 0


def spow(x, n: int):
    """x**n for any scalar, with negative exponents meaning exact inversion."""
    if n == 0:
        return _coerce_int(1, x) if not isinstance(x, int) else Fraction(1)
    if n < 0:
        one = _coerce_int(1, x) if not isinstance(x, int) else Fraction(1)
        x = one / x
        n = -n
    out = x
    for _ in range(n - 1):
        out = out * x
    return out


def jet_lift(point: Sequence, coordinate_index: int) -> Jet:
    """Lift coordinate ``coordinate_index`` of a point to a jet with the
    matching unit partial vector."""
    dim = len(point)
    if not 0 <= coordinate_index < dim:
        raise IndexOutOfRange(f"coordinate {coordinate_index} outside [0,{dim})")
    value = point[coordinate_index]
    one = _coerce_int(1, value)
    zero = _coerce_int(0, value)
    return Jet(value, tuple(one if i == coordinate_index else zero for i in range(dim)))


def jet_const(value, dim: int) -> Jet:
    """Lift a constant: all partials vanish."""
    zero = _coerce_int(0, value)
    return Jet(value, tuple(zero for _ in range(dim)))


def jet_point(point: Sequence) -> tuple:
    """Lift a whole point, tracking every coordinate."""
    return tuple(jet_lift(point, i) for i in range(len(point)))


# ---------------------------------------------------------------------------
# Randomized equality of rational maps (Schwartz-Zippel over a large prime).
# ---------------------------------------------------------------------------

# 2^61 - 1 is prime and comfortably above the 2^31 soundness floor.
DEFAULT_PRIME = (1 << 61) - 1
SECOND_PRIME = (1 << 31) + 11  # also prime, just above 2^31


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class TrialConfig:
    """Parameters of a randomized identity test."""

    prime: int = DEFAULT_PRIME
    trials: int = 20
    rng_seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not is_probable_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    def rng_for_trial(self, trial: int) -> random.Random:
        # independent stream per trial so trials may run in any order
        return random.Random(f"{self.rng_seed}:{trial}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of maps_equal_probabilistic."""

    status: str  # "equal" | "counterexample" | "inconclusive"
    point: tuple = ()
    detail: str = ""

    @property
    def is_equal(self) -> bool:
        return self.status == "equal"


def random_point_fp(dim: int, prime: int, rng: random.Random) -> tuple:
    """Uniform point of (F_p^x)^dim."""
    return tuple(Fp(rng.randrange(1, prime), prime) for _ in range(dim))


def _values_equal(a, b) -> bool:
    if isinstance(a, (tuple, list)) and isinstance(b, (tuple, list)):
        return len(a) == len(b) and all(_values_equal(x, y) for x, y in zip(a, b))
    return a == b


def maps_equal_probabilistic(
    f: Callable[[tuple], object],
    g: Callable[[tuple], object],
    domain_dim: int,
    cfg: TrialConfig,
    retry_budget: int = 64,
) -> Verdict:
    """Test f == g by evaluation at random prime-field points.

    Singular points (either map raising SingularPoint) are skipped and the
    trial is redrawn, up to ``retry_budget`` redraws per trial; exhausting
    the budget yields an inconclusive verdict.  A disagreement is re-checked
    in exact rational arithmetic at the lifted point before being reported,
    so a counterexample verdict is never a mod-p artifact.
    """
    for trial in range(cfg.trials):
        rng = cfg.rng_for_trial(trial)
        for _ in range(retry_budget):
            point = random_point_fp(domain_dim, cfg.prime, rng)
            try:
                fv = f(point)
                gv = g(point)
            except SingularPoint:
                continue
            if _values_equal(fv, gv):
                break
            lifted = tuple(Fraction(x.value) for x in point)
            try:
                if _values_equal(f(lifted), g(lifted)):
                    # mod-p disagreement not confirmed over Q: treat as
                    # singular-at-p artifact and redraw
                    continue
            except SingularPoint:
                continue
            return Verdict("counterexample", lifted)
        else:
            return Verdict("inconclusive",
                           detail=f"retry budget exhausted at trial {trial}")
    return Verdict("equal")


def field_arithmetic(a, b, op: str):
    """Convenience entry point for single field operations ('+','-','*','/')."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if not _is_nonzero(b):
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")
