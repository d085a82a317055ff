"""Birational maps between seed tori, represented as step pipelines.

A pipeline step knows the word it starts from and how to push a coordinate
assignment forward; composites are built word-combinatorially once and then
evaluated at many points (rationals, prime-field scalars or jets alike).
Supported steps:

- a word move (braid/commutation d-move, mixed 2-move, bar flip) carrying its
  induced mutation sequence -- regular mutations for braid and same-wire
  mixed moves, a tropical mutation for a bar flip -- and its index
  relabeling.  In restricted mode the right-frozen coordinates are held
  fixed and right bar flips act as the identity, which is the transformation
  attached to the bracket tori;
- the saltation core attached to a dual move, and its exact inverse.

Mutation sequences induced by d-moves, with (i, j) the first two window
letters and counters shifted by the occurrences before the window:

- length 2 (commuting letters, or a mixed 2-move on distinct letters): the
  identity;
- a mixed 2-move on one wire, or a 3-move: one mutation at the slot between
  the swapped occurrences (for the 3-move the interior slot then crosses
  wires);
- a 4-move: mutations at (i,1), (j,1), (i,1);
- a 6-move: the ten-term sequence, applied rightmost factor first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import cartan as weyl
from . import seeds as seedmod
from . import words as wordmod
from .arith import Fp, TrialConfig, Verdict, jet_lift, spow, _is_nonzero, maps_equal_probabilistic
from .cartan import CartanData, WeylElement
from .errors import (FrozenDirection, FrozenStructureViolation, InapplicableMove,
                     NoPath, PreconditionFailed, SingularPoint)
from .seeds import Seed, bracket_seed, mutate_seed, seed_for_word, tropical_mutate_seed
from .words import DoubleWord, Move, SeedIndex

Assignment = dict[SeedIndex, object]


@dataclass(frozen=True)
class TorusPoint:
    """A point of the seed torus of a word: one nonzero value per index."""

    word: DoubleWord
    values: dict

    def as_tuple(self, cdata: CartanData) -> tuple:
        return tuple(self.values[ix] for ix in wordmod.seed_indices(self.word, cdata.rank))


# ---------------------------------------------------------------------------
# Point-level elementary transformations
# ---------------------------------------------------------------------------

def mutate_point(seed: Seed, values: Assignment, k: SeedIndex,
                 frozen_fixed: frozenset = frozenset()) -> Assignment:
    """Cluster mutation on coordinates: x_k inverts, x_i picks up
    x_k^{[eps_ik]_+} (1+x_k)^{-eps_ik}.  Indices in ``frozen_fixed`` keep
    their values (the bracket-torus restriction)."""
    if k in seed.frozen:
        raise FrozenDirection(f"{k} is frozen")
    xk = values[k]
    if not _is_nonzero(xk):
        raise SingularPoint("zero coordinate at mutation index")
    out: Assignment = {}
    one_plus = 1 + xk
    for ix, val in values.items():
        if ix == k:
            out[ix] = 1 / xk
            continue
        if ix in frozen_fixed:
            out[ix] = val
            continue
        e = seed.eps(ix, k)
        if e == 0:
            out[ix] = val
            continue
        assert e.denominator == 1
        e = int(e)
        if not _is_nonzero(one_plus):
            raise SingularPoint("1 + x_k vanishes with a nonzero exponent")
        out[ix] = val * spow(xk, max(e, 0)) * spow(one_plus, -e)
    return out


def tropical_mutate_point(seed: Seed, values: Assignment, k: SeedIndex,
                          positive_letter: Optional[bool] = None) -> Assignment:
    """Tropical mutation: x_k inverts and its cover mates pick up monomial
    factors; subtraction-free, defined on the whole torus.

    The mate exponent is -b_km when the flip side matches the letter sign
    and +b_km otherwise, the orientation that makes the map Poisson between
    the seed and the flipped word's seed (the two chiralities are mutually
    inverse)."""
    if k not in seed.frozen:
        raise FrozenStructureViolation(f"{k} is not frozen")
    xk = values[k]
    if not _is_nonzero(xk):
        raise SingularPoint("zero coordinate at tropical index")
    sign = -1 if seedmod.flip_orientation(seed, k, positive_letter) else 1
    mates = seed.cover_sets_of(k)
    out: Assignment = {}
    for ix, val in values.items():
        if ix == k:
            out[ix] = 1 / xk
        elif ix in mates:
            out[ix] = val * spow(xk, sign * seed.b_entry(k, ix))
        else:
            out[ix] = val
    return out


def amalgamate_points(w1: DoubleWord, v1: Assignment,
                      w2: DoubleWord, v2: Assignment) -> tuple[DoubleWord, Assignment]:
    """Glue two torus points: shifted slots from the right factor, glued
    slots multiplying."""
    shift = {wire: w1.count(wire) for wire in set(abs(x) for x in w1.letters) | set(abs(x) for x in w2.letters)}
    out: Assignment = {}
    for (wire, k), val in v1.items():
        out[(wire, k)] = val
    for (wire, k), val in v2.items():
        n1 = w1.count(wire)
        key = (wire, k + n1)
        if k == 0:
            out[key] = out.get(key, 1) * val
        else:
            out[key] = val
    return w1.concat(w2), out


def split_point(w: DoubleWord, values: Assignment, cut: int,
                rank: int) -> tuple[tuple[DoubleWord, Assignment], tuple[DoubleWord, Assignment]]:
    """Canonical section of amalgamation at a cut position: glued values stay
    with the left factor, the right factor gets 1 there.  Any other section
    differs by a torus factor that the downstream maps do not see."""
    left = DoubleWord(w.letters[:cut])
    right = DoubleWord(w.letters[cut:])
    lv: Assignment = {}
    rv: Assignment = {}
    one = None
    for val in values.values():
        one = spow(val, 0)
        break
    for wire in range(1, rank + 1):
        nl, nr = left.count(wire), right.count(wire)
        for k in range(nl + 1):
            lv[(wire, k)] = values[(wire, k)]
        rv[(wire, 0)] = one
        for k in range(1, nr + 1):
            rv[(wire, k)] = values[(wire, nl + k)]
    return (left, lv), (right, rv)


# ---------------------------------------------------------------------------
# Pipeline steps
# ---------------------------------------------------------------------------

_D_SEQUENCES = {
    2: (),
    3: ((0, 1),),                     # (letter-slot role, occurrence within window)
    4: ((0, 1), (1, 1), (0, 1)),
    6: ((1, 2), (0, 1), (1, 1), (1, 2), (0, 2), (1, 2), (0, 1), (0, 2), (1, 1), (1, 2)),
}


def _move_mutations(w: DoubleWord, move: Move, cdata: CartanData) -> list[tuple[SeedIndex, str]]:
    """Mutation sequence (index, 'regular'|'tropical') a move induces."""
    if move.kind == "mixed2":
        a, b = w[move.pos], w[move.pos + 1]
        if abs(a) != abs(b):
            return []
        wire = abs(a)
        before = sum(1 for x in w.letters[:move.pos] if abs(x) == wire)
        return [((wire, before + 1), "regular")]
    if move.kind in ("positive_d", "negative_d"):
        if move.order == 2:
            return []
        i, j = abs(w[move.pos]), abs(w[move.pos + 1])
        ci = sum(1 for x in w.letters[:move.pos] if abs(x) == i)
        cj = sum(1 for x in w.letters[:move.pos] if abs(x) == j)
        wires, offs = (i, j), (ci, cj)
        seq = _D_SEQUENCES[move.order]
        # compositions read right-to-left: the last listed factor acts first
        return [((wires[r], offs[r] + k), "regular") for (r, k) in reversed(seq)]
    if move.kind == "tau_left":
        wire = abs(w[0])
        return [((wire, 0), "tropical")]
    if move.kind == "tau_right":
        wire = abs(w[-1])
        return [((wire, w.count(wire)), "tropical")]
    raise InapplicableMove(f"no mutation table for {move.kind}")


class Step:
    word_before: DoubleWord
    word_after: DoubleWord

    def apply(self, values: Assignment) -> Assignment:
        raise NotImplementedError

    def inverse(self) -> "Step":
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class MoveStep(Step):
    """A single word move with its induced mutations and relabeling."""

    cdata: CartanData
    word_before: DoubleWord
    move: Move
    restricted: bool

    @property
    def word_after(self) -> DoubleWord:
        return wordmod.apply_move(self.word_before, self.move, self.cdata)

    def apply(self, values: Assignment) -> Assignment:
        w = self.word_before
        seed = seed_for_word(w, self.cdata)
        fixed = seed.cover_right if self.restricted else frozenset()
        if self.restricted and self.move.kind == "tau_right":
            mutations = []  # identity between the bracket tori
        else:
            mutations = _move_mutations(w, self.move, self.cdata)
        positive_letter = None
        if self.move.kind == "tau_left":
            positive_letter = w.letters[0] > 0
        elif self.move.kind == "tau_right":
            positive_letter = w.letters[-1] > 0
        for ix, kind in mutations:
            if kind == "regular":
                values = mutate_point(seed, values, ix, fixed)
                seed = mutate_seed(seed, ix)
            else:
                values = tropical_mutate_point(seed, values, ix, positive_letter)
                seed = tropical_mutate_seed(seed, ix, positive_letter)
        sigma = wordmod.index_map(w, self.move, self.cdata)
        if sigma:
            values = {sigma.get(ix, ix): val for ix, val in values.items()}
        return values

    def inverse(self) -> "MoveStep":
        target = self.word_after
        mv = self.move
        if mv.kind in ("mixed2", "positive_d", "negative_d", "tau_left", "tau_right"):
            inv = Move(mv.kind, mv.pos, mv.order)
            if mv.kind in ("positive_d", "negative_d"):
                first = target[mv.pos]
                inv = Move("positive_d" if first > 0 else "negative_d", mv.pos, mv.order)
            return MoveStep(self.cdata, target, inv, self.restricted)
        raise InapplicableMove(f"cannot invert {mv.kind} as a MoveStep")

    def describe(self) -> dict:
        return {"step": "move", "move": self.move.describe(),
                "source": self.word_before.to_string(),
                "target": self.word_after.to_string(),
                "restricted": self.restricted}


@dataclass(frozen=True)
class XiCoreStep(Step):
    """Saltation core: source word j' i+ kbar (one-sign reduced block i+ of
    the longest element, trailing barred letter), target j' square(i+) k*.

    Coordinates below the block transport through the block's zeta map (the
    word j' rides along by amalgamation), the boundary slot of wire k divides
    by the right-frozen value of wire k*, the top slot of wire k crosses to
    the new top slot of wire k*, and the remaining right-frozen slots keep
    their values.
    """

    cdata: CartanData
    word_before: DoubleWord

    def _shape(self):
        w = self.word_before
        L = wordmod.dual_block_length(self.cdata)
        block = DoubleWord(w.letters[-L - 1:-1])
        kbar = w.letters[-1]
        if kbar > 0 or not wordmod.is_positive_reduced(block, self.cdata):
            raise InapplicableMove("saltation core needs shape j' i+ kbar")
        prefix = DoubleWord(w.letters[:-L - 1])
        return prefix, block, -kbar

    @property
    def word_after(self) -> DoubleWord:
        prefix, block, k = self._shape()
        ks = weyl.star(self.cdata, k)
        return prefix.concat(wordmod.square_word(block, self.cdata)).concat(DoubleWord((ks,)))

    def apply(self, values: Assignment) -> Assignment:
        prefix, block, k = self._shape()
        cdata = self.cdata
        rank = cdata.rank
        w = self.word_before
        ks = weyl.star(cdata, k)
        target = self.word_after
        zmap = zeta_map(block, cdata)
        (pl, lv), (rest, restv) = split_point(w, values, len(prefix), rank)
        (pmid, mv), _ = split_point(rest, restv, len(block), rank)
        y = zmap.apply(mv)
        gw, gv = amalgamate_points(pl, lv, zmap.target_word, y)
        mid_counts = {wire: prefix.count(wire) + block.count(wire) for wire in range(1, rank + 1)}
        k_top = values[(k, w.count(k))]
        out: Assignment = {}
        for wire in range(1, rank + 1):
            n_t = target.count(wire)
            for c in range(n_t + 1):
                if c == n_t:
                    # right frozen slots copy wire-preservingly (the moved
                    # wire's block slot disappears, its top descends)
                    out[(wire, c)] = values[(wire, w.count(wire))]
                elif wire == ks and c == mid_counts[ks]:
                    # the starred wire's boundary slot divides by the moved
                    # wire's frozen value
                    out[(wire, c)] = gv[(wire, c)] / k_top
                else:
                    out[(wire, c)] = gv[(wire, c)]
        return out

    def inverse(self) -> "XiCoreInverseStep":
        return XiCoreInverseStep(self.cdata, self.word_after, self.word_before)

    def describe(self) -> dict:
        return {"step": "saltation_core",
                "source": self.word_before.to_string(),
                "target": self.word_after.to_string()}


class _Tracked:
    """coeff * X^e for one formal unknown X, with monomial arithmetic only.

    Used to carry the single entangled block-top coordinate through a zeta
    pipeline, where top slots are only ever multiplied by scalars and by
    integer powers of each other and inverted, never added.
    """

    __slots__ = ("coeff", "e")

    def __init__(self, coeff, e: int):
        self.coeff = coeff
        self.e = e

    def __mul__(self, other):
        if isinstance(other, _Tracked):
            return _Tracked(self.coeff * other.coeff, self.e + other.e)
        return _Tracked(self.coeff * other, self.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Tracked):
            return _Tracked(self.coeff / other.coeff, self.e - other.e)
        return _Tracked(self.coeff / other, self.e)

    def __rtruediv__(self, other):
        if isinstance(other, _Tracked):
            raise TypeError
        return _Tracked(other / self.coeff, -self.e)

    def __pow__(self, n: int):
        if n == 0:
            return _Tracked(spow(self.coeff, 0), 0)
        c = spow(self.coeff, n)
        return _Tracked(c, self.e * n)


def _tracked_pow(x, n: int):
    return x ** n if isinstance(x, _Tracked) else spow(x, n)


@dataclass(frozen=True)
class XiCoreInverseStep(Step):
    """Exact inverse of the saltation core.

    Structure of a zeta pipeline on the block torus: mutations never happen
    at bottom slots; interior slots evolve autonomously; bottom slots pick up
    scalar multipliers depending on the interiors only; top slots evolve as
    monomials in each other times interior-driven scalars.  Hence, from the
    image one recovers the interiors through the inverse zeta, the block-top
    of the moved wire by solving a one-unknown monomial equation (its
    exponent is +-1, asserted), and the glued boundary by dividing out the
    bottom multipliers of a zeta run on the reconstructed block point.
    """

    cdata: CartanData
    word_before: DoubleWord  # = forward step's word_after
    word_after: DoubleWord   # = forward step's word_before

    def apply(self, values: Assignment) -> Assignment:
        fwd = XiCoreStep(self.cdata, self.word_after)
        prefix, block, k = fwd._shape()
        cdata = self.cdata
        rank = cdata.rank
        src = self.word_after          # word of the forward source
        ks = weyl.star(cdata, k)
        mid = {wire: prefix.count(wire) + block.count(wire)
               for wire in range(1, rank + 1)}
        one = spow(next(iter(values.values())), 0)
        out: Assignment = {}
        # right-frozen slots copy back wire-preservingly
        for wire in range(1, rank + 1):
            out[(wire, src.count(wire))] = values[(wire, self.word_before.count(wire))]
        k_top = out[(k, src.count(k))]
        # glued (prefix | zeta(block)) values the forward map exposed; the
        # moved wire's glued top was shadowed by the frozen copy and is the
        # one entangled unknown
        gv: Assignment = {}
        for wire in range(1, rank + 1):
            top = self.word_before.count(wire)
            for c in range(top):
                gv[(wire, c)] = values[(wire, c)]
        gv[(ks, mid[ks])] = values[(ks, mid[ks])] * k_top
        zmap = zeta_map(block, cdata)
        # interiors of the block preimage do not depend on bottoms or tops
        zvals: Assignment = {}
        for wire in range(1, rank + 1):
            nb = block.count(wire)
            zvals[(wire, 0)] = one
            for c in range(1, nb):
                zvals[(wire, c)] = gv[(wire, prefix.count(wire) + c)]
            if nb:
                zvals[(wire, nb)] = one
        back = zmap.inverse().apply(zvals)
        # block point: bottoms pinned to 1 by the canonical split, interiors
        # recovered, tops from the preserved frozen slots except the moved
        # wire's, tracked as the unknown X and solved from the starred wire's
        # glued top (a one-unknown monomial equation)
        x_p: Assignment = {}
        for wire in range(1, rank + 1):
            nb = block.count(wire)
            x_p[(wire, 0)] = one
            for c in range(1, nb):
                x_p[(wire, c)] = back[(wire, c)]
            if nb:
                x_p[(wire, nb)] = (out[(wire, src.count(wire))]
                                   if wire != k else _Tracked(one, 1))
        image = zmap.apply(x_p)
        tr = image[(ks, block.count(ks))]
        assert isinstance(tr, _Tracked) and abs(tr.e) == 1, \
            "starred block-top exponent must be +-1"
        x_ktop = _tracked_pow(gv[(ks, mid[ks])] / tr.coeff, tr.e)
        x_p[(k, block.count(k))] = x_ktop
        multipliers = zmap.apply(x_p)
        # assemble: prefix region, divided glue boundary, block region
        for wire in range(1, rank + 1):
            np_ = prefix.count(wire)
            for c in range(np_):
                out[(wire, c)] = gv[(wire, c)]
            out[(wire, np_)] = gv[(wire, np_)] / multipliers[(wire, 0)]
            for c in range(1, block.count(wire) + 1):
                out[(wire, np_ + c)] = x_p[(wire, c)]
        out[(k, src.count(k))] = k_top
        return out

    def inverse(self) -> XiCoreStep:
        return XiCoreStep(self.cdata, self.word_after)

    def describe(self) -> dict:
        return {"step": "saltation_core_inverse",
                "source": self.word_before.to_string(),
                "target": self.word_after.to_string()}


@dataclass(frozen=True)
class RationalMap:
    """A composable pipeline of steps between seed tori."""

    cdata: CartanData
    source_word: DoubleWord
    target_word: DoubleWord
    steps: tuple[Step, ...]
    restricted: bool = False

    def apply(self, values: Assignment) -> Assignment:
        for step in self.steps:
            values = step.apply(values)
        return values

    def __call__(self, values: Assignment) -> Assignment:
        return self.apply(values)

    def then(self, other: "RationalMap") -> "RationalMap":
        assert self.target_word == other.source_word, (
            f"{self.target_word.to_string()} != {other.source_word.to_string()}")
        return RationalMap(self.cdata, self.source_word, other.target_word,
                           self.steps + other.steps,
                           self.restricted and other.restricted)

    def inverse(self) -> "RationalMap":
        return RationalMap(self.cdata, self.target_word, self.source_word,
                           tuple(s.inverse() for s in reversed(self.steps)),
                           self.restricted)

    def describe(self) -> list[dict]:
        return [s.describe() for s in self.steps]

    def apply_tuple(self, point: tuple) -> tuple:
        ixs = wordmod.seed_indices(self.source_word, self.cdata.rank)
        out = self.apply(dict(zip(ixs, point)))
        return tuple(out[ix] for ix in wordmod.seed_indices(self.target_word, self.cdata.rank))


def identity_map(w: DoubleWord, cdata: CartanData, restricted: bool = False) -> RationalMap:
    return RationalMap(cdata, w, w, (), restricted)


def dmove_transform(w: DoubleWord, move: Move, cdata: CartanData,
                    restricted: bool = False) -> RationalMap:
    """The cluster transformation of a single generalized d-move or tau move."""
    if move.kind == "dual":
        return dual_move_map(w, cdata)
    step = MoveStep(cdata, w, move, restricted)
    return RationalMap(cdata, w, step.word_after, (step,), restricted)


def path_transform(source: DoubleWord, target: DoubleWord, cdata: CartanData,
                   kinds: Iterable[str] = wordmod.D_KINDS,
                   restricted: bool = False,
                   neighbor_filter=None) -> RationalMap:
    """Composite transformation along a shortest move path."""
    path = wordmod.move_path(source, target, cdata, kinds, neighbor_filter=neighbor_filter)
    out = identity_map(source, cdata, restricted)
    cur = source
    for mv in path:
        leg = dmove_transform(cur, mv, cdata, restricted)
        out = out.then(leg)
        cur = leg.target_word
    return out


# ---------------------------------------------------------------------------
# Zeta maps (twist sections)
# ---------------------------------------------------------------------------

def zeta_map(w: DoubleWord, cdata: CartanData, stages: Optional[int] = None) -> RationalMap:
    """The generalized cluster transformation from a one-sign reduced word to
    its square word, as a composition of tau flips and mixed 2-moves.

    For a positive word the letters are barred from the tail (each stage: a
    right tau flip, then the bar migrates left to the bar block); for a
    negative word from the head (left tau flip, migration right).  ``stages``
    truncates the composition (positive words count stages from the tail,
    negative words from the head)."""
    n = len(w)
    if wordmod.is_positive_reduced(w, cdata):
        positive = True
    elif wordmod.is_negative_reduced(w, cdata):
        positive = False
    else:
        raise PreconditionFailed("zeta needs a one-sign reduced word")
    total = n if stages is None else stages
    out = identity_map(w, cdata)
    cur = w
    if positive:
        for stage in range(total):
            k = n - stage  # barring letter i_k, k = n..1
            leg = dmove_transform(cur, Move("tau_right", len(cur) - 1), cdata)
            out = out.then(leg)
            cur = leg.target_word
            for p in range(n - 1, n - k, -1):
                leg = dmove_transform(cur, Move("mixed2", p - 1, 2), cdata)
                out = out.then(leg)
                cur = leg.target_word
    else:
        for stage in range(total):
            k = stage + 1  # unbarring letter j_k, k = 1..n
            leg = dmove_transform(cur, Move("tau_left", 0), cdata)
            out = out.then(leg)
            cur = leg.target_word
            for p in range(0, n - k):
                leg = dmove_transform(cur, Move("mixed2", p, 2), cdata)
                out = out.then(leg)
                cur = leg.target_word
    return out


def zeta_section_word(w: DoubleWord, cdata: CartanData, stages: int) -> DoubleWord:
    """Target word of zeta_map(w, stages)."""
    return zeta_map(w, cdata, stages).target_word


# ---------------------------------------------------------------------------
# Dual moves and saltations
# ---------------------------------------------------------------------------

def dual_move_map(w: DoubleWord, cdata: CartanData) -> RationalMap:
    """The saltation attached to the dual move applicable at w: the moving
    letter migrates through the block (restricted mixed 2-moves), the core
    acts, and the starred letter migrates back."""
    L = wordmod.dual_block_length(cdata)
    if not wordmod._dual_ok(w, cdata):
        raise InapplicableMove(f"no dual move at {w.to_string()}")
    block_positive = w.letters[-1] > 0
    if block_positive:
        # shape A: ... kbar [positive w0 block]; migrate kbar to the end
        out = identity_map(w, cdata, restricted=True)
        cur = w
        for p in range(len(w) - L - 1, len(w) - 1):
            leg = dmove_transform(cur, Move("mixed2", p, 2), cdata, restricted=True)
            out = out.then(leg)
            cur = leg.target_word
        core = XiCoreStep(cdata, cur)
        out = out.then(RationalMap(cdata, cur, core.word_after, (core,), True))
        cur = core.word_after
        # migrate the new positive letter k* back to the block front
        for p in range(len(w) - 2, len(w) - L - 2, -1):
            leg = dmove_transform(cur, Move("mixed2", p, 2), cdata, restricted=True)
            out = out.then(leg)
            cur = leg.target_word
        target = wordmod.apply_move(w, Move("dual", len(w) - 1 - L), cdata)
        assert cur == target, (cur.to_string(), target.to_string())
        return out
    # shape B: ... k [negative w0 block]: inverse of the shape-A map at the image
    target = wordmod.apply_move(w, Move("dual", len(w) - 1 - L), cdata)
    fwd = dual_move_map(target, cdata)
    assert fwd.target_word == w
    return fwd.inverse()


def xi_saltation(w: DoubleWord, cdata: CartanData) -> RationalMap:
    """Public name for the dual-move transformation."""
    return dual_move_map(w, cdata)


# ---------------------------------------------------------------------------
# The canonical isomorphisms between bracket tori over D(v)
# ---------------------------------------------------------------------------

def _dhat_edge_map(w: DoubleWord, move: Move, cdata: CartanData) -> RationalMap:
    if move.kind == "dual":
        return dual_move_map(w, cdata)
    if move.kind == "tau_right":
        step = MoveStep(cdata, w, move, restricted=True)
        return RationalMap(cdata, w, step.word_after, (step,), True)
    if move.kind in ("mixed2", "positive_d", "negative_d"):
        return dmove_transform(w, move, cdata, restricted=True)
    raise InapplicableMove(f"{move.kind} is not a dhat move")


_MU_HAT_CACHE: dict = {}


def mu_hat(source: DoubleWord, target: DoubleWord, cdata: CartanData,
           v: WeylElement,
           w1_source: Optional[WeylElement] = None,
           w1_target: Optional[WeylElement] = None,
           max_states: int = 200_000) -> RationalMap:
    """The birational Poisson isomorphism between the bracket tori of two
    words of D(v): restricted cluster transformations along d-moves, the
    identity along right tau moves, saltations along dual moves.

    The search tracks the first-factor class w1 alongside the word: d-moves
    and right tau moves keep it, a dual move trades the moving letter between
    the class and the flipped block.  Paths must be class-coherent for the
    composite to intertwine the twisted evaluations, so only coherent edges
    are explored.
    """
    if w1_source is None:
        dec = wordmod.canonical_class(source, cdata, v)
        if dec is None:
            raise PreconditionFailed(f"{source.to_string()} not in D(v)")
        w1_source = dec.w1
    if w1_target is None:
        dec = wordmod.canonical_class(target, cdata, v)
        if dec is None:
            raise PreconditionFailed(f"{target.to_string()} not in D(v)")
        w1_target = dec.w1
    key = (source.letters, target.letters, cdata.type_label,
           v.root_matrix, w1_source.root_matrix, w1_target.root_matrix)
    cached = _MU_HAT_CACHE.get(key)
    if cached is not None:
        return cached

    memo: dict = {}

    def in_dv(word: DoubleWord, w1: WeylElement) -> bool:
        k = (word.letters, w1.root_matrix)
        if k not in memo:
            memo[k] = wordmod.is_in_dv(word, cdata, v, w1)
        return memo[k]

    if not in_dv(source, w1_source):
        raise PreconditionFailed(
            f"{source.to_string()} is not a ({w1_source.reduced_word()},*) word of D(v)")
    start = (source, w1_source)
    goal = (target, w1_target)
    from collections import deque
    seen = {start}
    queue = deque([(start, [])])
    path = None
    if start == goal:
        path = []
    expanded = 0
    while queue and path is None:
        (word, w1), trail = queue.popleft()
        expanded += 1
        if expanded > max_states:
            break
        for mv in wordmod.applicable_moves(word, cdata, wordmod.DHAT_KINDS):
            try:
                nxt = wordmod.apply_move(word, mv, cdata)
            except InapplicableMove:
                continue
            if mv.kind == "dual":
                req, out_w1 = wordmod.dual_move_classes(word, cdata)
                if req != w1:
                    continue
            else:
                out_w1 = w1
            state = (nxt, out_w1)
            if state in seen or not in_dv(nxt, out_w1):
                continue
            if state == goal:
                path = trail + [mv]
                break
            seen.add(state)
            queue.append((state, trail + [mv]))
    if path is None:
        raise NoPath(f"no coherent dhat path {source.to_string()} -> {target.to_string()}")
    out = identity_map(source, cdata, restricted=True)
    cur = source
    for mv in path:
        leg = _dhat_edge_map(cur, mv, cdata)
        out = out.then(leg)
        cur = leg.target_word
    _MU_HAT_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# Artin group generators
# ---------------------------------------------------------------------------

def _artin_base_word(cdata: CartanData, j: int, subset: Sequence[int]) -> DoubleWord:
    """A word of R(w0(I), w0) starting with the barred letter j."""
    w0I = weyl.longest_element(cdata, subset)
    sj = weyl.simple(cdata, j)
    rest = (sj * w0I).reduced_word()
    negatives = (-j,) + tuple(-x for x in rest)
    positives = weyl.longest_element(cdata).reduced_word()
    return DoubleWord(negatives + positives)


def artin_T(w: DoubleWord, j: int, cdata: CartanData,
            subset: Optional[Sequence[int]] = None,
            base: Optional[DoubleWord] = None) -> RationalMap:
    """The Artin generator on the bracket torus of w in D(w0(I)): transport to
    the flipped base word, apply the left tropical mutation (which restores
    the base word), transport back.

    The subset I must be stable under the star involution; the resulting map
    does not depend on the admissible base word chosen.
    """
    subset = tuple(subset) if subset is not None else tuple(range(1, cdata.rank + 1))
    star = weyl.star_involution(cdata)
    if sorted(star[i] for i in subset) != sorted(subset):
        raise PreconditionFailed("subset must be star-stable")
    if j not in subset:
        raise PreconditionFailed(f"{j} is not in the subset")
    w0I = weyl.longest_element(cdata, subset)
    dec = wordmod.canonical_class(w, cdata, w0I)
    if dec is None:
        raise PreconditionFailed(f"{w.to_string()} is not in D(w0(I))")
    if base is None:
        base = _artin_base_word(cdata, j, subset)
    flipped = wordmod.l_move(base)  # starts with the positive letter j
    base_w1 = w0I                                  # class of the base word
    flipped_w1 = w0I * weyl.simple(cdata, star[j])  # the moving letter leaves it
    leg_in = mu_hat(w, flipped, cdata, w0I,
                    w1_source=dec.w1, w1_target=flipped_w1)
    trop = MoveStep(cdata, flipped, Move("tau_left", 0), restricted=False)
    assert trop.word_after == base
    middle = RationalMap(cdata, flipped, base, (trop,), True)
    leg_out = mu_hat(base, w, cdata, w0I,
                     w1_source=base_w1, w1_target=dec.w1)
    return leg_in.then(middle).then(leg_out)


def artin_T_word(w: DoubleWord, letters: Sequence[int], cdata: CartanData,
                 subset: Optional[Sequence[int]] = None) -> RationalMap:
    """Composite of Artin generators along a word (leftmost letter first)."""
    out = identity_map(w, cdata, restricted=True)
    for j in letters:
        out = out.then(artin_T(w, j, cdata, subset))
    return out


# ---------------------------------------------------------------------------
# Poisson brackets
# ---------------------------------------------------------------------------

def poisson_bracket_at(seed: Seed, f: Callable, g: Callable, values: Assignment):
    """{f, g} at a point for the log-canonical structure of the seed:
    sum over pairs of eps_hat_ij x_i x_j (d_i f)(d_j g).

    f and g take a jet-valued assignment and return a jet; a SeedIndex is
    also accepted and means the corresponding coordinate function."""
    ixs = sorted(values.keys())
    pos = {ix: t for t, ix in enumerate(ixs)}
    point = [values[ix] for ix in ixs]
    jets = {ix: jet_lift(point, pos[ix]) for ix in ixs}

    def as_fun(h):
        if isinstance(h, tuple):
            return lambda a: a[h]
        return h

    fj = as_fun(f)(jets)
    gj = as_fun(g)(jets)
    out = None
    for i in ixs:
        for j in ixs:
            e = seed.eps_hat(i, j)
            if e == 0:
                continue
            term = e * values[i] * values[j] * fj.partials[pos[i]] * gj.partials[pos[j]]
            out = term if out is None else out + term
    if out is None:
        out = spow(point[0], 0) - spow(point[0], 0)
    return out


def is_poisson_map(m: RationalMap, cfg: TrialConfig,
                   source_bracket: Optional[Seed] = None,
                   target_bracket: Optional[Seed] = None) -> Verdict:
    """Check that m intertwines the log-canonical brackets: for all pairs,
    {m* x'_a, m* x'_b}_source = eps_hat'_ab (m* x'_a)(m* x'_b) at random
    prime-field points."""
    src = source_bracket
    if src is None:
        src = seed_for_word(m.source_word, m.cdata)
        if m.restricted:
            src = bracket_seed(src)
    tgt = target_bracket
    if tgt is None:
        tgt = seed_for_word(m.target_word, m.cdata)
        if m.restricted:
            tgt = bracket_seed(tgt)
    src_ixs = wordmod.seed_indices(m.source_word, m.cdata.rank)
    tgt_ixs = wordmod.seed_indices(m.target_word, m.cdata.rank)

    def lhs(point: tuple) -> tuple:
        values = dict(zip(src_ixs, point))
        out = []
        for a in range(len(tgt_ixs)):
            for b in range(a + 1, len(tgt_ixs)):
                ia, ib = tgt_ixs[a], tgt_ixs[b]
                br = poisson_bracket_at(
                    src,
                    lambda jets, ia=ia: m.apply(jets)[ia],
                    lambda jets, ib=ib: m.apply(jets)[ib],
                    values)
                out.append(br)
        return tuple(out)

    def rhs(point: tuple) -> tuple:
        values = dict(zip(src_ixs, point))
        image = m.apply(values)
        out = []
        for a in range(len(tgt_ixs)):
            for b in range(a + 1, len(tgt_ixs)):
                ia, ib = tgt_ixs[a], tgt_ixs[b]
                out.append(tgt.eps_hat(ia, ib) * image[ia] * image[ib])
        return tuple(out)

    return maps_equal_probabilistic(lhs, rhs, len(src_ixs), cfg)


# ---------------------------------------------------------------------------
# Random points
# ---------------------------------------------------------------------------

def random_assignment(w: DoubleWord, cdata: CartanData, rng: random.Random,
                      prime: Optional[int] = None, bound: int = 40) -> Assignment:
    """Random torus point: nonzero residues mod a prime, or small nonzero
    rationals when prime is None."""
    out: Assignment = {}
    for ix in wordmod.seed_indices(w, cdata.rank):
        if prime is not None:
            out[ix] = Fp(rng.randrange(1, prime), prime)
        else:
            num = rng.choice([n for n in range(-bound, bound + 1) if n != 0])
            den = rng.randrange(1, bound)
            out[ix] = Fraction(num, den)
    return out
