"""Double words and their moves.

A double word is a finite sequence of nonzero signed letters: ``+i`` is the
letter i of the positive alphabet, ``-i`` the barred letter of the negative
alphabet (so the bar map is plain negation, an involution).  The negative
subword spells the first Weyl factor u, the positive subword the second
factor v.

Moves:

- positive/negative d-moves rewrite an alternating window i,j,i,... of one
  sign into j,i,j,... (window length = order of s_i s_j: 2, 3, 4 or 6);
- mixed 2-moves swap two adjacent letters of opposite signs;
- tau moves flip the bar on the first or the last letter;
- the dual move requires the last l(w0) letters to be a one-sign reduced
  word of w0 preceded by a letter of the opposite sign k; it replaces that
  letter by the starred bar-flip k* and reverses-and-flips the w0 block.

Each move also carries a relabeling of seed indices (wire, occurrence):
trivial for everything except braid d-moves of order 3 (where the interior
slot crosses wires and the right edge shifts) and the dual move (where the
top slot of wire k crosses to wire k*).
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import cartan as weyl
from .cartan import CartanData, WeylElement
from .errors import InapplicableMove, NoPath, PreconditionFailed

SeedIndex = tuple[int, int]  # (wire, occurrence counter)

ALL_MOVE_KINDS = ("positive_d", "negative_d", "mixed2", "tau_left", "tau_right", "dual")
DHAT_KINDS = ("positive_d", "negative_d", "mixed2", "tau_right", "dual")
D_KINDS = ("positive_d", "negative_d", "mixed2")


@dataclass(frozen=True)
class DoubleWord:
    letters: tuple[int, ...]

    def __post_init__(self):
        if any(x == 0 for x in self.letters):
            raise ValueError("letters are nonzero signed integers")

    @staticmethod
    def from_string(text: str) -> "DoubleWord":
        text = text.strip()
        if not text:
            return DoubleWord(())
        return DoubleWord(tuple(int(tok) for tok in text.split(",")))

    def to_string(self) -> str:
        return ",".join(str(x) for x in self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    @property
    def positive_subword(self) -> tuple[int, ...]:
        return tuple(x for x in self.letters if x > 0)

    @property
    def negative_subword(self) -> tuple[int, ...]:
        return tuple(-x for x in self.letters if x < 0)

    def bar(self) -> "DoubleWord":
        return DoubleWord(tuple(-x for x in self.letters))

    def concat(self, other: "DoubleWord") -> "DoubleWord":
        return DoubleWord(self.letters + other.letters)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in self.letters:
            out[abs(x)] = out.get(abs(x), 0) + 1
        return out

    def count(self, wire: int) -> int:
        return sum(1 for x in self.letters if abs(x) == wire)

    def occurrence_counter(self, pos: int) -> int:
        """Counter of the slot just after position ``pos``: the number of
        earlier occurrences of the same wire, plus one."""
        wire = abs(self.letters[pos])
        return 1 + sum(1 for x in self.letters[:pos] if abs(x) == wire)

    def __repr__(self):
        return f"DoubleWord({self.to_string()!r})"


def word(*letters: int) -> DoubleWord:
    return DoubleWord(tuple(letters))


def seed_indices(w: DoubleWord, rank: int) -> list[SeedIndex]:
    counts = w.counts()
    out = []
    for wire in range(1, rank + 1):
        for k in range(counts.get(wire, 0) + 1):
            out.append((wire, k))
    return out


def classify(w: DoubleWord, cdata: CartanData):
    """Return ("reduced", u, v) when both subwords are reduced, else
    ("not_reduced", u, v) with u, v the Weyl elements they spell anyway."""
    u = weyl.from_word(cdata, w.negative_subword)
    v = weyl.from_word(cdata, w.positive_subword)
    ok = (u.length() == len(w.negative_subword)
          and v.length() == len(w.positive_subword))
    return ("reduced" if ok else "not_reduced", u, v)


# ---------------------------------------------------------------------------
# Moves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    kind: str            # one of ALL_MOVE_KINDS
    pos: int = 0         # window start (d-moves, mixed2); unused for tau/dual
    order: int = 0       # window length for d-moves

    def describe(self) -> dict:
        return {"kind": self.kind, "pos": self.pos, "order": self.order}


def _d_window_ok(w: DoubleWord, pos: int, order: int, sign: int, cdata: CartanData) -> bool:
    if pos < 0 or pos + order > len(w):
        return False
    if order < 2:
        return False
    window = w.letters[pos:pos + order]
    if any((x > 0) != (sign > 0) for x in window):
        return False
    i, j = abs(window[0]), abs(window[1])
    if i == j:
        return False
    if cdata.m_order(i, j) != order:
        return False
    for t, x in enumerate(window):
        if abs(x) != (i if t % 2 == 0 else j):
            return False
    return True


def dual_block_length(cdata: CartanData) -> int:
    return weyl.longest_element(cdata).length()


def _dual_ok(w: DoubleWord, cdata: CartanData) -> bool:
    """Core/inverse-core dual-move shapes only: the trailing w0 block has one
    sign and the letter just before it has the opposite sign."""
    L = dual_block_length(cdata)
    if len(w) < L + 1:
        return False
    block = w.letters[-L:]
    signs = {x > 0 for x in block}
    if len(signs) != 1:
        return False
    positive_block = block[0] > 0
    moving = w.letters[-L - 1]
    if (moving > 0) == positive_block:
        return False
    letters = tuple(abs(x) for x in block)
    if not weyl.is_reduced(cdata, letters):
        return False
    return weyl.from_word(cdata, letters) == weyl.longest_element(cdata)


def applicable_moves(w: DoubleWord, cdata: CartanData,
                     kinds: Iterable[str] = ALL_MOVE_KINDS) -> list[Move]:
    kinds = tuple(kinds)
    out: list[Move] = []
    n = len(w)
    if "mixed2" in kinds:
        for p in range(n - 1):
            if (w[p] > 0) != (w[p + 1] > 0):
                out.append(Move("mixed2", p, 2))
    for kind, sign in (("positive_d", 1), ("negative_d", -1)):
        if kind not in kinds:
            continue
        for p in range(n - 1):
            if (w[p] > 0) != (sign > 0) or (w[p + 1] > 0) != (sign > 0):
                continue
            i, j = abs(w[p]), abs(w[p + 1])
            if i == j:
                continue
            order = cdata.m_order(i, j)
            if _d_window_ok(w, p, order, sign, cdata):
                out.append(Move(kind, p, order))
    if "tau_left" in kinds and n >= 1:
        out.append(Move("tau_left", 0))
    if "tau_right" in kinds and n >= 1:
        out.append(Move("tau_right", n - 1))
    if "dual" in kinds and _dual_ok(w, cdata):
        out.append(Move("dual", n - 1 - dual_block_length(cdata)))
    return out


def apply_move(w: DoubleWord, move: Move, cdata: CartanData) -> DoubleWord:
    letters = list(w.letters)
    if move.kind == "mixed2":
        p = move.pos
        if p < 0 or p + 1 >= len(letters) or (letters[p] > 0) == (letters[p + 1] > 0):
            raise InapplicableMove(f"mixed2 at {p} in {w.to_string()}")
        letters[p], letters[p + 1] = letters[p + 1], letters[p]
        return DoubleWord(tuple(letters))
    if move.kind in ("positive_d", "negative_d"):
        sign = 1 if move.kind == "positive_d" else -1
        if not _d_window_ok(w, move.pos, move.order, sign, cdata):
            raise InapplicableMove(f"{move.kind}({move.order}) at {move.pos} in {w.to_string()}")
        p, m = move.pos, move.order
        i, j = abs(letters[p]), abs(letters[p + 1])
        for t in range(m):
            letters[p + t] = sign * (j if t % 2 == 0 else i)
        return DoubleWord(tuple(letters))
    if move.kind == "tau_left":
        if not letters:
            raise InapplicableMove("tau on empty word")
        letters[0] = -letters[0]
        return DoubleWord(tuple(letters))
    if move.kind == "tau_right":
        if not letters:
            raise InapplicableMove("tau on empty word")
        letters[-1] = -letters[-1]
        return DoubleWord(tuple(letters))
    if move.kind == "dual":
        if not _dual_ok(w, cdata):
            raise InapplicableMove(f"dual move on {w.to_string()}")
        L = dual_block_length(cdata)
        block = letters[-L:]
        moving = letters[-L - 1]
        star = weyl.star_involution(cdata)
        new_letter = -_signed(star[abs(moving)], moving > 0)
        flipped = [-x for x in reversed(block)]
        return DoubleWord(tuple(letters[:-L - 1] + [new_letter] + flipped))
    raise InapplicableMove(f"unknown move kind {move.kind!r}")


def _signed(wire: int, positive: bool) -> int:
    return wire if positive else -wire


def index_map(w: DoubleWord, move: Move, cdata: CartanData) -> dict[SeedIndex, SeedIndex]:
    """Relabeling of seed indices induced by a move (identity entries omitted)."""
    out: dict[SeedIndex, SeedIndex] = {}
    if move.kind in ("positive_d", "negative_d") and move.order == 3:
        p = move.pos
        i, j = abs(w[p]), abs(w[p + 1])
        ci = sum(1 for x in w.letters[:p] if abs(x) == i)
        cj = sum(1 for x in w.letters[:p] if abs(x) == j)
        out[(i, ci + 1)] = (j, cj + 1)           # mutated slot crosses wires
        out[(i, ci + 2)] = (i, ci + 1)           # right edge of wire i
        out[(j, cj + 1)] = (j, cj + 2)           # right edge of wire j
        for k in range(ci + 3, w.count(i) + 1):
            out[(i, k)] = (i, k - 1)
        for k in range(cj + 2, w.count(j) + 1):
            out[(j, k)] = (j, k + 1)
    elif move.kind == "dual":
        # frozen slots match wire-preservingly; the moved wire loses one slot
        # so its top counter drops, the starred wire gains one
        L = dual_block_length(cdata)
        k_wire = abs(w.letters[-L - 1])
        target = apply_move(w, move, cdata)
        if target.count(k_wire) != w.count(k_wire):
            out[(k_wire, w.count(k_wire))] = (k_wire, target.count(k_wire))
            ks = weyl.star_involution(cdata)[k_wire]
            out[(ks, w.count(ks))] = (ks, target.count(ks))
    return out


def move_path(source: DoubleWord, target: DoubleWord, cdata: CartanData,
              kinds: Iterable[str] = ALL_MOVE_KINDS,
              max_states: int = 200_000,
              neighbor_filter=None) -> list[Move]:
    """Shortest chain of moves from source to target (BFS).  Raises NoPath
    when the component is exhausted or ``max_states`` words were expanded."""
    kinds = tuple(kinds)
    if source == target:
        return []
    seen = {source}
    queue = deque([(source, [])])
    expanded = 0
    while queue:
        cur, path = queue.popleft()
        expanded += 1
        if expanded > max_states:
            raise NoPath(f"search aborted after {max_states} states")
        for mv in applicable_moves(cur, cdata, kinds):
            try:
                nxt = apply_move(cur, mv, cdata)
            except InapplicableMove:
                continue
            if nxt in seen:
                continue
            if neighbor_filter is not None and not neighbor_filter(nxt):
                continue
            if nxt == target:
                return path + [mv]
            seen.add(nxt)
            queue.append((nxt, path + [mv]))
    raise NoPath(f"no {kinds} path {source.to_string()} -> {target.to_string()}")


# ---------------------------------------------------------------------------
# Word constructions: sections, squares, stars, trivial (w1,w2)_v-words
# ---------------------------------------------------------------------------

def is_positive_reduced(w: DoubleWord, cdata: CartanData) -> bool:
    return all(x > 0 for x in w.letters) and weyl.is_reduced(cdata, w.positive_subword)


def is_negative_reduced(w: DoubleWord, cdata: CartanData) -> bool:
    return all(x < 0 for x in w.letters) and weyl.is_reduced(cdata, w.negative_subword)


def section_word(w: DoubleWord, k: int, cdata: CartanData) -> DoubleWord:
    """k-th section of a one-sign reduced word, k in [1, n+1].

    For a positive word i1..in it is the word (bar of in..ik)(i1..i_{k-1});
    for a negative word the mirror image: (bar of jk..jn)(j_{k-1}..j1).
    """
    n = len(w)
    if not 1 <= k <= n + 1:
        raise PreconditionFailed(f"section index {k} outside [1,{n + 1}]")
    if is_positive_reduced(w, cdata):
        tail = tuple(-x for x in reversed(w.letters[k - 1:]))
        head = w.letters[:k - 1]
        return DoubleWord(tail + head)
    if is_negative_reduced(w, cdata):
        tail = tuple(w.letters[k - 1:])
        head = tuple(-x for x in reversed(w.letters[:k - 1]))
        return DoubleWord(tail + head)
    raise PreconditionFailed("sections need a one-sign reduced word")


def square_word(w: DoubleWord, cdata: CartanData) -> DoubleWord:
    """Reverse the word and flip every bar (the involution written i -> i-square)."""
    if is_positive_reduced(w, cdata):
        return section_word(w, 1, cdata)
    if is_negative_reduced(w, cdata):
        return section_word(w, len(w) + 1, cdata)
    raise PreconditionFailed("square needs a one-sign reduced word")


def star_word(w: DoubleWord, cdata: CartanData) -> DoubleWord:
    """Letterwise image under the star involution composed with the bar map."""
    star = weyl.star_involution(cdata)
    return DoubleWord(tuple(-_signed(star[abs(x)], x > 0) for x in w.letters))


def l_move(w: DoubleWord) -> DoubleWord:
    if not w.letters:
        raise PreconditionFailed("L-move on empty word")
    return DoubleWord((-w.letters[0],) + w.letters[1:])


def r_move(w: DoubleWord) -> DoubleWord:
    if not w.letters:
        raise PreconditionFailed("R-move on empty word")
    return DoubleWord(w.letters[:-1] + (-w.letters[-1],))


@dataclass(frozen=True)
class TrivialDecomposition:
    """A factorization word = i1 i2 witnessing membership in W(w1,w2)_v."""

    w1: WeylElement
    w2: WeylElement
    v: WeylElement
    split: int  # i1 = word[:split], i2 = word[split:]


def trivial_vword(cdata: CartanData, w1: WeylElement, w2: WeylElement,
                  v: WeylElement) -> DoubleWord:
    """The canonical trivial (w1,w2)_v-word: each factor written bars first.

    i1 spells (w1*)^{-1} in the barred alphabet then v w1^{-1} in the plain
    one; i2 spells w2^{-1} barred then w0 w2^{-1} plain.
    """
    if not weyl.right_weak_leq(w1, v):
        raise PreconditionFailed("w1 must be below v in the right weak order")
    w0 = weyl.longest_element(cdata)
    n1 = weyl.star_element(w1).inverse().reduced_word()
    p1 = (v * w1.inverse()).reduced_word()
    n2 = w2.inverse().reduced_word()
    p2 = (w0 * w2.inverse()).reduced_word()
    return DoubleWord(tuple(-x for x in n1) + p1 + tuple(-x for x in n2) + p2)


def _splits(seq: Sequence[int], cdata: CartanData):
    """All (prefix element, suffix element, cut) with both parts reduced."""
    out = []
    for cut in range(len(seq) + 1):
        a, b = seq[:cut], seq[cut:]
        if weyl.is_reduced(cdata, a) and weyl.is_reduced(cdata, b):
            out.append((weyl.from_word(cdata, a), weyl.from_word(cdata, b), cut))
    return out


def trivial_decompositions(w: DoubleWord, cdata: CartanData,
                           v: Optional[WeylElement] = None) -> list[TrivialDecomposition]:
    """All splits word = i1 i2 exhibiting the word as a trivial (w1,w2)_v-word.

    When ``v`` is given only decompositions for that v are returned; otherwise
    v is derived from the split (v = value(pos(i1)) * w1).
    """
    w0 = weyl.longest_element(cdata)
    out = []
    for cut in range(len(w) + 1):
        i1 = DoubleWord(w.letters[:cut])
        i2 = DoubleWord(w.letters[cut:])
        n1, p1 = i1.negative_subword, i1.positive_subword
        n2, p2 = i2.negative_subword, i2.positive_subword
        if not all(weyl.is_reduced(cdata, s) for s in (n1, p1, n2, p2)):
            continue
        w1 = weyl.star_element(weyl.from_word(cdata, n1).inverse())
        w2 = weyl.from_word(cdata, n2).inverse()
        if weyl.from_word(cdata, p2) != w0 * w2.inverse():
            continue
        if len(p2) != w0.length() - w2.length():
            continue
        cand_v = weyl.from_word(cdata, p1) * w1
        if v is not None and cand_v != v:
            continue
        if len(p1) != cand_v.length() - w1.length():
            continue
        if not weyl.right_weak_leq(w1, cand_v):
            continue
        out.append(TrivialDecomposition(w1, w2, cand_v, cut))
    return out


def shuffle_class_decomposition(w: DoubleWord, cdata: CartanData,
                                v: Optional[WeylElement] = None,
                                w1: Optional[WeylElement] = None):
    """Witness that w lies in W(w1,w2)_v for some trivial word in its
    mixed-2-move class.  Returns (decomposition-of-trivial-word, trivial word)
    or None.  Mixed 2-moves preserve the one-sign subwords, so it is enough
    to cut those subwords consistently.  Everything involved is immutable, so
    results are cached globally (class searches revisit the same words a lot).
    """
    return _shuffle_class_cached(w, cdata, v, w1)


@functools.lru_cache(maxsize=200_000)
def _shuffle_class_cached(w: DoubleWord, cdata: CartanData,
                          v: Optional[WeylElement],
                          w1: Optional[WeylElement]):
    w0 = weyl.longest_element(cdata)
    neg, pos = w.negative_subword, w.positive_subword
    for ncut in range(len(neg) + 1):
        n1, n2 = neg[:ncut], neg[ncut:]
        if not (weyl.is_reduced(cdata, n1) and weyl.is_reduced(cdata, n2)):
            continue
        cand_w1 = weyl.star_element(weyl.from_word(cdata, n1).inverse())
        cand_w2 = weyl.from_word(cdata, n2).inverse()
        if w1 is not None and cand_w1 != w1:
            continue
        p2_len = w0.length() - cand_w2.length()
        if p2_len < 0 or p2_len > len(pos):
            continue
        p1, p2 = pos[:len(pos) - p2_len], pos[len(pos) - p2_len:]
        if not (weyl.is_reduced(cdata, p1) and weyl.is_reduced(cdata, p2)):
            continue
        if weyl.from_word(cdata, p2) != w0 * cand_w2.inverse():
            continue
        cand_v = weyl.from_word(cdata, p1) * cand_w1
        if v is not None and cand_v != v:
            continue
        if len(p1) != cand_v.length() - cand_w1.length():
            continue
        if not weyl.right_weak_leq(cand_w1, cand_v):
            continue
        trivial = DoubleWord(tuple(-x for x in n1) + p1 + tuple(-x for x in n2) + p2)
        return (TrivialDecomposition(cand_w1, cand_w2, cand_v,
                                     ncut + len(p1)), trivial)
    return None


def is_in_dv(w: DoubleWord, cdata: CartanData, v: WeylElement,
             w1: Optional[WeylElement] = None) -> bool:
    return shuffle_class_decomposition(w, cdata, v, w1) is not None


def is_in_class(w: DoubleWord, cdata: CartanData, v: WeylElement,
                w1: WeylElement, w2: WeylElement) -> bool:
    """Membership in the single class W(w1,w2)_v."""
    w0 = weyl.longest_element(cdata)
    neg, pos = w.negative_subword, w.positive_subword
    ncut = w1.length()
    if not (weyl.is_reduced(cdata, neg[:ncut]) and weyl.is_reduced(cdata, neg[ncut:])):
        return False
    if weyl.from_word(cdata, neg[:ncut]) != weyl.star_element(w1).inverse():
        return False
    if weyl.from_word(cdata, neg[ncut:]) != w2.inverse():
        return False
    p2_len = w0.length() - w2.length()
    if p2_len < 0 or p2_len > len(pos):
        return False
    p1, p2 = pos[:len(pos) - p2_len], pos[len(pos) - p2_len:]
    if not (weyl.is_reduced(cdata, p1) and weyl.is_reduced(cdata, p2)):
        return False
    if weyl.from_word(cdata, p2) != w0 * w2.inverse():
        return False
    if weyl.from_word(cdata, p1) != v * w1.inverse():
        return False
    if len(p1) != v.length() - w1.length():
        return False
    return weyl.right_weak_leq(w1, v)


def canonical_class(w: DoubleWord, cdata: CartanData,
                    v: Optional[WeylElement] = None,
                    w1: Optional[WeylElement] = None) -> Optional[TrivialDecomposition]:
    """The factorization context a word is evaluated in by default: the
    earliest valid cut when the word is factored, else the first class found
    by cutting its one-sign subwords."""
    decs = trivial_decompositions(w, cdata, v)
    if w1 is not None:
        decs = [d for d in decs if d.w1 == w1]
    if decs:
        return decs[0]
    found = shuffle_class_decomposition(w, cdata, v, w1)
    return None if found is None else found[0]


def dual_move_classes(w: DoubleWord, cdata: CartanData
                      ) -> tuple[WeylElement, WeylElement]:
    """(required source class, resulting class) of the dual move at w.

    For the shape prefix-k_bar-positive_block the source must sit in the
    (w1, e) class with w1 spelled by the negative subword up to and
    including the moving letter; the image lands in the class where that
    letter is gone and the flipped block contributes the longest element on
    the second factor.  The opposite shape is the reverse edge.
    """
    L = dual_block_length(cdata)
    if not _dual_ok(w, cdata):
        raise InapplicableMove(f"no dual move at {w.to_string()}")
    if w.letters[-1] > 0:  # shape A
        i1 = DoubleWord(w.letters[:-L])
        u = weyl.from_word(cdata, i1.negative_subword)
        src_w1 = weyl.star_element(u.inverse())
        u_prefix = weyl.from_word(cdata, DoubleWord(w.letters[:-L - 1]).negative_subword)
        tgt_w1 = weyl.star_element(u_prefix.inverse())
        return src_w1, tgt_w1
    target = apply_move(w, Move("dual", len(w) - 1 - L), cdata)
    src_of_reverse, tgt_of_reverse = dual_move_classes(target, cdata)
    return tgt_of_reverse, src_of_reverse


@dataclass(frozen=True)
class MembershipWitness:
    w1: WeylElement
    w2: WeylElement
    trivial_word: DoubleWord
    chain: tuple[Move, ...]  # mixed 2-moves from the input word to the trivial word


def membership(w: DoubleWord, cdata: CartanData, v: WeylElement,
               w1: Optional[WeylElement] = None) -> Optional[MembershipWitness]:
    """Decide membership in D_{w1}(v) (any w1 <= v when not pinned) by a
    bounded BFS over mixed 2-moves, returning the witnessing trivial word
    and move chain.  The mixed-2 class of a word is the finite set of
    shuffles of its one-sign subwords, so the bound is a safety net only."""
    bound = max(16, len(w) ** 2) * 64
    seen = {w}
    queue = deque([(w, ())])
    while queue:
        cur, chain = queue.popleft()
        decs = trivial_decompositions(cur, cdata, v)
        for dec in decs:
            if w1 is None or dec.w1 == w1:
                return MembershipWitness(dec.w1, dec.w2, cur, chain)
        if len(seen) > bound:
            break
        for mv in applicable_moves(cur, cdata, ("mixed2",)):
            nxt = apply_move(cur, mv, cdata)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, chain + (mv,)))
    return None
