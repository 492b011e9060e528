"""
Fully commutative elements.

An FC element is represented by the :class:`~coxstar.traces.Trace` of any of
its reduced expressions; ``FcElement`` is just a name for such a trace.
Reducedness of general words is decided by the Tits word-problem closure
(:func:`tits_closure`), which is exact but exponential, so it is only used as
an oracle and for small inputs.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NewType, Sequence

from .graph import INF, CoxeterGraph, induced_subgraph
from .traces import (
    CapExceeded, Trace, TraceError, alternating, cartier_foata,
    find_braid_factor, find_square_factor, left_block, right_block,
    strip_left, strip_right,
)

__all__ = [
    "FcElement", "ElementError", "fc_element", "identity",
    "is_reduced_fc", "extends_fc", "enumerate_fc",
    "left_descents", "right_descents", "coset_decompose",
    "tits_closure", "tits_is_reduced", "reduced_words",
    "is_complex_word", "is_weakly_complex", "enumerate_group",
    "normal_shape_case", "cf_block_subgraphs", "DEFAULT_TITS_CAP",
]

FcElement = NewType("FcElement", Trace)

DEFAULT_TITS_CAP = 500_000


class ElementError(ValueError):
    """Input is not of the required kind (e.g. not reduced, not FC)."""


def identity(g: CoxeterGraph) -> FcElement:
    return FcElement(Trace(g, ()))


def _braid_pairs(g: CoxeterGraph):
    return [(i, j, m) for i, j, m in g.bonds if m != INF]


def trace_is_reduced_fc(t: Trace) -> bool:
    if find_square_factor(t) is not None:
        return False
    return all(find_braid_factor(t, i, j, m) is None for i, j, m in _braid_pairs(t.graph))


def is_reduced_fc(g: CoxeterGraph, w: Iterable[int]) -> bool:
    """True iff ``w`` is a reduced expression of a fully commutative element."""
    return trace_is_reduced_fc(cartier_foata(g, w))


def fc_element(g: CoxeterGraph, w: Iterable[int]) -> FcElement:
    t = cartier_foata(g, w)
    if not trace_is_reduced_fc(t):
        raise ElementError(f"{tuple(w)} is not a reduced word of an FC element")
    return FcElement(t)


def _ends_with(t: Trace, letters: Sequence[int]) -> bool:
    # letters are read right to left
    try:
        for x in letters:
            t = strip_right(t, x)
    except TraceError:
        return False
    return True


def extends_fc(w: FcElement, s: int) -> FcElement | None:
    """``w s`` if it is reduced and FC, else None (incremental test)."""
    g = w.graph
    if s in right_block(w):
        return None
    ws = cartier_foata(g, w.word + (s,))
    # only the part of w lying below the new letter can meet it in a factor
    pos = _last_position(ws, s)
    below = ws.below[pos]
    core = Trace(g, ()) if not below else cartier_foata(
        g, [x for k, x in enumerate(ws.word) if (below >> k) & 1])
    for t in g.neighbors(s):
        m = g.label(s, t)
        if m != INF and _ends_with(core, alternating(t, s, m - 1)):
            return None
    return FcElement(ws)


def _last_position(t: Trace, s: int) -> int:
    w = t.word
    return max(k for k, x in enumerate(w) if x == s)


def enumerate_fc(g: CoxeterGraph, max_len: int, cap: int | None = None) -> tuple[list[FcElement], bool]:
    """
    All FC elements of length <= ``max_len``, sorted by (length, blocks).
    The flag is True when the enumeration closed (no element of length
    ``max_len + 1`` exists), i.e. the list is all of W_c.  More than ``cap``
    elements raises :class:`CapExceeded`.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    layer = [identity(g)]
    out = list(layer)
    for _ in range(max_len):
        nxt = set()
        for w in layer:
            for s in range(g.rank):
                x = extends_fc(w, s)
                if x is not None:
                    nxt.add(x)
        layer = sorted(nxt)
        out.extend(layer)
        if cap is not None and len(out) > cap:
            raise CapExceeded(f"FC enumeration exceeds {cap} elements")
        if not layer:
            return out, True
    closed = not any(extends_fc(w, s) is not None for w in layer for s in range(g.rank))
    return out, closed


def left_descents(w: FcElement) -> frozenset[int]:
    return left_block(w)


def right_descents(w: FcElement) -> frozenset[int]:
    return right_block(w)


def coset_decompose(w: FcElement, pair: tuple[int, int], side: str = "left") -> tuple[tuple[int, ...], FcElement]:
    """
    Split ``w = w_I w^I`` (left) or ``w = (^I w)(_I w)`` (right) for
    ``I = pair``.  Returns the alternating part as a word (read in its
    natural left-to-right order) and the remaining element.
    """
    s, t = pair
    if w.graph.commute(s, t):
        raise ElementError(f"generators {s} and {t} commute")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    part: list[int] = []
    rest = w
    while True:
        avail = left_block(rest) if side == "left" else right_block(rest)
        nxt = [x for x in (s, t) if x in avail and (not part or x != part[-1])]
        if not nxt:
            break
        x = nxt[0]
        part.append(x)
        rest = strip_left(rest, x) if side == "left" else strip_right(rest, x)
    if side == "right":
        part.reverse()
    return tuple(part), FcElement(rest)


# ---------------------------------------------------------------------------
# Tits word problem

def _braid_neighbors(g: CoxeterGraph, x: tuple[int, ...]):
    n = len(x)
    for k in range(n - 1):
        a, b = x[k], x[k + 1]
        if a == b:
            continue
        m = g.label(a, b)
        if m == 2:
            yield x[:k] + (b, a) + x[k + 2:]
        elif m != INF and k + m <= n and x[k:k + m] == alternating(a, b, m):
            yield x[:k] + alternating(b, a, m) + x[k + m:]


def tits_closure(g: CoxeterGraph, w: Sequence[int], cap: int = DEFAULT_TITS_CAP) -> tuple[set, bool]:
    """
    Closure of ``w`` under commutations and braid moves.  Returns the set of
    words and whether ``w`` is reduced (no reachable word has a square).
    Raises :class:`CapExceeded` when the closure grows past ``cap``.
    """
    start = tuple(w)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if any(x[k] == x[k + 1] for k in range(len(x) - 1)):
            return seen, False
        for y in _braid_neighbors(g, x):
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"braid closure exceeds {cap} words")
                queue.append(y)
    return seen, True


def tits_is_reduced(g: CoxeterGraph, w: Sequence[int], cap: int = DEFAULT_TITS_CAP) -> bool:
    return tits_closure(g, w, cap)[1]


def reduced_words(g: CoxeterGraph, w: Sequence[int], cap: int = DEFAULT_TITS_CAP) -> set:
    """All reduced expressions of the element represented by reduced ``w``."""
    words, ok = tits_closure(g, w, cap)
    if not ok:
        raise ElementError(f"{tuple(w)} is not reduced")
    return words


def is_complex_word(g: CoxeterGraph, w: Sequence[int], cap: int = DEFAULT_TITS_CAP) -> bool:
    if not tits_is_reduced(g, w, cap):
        raise ElementError(f"{tuple(w)} is not reduced")
    return not is_reduced_fc(g, w)


def is_weakly_complex(g: CoxeterGraph, w: Sequence[int], cap: int = DEFAULT_TITS_CAP) -> bool:
    """
    Complex, and ``w = s u`` reduced with ``u`` fully commutative for some
    left descent ``s``.  Left descents are read off all reduced words.
    """
    words = reduced_words(g, w, cap)
    if is_reduced_fc(g, w):
        return False
    tried = set()
    for x in words:
        if x[0] not in tried:
            tried.add(x[0])
            if is_reduced_fc(g, x[1:]):
                return True
    return False


class GroupElement:
    """A group element given by its full set of reduced words (oracle use)."""

    __slots__ = ("words", "key")

    def __init__(self, words):
        self.words = frozenset(words)
        self.key = min(self.words) if self.words else ()

    @property
    def length(self) -> int:
        return len(self.key)

    def left_descents(self) -> frozenset[int]:
        return frozenset(x[0] for x in self.words if x)

    def right_descents(self) -> frozenset[int]:
        return frozenset(x[-1] for x in self.words if x)

    def __repr__(self):
        return f"GroupElement({self.key})"


def enumerate_group(g: CoxeterGraph, max_len: int, cap: int = DEFAULT_TITS_CAP) -> tuple[list[GroupElement], bool]:
    """
    All group elements of length <= ``max_len`` with their reduced words,
    by breadth-first search using the Tits closure.  The flag is True when
    the group is finite and was exhausted.
    """
    e = GroupElement([()])
    out = [e]
    layer = [e]
    total = 1
    full = frozenset(range(g.rank))
    while True:
        if all(x.right_descents() == full for x in layer):
            return out, True
        if layer[0].length == max_len:
            return out, False
        known: dict[tuple, GroupElement] = {}
        nxt = []
        for x in layer:
            rd = x.right_descents()
            for s in range(g.rank):
                if s in rd:
                    continue
                cand = x.key + (s,)
                if cand in known:
                    continue
                words, ok = tits_closure(g, cand, cap)
                assert ok, "right extension by a non-descent must be reduced"
                y = GroupElement(words)
                total += len(words)
                if total > cap:
                    raise CapExceeded(f"group enumeration exceeds {cap} stored words")
                for u in words:
                    known[u] = y
                nxt.append(y)
        nxt.sort(key=lambda y: y.key)
        out.extend(nxt)
        layer = nxt


# ---------------------------------------------------------------------------
# shapes

def normal_shape_case(g: CoxeterGraph, w: Sequence[int], cap: int = DEFAULT_TITS_CAP,
                      words: Iterable[tuple] | None = None) -> tuple[str, tuple[int, ...]]:
    """
    The first applicable case of the reduced-expression shape classification, with
    a witness reduced expression:

    * ``"i"``: a product of distinct commuting generators;
    * ``"ii"``: begins ``s t`` with m(s,t) != 2;
    * ``"iii"``: ends ``t s`` with m(s,t) != 2;
    * ``"iv"``: begins ``s u t`` with m(s,t), m(t,u) != 2 and m(s,u) = 2.

    Raises :class:`ElementError` if no case applies.
    """
    if words is None:
        words = reduced_words(g, w, cap)
    words = sorted(words)
    for x in words:
        if all(g.commute(a, b) for k, a in enumerate(x) for b in x[k + 1:]):
            return "i", x
    for x in words:
        if len(x) >= 2 and not g.commute(x[0], x[1]):
            return "ii", x
    for x in words:
        if len(x) >= 2 and not g.commute(x[-2], x[-1]):
            return "iii", x
    for x in words:
        if len(x) >= 3:
            s, u, t = x[:3]
            if g.commute(s, u) and not g.commute(s, t) and not g.commute(t, u):
                return "iv", x
    raise ElementError(f"no normal shape applies to {tuple(w)}")


def cf_block_subgraphs(w: FcElement) -> list[CoxeterGraph]:
    """Induced subgraphs on the letters of consecutive block pairs."""
    b = w.blocks
    return [induced_subgraph(w.graph, set(b[i]) | set(b[i + 1]))[0] for i in range(len(b) - 1)]
