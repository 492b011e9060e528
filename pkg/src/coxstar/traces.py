"""
Words over the generators, the commutation monoid, and Cartier-Foata normal
form.

A :class:`Trace` is a commutation class of words, stored as its Cartier-Foata
block sequence with each block sorted.  That block sequence is canonical, so
traces compare and hash by it.  ``trace.word`` is the linearization obtained
by reading the blocks in order; all positional data (heap order, factor
occurrences) refers to that word.

>>> from coxstar.graph import family_graph
>>> a3 = family_graph("A3")
>>> cartier_foata(a3, [2, 0, 1]).blocks
((0, 2), (1,))
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

from .graph import CoxeterGraph

__all__ = [
    "Word", "Trace", "TraceError", "CapExceeded",
    "cartier_foata", "trace_from_blocks", "trace_concat",
    "left_block", "right_block", "strip_left", "strip_right",
    "find_square_factor", "find_braid_factor", "commutation_class",
    "alternating", "replace_factor",
]

Word = tuple  # tuple[int, ...]


class TraceError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """A brute-force search exceeded its size cap; the verdict is unknown."""


def alternating(a: int, b: int, n: int) -> tuple[int, ...]:
    """``a b a b ...`` with ``n`` letters."""
    return tuple(a if k % 2 == 0 else b for k in range(n))


class Trace:
    """An element of the commutation monoid of ``graph``."""

    __slots__ = ("graph", "blocks", "_hash", "__dict__")

    def __init__(self, graph: CoxeterGraph, blocks: tuple[tuple[int, ...], ...]):
        self.graph = graph
        self.blocks = blocks
        self._hash = hash(blocks)

    def __eq__(self, other):
        if not isinstance(other, Trace):
            return NotImplemented
        return self.blocks == other.blocks and (self.graph is other.graph or self.graph == other.graph)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __len__(self):
        return len(self.word)

    def __repr__(self):
        return "Trace(" + " ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"

    @cached_property
    def word(self) -> tuple[int, ...]:
        return tuple(x for b in self.blocks for x in b)

    @property
    def length(self) -> int:
        return len(self.word)

    @cached_property
    def sort_key(self):
        """(length, blocks): the ordering used for all deterministic output."""
        return (len(self.word), self.blocks)

    @cached_property
    def above(self) -> tuple[int, ...]:
        """
        ``above[i]`` is the bitmask of positions j > i of ``word`` with
        i < j in the heap order.
        """
        w = self.word
        g = self.graph
        n = len(w)
        up = [0] * n
        for i in range(n - 1, -1, -1):
            mask = 0
            for j in range(i + 1, n):
                if (mask >> j) & 1:
                    continue
                if w[j] == w[i] or not g.commute(w[i], w[j]):
                    mask |= (1 << j) | up[j]
            up[i] = mask
        return tuple(up)

    @cached_property
    def below(self) -> tuple[int, ...]:
        n = len(self.word)
        down = [0] * n
        for i, mask in enumerate(self.above):
            for j in range(i + 1, n):
                if (mask >> j) & 1:
                    down[j] |= 1 << i
        return tuple(down)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def _cf_blocks(g: CoxeterGraph, w: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    # Peel the set of possible first letters and repeat.  A letter occurrence
    # can come first iff no earlier occurrence is equal to it or fails to
    # commute with it; equivalently its block index is one more than the
    # largest block index among such earlier occurrences.
    level: list[int] = []
    nblocks = 0
    for k, x in enumerate(w):
        lev = 0
        for j in range(k):
            y = w[j]
            if (y == x or not g.commute(x, y)) and level[j] + 1 > lev:
                lev = level[j] + 1
        level.append(lev)
        nblocks = max(nblocks, lev + 1)
    blocks: list[list[int]] = [[] for _ in range(nblocks)]
    for x, lev in zip(w, level):
        blocks[lev].append(x)
    return tuple(tuple(sorted(b)) for b in blocks)


def cartier_foata(g: CoxeterGraph, w: Iterable[int]) -> Trace:
    """Cartier-Foata normal form of the commutation class of ``w``."""
    w = tuple(w)
    for x in w:
        if not 0 <= x < g.rank:
            raise TraceError(f"generator {x} out of range for rank {g.rank}")
    return Trace(g, _cf_blocks(g, w))


def trace_from_blocks(g: CoxeterGraph, blocks) -> Trace:
    """Parse a block list (e.g. from JSON); it must already be in normal form."""
    t = cartier_foata(g, [x for b in blocks for x in b])
    if t.blocks != tuple(tuple(sorted(b)) for b in blocks):
        raise TraceError(f"{blocks!r} is not a Cartier-Foata block sequence")
    return t


def trace_concat(a: Trace, b: Trace) -> Trace:
    if a.graph != b.graph:
        raise TraceError("traces over different graphs")
    return Trace(a.graph, _cf_blocks(a.graph, a.word + b.word))


def left_block(t: Trace) -> frozenset[int]:
    return frozenset(t.blocks[0]) if t.blocks else frozenset()


def right_block(t: Trace) -> frozenset[int]:
    """Letters that can be moved to the end of the word."""
    w = t.word
    g = t.graph
    out = set()
    for k, x in enumerate(w):
        if all(g.commute(x, y) for y in w[k + 1:]):
            out.add(x)
    return frozenset(out)


def strip_left(t: Trace, s: int) -> Trace:
    """The unique t' with s t' = t."""
    if s not in left_block(t):
        raise TraceError(f"generator {s} is not a first letter of {t}")
    w = list(t.word)
    w.remove(s)
    return Trace(t.graph, _cf_blocks(t.graph, w))


def strip_right(t: Trace, s: int) -> Trace:
    """The unique t' with t' s = t."""
    w = list(t.word)
    g = t.graph
    for k in range(len(w) - 1, -1, -1):
        if w[k] == s:
            if all(g.commute(s, y) for y in w[k + 1:]):
                del w[k]
                return Trace(g, _cf_blocks(g, w))
            break
    raise TraceError(f"generator {s} is not a last letter of {t}")


def find_square_factor(t: Trace) -> tuple[int, tuple[int, int]] | None:
    """
    First pair of consecutive occurrences of some ``s`` that can be made
    adjacent, as ``(s, (i, j))`` with positions in ``t.word``.
    """
    w = t.word
    g = t.graph
    last: dict[int, int] = {}
    for j, x in enumerate(w):
        i = last.get(x)
        if i is not None and all(g.commute(x, w[k]) for k in range(i + 1, j)):
            return x, (i, j)
        last[x] = j
    return None


def _braid_chains(t: Trace, s: int, u: int, length: int):
    w = t.word
    occ = [k for k, x in enumerate(w) if x == s or x == u]
    above, below = t.above, t.below
    for start in range(len(occ) - length + 1):
        chain = occ[start:start + length]
        if any(w[chain[k]] == w[chain[k + 1]] for k in range(length - 1)):
            continue
        inside = above[chain[0]] & below[chain[-1]]
        mask = 0
        for k in chain[1:-1]:
            mask |= 1 << k
        if inside & ~mask == 0:
            yield tuple(chain)


def find_braid_factor(t: Trace, s: int, u: int, length: int) -> tuple[int, ...] | None:
    """
    Positions (in ``t.word``) of a convex alternating chain of ``s``/``u``
    occurrences with ``length`` members, or None.  Such a chain can be made
    into a consecutive factor of some linearization.
    """
    if t.graph.commute(s, u):
        raise TraceError(f"generators {s} and {u} commute")
    if s == u or length < 1:
        raise TraceError("need two distinct generators and a positive length")
    return next(_braid_chains(t, s, u, length), None)


def replace_factor(t: Trace, positions: Sequence[int], replacement: Sequence[int]) -> tuple[int, ...]:
    """
    A word for ``t`` with the convex set ``positions`` replaced by
    ``replacement``.  Elements below the set go first, then the replacement,
    then the rest.
    """
    w = t.word
    pos = set(positions)
    below_mask = 0
    for p in positions:
        below_mask |= t.below[p]
    before = [w[k] for k in range(len(w)) if k not in pos and (below_mask >> k) & 1]
    after = [w[k] for k in range(len(w)) if k not in pos and not (below_mask >> k) & 1]
    return tuple(before) + tuple(replacement) + tuple(after)


def commutation_class(g: CoxeterGraph, w: Sequence[int], cap: int = 200_000) -> set[tuple[int, ...]]:
    """All words reachable from ``w`` by swapping adjacent commuting letters."""
    start = tuple(w)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for k in range(len(x) - 1):
            a, b = x[k], x[k + 1]
            if a != b and g.commute(a, b):
                y = x[:k] + (b, a) + x[k + 2:]
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"commutation class exceeds {cap} words")
                    queue.append(y)
    return seen

