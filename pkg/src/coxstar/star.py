"""
Strings and star operations on fully commutative elements.

For a noncommuting pair ``I = (s, t)`` an FC element ``w`` sits at position
``k = len(w_I)`` of its left ``I``-string (``w = w_I w^I``); right strings
use the suffix instead.  Going down removes the outer letter of the
alternating part (needs ``k >= 2``); going up adds one (needs
``1 <= k <= m - 2``).

>>> from coxstar.graph import family_graph
>>> from coxstar.elements import fc_element
>>> b2 = family_graph("B2")
>>> w = fc_element(b2, [1, 0])          # w = ts with s=0, t=1
>>> star_up(w, (0, 1), "left").word, star_down(w, (0, 1), "left").word
((0, 1, 0), (0,))
"""

from __future__ import annotations

from dataclasses import dataclass

from .elements import ElementError, FcElement, coset_decompose, enumerate_fc
from .graph import INF, CoxeterGraph, Label
from .traces import Trace, cartier_foata, strip_left, strip_right

__all__ = [
    "StringPosition", "string_position", "star_up", "star_down",
    "is_commuting_product", "star_reduce_path", "audit_graph", "StarReducer",
]

SIDES = ("left", "right")


@dataclass(frozen=True)
class StringPosition:
    pair: tuple[int, int]
    side: str
    m: Label
    k: int
    part: tuple[int, ...]  # the alternating prefix (left) or suffix (right)

    @property
    def outer(self) -> int | None:
        """The letter at the outer end of the alternating part."""
        if not self.part:
            return None
        return self.part[0] if self.side == "left" else self.part[-1]

    @property
    def inner(self) -> int | None:
        if not self.part:
            return None
        return self.part[-1] if self.side == "left" else self.part[0]


def string_position(w: FcElement, pair: tuple[int, int], side: str = "left") -> StringPosition:
    part, _ = coset_decompose(w, pair, side)
    s, t = pair
    return StringPosition((s, t), side, w.graph.label(s, t), len(part), part)


def star_up(w: FcElement, pair: tuple[int, int], side: str = "left") -> FcElement | None:
    """``^*w`` (left) or ``w^*`` (right); None when undefined."""
    pos = string_position(w, pair, side)
    if pos.k < 1 or (pos.m != INF and pos.k > pos.m - 2):
        return None
    s, t = pair
    new = t if pos.outer == s else s
    g = w.graph
    word = (new,) + w.word if side == "left" else w.word + (new,)
    return FcElement(cartier_foata(g, word))


def star_down(w: FcElement, pair: tuple[int, int], side: str = "left") -> FcElement | None:
    """``_*w`` (left) or ``w_*`` (right); None when undefined."""
    pos = string_position(w, pair, side)
    if pos.k < 2:
        return None
    if side == "left":
        return FcElement(strip_left(w, pos.outer))
    return FcElement(strip_right(w, pos.outer))


def is_commuting_product(w: Trace) -> bool:
    return len(w.blocks) <= 1


Step = tuple[tuple[int, int], str, FcElement]


class StarReducer:
    """
    Memoized search for a chain of star reductions down to a commuting
    product.  Moves are tried with pairs in index order, left before right,
    so the returned path is deterministic.
    """

    def __init__(self, g: CoxeterGraph):
        self.graph = g
        self._memo: dict[Trace, tuple[Step, ...] | None] = {}

    def path(self, w: FcElement) -> list[Step] | None:
        if w.graph != self.graph:
            raise ElementError("element belongs to a different graph")
        res = self._search(w)
        return None if res is None else list(res)

    def down_moves(self, w: FcElement):
        for pair in self.graph.pairs():
            for side in SIDES:
                u = star_down(w, pair, side)
                if u is not None:
                    yield pair, side, u

    def _search(self, w: FcElement):
        memo = self._memo
        if w in memo:
            return memo[w]
        if is_commuting_product(w):
            memo[w] = ()
            return ()
        # iterative deepening is unnecessary: length drops by one per move
        result = None
        for pair, side, u in self.down_moves(w):
            sub = self._search(u)
            if sub is not None:
                result = ((pair, side, u),) + sub
                break
        memo[w] = result
        return result


def star_reduce_path(w: FcElement) -> list[Step] | None:
    """
    A chain of length-decreasing star operations from ``w`` to a product of
    commuting generators (empty if ``w`` already is one), or None if no such
    chain exists.
    """
    return StarReducer(w.graph).path(w)


def audit_graph(g: CoxeterGraph, max_len: int) -> tuple[list[FcElement], bool]:
    """
    FC elements of length <= ``max_len`` that are not star reducible to a
    commuting product, plus whether the enumeration covered all of W_c.
    """
    elements, exhaustive = enumerate_fc(g, max_len)
    reducer = StarReducer(g)
    witnesses = [w for w in elements if reducer.path(w) is None]
    return witnesses, exhaustive


def path_to_json(path: list[Step]) -> list[dict]:
    return [{"pair": list(pair), "side": "L" if side == "left" else "R", "result": u.to_json()}
            for pair, side, u in path]
