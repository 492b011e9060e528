"""
The nonnegative integer invariant h of traces over a star reducible graph.

h is computed by rewriting: ``ss -> s`` adds one, ``sts -> s`` (s, t
noncommuting) adds nothing, and a trace with neither factor is a reduced FC
word, where h is zero.  The order of moves is chosen by a seeded RNG so that
independence of the result from the order can be tested.
"""

from __future__ import annotations

import random
from typing import Sequence

from .classify import classify_star_reducible
from .elements import trace_is_reduced_fc
from .graph import CoxeterGraph, GraphError
from .traces import Trace, _braid_chains, cartier_foata, replace_factor

__all__ = ["h_value", "is_acyclic", "rewrite_moves", "InvariantViolation"]


class InvariantViolation(AssertionError):
    """A property guaranteed by the theory failed at runtime."""


def rewrite_moves(t: Trace) -> list[tuple[str, tuple[int, ...], tuple[int, ...]]]:
    """All applicable moves as ``(kind, letters, positions)``."""
    w = t.word
    g = t.graph
    moves = []
    last: dict[int, int] = {}
    for j, x in enumerate(w):
        i = last.get(x)
        if i is not None and all(g.commute(x, w[k]) for k in range(i + 1, j)):
            moves.append(("ss", (x,), (i, j)))
        last[x] = j
    for s, u in g.pairs():
        for chain in _braid_chains(t, s, u, 3):
            moves.append(("sts", (w[chain[0]], w[chain[1]]), chain))
    return moves


def _require_star_reducible(g: CoxeterGraph):
    if not classify_star_reducible(g, with_counterexamples=False).ok:
        raise GraphError("h is only defined for star reducible graphs")


def h_value(g: CoxeterGraph, w: Sequence[int], seed: int = 0, check_graph: bool = True) -> tuple[int, list[dict]]:
    """
    Rewrite ``w`` to a reduced FC word, choosing moves with ``Random(seed)``.
    Returns (number of ss-moves, move log).
    """
    if check_graph:
        _require_star_reducible(g)
    rng = random.Random(seed)
    t = cartier_foata(g, w)
    h = 0
    log = []
    while True:
        moves = rewrite_moves(t)
        if not moves:
            break
        kind, letters, pos = moves[rng.randrange(len(moves))]
        log.append({"kind": kind, "pair": list(letters), "position": list(pos)})
        if kind == "ss":
            h += 1
        t = cartier_foata(g, replace_factor(t, pos, (t.word[pos[0]],)))
    if not trace_is_reduced_fc(t):
        raise InvariantViolation(f"rewriting of {tuple(w)} stopped at non-FC trace {t}")
    return h, log


def is_acyclic(g: CoxeterGraph, w: Sequence[int]) -> bool:
    return h_value(g, w)[0] == 0
