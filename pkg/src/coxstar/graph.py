"""
Coxeter graphs, the named families that occur in the star reducible
classification, and simple graph surgery.

Generators are the integers ``0 .. rank-1``.  Only bonds with label >= 3 are
stored; a missing pair commutes (label 2).  An infinite bond is stored as
``INF`` (``math.inf``), which compares above every finite label.

>>> g = family_graph("B3")
>>> g.label(0, 1), g.label(1, 2), g.label(0, 2)
(4, 3, 2)
>>> upsilon(g).label(0, 1)
3
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

__all__ = [
    "INF", "Label", "GraphError", "CoxeterGraph", "FamilySpec",
    "graph_from_edges", "graph_from_json", "graph_to_json",
    "parse_family", "family_graph", "connected_components",
    "induced_subgraph", "upsilon",
]

INF = math.inf

Label = Union[int, float]


class GraphError(ValueError):
    """Bad graph data: out-of-range vertex, conflicting or invalid label."""


def _check_label(label) -> Label:
    if label == "inf" or label == INF:
        return INF
    if isinstance(label, bool) or not isinstance(label, int):
        raise GraphError(f"bond label must be an integer or 'inf', got {label!r}")
    if label < 2:
        raise GraphError(f"bond label must be >= 2, got {label}")
    return label


@dataclass(frozen=True, eq=False)
class CoxeterGraph:
    """
    A Coxeter graph on ``rank`` generators.

    ``bonds`` is a sorted tuple of ``(i, j, m)`` with ``i < j`` and ``m >= 3``.
    Use :func:`graph_from_edges` rather than calling this directly.
    """
    rank: int
    bonds: tuple[tuple[int, int, Label], ...] = ()
    _labels: dict = field(init=False, repr=False, compare=False)
    _nbrs: tuple = field(init=False, repr=False, compare=False)
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = {}
        nbrs = [set() for _ in range(self.rank)]
        for i, j, m in self.bonds:
            labels[i, j] = labels[j, i] = m
            nbrs[i].add(j)
            nbrs[j].add(i)
        object.__setattr__(self, "_labels", labels)
        object.__setattr__(self, "_nbrs", tuple(frozenset(n) for n in nbrs))
        object.__setattr__(self, "_key", (self.rank, self.bonds))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CoxeterGraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def label(self, i: int, j: int) -> Label:
        """m(s_i, s_j); 1 on the diagonal, 2 for commuting pairs."""
        if i == j:
            return 1
        return self._labels.get((i, j), 2)

    def commute(self, i: int, j: int) -> bool:
        return i != j and (i, j) not in self._labels

    def neighbors(self, i: int) -> frozenset[int]:
        return self._nbrs[i]

    def pairs(self) -> list[tuple[int, int]]:
        """Noncommuting pairs ``(i, j)`` with ``i < j``, sorted."""
        return [(i, j) for i, j, _ in self.bonds]

    @property
    def simply_laced(self) -> bool:
        return all(m == 3 for _, _, m in self.bonds)

    @property
    def fc_finite_bonds(self) -> bool:
        return all(m != INF for _, _, m in self.bonds)

    def fingerprint(self) -> str:
        """Stable hash of the bond map, used to key on-disk caches."""
        text = json.dumps(graph_to_json(self), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def __repr__(self):
        body = ", ".join(f"{i}-{j}:{'inf' if m == INF else m}" for i, j, m in self.bonds)
        return f"CoxeterGraph(rank={self.rank}, [{body}])"


def graph_from_edges(rank: int, edges: Iterable[tuple[int, int, Label]]) -> CoxeterGraph:
    """
    Build a normalized graph.  Label-2 edges are dropped; a pair listed twice
    with different labels is an error.

    >>> graph_from_edges(2, [(0, 1, 4)]).label(1, 0)
    4
    >>> graph_from_edges(2, [(0, 1, 4), (1, 0, 5)])
    Traceback (most recent call last):
    ...
    coxstar.graph.GraphError: conflicting labels 4 and 5 for pair (0, 1)
    """
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise GraphError(f"rank must be a positive integer, got {rank!r}")
    seen: dict[tuple[int, int], Label] = {}
    for edge in edges:
        i, j, m = edge
        m = _check_label(m)
        for x in (i, j):
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < rank:
                raise GraphError(f"vertex {x!r} out of range for rank {rank}")
        if i == j:
            raise GraphError(f"self-bond at vertex {i}")
        key = (min(i, j), max(i, j))
        if key in seen and seen[key] != m:
            raise GraphError(f"conflicting labels {_fmt(seen[key])} and {_fmt(m)} for pair {key}")
        seen[key] = m
    bonds = tuple(sorted((i, j, m) for (i, j), m in seen.items() if m != 2))
    return CoxeterGraph(rank, bonds)


def _fmt(m: Label) -> str:
    return "inf" if m == INF else str(m)


def graph_to_json(g: CoxeterGraph) -> dict:
    return {"rank": g.rank, "edges": [[i, j, "inf" if m == INF else m] for i, j, m in g.bonds]}


def graph_from_json(data) -> CoxeterGraph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return graph_from_edges(data["rank"], [tuple(e) for e in data.get("edges", [])])
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None


# ---------------------------------------------------------------------------
# named families

FAMILIES = ("A", "B", "D", "E", "F", "H", "I2", "Atilde", "Ctilde",
            "Etilde6", "Ftilde5", "CompleteK")


@dataclass(frozen=True)
class FamilySpec:
    """
    A named family instance.  ``n`` is always the number of vertices, so
    ``Atilde`` with n=5 is the 5-cycle (usually written as affine A_4) and
    ``Ctilde`` with n=4 is affine C_3.  ``labels`` is used by ``I2`` (one
    label) and ``CompleteK`` (one label, or one per pair in lexicographic
    pair order).
    """
    family: str
    n: int
    labels: tuple[Label, ...] = ()

    def __post_init__(self):
        f, n = self.family, self.n
        if f not in FAMILIES:
            raise GraphError(f"unknown family {f!r}")
        lo = {"A": 1, "B": 2, "D": 4, "E": 6, "F": 4, "H": 2, "I2": 2,
              "Atilde": 3, "Ctilde": 4, "Etilde6": 7, "Ftilde5": 6, "CompleteK": 1}[f]
        if n < lo:
            raise GraphError(f"{f} needs n >= {lo}, got {n}")
        if f == "I2" and (n != 2 or len(self.labels) != 1 or self.labels[0] < 3):
            raise GraphError("I2(m) needs a single label m >= 3")
        if f == "Atilde" and n % 2 == 0:
            raise GraphError(f"Atilde needs an odd number of vertices, got {n}")
        if f == "Ctilde" and n % 2 == 1:
            raise GraphError(f"Ctilde needs an even number of vertices, got {n}")
        if f == "Etilde6" and n != 7 or f == "Ftilde5" and n != 6:
            raise GraphError(f"{f} has a fixed number of vertices")
        if f == "CompleteK":
            npairs = n * (n - 1) // 2
            if npairs and len(self.labels) not in (1, npairs):
                raise GraphError(f"K{n} needs 1 or {npairs} labels")
            if any(m < 3 for m in self.labels):
                raise GraphError("complete graph labels must be >= 3")

    @property
    def name(self) -> str:
        f, n = self.family, self.n
        if f == "I2":
            return f"I2({_fmt(self.labels[0])})"
        if f == "CompleteK":
            return f"K{n}(" + ",".join(_fmt(m) for m in self.labels) + ")"
        if f in ("Atilde", "Ctilde"):
            return f"{f}{n - 1}"
        if f in ("Etilde6", "Ftilde5"):
            return f
        return f"{f}{n}"


_FAMILY_RE = re.compile(r"^(Atilde|Ctilde|Etilde6|Ftilde5|I2|K|A|B|D|E|F|H)(\d*)(?:\((.*)\))?$")


def parse_family(text: str) -> FamilySpec:
    """
    Parse CLI family strings: ``A4``, ``I2(7)``, ``Atilde4``, ``Ctilde3``,
    ``Etilde6``, ``Ftilde5``, ``K3(3,4,5)``.
    """
    m = _FAMILY_RE.match(text.strip())
    if not m:
        raise GraphError(f"cannot parse family {text!r}")
    tag, num, args = m.groups()
    labels: tuple[Label, ...] = ()
    if args is not None:
        labels = tuple(_check_label("inf" if a.strip() in ("inf", "oo") else int(a))
                       for a in args.split(",") if a.strip())
    if tag in ("Etilde6", "Ftilde5"):
        return FamilySpec(tag, {"Etilde6": 7, "Ftilde5": 6}[tag])
    if tag == "I2":
        return FamilySpec("I2", 2, labels)
    if not num:
        raise GraphError(f"family {text!r} needs a rank")
    n = int(num)
    if tag == "K":
        return FamilySpec("CompleteK", n, labels or (3,))
    if tag in ("Atilde", "Ctilde"):
        return FamilySpec(tag, n + 1)
    return FamilySpec(tag, n)


def _path(n: int, labels: dict[int, Label] | None = None) -> CoxeterGraph:
    labels = labels or {}
    return graph_from_edges(n, [(i, i + 1, labels.get(i, 3)) for i in range(n - 1)])


def family_graph(spec: FamilySpec | str) -> CoxeterGraph:
    """The standard graph of a family instance (see :class:`FamilySpec`)."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    f, n = spec.family, spec.n
    if f == "A":
        return _path(n)
    if f == "B":
        return _path(n, {0: 4})
    if f == "H":
        return _path(n, {0: 5})
    if f == "F":
        return _path(n, {1: 4})
    if f == "I2":
        return graph_from_edges(2, [(0, 1, spec.labels[0])])
    if f == "D":
        return graph_from_edges(n, [(i, i + 1, 3) for i in range(n - 2)] + [(n - 3, n - 1, 3)])
    if f == "E":
        return graph_from_edges(n, [(i, i + 1, 3) for i in range(n - 2)] + [(2, n - 1, 3)])
    if f == "Atilde":
        return graph_from_edges(n, [(i, (i + 1) % n, 3) for i in range(n)])
    if f == "Ctilde":
        return _path(n, {0: 4, n - 2: 4})
    if f == "Etilde6":
        return graph_from_edges(7, [(0, 1, 3), (1, 2, 3), (0, 3, 3), (3, 4, 3), (0, 5, 3), (5, 6, 3)])
    if f == "Ftilde5":
        return _path(6, {2: 4})
    # CompleteK
    pairs = list(itertools.combinations(range(n), 2))
    labels = spec.labels if len(spec.labels) == len(pairs) else spec.labels * len(pairs)
    return graph_from_edges(n, [(i, j, m) for (i, j), m in zip(pairs, labels)])


# ---------------------------------------------------------------------------
# surgery

def induced_subgraph(g: CoxeterGraph, subset: Iterable[int]) -> tuple[CoxeterGraph, dict[int, int]]:
    """
    Restrict ``g`` to ``subset``.  Returns the subgraph and the old->new
    vertex map (new indices follow the sorted order of ``subset``).
    """
    verts = sorted(set(subset))
    for v in verts:
        if not 0 <= v < g.rank:
            raise GraphError(f"vertex {v} out of range for rank {g.rank}")
    if not verts:
        raise GraphError("empty vertex subset")
    index = {v: k for k, v in enumerate(verts)}
    edges = [(index[i], index[j], m) for i, j, m in g.bonds if i in index and j in index]
    return graph_from_edges(len(verts), edges), index


def connected_components(g: CoxeterGraph) -> list[tuple[frozenset[int], CoxeterGraph]]:
    """Components of the bond graph, ordered by smallest vertex."""
    seen: set[int] = set()
    out = []
    for start in range(g.rank):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            for j in g.neighbors(stack.pop()):
                if j not in comp:
                    comp.add(j)
                    stack.append(j)
        seen |= comp
        out.append((frozenset(comp), induced_subgraph(g, comp)[0]))
    return out


def upsilon(g: CoxeterGraph) -> CoxeterGraph:
    """Lower every label above 3 (including infinity) to 3."""
    return CoxeterGraph(g.rank, tuple((i, j, 3) for i, j, _ in g.bonds))
