"""
Which Coxeter graphs are star reducible, and explicit witnesses for the
ones that are not.

Each connected component must be a complete graph (all labels >= 3) or one
of the families A, B, D, E (arms 1,2,k), F, H, affine A on an odd cycle,
affine C on an even path, affine E6 or affine F5.  Matching is structural:
detect path / cycle / tree-with-one-branch-point, then compare labels.

When a connected graph fails for a reason involving raised labels, a
non-reducible FC word is extracted from a small induced subgraph (a path, a
fork, or the whole odd cycle).  Star reducibility passes to parabolic
subgroups, so a witness in the subgraph is a witness in the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import INF, CoxeterGraph, GraphError, connected_components, upsilon

__all__ = [
    "ComponentVerdict", "ClassificationVerdict", "classify_star_reducible",
    "classify_component", "counterexample_word", "EXCLUDED_SHAPES",
]


@dataclass(frozen=True)
class ComponentVerdict:
    vertices: tuple[int, ...]
    ok: bool
    family: str | None  # e.g. "B3", "Atilde4", "K3(3,4,5)"; None if unmatched
    counterexample: tuple[int, ...] | None = None  # in the ambient indexing


@dataclass(frozen=True)
class ClassificationVerdict:
    components: tuple[ComponentVerdict, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.components)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "star_reducible": self.ok,
            "components": [
                {"vertices": list(c.vertices), "star_reducible": c.ok, "family": c.family,
                 "counterexample": None if c.counterexample is None else list(c.counterexample)}
                for c in self.components
            ],
        }


def _fmt(m) -> str:
    return "inf" if m == INF else str(m)


# ---------------------------------------------------------------------------
# shape detection on a connected graph

def _path_order(g: CoxeterGraph) -> list[int] | None:
    """Vertices in path order if the (connected) graph is a path."""
    n = g.rank
    if n == 1:
        return [0]
    degs = [len(g.neighbors(i)) for i in range(n)]
    if len(g.bonds) != n - 1 or max(degs) > 2:
        return None
    start = min(i for i in range(n) if degs[i] == 1)
    order = [start]
    prev = None
    while len(order) < n:
        cur = order[-1]
        nxt = [j for j in g.neighbors(cur) if j != prev]
        prev = cur
        order.append(nxt[0])
    return order


def _cycle_order(g: CoxeterGraph) -> list[int] | None:
    n = g.rank
    if n < 3 or len(g.bonds) != n or any(len(g.neighbors(i)) != 2 for i in range(n)):
        return None
    order = [0]
    prev = None
    while len(order) < n:
        cur = order[-1]
        nxt = sorted(j for j in g.neighbors(cur) if j != prev)
        prev = cur
        order.append(nxt[0])
    return order


def _branch_arms(g: CoxeterGraph) -> tuple[int, list[list[int]]] | None:
    """For a tree with exactly one vertex of degree 3 (and none higher):
    the branch vertex and its three arms, each listed outward."""
    n = g.rank
    if len(g.bonds) != n - 1:
        return None
    degs = [len(g.neighbors(i)) for i in range(n)]
    if sorted(degs)[-1] != 3 or sum(d == 3 for d in degs) != 1 or max(degs) > 3:
        return None
    b = degs.index(3)
    arms = []
    for first in sorted(g.neighbors(b)):
        arm = [first]
        prev = b
        while True:
            nxt = [j for j in g.neighbors(arm[-1]) if j != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    return b, arms


def _is_complete(g: CoxeterGraph) -> bool:
    n = g.rank
    return len(g.bonds) == n * (n - 1) // 2


def _path_family(labels: list) -> str | None:
    """Family name for a path with the given bond labels (n >= 3 vertices)."""
    n = len(labels) + 1
    big = [(k, m) for k, m in enumerate(labels) if m != 3]
    if not big:
        return f"A{n}"
    if len(big) == 1:
        k, m = big[0]
        extremal = k in (0, n - 2)
        if m == 4 and extremal:
            return f"B{n}"
        if m == 5 and extremal:
            return f"H{n}"
        if m == 4 and n >= 4 and k in (1, n - 3):
            return f"F{n}"
        if m == 4 and n == 6 and k == 2:
            return "Ftilde5"
        return None
    if len(big) == 2 and n % 2 == 0 and n >= 4:
        (k1, m1), (k2, m2) = big
        if m1 == m2 == 4 and k1 == 0 and k2 == n - 2:
            return f"Ctilde{n - 1}"
    return None


def classify_component(g: CoxeterGraph) -> str | None:
    """Family name of a connected graph, or None if it is not star reducible."""
    n = g.rank
    if _is_complete(g):
        if n == 1:
            return "A1"
        if n == 2:
            m = g.label(0, 1)
            return {3: "A2", 4: "B2", 5: "H2"}.get(m, f"I2({_fmt(m)})")
        return f"K{n}(" + ",".join(_fmt(m) for _, _, m in g.bonds) + ")"
    order = _path_order(g)
    if order is not None:
        return _path_family([g.label(order[k], order[k + 1]) for k in range(n - 1)])
    if not g.simply_laced:
        return None
    if _cycle_order(g) is not None:
        return f"Atilde{n - 1}" if n % 2 == 1 else None
    arms = _branch_arms(g)
    if arms is None:
        return None
    lens = sorted(len(a) for a in arms[1])
    if lens[:2] == [1, 1]:
        return f"D{n}"
    if lens[:2] == [1, 2]:
        return f"E{n}"
    if lens == [2, 2, 2]:
        return "Etilde6"
    return None


def classify_star_reducible(g: CoxeterGraph, with_counterexamples: bool = True) -> ClassificationVerdict:
    comps = []
    for verts, sub in connected_components(g):
        vs = tuple(sorted(verts))
        fam = classify_component(sub)
        cex = None
        if fam is None and with_counterexamples:
            local = counterexample_word(sub)
            if local is not None:
                cex = tuple(vs[x] for x in local)
        comps.append(ComponentVerdict(vs, fam is not None, fam, cex))
    return ClassificationVerdict(tuple(comps))


# ---------------------------------------------------------------------------
# counterexample words
#
# Each template takes the number of vertices n of a labelled configuration
# and returns a word in 1-based generator names s_1..s_n; the caller maps
# s_i to actual vertices.

def _fork_word(n: int) -> list[int]:
    # s1, s2 hang off the branch point s3; s3 .. sn is a path with the far
    # bond (s_{n-1}, s_n) raised
    return [1, 2] + list(range(3, n)) + [n] + list(range(n - 1, 2, -1)) + [1, 2]


def _cycle_word(k: int) -> list[int]:
    # cycle s1 .. sk with bond (s_k, s_1) raised
    return [2, k, 1, k] + list(range(k - 1, 1, -1)) + [1, k, k - 1, 1]


def _path_label6(n: int = 3) -> list[int]:
    return [1, 3, 2, 3, 2, 1, 3]


def _path_interior5(n: int = 4) -> list[int]:
    return [1, 3, 2, 3, 2, 4]


def _path_5_and_more(n: int) -> list[int]:
    # m(s1,s2) = 5 and m(s_{n-1}, s_n) > 3
    return [1, 3, 2, 1] + list(range(2, n)) + [n] + list(range(n - 1, 1, -1)) + [1, 2, 1, 3]


def _path_two_4_nonextremal(n: int) -> list[int]:
    # m(s2,s3) = 4 and m(s_{n-1}, s_n) = 4
    return [1, 3, 2] + list(range(3, n)) + [n] + list(range(n - 1, 2, -1)) + [2, 1, 3]


def _path_two_extremal_4_even_gap(n: int) -> list[int]:
    odd = list(range(1, n + 1, 2))
    even = list(range(2, n + 1, 2))
    return odd + even + odd


def _path7_interior4(n: int = 7) -> list[int]:
    return [3, 5, 7, 4, 6, 3, 5, 2, 4, 1, 3, 2, 4, 3, 5, 4, 6, 3, 5, 7]


EXCLUDED_SHAPES = {
    "fork_far_label": _fork_word,
    "odd_cycle_raised": _cycle_word,
    "path_label_ge6": _path_label6,
    "path_interior_5": _path_interior5,
    "path_5_plus_raised": _path_5_and_more,
    "path_two_4_one_interior": _path_two_4_nonextremal,
    "path_extremal_4s_even_gap": _path_two_extremal_4_even_gap,
    "path7_interior_4": _path7_interior4,
}


def _instantiate(template: list[int], verts: list[int]) -> tuple[int, ...]:
    return tuple(verts[i - 1] for i in template)


def _path_counterexample(g: CoxeterGraph, order: list[int]) -> tuple[int, ...] | None:
    n = len(order)
    labels = [g.label(order[k], order[k + 1]) for k in range(n - 1)]

    def oriented():
        yield order, labels
        yield order[::-1], labels[::-1]

    # a label >= 6: three vertices with the big bond second
    for k, m in enumerate(labels):
        if m >= 6:
            if k >= 1:
                return _instantiate(_path_label6(), order[k - 1:k + 2])
            return _instantiate(_path_label6(), order[k:k + 3][::-1])
    # an interior 5
    for verts, labs in oriented():
        for k, m in enumerate(labs):
            if m == 5 and 1 <= k and k + 2 < n:
                return _instantiate(_path_interior5(), verts[k - 1:k + 3])
    # an extremal 5 plus another raised bond (nearest one)
    for verts, labs in oriented():
        if labs[0] == 5:
            for j in range(1, len(labs)):
                if labs[j] > 3:
                    return _instantiate(_path_5_and_more(j + 2), verts[:j + 2])
    fours = [k for k, m in enumerate(labels) if m == 4]
    if len(fours) >= 2:
        # consecutive 4s with at least one non-extremal
        for a, b in zip(fours, fours[1:]):
            if a >= 1:
                return _instantiate(_path_two_4_nonextremal(b - a + 3), order[a - 1:b + 2])
            if b <= n - 3:
                rev = order[::-1]
                a2, b2 = n - 2 - b, n - 2 - a
                return _instantiate(_path_two_4_nonextremal(b2 - a2 + 3), rev[a2 - 1:b2 + 2])
        if fours == [0, n - 2] and n % 2 == 1:
            return _instantiate(_path_two_extremal_4_even_gap(n), order)
        return None
    if len(fours) == 1:
        k = fours[0]
        for verts, kk in ((order, k), (order[::-1], n - 2 - k)):
            if kk >= 2 and n - 2 - kk >= 3:
                return _instantiate(_path7_interior4(), verts[kk - 2:kk + 5])
    return None


def counterexample_word(g: CoxeterGraph) -> tuple[int, ...] | None:
    """
    For a connected, non star reducible graph whose simply laced shadow is
    star reducible: an FC word that is not star reducible and not a product
    of commuting generators.  Returns None when no registered configuration
    applies (e.g. the simply laced shadow is itself excluded).
    """
    if len(connected_components(g)) != 1:
        raise GraphError("counterexample_word needs a connected graph")
    if classify_component(g) is not None:
        raise GraphError("graph is star reducible")
    if classify_component(upsilon(g)) is None or _is_complete(g):
        return None
    order = _path_order(g)
    if order is not None:
        return _path_counterexample(g, order)
    cyc = _cycle_order(g)
    if cyc is not None:
        k = len(cyc)
        for r in range(k):
            rot = cyc[r:] + cyc[:r]
            if g.label(rot[-1], rot[0]) > 3:
                return _instantiate(_cycle_word(k), rot)
        return None
    branch = _branch_arms(g)
    if branch is not None:
        b, arms = branch
        for a_idx, arm in enumerate(arms):
            path = [b] + arm
            for j in range(1, len(path)):
                if g.label(path[j - 1], path[j]) > 3:
                    others = [arms[i][0] for i in range(3) if i != a_idx]
                    verts = others + path[:j + 1]
                    return _instantiate(_fork_word(len(verts)), verts)
    return None
