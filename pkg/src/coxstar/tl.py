"""
The generalized Temperley-Lieb algebra TL(X) of a Coxeter graph.

Everything is stored in coordinates of the monomial basis ``b_w`` (w fully
commutative), where the bar involution acts coefficientwise.  The standard
basis ``t~_w`` and the canonical basis ``c_w`` are recorded as b-coordinate
vectors and converted by unitriangular elimination (each ``t~_w`` and
``c_w`` is ``b_w`` plus strictly shorter terms).

Monomials ``b_{s1} ... b_{sr}`` are reduced with

* ``b_s b_s = delta b_s``,
* commutations (built into traces),
* ``f(b_s, b_t) = 0`` for ``f = x P_{m-1}(x)``, P the Chebyshev polynomials
  of the second kind, whenever ``3 <= m(s, t) < inf``.

>>> from coxstar.graph import family_graph
>>> alg = algebra(family_graph("A2"))
>>> alg.reduce_word((0, 1, 0))
TlElement(b: 1*b[{0}])
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .classify import classify_star_reducible
from .elements import (
    ElementError, FcElement, enumerate_fc, enumerate_group, identity,
    tits_is_reduced, trace_is_reduced_fc,
)
from .graph import INF, CoxeterGraph, GraphError
from .hinv import InvariantViolation
from .laurent import LaurentInt, delta, one, vpow
from .star import StarReducer, is_commuting_product, star_down, string_position
from .traces import (
    Trace, alternating, cartier_foata, find_braid_factor, find_square_factor,
    left_block, replace_factor, right_block, strip_left, strip_right,
)

__all__ = [
    "TlElement", "TLAlgebra", "algebra", "chebyshev_relation",
    "ChebyshevRelation", "BASES", "reduce_b_monomial", "multiply",
    "ttilde_of", "c_of", "change_basis", "bar_element",
    "theta_ttilde_of_word", "in_lattice", "in_vinv_lattice", "pi_project",
    "in_L_left", "in_L_right", "in_L_left_st", "in_L_right_ts",
    "structure_constants", "positivity_report", "structure_table_tsv",
]

BASES = ("b", "ttilde", "c")

Vec = dict  # dict[Trace, LaurentInt]

_VINV = vpow(-1)
_DELTA = delta()


@dataclass(frozen=True)
class ChebyshevRelation:
    """Coefficients of ``x P_{m-1}(x)``; ``coeffs[k]`` multiplies x^k."""
    m: int
    coeffs: tuple[int, ...]


@lru_cache(maxsize=None)
def _chebyshev_P(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 1)
    p1, p2 = _chebyshev_P(n - 1), _chebyshev_P(n - 2)
    out = [0] + list(p1)
    for k, c in enumerate(p2):
        out[k] -= c
    return tuple(out)


def chebyshev_relation(m: int) -> ChebyshevRelation:
    """
    >>> chebyshev_relation(4).coeffs
    (0, 0, -2, 0, 1)
    """
    if m == INF or m < 3:
        raise ValueError(f"relation needs 3 <= m < inf, got {m}")
    return ChebyshevRelation(m, (0,) + _chebyshev_P(m - 1))


def _axpy(acc: Vec, terms: Mapping, scale: LaurentInt | int = 1):
    """acc += scale * terms (in place)."""
    for key, c in terms.items():
        c = c * scale if scale != 1 else c
        old = acc.get(key)
        new = c if old is None else old + c
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)


class TlElement:
    """
    A finite combination of basis elements of one of the bases ``b``,
    ``ttilde`` or ``c``, keyed by FC elements.
    """

    __slots__ = ("graph", "basis", "terms")

    def __init__(self, graph: CoxeterGraph, basis: str, terms: Mapping[Trace, LaurentInt] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.graph = graph
        self.basis = basis
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __eq__(self, other):
        if not isinstance(other, TlElement):
            return NotImplemented
        if self.basis != other.basis:
            alg = algebra(self.graph)
            return alg.to_b(self).terms == alg.to_b(other).terms
        return self.graph == other.graph and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "TlElement") -> "TlElement":
        other = _same_basis(self, other)
        acc = dict(self.terms)
        _axpy(acc, other.terms)
        return TlElement(self.graph, self.basis, acc)

    def __neg__(self):
        return TlElement(self.graph, self.basis, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a: LaurentInt | int) -> "TlElement":
        return TlElement(self.graph, self.basis, {k: v * a for k, v in self.terms.items()})

    def __rmul__(self, a):
        if isinstance(a, (int, LaurentInt)):
            return self.scale(a)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, LaurentInt)):
            return self.scale(other)
        return algebra(self.graph).multiply(self, other)

    def coeff(self, w: Trace) -> LaurentInt:
        return self.terms.get(w, LaurentInt())

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key)

    def to_json(self) -> dict:
        return {"basis": self.basis,
                "terms": [{"trace": w.to_json(), "coeff": c.to_json()} for w, c in self.items()]}

    def __repr__(self):
        body = " + ".join(f"({c})*{self.basis}[{_tr(w)}]" if not c.is_integer() else
                          f"{c.constant_term()}*{self.basis}[{_tr(w)}]" for w, c in self.items())
        return f"TlElement({self.basis}: {body or '0'})"


def _tr(w: Trace) -> str:
    return "".join("{" + ",".join(map(str, b)) + "}" for b in w.blocks) or "e"


def _same_basis(x: TlElement, y: TlElement) -> TlElement:
    if x.graph != y.graph:
        raise GraphError("elements over different graphs")
    if x.basis == y.basis:
        return y
    return algebra(x.graph).change_basis(y, x.basis)


class TLAlgebra:
    """Memo tables and operations for TL(X) of one graph."""

    def __init__(self, g: CoxeterGraph):
        self.graph = g
        self._reduced: dict[Trace, Vec] = {}
        self._ttilde: dict[Trace, Vec] = {identity(g): {identity(g): one()}}
        self._c: dict[Trace, Vec] = {}
        self._star_reducible: bool | None = None
        self._reducer = StarReducer(g)

    # -- basics
    def one(self) -> TlElement:
        return TlElement(self.graph, "b", {identity(self.graph): one()})

    def b(self, w: Trace | Sequence[int]) -> TlElement:
        w = self._fc(w)
        return TlElement(self.graph, "b", {w: one()})

    def _fc(self, w) -> FcElement:
        if not isinstance(w, Trace):
            w = cartier_foata(self.graph, w)
        if not trace_is_reduced_fc(w):
            raise ElementError(f"{w} is not fully commutative")
        return FcElement(w)

    def require_star_reducible(self):
        if self._star_reducible is None:
            self._star_reducible = classify_star_reducible(self.graph, with_counterexamples=False).ok
        if not self._star_reducible:
            raise GraphError("operation requires a star reducible graph")

    # -- monomial reduction
    def _reduce(self, t: Trace) -> Vec:
        memo = self._reduced
        hit = memo.get(t)
        if hit is not None:
            return hit
        g = self.graph
        if trace_is_reduced_fc(t):
            out = {t: one()}
        else:
            sq = find_square_factor(t)
            if sq is not None:
                s, (i, j) = sq
                shorter = cartier_foata(g, replace_factor(t, (i, j), (s,)))
                out = {}
                _axpy(out, self._reduce(shorter), _DELTA)
            else:
                out = self._reduce_braid(t)
        memo[t] = out
        return out

    def _reduce_braid(self, t: Trace) -> Vec:
        g = self.graph
        best = None
        for s, u, m in g.bonds:
            if m == INF:
                continue
            chain = find_braid_factor(t, s, u, m)
            if chain is not None and (best is None or chain[0] < best[0][0]):
                best = (chain, m)
        if best is None:
            raise InvariantViolation(f"no reduction applies to non-FC trace {t}")
        chain, m = best
        a, b = t.word[chain[0]], t.word[chain[1]]
        rel = chebyshev_relation(m).coeffs
        out: Vec = {}
        for k in range(m):
            c = rel[k]
            if c:
                shorter = cartier_foata(g, replace_factor(t, chain, alternating(a, b, k)))
                _axpy(out, self._reduce(shorter), -c)
        return out

    def reduce_word(self, w: Iterable[int]) -> TlElement:
        """The monomial ``b_{s1} ... b_{sr}`` in the b-basis."""
        t = cartier_foata(self.graph, w)
        return TlElement(self.graph, "b", self._reduce(t))

    def _mul_b(self, x: Mapping[Trace, LaurentInt], y: Mapping[Trace, LaurentInt]) -> Vec:
        g = self.graph
        out: Vec = {}
        for u, cu in x.items():
            for w, cw in y.items():
                prod = self._reduce(cartier_foata(g, u.word + w.word))
                _axpy(out, prod, cu * cw)
        return out

    def multiply(self, x: TlElement, y: TlElement) -> TlElement:
        if x.graph != self.graph or y.graph != self.graph:
            raise GraphError("elements over different graphs")
        return TlElement(self.graph, "b", self._mul_b(self.to_b(x).terms, self.to_b(y).terms))

    def left_mul_generator(self, s: int, x: Vec) -> Vec:
        g = self.graph
        out: Vec = {}
        for w, c in x.items():
            _axpy(out, self._reduce(cartier_foata(g, (s,) + w.word)), c)
        return out

    def right_mul_generator(self, x: Vec, s: int) -> Vec:
        g = self.graph
        out: Vec = {}
        for w, c in x.items():
            _axpy(out, self._reduce(cartier_foata(g, w.word + (s,))), c)
        return out

    # -- standard basis
    def _ttilde_vec(self, w: Trace) -> Vec:
        memo = self._ttilde
        hit = memo.get(w)
        if hit is not None:
            return hit
        s = w.blocks[0][0]
        rest = self._ttilde_vec(strip_left(w, s))
        out = self.left_mul_generator(s, rest)
        _axpy(out, rest, -_VINV)
        memo[w] = out
        return out

    def ttilde_of(self, w) -> TlElement:
        """t~_w in b-coordinates."""
        return TlElement(self.graph, "b", self._ttilde_vec(self._fc(w)))

    # -- canonical basis
    def _c_vec(self, w: Trace) -> Vec:
        memo = self._c
        hit = memo.get(w)
        if hit is not None:
            return hit
        if is_commuting_product(w):
            out = {w: one()}
        else:
            path = self._reducer.path(w)
            if not path:
                raise InvariantViolation(f"{w} is not star reducible")
            pair, side, u = path[0]
            outer = string_position(w, pair, side).outer
            cu = self._c_vec(u)
            if side == "left":
                out = self.left_mul_generator(outer, cu)
            else:
                out = self.right_mul_generator(cu, outer)
            u2 = star_down(u, pair, side)
            if u2 is not None:
                _axpy(out, self._c_vec(u2), -1)
        self._verify_c(w, out)
        memo[w] = out
        return out

    def _verify_c(self, w: Trace, vec: Vec):
        for y, c in vec.items():
            if c.bar() != c:
                raise InvariantViolation(f"c_{w} is not bar invariant (coefficient of b_{y} is {c})")
        diff = dict(vec)
        _axpy(diff, self._ttilde_vec(w), -1)
        for y, c in self._b_to_ttilde(diff).items():
            if not c.in_vinv_A_minus():
                raise InvariantViolation(f"c_{w} - t~_{w} has t~-coefficient {c} at {y}")

    def c_of(self, w) -> TlElement:
        """c_w in b-coordinates (verified against its defining property)."""
        self.require_star_reducible()
        return TlElement(self.graph, "b", self._c_vec(self._fc(w)))

    # -- basis changes
    def _b_to_ttilde(self, x: Mapping[Trace, LaurentInt]) -> Vec:
        return _eliminate(x, self._ttilde_vec)

    def _b_to_c(self, x: Mapping[Trace, LaurentInt]) -> Vec:
        return _eliminate(x, self._c_vec)

    def to_b(self, x: TlElement) -> TlElement:
        if x.basis == "b":
            return x
        table = self._ttilde_vec if x.basis == "ttilde" else self._c_vec
        if x.basis == "c":
            self.require_star_reducible()
        out: Vec = {}
        for w, c in x.terms.items():
            _axpy(out, table(w), c)
        return TlElement(self.graph, "b", out)

    def change_basis(self, x: TlElement, target: str) -> TlElement:
        if target not in BASES:
            raise ValueError(f"unknown basis {target!r}")
        xb = self.to_b(x)
        if target == "b":
            return xb
        if target == "ttilde":
            return TlElement(self.graph, "ttilde", self._b_to_ttilde(xb.terms))
        self.require_star_reducible()
        return TlElement(self.graph, "c", self._b_to_c(xb.terms))

    def bar(self, x: TlElement) -> TlElement:
        xb = self.to_b(x)
        return TlElement(self.graph, "b", {w: c.bar() for w, c in xb.terms.items()})

    # -- theta of the standard basis of the Hecke algebra
    def theta_ttilde_of_word(self, w: Sequence[int], cap: int | None = None) -> TlElement:
        """Image of T~_w for a reduced word w: prod (b_s - v^-1)."""
        w = tuple(w)
        kwargs = {} if cap is None else {"cap": cap}
        if not tits_is_reduced(self.graph, w, **kwargs):
            raise ElementError(f"{w} is not reduced")
        return TlElement(self.graph, "b", self._theta_vec(w))

    def _theta_vec(self, w: Sequence[int]) -> Vec:
        x: Vec = {identity(self.graph): one()}
        for s in w:
            y = self.right_mul_generator(x, s)
            _axpy(y, x, -_VINV)
            x = y
        return x

    def theta_table(self, max_len: int, cap: int = 5_000_000):
        """
        Images of T~_w for all group elements of length <= max_len.  Every
        factorization ``w = x s`` over right descents s is evaluated and
        required to agree, so the result holds for every reduced word.
        Returns a list of (group element, b-vector).
        """
        elements, _ = enumerate_group(self.graph, max_len, cap)
        by_key = {}
        out = []
        for el in elements:
            if el.length == 0:
                vec = {identity(self.graph): one()}
            else:
                vec = None
                for s in sorted(el.right_descents()):
                    prefix = min(u for u in el.words if u[-1] == s)[:-1]
                    px = by_key[prefix]
                    cand = self.right_mul_generator(px, s)
                    _axpy(cand, px, -_VINV)
                    if vec is None:
                        vec = cand
                    elif vec != cand:
                        raise InvariantViolation(f"T~ image depends on reduced word for {el}")
            for u in el.words:
                by_key[u] = vec
            out.append((el, vec))
        return out

    # -- lattices
    def ttilde_coords(self, x: TlElement) -> Vec:
        if x.basis == "ttilde":
            return dict(x.terms)
        return self._b_to_ttilde(self.to_b(x).terms)

    def in_lattice(self, x: TlElement) -> bool:
        return all(c.in_A_minus() for c in self.ttilde_coords(x).values())

    def in_vinv_lattice(self, x: TlElement) -> bool:
        return all(c.in_vinv_A_minus() for c in self.ttilde_coords(x).values())

    def pi_project(self, x: TlElement) -> dict[Trace, int]:
        coords = self.ttilde_coords(x)
        if not all(c.in_A_minus() for c in coords.values()):
            raise ValueError("pi is only defined on the lattice")
        return {w: c.constant_term() for w, c in coords.items() if c.constant_term()}

    def in_sublattice(self, x: TlElement, special) -> bool:
        """t~-coordinates in A^- on ``special(w)`` and in v^-1 A^- elsewhere."""
        for w, c in self.ttilde_coords(x).items():
            if not (c.in_A_minus() if special(w) else c.in_vinv_A_minus()):
                return False
        return True

    def in_L_left(self, x: TlElement, s: int) -> bool:
        return self.in_sublattice(x, lambda w: s in left_block(w))

    def in_L_right(self, x: TlElement, s: int) -> bool:
        return self.in_sublattice(x, lambda w: s in right_block(w))

    def in_L_left_st(self, x: TlElement, s: int, t: int) -> bool:
        self._noncommuting(s, t)
        return self.in_sublattice(x, lambda w: s in left_block(w) and t in left_block(strip_left(w, s)))

    def in_L_right_ts(self, x: TlElement, t: int, s: int) -> bool:
        self._noncommuting(s, t)
        return self.in_sublattice(x, lambda w: s in right_block(w) and t in right_block(strip_right(w, s)))

    def _noncommuting(self, s, t):
        if self.graph.commute(s, t) or s == t:
            raise ElementError(f"generators {s} and {t} commute")

    # -- structure constants
    def structure_constants(self, x, y) -> dict[Trace, LaurentInt]:
        self.require_star_reducible()
        prod = self._mul_b(self._c_vec(self._fc(x)), self._c_vec(self._fc(y)))
        return self._b_to_c(prod)

    def positivity_rows(self, xs: Sequence[Trace], ys: Sequence[Trace]):
        """
        Structure constants for all pairs in ``xs`` x ``ys``.  Returns
        (table rows (x, y, w, f), violations, max delta power).
        """
        self.require_star_reducible()
        rows, violations, max_power = [], [], 0
        for x in xs:
            for y in ys:
                powers = set()
                consts = self.structure_constants(x, y)
                for w in sorted(consts, key=lambda t: t.sort_key):
                    f = consts[w]
                    rows.append((x, y, w, f))
                    dec = f.delta_power_decompose()
                    if dec is None or dec[0] <= 0:
                        violations.append({"x": x.to_json(), "y": y.to_json(), "w": w.to_json(),
                                           "coeff": f.to_json(),
                                           "reason": "not a positive multiple of a delta power"})
                        continue
                    powers.add(dec[1])
                    max_power = max(max_power, dec[1])
                if len(powers) > 1:
                    violations.append({"x": x.to_json(), "y": y.to_json(), "powers": sorted(powers),
                                       "reason": "delta powers differ"})
        return rows, violations, max_power

    def positivity_report(self, max_len: int) -> dict:
        elements, exhaustive = enumerate_fc(self.graph, max_len)
        _, violations, max_power = self.positivity_rows(elements, elements)
        return {"pairs": len(elements) ** 2, "max_delta_power": max_power,
                "violations": violations, "exhaustive": exhaustive}


def _eliminate(x: Mapping[Trace, LaurentInt], table) -> Vec:
    """Coordinates of x in a basis whose members are ``b_w`` + shorter terms."""
    rest = dict(x)
    out: Vec = {}
    while rest:
        w = max(rest, key=lambda t: t.sort_key)
        c = rest[w]
        out[w] = c
        _axpy(rest, table(w), -c)
        if rest.get(w):
            raise InvariantViolation(f"basis element at {w} is not unitriangular")
    return out


@lru_cache(maxsize=64)
def algebra(g: CoxeterGraph) -> TLAlgebra:
    """Shared per-graph algebra (memo tables are reused across calls)."""
    return TLAlgebra(g)


# -- module-level API over the shared per-graph algebra

def reduce_b_monomial(g: CoxeterGraph, w: Iterable[int]) -> TlElement:
    """
    >>> from coxstar.graph import family_graph
    >>> reduce_b_monomial(family_graph("A1"), [0, 0])
    TlElement(b: (v + v^-1)*b[{0}])
    """
    return algebra(g).reduce_word(w)


def multiply(x: TlElement, y: TlElement) -> TlElement:
    return algebra(x.graph).multiply(x, y)


def ttilde_of(g: CoxeterGraph, w) -> TlElement:
    return algebra(g).ttilde_of(w)


def c_of(g: CoxeterGraph, w) -> TlElement:
    return algebra(g).c_of(w)


def change_basis(x: TlElement, target: str) -> TlElement:
    return algebra(x.graph).change_basis(x, target)


def bar_element(x: TlElement) -> TlElement:
    return algebra(x.graph).bar(x)


def theta_ttilde_of_word(g: CoxeterGraph, w: Sequence[int], cap: int | None = None) -> TlElement:
    return algebra(g).theta_ttilde_of_word(w, cap)


def in_lattice(x: TlElement) -> bool:
    return algebra(x.graph).in_lattice(x)


def in_vinv_lattice(x: TlElement) -> bool:
    return algebra(x.graph).in_vinv_lattice(x)


def pi_project(x: TlElement) -> dict[Trace, int]:
    return algebra(x.graph).pi_project(x)


def in_L_left(x: TlElement, s: int) -> bool:
    return algebra(x.graph).in_L_left(x, s)


def in_L_right(x: TlElement, s: int) -> bool:
    return algebra(x.graph).in_L_right(x, s)


def in_L_left_st(x: TlElement, s: int, t: int) -> bool:
    return algebra(x.graph).in_L_left_st(x, s, t)


def in_L_right_ts(x: TlElement, t: int, s: int) -> bool:
    return algebra(x.graph).in_L_right_ts(x, t, s)


def structure_constants(g: CoxeterGraph, x, y) -> dict[Trace, LaurentInt]:
    return algebra(g).structure_constants(x, y)


def positivity_report(g: CoxeterGraph, max_len: int) -> dict:
    return algebra(g).positivity_report(max_len)


def trace_label(w: Trace) -> str:
    """Compact text form of a trace for tables: blocks joined by '.'."""
    return ".".join(",".join(map(str, b)) for b in w.blocks) or "e"


def structure_table_tsv(rows) -> str:
    """Rows (x, y, w, f) from :meth:`TLAlgebra.positivity_rows` as TSV."""
    lines = ["x\ty\tw\tcoefficient"]
    lines += [f"{trace_label(x)}\t{trace_label(y)}\t{trace_label(w)}\t{f}" for x, y, w, f in rows]
    return "\n".join(lines) + "\n"
