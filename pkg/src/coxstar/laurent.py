"""
Integer Laurent polynomials in ``v``.

>>> d = delta()
>>> d * d
v^2 + 2 + v^-2
>>> (3 * d * d).delta_power_decompose()
(3, 2)
"""

from __future__ import annotations

from typing import Mapping

__all__ = ["LaurentInt", "zero", "one", "vpow", "delta"]


class LaurentInt:
    """Immutable sparse map exponent -> nonzero int."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {e: c for e, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: dict[int, int]) -> "LaurentInt":
        obj = cls.__new__(cls)
        obj._c = coeffs
        obj._hash = None
        return obj

    @classmethod
    def const(cls, n: int) -> "LaurentInt":
        return cls._raw({0: n} if n else {})

    # -- container-ish
    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentInt.const(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    @property
    def min_degree(self) -> int | None:
        return min(self._c) if self._c else None

    @property
    def max_degree(self) -> int | None:
        return max(self._c) if self._c else None

    def is_integer(self) -> bool:
        return all(e == 0 for e in self._c)

    def constant_term(self) -> int:
        return self._c.get(0, 0)

    # -- ring operations
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentInt.const(other)
        out = dict(self._c)
        for e, c in other._c.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentInt._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentInt.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentInt._raw({})
            return LaurentInt._raw({e: c * other for e, c in self._c.items()})
        if not isinstance(other, LaurentInt):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentInt._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                (e, c), = self._c.items()
                if c in (1, -1):
                    return LaurentInt._raw({-e * (-n): c ** (-n)})
            raise ValueError("only monomials with unit coefficient are invertible")
        out = one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentInt":
        """Multiply by v^k."""
        return LaurentInt._raw({e + k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentInt":
        """The involution v <-> v^-1."""
        return LaurentInt._raw({-e: c for e, c in self._c.items()})

    # -- submodules of A
    def in_A_minus(self) -> bool:
        return all(e <= 0 for e in self._c)

    def in_vinv_A_minus(self) -> bool:
        return all(e <= -1 for e in self._c)

    def divmod_delta(self) -> tuple["LaurentInt", "LaurentInt"]:
        """
        Division by delta = v + v^-1 from the top degree down; returns
        (quotient, remainder) with the remainder of degree span < 2.
        """
        rem = dict(self._c)
        quo: dict[int, int] = {}
        while rem:
            hi, lo = max(rem), min(rem)
            if hi - lo < 2:
                break
            c = rem.pop(hi)
            quo[hi - 1] = c
            r = rem.get(hi - 2, 0) - c
            if r:
                rem[hi - 2] = r
            else:
                rem.pop(hi - 2, None)
        return LaurentInt._raw(quo), LaurentInt._raw(rem)

    def delta_power_decompose(self) -> tuple[int, int] | None:
        """The unique (n, k) with self == n * delta**k, or None."""
        if not self._c:
            return None
        x, k = self, 0
        while not x.is_integer():
            q, r = x.divmod_delta()
            if r:
                return None
            x, k = q, k + 1
        return x.constant_term(), k

    # -- io
    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentInt":
        return cls({int(e): int(c) for e, c in data.items()})

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for e, c in sorted(self._c.items(), reverse=True):
            mono = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def zero() -> LaurentInt:
    return LaurentInt._raw({})


def one() -> LaurentInt:
    return LaurentInt._raw({0: 1})


def vpow(n: int) -> LaurentInt:
    return LaurentInt._raw({n: 1})


def delta() -> LaurentInt:
    return LaurentInt._raw({1: 1, -1: 1})
