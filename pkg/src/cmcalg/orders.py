"""Monomial orders and their integer encodings.

An :class:`OrderSpace` re-packs monomials so that plain integer comparison
is the monomial order and monomial multiplication is integer addition (up to
a constant offset).  Groebner basis computations run entirely in that space.

grevlex is encoded as a total-degree field followed by complemented exponent
fields in reverse priority order: a smaller exponent on the last variable makes
the complemented field larger, which is exactly the grevlex tie-break.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .poly import FIELD_BITS, MAX_EXPONENT, VarSet

KINDS = ("lex", "grlex", "grevlex")
_MASK = (1 << FIELD_BITS) - 1


class MonomialOrder:
    """A term order: ``kind`` plus a variable priority (highest first).

    ``priority`` may name only a prefix; remaining variables follow in their
    declared order.
    """

    __slots__ = ("kind", "priority")

    def __init__(self, kind: str = "grevlex", priority: Sequence[str] = ()):
        if kind not in KINDS:
            raise ValueError(f"unknown monomial order {kind!r}; expected one of {KINDS}")
        if len(set(priority)) != len(priority):
            raise ValueError("priority lists a variable twice")
        self.kind = kind
        self.priority = tuple(priority)

    def __repr__(self) -> str:
        if self.priority:
            return f"MonomialOrder({self.kind!r}, {list(self.priority)!r})"
        return f"MonomialOrder({self.kind!r})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.priority == other.priority)

    def __hash__(self) -> int:
        return hash((self.kind, self.priority))

    def describe(self) -> str:
        if not self.priority:
            return self.kind
        return f"{self.kind} with {' > '.join(self.priority)}"

    def ranking(self, varset: VarSet) -> list[str]:
        for name in self.priority:
            varset.index(name)
        rest = [n for n in varset.names if n not in self.priority]
        return list(self.priority) + rest

    def space(self, varset: VarSet, support: Iterable[str] | None = None) -> "OrderSpace":
        names = self.ranking(varset)
        if support is not None:
            keep = set(support)
            names = [n for n in names if n in keep]
        return OrderSpace(self.kind, varset, names)

    def key_function(self, varset: VarSet):
        """Map packed monomials of ``varset`` to ints ordered like this order."""
        return self.space(varset).encode

    def compare(self, varset: VarSet, a: Sequence[int], b: Sequence[int]) -> int:
        enc = self.key_function(varset)
        ka, kb = enc(varset.pack(a)), enc(varset.pack(b))
        return (ka > kb) - (ka < kb)


class OrderSpace:
    """Integer encoding of monomials over ``names`` (highest priority first)."""

    def __init__(self, kind: str, varset: VarSet, names: Sequence[str]):
        self.kind = kind
        self.varset = varset
        self.names = tuple(names)
        n = len(self.names)
        self.n = n
        src_shifts = [varset.shift(v) for v in self.names]
        if kind == "grevlex":
            # reverse priority: last variable in the most significant low field
            pos = [FIELD_BITS * i for i in range(n)]
        else:
            pos = [FIELD_BITS * (n - 1 - i) for i in range(n)]
        self._src = src_shifts
        self._pos = pos
        self.deg_shift = FIELD_BITS * n
        self.low_mask = (1 << (FIELD_BITS * n)) - 1
        self.guard = sum(1 << (p + FIELD_BITS - 1) for p in pos)
        if kind != "lex":
            self.guard |= 1 << (self.deg_shift + FIELD_BITS - 1)
        self.complement = MAX_EXPONENT if kind == "grevlex" else 0
        self.one = sum(self.complement << p for p in pos)
        self._covered = set(self.names)

    # conversions ---------------------------------------------------------
    def encode(self, m: int) -> int:
        k = self.one
        deg = 0
        comp = self.kind == "grevlex"
        for s, p in zip(self._src, self._pos):
            e = (m >> s) & _MASK
            if e:
                deg += e
                k = k - (e << p) if comp else k + (e << p)
        if self.kind != "lex":
            k += deg << self.deg_shift
        return k

    def decode(self, k: int) -> int:
        m = 0
        for s, e in zip(self._src, self.exponents(k)):
            m |= e << s
        return m

    def exponents(self, k: int) -> list[int]:
        low = k & self.low_mask
        if self.kind == "grevlex":
            return [MAX_EXPONENT - ((low >> p) & _MASK) for p in self._pos]
        return [(low >> p) & _MASK for p in self._pos]

    def from_exponents(self, exps: Sequence[int]) -> int:
        k = self.one
        comp = self.kind == "grevlex"
        for e, p in zip(exps, self._pos):
            k = k - (e << p) if comp else k + (e << p)
        if self.kind != "lex":
            k += sum(exps) << self.deg_shift
        return k

    # monomial arithmetic ------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return a + b - self.one

    def quo(self, a: int, b: int) -> int:
        """a / b, assuming b divides a."""
        return a - b + self.one

    def divides(self, a: int, b: int) -> bool:
        """Does monomial a divide monomial b?"""
        if self.kind == "grevlex":
            la, lb = a & self.low_mask, b & self.low_mask
            return ((la | self.guard) - lb) & self.guard == self.guard
        return ((b | self.guard) - a) & self.guard == self.guard

    def lcm(self, a: int, b: int) -> int:
        return self.from_exponents([max(x, y) for x, y in zip(self.exponents(a), self.exponents(b))])

    def coprime(self, a: int, b: int) -> bool:
        return all(not (x and y) for x, y in zip(self.exponents(a), self.exponents(b)))

    def degree(self, k: int) -> int:
        if self.kind == "lex":
            return sum(self.exponents(k))
        return k >> self.deg_shift
