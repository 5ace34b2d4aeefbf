"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are stored packed into a single Python int: every variable owns a
16-bit field, the first declared variable occupying the most significant
field.  Multiplying monomials is then integer addition and comparing packed
ints is lexicographic comparison in declaration order.  The top bit of each
field is kept clear so that divisibility can be tested with one subtraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Rational = mpq

FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
_FIELD_MASK = (1 << FIELD_BITS) - 1


class IncompatibleVariablesError(ValueError):
    """Operands live over different variable sets."""


class UnknownVariableError(KeyError):
    pass


class ExponentOverflowError(OverflowError):
    pass


def to_rational(value) -> mpq:
    """Coerce int, Fraction, mpq or a ``"p/q"`` string to an exact rational."""
    if isinstance(value, type(mpq())):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Fraction)) or isinstance(value, _RationalABC):
        return mpq(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return mpq(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


class VarSet:
    """Ordered variable names; the last ``geom_count`` names are geometric."""

    __slots__ = ("names", "geom_count", "_index", "_shifts", "guard", "_hash")

    def __init__(self, names: Sequence[str], geom_count: int = 0):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if not 0 <= geom_count <= len(names):
            raise ValueError("geom_count out of range")
        self.names = names
        self.geom_count = geom_count
        self._index = {name: i for i, name in enumerate(names)}
        n = len(names)
        self._shifts = tuple(FIELD_BITS * (n - 1 - i) for i in range(n))
        self.guard = sum(1 << (s + FIELD_BITS - 1) for s in self._shifts)
        self._hash = hash((names, geom_count))

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (isinstance(other, VarSet) and self.names == other.names
                and self.geom_count == other.geom_count)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VarSet({list(self.names)!r}, geom_count={self.geom_count})"

    @property
    def geometric(self) -> tuple[str, ...]:
        return self.names[len(self.names) - self.geom_count:]

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.names[:len(self.names) - self.geom_count]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def is_geometric(self, name: str) -> bool:
        return self.index(name) >= len(self.names) - self.geom_count

    def shift(self, name: str) -> int:
        return self._shifts[self.index(name)]

    def pack(self, exponents: Sequence[int]) -> int:
        if len(exponents) != len(self.names):
            raise ValueError("exponent vector length does not match the variable set")
        m = 0
        for e, s in zip(exponents, self._shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent {e} outside [0, {MAX_EXPONENT}]")
            m |= e << s
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & _FIELD_MASK for s in self._shifts)

    def gens(self) -> tuple["Poly", ...]:
        return tuple(Poly.variable(self, name) for name in self.names)

    def gen(self, name: str) -> "Poly":
        return Poly.variable(self, name)


def standard_varset(n: int = 3) -> VarSet:
    """Coefficient symbols a1..a10, b1..b6 followed by x1..xn."""
    params = [f"a{i}" for i in range(1, 11)] + [f"b{i}" for i in range(1, 7)]
    return VarSet(params + [f"x{i}" for i in range(1, n + 1)], geom_count=n)


def _grevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to nonzero mpq."""

    __slots__ = ("varset", "terms", "_hash")

    def __init__(self, varset: VarSet, terms: Mapping[int, mpq] | None = None, *, clean: bool = True):
        self.varset = varset
        if terms is None:
            terms = {}
        elif clean:
            terms = {m: to_rational(c) for m, c in terms.items() if c != 0}
        self.terms = terms
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, varset: VarSet, value) -> "Poly":
        c = to_rational(value)
        return cls(varset, {0: c} if c else {}, clean=False)

    @classmethod
    def variable(cls, varset: VarSet, name: str) -> "Poly":
        return cls(varset, {1 << varset.shift(name): mpq(1)}, clean=False)

    @classmethod
    def from_exponents(cls, varset: VarSet, items: Mapping[Sequence[int], object] | Iterable) -> "Poly":
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict[int, mpq] = {}
        for exps, c in items:
            m = varset.pack(exps)
            acc[m] = acc.get(m, 0) + to_rational(c)
        return cls(varset, {m: c for m, c in acc.items() if c}, clean=False)

    def _new(self, terms: dict[int, mpq]) -> "Poly":
        return Poly(self.varset, terms, clean=False)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.varset != self.varset:
                raise IncompatibleVariablesError(
                    f"{self.varset!r} vs {other.varset!r}")
            return other
        return Poly.constant(self.varset, other)

    # basic protocol -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.varset == other.varset and self.terms == other.terms
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({0: c} if c else {})

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.varset, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def __str__(self) -> str:
        from .parse import render_poly
        return render_poly(self)

    # arithmetic ----------------------------------------------------------------
    def __neg__(self) -> "Poly":
        return self._new({m: -c for m, c in self.terms.items()})

    def __pos__(self) -> "Poly":
        return self

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return self._new(out)

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_rational(other)
            if not c:
                return self._new({})
            return self._new({m: v * c for m, v in self.terms.items()})
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Poly", xbound: int | None = None) -> "Poly":
        """Product; with ``xbound`` only terms of geometric degree <= xbound are kept."""
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return self._new({})
        out: dict[int, mpq] = {}
        get = out.get
        if xbound is None:
            for mb, cb in b.items():
                for ma, ca in a.items():
                    m = ma + mb
                    v = get(m)
                    out[m] = ca * cb if v is None else v + ca * cb
        else:
            xdeg = _xdeg_function(self.varset)
            da = {ma: xdeg(ma) for ma in a}
            db = {mb: xdeg(mb) for mb in b}
            for mb, cb in b.items():
                room = xbound - db[mb]
                if room < 0:
                    continue
                for ma, ca in a.items():
                    if da[ma] > room:
                        continue
                    m = ma + mb
                    v = get(m)
                    out[m] = ca * cb if v is None else v + ca * cb
        guard = self.varset.guard
        for m in out:
            if m & guard:
                raise ExponentOverflowError("exponent exceeds the packed field width")
        return self._new({m: c for m, c in out.items() if c})

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(self.varset, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            raise TypeError("use divide_by for polynomial division")
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    # inspection ----------------------------------------------------------------
    def monomials(self) -> list[tuple[tuple[int, ...], mpq]]:
        """Terms as (exponent vector, coefficient), descending in grevlex order."""
        vs = self.varset
        items = [(vs.unpack(m), c) for m, c in self.terms.items()]
        items.sort(key=lambda t: _grevlex_key(t[0]), reverse=True)
        return items

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> mpq:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(0, mpq(0))

    def variables(self) -> tuple[str, ...]:
        """Names of variables that actually occur, in declaration order."""
        acc = 0
        for m in self.terms:
            acc |= m
        vs = self.varset
        return tuple(name for name, s in zip(vs.names, vs._shifts) if (acc >> s) & _FIELD_MASK)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var``, or total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        vs = self.varset
        if var is None:
            return max(sum(vs.unpack(m)) for m in self.terms)
        s = vs.shift(var)
        return max((m >> s) & _FIELD_MASK for m in self.terms)

    def x_degree(self) -> int:
        if not self.terms:
            return -1
        xdeg = _xdeg_function(self.varset)
        return max(xdeg(m) for m in self.terms)

    # calculus --------------------------------------------------------------------
    def diff(self, var: str) -> "Poly":
        s = self.varset.shift(var)
        one = 1 << s
        out = {}
        for m, c in self.terms.items():
            e = (m >> s) & _FIELD_MASK
            if e:
                out[m - one] = c * e
        return self._new(out)

    def gradient(self) -> tuple["Poly", ...]:
        return tuple(self.diff(x) for x in self.varset.geometric)

    def laplacian(self) -> "Poly":
        total = self._new({})
        for x in self.varset.geometric:
            total = total + self.diff(x).diff(x)
        return total

    def hessian(self) -> tuple[tuple["Poly", ...], ...]:
        xs = self.varset.geometric
        grad = self.gradient()
        rows = [[None] * len(xs) for _ in xs]
        for i, gi in enumerate(grad):
            for j in range(i, len(xs)):
                rows[i][j] = rows[j][i] = gi.diff(xs[j])
        return tuple(tuple(r) for r in rows)

    # substitution ------------------------------------------------------------
    def _split_by(self, var: str) -> dict[int, "Poly"]:
        """Group terms by the exponent of ``var``; the variable itself is removed."""
        s = self.varset.shift(var)
        groups: dict[int, dict[int, mpq]] = {}
        for m, c in self.terms.items():
            e = (m >> s) & _FIELD_MASK
            groups.setdefault(e, {})[m - (e << s)] = c
        return {e: self._new(t) for e, t in groups.items()}

    def subs(self, var: str, value) -> "Poly":
        """Replace ``var`` by a polynomial (or scalar) over the same variable set."""
        value = self._coerce(value)
        groups = self._split_by(var)
        if not groups:
            return self
        if value.is_constant():
            c = value.constant_value()
            out = self._new({})
            for e, g in groups.items():
                out = out + g * (c ** e)
            return out
        result = self._new({})
        power = Poly.constant(self.varset, 1)
        for e in range(max(groups) + 1):
            if e in groups:
                result = result + groups[e] * power
            if e < max(groups):
                power = power * value
        return result

    def subs_many(self, assignments: Mapping[str, object]) -> "Poly":
        out = self
        for var, value in assignments.items():
            out = out.subs(var, value)
        return out

    def partial_evaluate(self, point: Mapping[str, object]) -> "Poly":
        """Set the named variables to rational values simultaneously."""
        vs = self.varset
        fixed = [(vs.shift(v), to_rational(c)) for v, c in point.items()]
        out: dict[int, mpq] = {}
        for m, c in self.terms.items():
            for s, val in fixed:
                e = (m >> s) & _FIELD_MASK
                if e:
                    if not val:
                        c = 0
                        break
                    c = c * val ** e
                    m -= e << s
            if c:
                v = out.get(m)
                if v is None:
                    out[m] = c
                else:
                    v += c
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return self._new(out)

    def at_origin(self) -> "Poly":
        """Set every geometric variable to zero."""
        return self.partial_evaluate({x: 0 for x in self.varset.geometric})

    def evaluate(self, point: Mapping[str, object]):
        """Value at a full assignment; exact when every value is rational."""
        vs = self.varset
        missing = [n for n in self.variables() if n not in point]
        if missing:
            raise ValueError(f"missing assignment for {', '.join(missing)}")
        values = []
        exact = True
        for name in vs.names:
            v = point.get(name, 0)
            if isinstance(v, float):
                exact = False
            else:
                v = to_rational(v)
            values.append(v)
        total = mpq(0) if exact else 0.0
        for m, c in self.terms.items():
            term = c if exact else float(c)
            for v, e in zip(values, vs.unpack(m)):
                if e:
                    term = term * v ** e
            total += term
        return total

    def truncate_x_degree(self, bound: int) -> "Poly":
        xdeg = _xdeg_function(self.varset)
        return self._new({m: c for m, c in self.terms.items() if xdeg(m) <= bound})

    def coefficient(self, pattern: Mapping[str, int]) -> "Poly":
        """Coefficient of the monomial pattern fixing exponents for a subset of variables."""
        vs = self.varset
        fixed = [(vs.shift(v), e) for v, e in pattern.items()]
        out = {}
        for m, c in self.terms.items():
            for s, e in fixed:
                if (m >> s) & _FIELD_MASK != e:
                    break
            else:
                for s, e in fixed:
                    m -= e << s
                out[m] = c
        return self._new(out)

    def substitute_rational(self, var: str, num: "Poly", den: "Poly",
                            clear_exp: int | None = None) -> tuple["Poly", int]:
        """Return (den^k * self(var := num/den), k); k defaults to the degree in ``var``."""
        num = self._coerce(num)
        den = self._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        groups = self._split_by(var)
        d = max(groups) if groups else 0
        if clear_exp is None:
            clear_exp = d
        elif clear_exp < d:
            raise ValueError(f"clearing exponent {clear_exp} below degree {d}")
        num_pows = [Poly.constant(self.varset, 1)]
        den_pows = [Poly.constant(self.varset, 1)]
        for _ in range(clear_exp):
            num_pows.append(num_pows[-1] * num)
            den_pows.append(den_pows[-1] * den)
        result = self._new({})
        for e, g in groups.items():
            result = result + g * num_pows[e] * den_pows[clear_exp - e]
        return result, clear_exp

    def scale_to_monic(self, lead: int) -> "Poly":
        c = self.terms[lead]
        return self * (1 / c)


def _xdeg_function(varset: VarSet):
    shifts = varset._shifts[len(varset) - varset.geom_count:]
    if not shifts:
        return lambda m: 0
    low = shifts[-1]
    width = FIELD_BITS * len(shifts)
    if len(shifts) == 1:
        return lambda m: (m >> low) & _FIELD_MASK

    def xdeg(m: int) -> int:
        block = (m >> low) & ((1 << width) - 1)
        total = 0
        while block:
            total += block & _FIELD_MASK
            block >>= FIELD_BITS
        return total
    return xdeg


# function-style aliases of the core operations

def gradient(p: Poly) -> tuple[Poly, ...]:
    return p.gradient()


def laplacian(p: Poly) -> Poly:
    return p.laplacian()


def hessian(p: Poly):
    return p.hessian()


def truncate_x_degree(p: Poly, bound: int) -> Poly:
    return p.truncate_x_degree(bound)


def coefficient_of(p: Poly, pattern: Mapping[str, int]) -> Poly:
    return p.coefficient(pattern)


def substitute(p: Poly, var: str, q) -> Poly:
    return p.subs(var, q)


def substitute_rational(p: Poly, var: str, num: Poly, den: Poly, clear_exp: int | None = None):
    return p.substitute_rational(var, num, den, clear_exp)


def evaluate(p: Poly, point: Mapping[str, object]):
    return p.evaluate(point)


def divide_by(p: Poly, f: Poly, order=None) -> tuple[Poly, Poly]:
    """Single-divisor division: p = quotient*f + remainder.

    No remainder term is divisible by the leading monomial of ``f`` under
    ``order`` (default: grevlex in declaration order).
    """
    from .orders import MonomialOrder
    f = p._coerce(f)
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if order is None:
        order = MonomialOrder("grevlex")
    vs = p.varset
    key = order.key_function(vs)
    lead = max(f.terms, key=key)
    lc = f.terms[lead]
    guard = vs.guard
    rest = {m: c for m, c in f.terms.items() if m != lead}
    work = dict(p.terms)
    quotient: dict[int, mpq] = {}
    remainder: dict[int, mpq] = {}
    # highest surviving term first; keys are cached per monomial
    cache = {}

    def k(m):
        v = cache.get(m)
        if v is None:
            v = cache[m] = key(m)
        return v

    while work:
        m = max(work, key=k)
        c = work.pop(m)
        diff = (m | guard) - lead
        if diff & guard == guard:
            t = m - lead
            q = c / lc
            quotient[t] = quotient.get(t, 0) + q
            for mr, cr in rest.items():
                mm = mr + t
                v = work.get(mm, 0) - q * cr
                if v:
                    work[mm] = v
                else:
                    work.pop(mm, None)
        else:
            remainder[m] = c
    return (Poly(vs, {m: c for m, c in quotient.items() if c}, clean=False),
            Poly(vs, remainder, clean=False))


def sqrt_rational(value: mpq) -> mpq | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    value = to_rational(value)
    if value < 0:
        return None
    n, d = int(value.numerator), int(value.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None
