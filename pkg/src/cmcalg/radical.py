"""Quotients (P + s*Q) / s**k with s**2 = B.

s stands for |grad f| and B = |grad f|**2 is a polynomial shared by every
element of one computation.  Differentiation uses ds/dx = (dB/dx) / (2 s),
so the form is closed under derivatives:

    d((P + sQ)/s^k) = (2B P' - k P B' + s (2B Q' + (1 - k) Q B')) / (2 s^(k+2))
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from gmpy2 import mpq

from .poly import Poly, to_rational


class RadicalElement:
    __slots__ = ("P", "Q", "k", "B")

    def __init__(self, P: Poly, Q: Poly, k: int, B: Poly):
        if B.is_zero():
            raise ValueError("radicand must be a nonzero polynomial")
        if P.varset != B.varset or Q.varset != B.varset:
            raise ValueError("P, Q and B must share one variable set")
        if k < 0:
            raise ValueError("s-exponent must be nonnegative")
        while P.is_zero() and k > 0 and not Q.is_zero():
            P, Q, k = Q, P, k - 1
        if P.is_zero() and Q.is_zero():
            k = 0
        self.P, self.Q, self.k, self.B = P, Q, k, B

    def __repr__(self) -> str:
        return f"RadicalElement(P={self.P}, Q={self.Q}, k={self.k})"

    @property
    def varset(self):
        return self.B.varset

    def is_zero(self) -> bool:
        return self.P.is_zero() and self.Q.is_zero()

    def _same_radicand(self, other: "RadicalElement") -> None:
        if other.B is not self.B and other.B != self.B:
            raise ValueError("elements use different radicands")

    def lift(self, k: int, xbound: int | None = None) -> tuple[Poly, Poly]:
        """Numerator pair representing self over s**k (k >= self.k)."""
        d = k - self.k
        if d < 0:
            raise ValueError("cannot lower the s-exponent")
        if d == 0:
            return self.P, self.Q
        B = self.B if xbound is None else self.B.truncate_x_degree(xbound)
        half = B * 0 + 1
        for _ in range(d // 2):
            half = half.mul(B, xbound)
        if d % 2 == 0:
            return self.P.mul(half, xbound), self.Q.mul(half, xbound)
        return self.Q.mul(half.mul(B, xbound), xbound), self.P.mul(half, xbound)

    def _coerce(self, other) -> "RadicalElement":
        if isinstance(other, RadicalElement):
            self._same_radicand(other)
            return other
        if isinstance(other, Poly):
            return RadicalElement(other, other * 0, 0, self.B)
        zero = self.P * 0
        return RadicalElement(zero + to_rational(other), zero, 0, self.B)

    def add(self, other, xbound: int | None = None) -> "RadicalElement":
        """Sum whose numerators are kept only up to geometric degree ``xbound``."""
        other = self._coerce(other)
        k = max(self.k, other.k)
        p1, q1 = self.lift(k, xbound)
        p2, q2 = other.lift(k, xbound)
        return RadicalElement(p1 + p2, q1 + q2, k, self.B)

    def __add__(self, other) -> "RadicalElement":
        return self.add(other)

    __radd__ = __add__

    def __neg__(self) -> "RadicalElement":
        return RadicalElement(-self.P, -self.Q, self.k, self.B)

    def __sub__(self, other) -> "RadicalElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RadicalElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RadicalElement":
        if isinstance(other, RadicalElement):
            self._same_radicand(other)
            P = self.P * other.P + self.B * (self.Q * other.Q)
            Q = self.P * other.Q + self.Q * other.P
            return RadicalElement(P, Q, self.k + other.k, self.B)
        if isinstance(other, Poly):
            return RadicalElement(self.P * other, self.Q * other, self.k, self.B)
        c = to_rational(other)
        return RadicalElement(self.P * c, self.Q * c, self.k, self.B)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadicalElement):
            return NotImplemented
        if other.B != self.B:
            return False
        k = max(self.k, other.k)
        return self.lift(k) == other.lift(k)

    __hash__ = None

    def diff(self, var: str, xbound: int | None = None) -> "RadicalElement":
        vs = self.B.varset
        if not vs.is_geometric(var):
            raise ValueError(f"{var} is not a geometric variable")
        P, Q, k, B = self.P, self.Q, self.k, self.B
        if xbound is not None:
            # coefficients of degree > xbound + 1 cannot reach degree xbound after one derivative
            P = P.truncate_x_degree(xbound + 1)
            Q = Q.truncate_x_degree(xbound + 1)
            B = B.truncate_x_degree(xbound + 1)
        dB = B.diff(var)
        dP, dQ = P.diff(var), Q.diff(var)
        newP = B.mul(dP, xbound)
        if k:
            newP = newP - P.mul(dB, xbound) * mpq(k, 2)
        newQ = B.mul(dQ, xbound)
        if k != 1:
            newQ = newQ + Q.mul(dB, xbound) * mpq(1 - k, 2)
        return RadicalElement(newP, newQ, k + 2, self.B)

    def mul_poly(self, p: Poly, xbound: int | None = None) -> "RadicalElement":
        return RadicalElement(self.P.mul(p, xbound), self.Q.mul(p, xbound), self.k, self.B)

    def truncate(self, bound: int) -> "RadicalElement":
        return RadicalElement(self.P.truncate_x_degree(bound), self.Q.truncate_x_degree(bound),
                              self.k, self.B)

    def eval_at_origin(self) -> Poly:
        """Value at x = 0 as a polynomial in the parameters; requires B(0) = 1."""
        b0 = self.B.at_origin()
        if b0 != 1:
            raise ValueError(f"exact origin evaluation needs B(0) = 1, got {b0}")
        return (self.P + self.Q).at_origin()

    def evaluate(self, point: Mapping[str, object]) -> float:
        b = float(self.B.evaluate(point))
        if b <= 0:
            raise ValueError(f"radicand is nonpositive ({b}) at the evaluation point")
        s = math.sqrt(b)
        return (float(self.P.evaluate(point)) + s * float(self.Q.evaluate(point))) / s ** self.k


def make_element(P: Poly, Q: Poly, k: int, B: Poly) -> RadicalElement:
    return RadicalElement(P, Q, k, B)


def embed(p: Poly, B: Poly) -> RadicalElement:
    return RadicalElement(p, p * 0, 0, B)


def rad_differentiate(F: RadicalElement, var: str, xbound: int | None = None) -> RadicalElement:
    return F.diff(var, xbound)


def tangential(F: RadicalElement, f: Poly, i: int, *, grad: Sequence[Poly] | None = None,
               xbound: int | None = None) -> RadicalElement:
    """dF/dx_i * df/dx_n - dF/dx_n * df/dx_i, with the pivot fixed at the last coordinate.

    ``i`` is 1-based and ranges over 1..n-1.
    """
    xs = f.varset.geometric
    n = len(xs)
    if not 1 <= i <= n - 1:
        raise IndexError(f"tangential index {i} outside 1..{n - 1}")
    if grad is None:
        grad = f.gradient()
    Fi = F.diff(xs[i - 1], xbound)
    Fn = F.diff(xs[n - 1], xbound)
    return Fi.mul_poly(grad[n - 1], xbound).add(-Fn.mul_poly(grad[i - 1], xbound), xbound)


def rad_evaluate(F: RadicalElement, point: Mapping[str, object]) -> float:
    return F.evaluate(point)


def eval_at_origin(F: RadicalElement) -> Poly:
    return F.eval_at_origin()
