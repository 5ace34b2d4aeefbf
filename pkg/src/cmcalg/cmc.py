"""Curvature of polynomial level sets and the constant-mean-curvature certificate.

With N = 2|grad f|^2 lap f - <grad |grad f|^2, grad f> and B = |grad f|^2 the
mean curvature of {f = 0} at a regular point is N / (2 (n-1) B^(3/2)), for the
Gauss map -grad f / |grad f| (spheres |x|^2 - r^2 get H = +1/r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from gmpy2 import mpq

from .poly import Poly, divide_by, sqrt_rational, to_rational
from .radical import RadicalElement


class CriticalPointError(ValueError):
    """The gradient vanishes at the requested point."""


class NotTangentError(ValueError):
    pass


@dataclass(frozen=True)
class CmcContext:
    n: int
    H: mpq
    f: Poly

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("ambient dimension must be at least 2")
        if self.f.varset.geom_count != self.n:
            raise ValueError(
                f"f has {self.f.varset.geom_count} geometric variables, expected {self.n}")
        object.__setattr__(self, "H", to_rational(self.H))


@dataclass(frozen=True)
class MembershipCertificate:
    u: Poly
    cofactor: Poly
    remainder: Poly
    certified: bool


def curvature_data(ctx: CmcContext) -> tuple[Poly, Poly]:
    f = ctx.f
    if f.x_degree() <= 0:
        raise ValueError("f is constant in the geometric variables")
    grad = f.gradient()
    B = sum((g * g for g in grad[1:]), grad[0] * grad[0])
    lap = f.laplacian()
    xs = f.varset.geometric
    inner = sum((B.diff(x) * g for x, g in zip(xs[1:], grad[1:])), B.diff(xs[0]) * grad[0])
    N = B * lap * 2 - inner
    return N, B


def _point_assignment(ctx: CmcContext, point) -> dict[str, object]:
    if isinstance(point, Mapping):
        return dict(point)
    xs = ctx.f.varset.geometric
    if len(point) != len(xs):
        raise ValueError(f"expected {len(xs)} coordinates, got {len(point)}")
    return dict(zip(xs, point))


def mean_curvature_at(ctx: CmcContext, point) -> float:
    N, B = curvature_data(ctx)
    pt = _point_assignment(ctx, point)
    b = float(B.evaluate(pt))
    if b == 0:
        raise CriticalPointError(f"grad f vanishes at {point}")
    return float(N.evaluate(pt)) / (2 * (ctx.n - 1) * b ** 1.5)


def exact_H_squared(ctx: CmcContext, point) -> mpq:
    N, B = curvature_data(ctx)
    pt = {k: to_rational(v) for k, v in _point_assignment(ctx, point).items()}
    b = B.evaluate(pt)
    if b == 0:
        raise CriticalPointError(f"grad f vanishes at {point}")
    return N.evaluate(pt) ** 2 / (4 * (ctx.n - 1) ** 2 * b ** 3)


def second_fundamental_at(ctx: CmcContext, point, v: Sequence, w: Sequence):
    """II(v, w) = <D^2 f v, w> / |grad f| at a point of the geometric block.

    Parameters left unassigned stay symbolic and a Poly is returned; a fully
    numeric result is an exact rational when |grad f| is rational at the point
    and a float otherwise.
    """
    f = ctx.f
    pt = {k: to_rational(val) for k, val in _point_assignment(ctx, point).items()}
    grad = [g.partial_evaluate(pt) for g in f.gradient()]
    v = [to_rational(c) for c in v]
    w = [to_rational(c) for c in w]
    for vec in (v, w):
        dot = sum((g * c for g, c in zip(grad, vec)), f * 0)
        if not dot.is_zero():
            raise NotTangentError(f"{vec} is not tangent: <grad f, v> = {dot}")
    B = sum((g * g for g in grad), f * 0)
    if not B.is_constant():
        raise ValueError("|grad f|^2 depends on unassigned parameters at this point")
    b = B.constant_value()
    if b == 0:
        raise CriticalPointError(f"grad f vanishes at {point}")
    hess = f.hessian()
    val = f * 0
    for i, row in enumerate(hess):
        for j, h in enumerate(row):
            if v[i] and w[j]:
                val = val + h.partial_evaluate(pt) * (v[i] * w[j])
    root = sqrt_rational(b)
    if root is None:
        if not val.is_constant():
            raise ValueError("irrational |grad f| with symbolic second derivatives")
        return float(val.constant_value()) / math.sqrt(float(b))
    val = val * (1 / root)
    return val.constant_value() if val.is_constant() else val


def cmc_residual(ctx: CmcContext) -> Poly:
    """u = N^2 - 4 (n-1)^2 H^2 B^3."""
    N, B = curvature_data(ctx)
    return N * N - B ** 3 * (4 * (ctx.n - 1) ** 2 * ctx.H ** 2)


def membership_certificate(ctx: CmcContext, order=None) -> MembershipCertificate:
    if ctx.f.is_zero():
        raise ValueError("f must be nonzero")
    u = cmc_residual(ctx)
    quotient, remainder = divide_by(u, ctx.f, order)
    return MembershipCertificate(u, quotient, remainder, remainder.is_zero())


def g_element(ctx: CmcContext) -> RadicalElement:
    """N - 2(n-1) H s^3, stored as N + s*(-2(n-1)H B)."""
    N, B = curvature_data(ctx)
    return RadicalElement(N, B * (-2 * (ctx.n - 1) * ctx.H), 0, B)
