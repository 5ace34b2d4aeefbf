"""Floating-point cross-checks: level-set sampling and a finite-difference curvature oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cmc import CmcContext, CriticalPointError, curvature_data
from .poly import Poly
from .radical import RadicalElement

BOX = 3.0
BISECTION_STEPS = 60
FD_STEP = 1e-5
FD_TOLERANCE = 1e-6


class SamplingFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class SamplePoint:
    coords: tuple[float, ...]
    residual: float
    gradient_norm: float


class CompiledPoly:
    """Vectorized float evaluation of a polynomial in the geometric variables."""

    def __init__(self, p: Poly):
        vs = p.varset
        params = [v for v in p.variables() if not vs.is_geometric(v)]
        if params:
            raise ValueError(f"cannot evaluate numerically with free parameters {params}")
        geo = [vs.index(x) for x in vs.geometric]
        mons = p.monomials()
        self.n = len(geo)
        self.exps = np.array([[e[i] for i in geo] for e, _ in mons], dtype=np.int64).reshape(-1, self.n)
        self.coeffs = np.array([float(c) for _, c in mons], dtype=float)

    def __call__(self, x) -> np.ndarray | float:
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            return float(self.coeffs @ np.prod(x[None, :] ** self.exps, axis=1))
        return np.prod(x[:, None, :] ** self.exps[None, :, :], axis=2) @ self.coeffs


class _Surface:
    def __init__(self, f: Poly):
        self.f = f
        self.value = CompiledPoly(f)
        self.grad = [CompiledPoly(g) for g in f.gradient()]
        self.n = f.varset.geom_count

    def gradient(self, x) -> np.ndarray:
        return np.array([g(x) for g in self.grad])


def _tolerance(x: np.ndarray) -> float:
    return 1e-12 * (1 + float(np.linalg.norm(x)) ** 3)


def sample_level_set(f: Poly, count: int, seed: int, *, max_probes: int | None = None,
                     box: float = BOX) -> list[SamplePoint]:
    """Regular points of {f = 0} found by bisection on random segments in [-box, box]^n.

    Probe points are kept by the sign of f; each new probe is joined to a
    random earlier probe of the opposite sign, so small components still get
    sign-changing segments.
    """
    surf = _Surface(f)
    n = surf.n
    rng = np.random.default_rng(seed)
    if max_probes is None:
        max_probes = 2000 + 200 * count
    pools: dict[bool, list[tuple[np.ndarray, float]]] = {True: [], False: []}
    points: list[SamplePoint] = []
    for _ in range(max_probes):
        if len(points) >= count:
            break
        a = rng.uniform(-box, box, size=n)
        fa = surf.value(a)
        if fa == 0:
            x = a
        else:
            other = pools[fa > 0]
            pools[fa < 0].append((a, fa))
            if not other:
                continue
            b, fb = other[int(rng.integers(len(other)))]
            for _ in range(BISECTION_STEPS):
                m = (a + b) / 2
                fm = surf.value(m)
                if fm == 0:
                    a = b = m
                    break
                if (fm < 0) == (fa < 0):
                    a, fa = m, fm
                else:
                    b, fb = m, fm
            x = a if abs(fa) <= abs(fb) else b
        residual = abs(surf.value(x))
        gnorm = float(np.linalg.norm(surf.gradient(x)))
        if residual <= _tolerance(x) and gnorm > 1e-8:
            points.append(SamplePoint(tuple(float(c) for c in x), residual, gnorm))
    if len(points) < count:
        if not pools[True] or not pools[False]:
            raise SamplingFailure(f"f has no sign change in {max_probes} probes of the box")
        raise SamplingFailure(
            f"found {len(points)} of {count} regular points after {max_probes} probes")
    return points


@dataclass
class CurvatureCheck:
    expected: float
    formula: list[float]
    finite_difference: list[float]
    max_formula_deviation: float
    max_fd_deviation: float
    max_cross_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.max_formula_deviation, self.max_fd_deviation) <= self.tol


def _tangent_frame(normal: np.ndarray) -> np.ndarray:
    """Rows form an orthonormal basis of the complement of ``normal``."""
    q, _ = np.linalg.qr(np.column_stack([normal, np.eye(len(normal))]))
    return q[:, 1:len(normal)].T


def fd_mean_curvature(f: Poly, x: Sequence[float], h: float = FD_STEP) -> float:
    """Mean curvature from a local graph of {f = 0} over its tangent plane.

    The surface near x is written as x + t.E + w(t) nu with nu = grad f / |grad f|.
    The gradient of w comes from the implicit function theorem at solved graph
    points; its centered differences give the Hessian, and H = -tr(D^2 w)/(n-1).
    """
    return _fd_mean_curvature(_Surface(f), np.asarray(x, dtype=float), h)


def _fd_mean_curvature(surf: _Surface, x: np.ndarray, h: float) -> float:
    g = surf.gradient(x)
    gn = float(np.linalg.norm(g))
    if gn == 0:
        raise CriticalPointError(f"grad f vanishes at {tuple(x)}")
    nu = g / gn
    E = _tangent_frame(nu)

    def graph_point(t: np.ndarray) -> np.ndarray:
        base = x + t @ E
        w = 0.0
        for _ in range(50):
            y = base + w * nu
            fy = surf.value(y)
            step = fy / float(surf.gradient(y) @ nu)
            w -= step
            if abs(step) < 1e-17 * (1 + abs(w)):
                break
        return base + w * nu

    def graph_gradient(t: np.ndarray) -> np.ndarray:
        gy = surf.gradient(graph_point(t))
        return -(E @ gy) / float(gy @ nu)

    m = len(E)
    trace = 0.0
    for i in range(m):
        step = np.zeros(m)
        step[i] = h
        trace += (graph_gradient(step)[i] - graph_gradient(-step)[i]) / (2 * h)
    return -trace / m


def formula_mean_curvature(f: Poly, points) -> list[float]:
    N, B = curvature_data(CmcContext(f.varset.geom_count, 0, f))
    cN, cB = CompiledPoly(N), CompiledPoly(B)
    n = f.varset.geom_count
    out = []
    for p in points:
        x = np.asarray(getattr(p, "coords", p), dtype=float)
        b = cB(x)
        if b <= 0:
            raise CriticalPointError(f"grad f vanishes at {tuple(x)}")
        out.append(cN(x) / (2 * (n - 1) * b ** 1.5))
    return out


def verify_constant_curvature(f: Poly, H: float, tol: float,
                              points: Sequence[SamplePoint]) -> CurvatureCheck:
    surf = _Surface(f)
    formula = formula_mean_curvature(f, points)
    fd = [_fd_mean_curvature(surf, np.asarray(p.coords), FD_STEP) for p in points]
    dev = lambda xs: max((abs(v - H) for v in xs), default=0.0)  # noqa: E731
    cross = max((abs(a - b) for a, b in zip(formula, fd)), default=0.0)
    return CurvatureCheck(float(H), formula, fd, dev(formula), dev(fd), cross, tol)


@dataclass
class VanishingCheck:
    values: list[float]
    max_abs: float


def verify_vanishing(F: RadicalElement, points) -> VanishingCheck:
    cP, cQ, cB = CompiledPoly(F.P), CompiledPoly(F.Q), CompiledPoly(F.B)
    values = []
    for p in points:
        x = np.asarray(getattr(p, "coords", p), dtype=float)
        b = cB(x)
        if b <= 0:
            raise ValueError(f"radicand is nonpositive ({b}) at {tuple(x)}")
        s = math.sqrt(b)
        values.append((cP(x) + s * cQ(x)) / s ** F.k)
    return VanishingCheck(values, max((abs(v) for v in values), default=0.0))


@dataclass(frozen=True)
class KnownCheck:
    name: str
    passed: bool
    detail: str


def check_known(*, samples: int = 100, seed: int = 0, tol: float = FD_TOLERANCE) -> list[KnownCheck]:
    """Spheres of radius 1/2, 1, 2, the unit-radius cylinder and the plane x3 = 0."""
    from gmpy2 import mpq

    from .cmc import exact_H_squared, mean_curvature_at
    from .parse import parse_poly
    from .poly import VarSet

    vs = VarSet(["x1", "x2", "x3"], 3)
    cases = []
    for r in (mpq(1, 2), mpq(1), mpq(2)):
        cases.append((f"sphere r={r}", f"x1^2 + x2^2 + x3^2 - {r * r}", r, 1 / r))
    cases.append(("cylinder r=1", "x1^2 + x2^2 - 1", mpq(1), mpq(1, 2)))
    cases.append(("plane x3=0", "x3", None, mpq(0)))
    out = []
    for name, text, r, H in cases:
        f = parse_poly(text, vs)
        ctx = CmcContext(3, H, f)
        point = (0, 0, 0) if r is None else (r, 0, 0)
        h2 = exact_H_squared(ctx, point)
        hf = mean_curvature_at(ctx, point)
        ok = h2 == H * H and abs(hf - float(H)) <= 1e-10
        out.append(KnownCheck(f"{name} exact", ok, f"H^2 = {h2} at {tuple(str(c) for c in point)}"))
        pts = sample_level_set(f, samples, seed)
        res = verify_constant_curvature(f, float(H), tol, pts)
        out.append(KnownCheck(
            f"{name} sampled", res.passed,
            f"{samples} points, formula and finite differences within {tol:g} of H = {H}"))
    return out
