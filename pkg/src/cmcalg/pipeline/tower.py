"""Tangential derivative towers of g = N - 4 s^3 evaluated at the origin."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..cmc import CmcContext, g_element
from ..poly import Poly, VarSet, standard_varset
from ..radical import RadicalElement, tangential
from .ledger import SubstitutionLedger

_CUBIC_MONOMIALS = (
    ("a1", (3, 0, 0)), ("a2", (0, 3, 0)), ("a3", (0, 0, 3)),
    ("a4", (2, 1, 0)), ("a5", (2, 0, 1)), ("a6", (1, 2, 0)), ("a7", (0, 2, 1)),
    ("a8", (1, 0, 2)), ("a9", (0, 1, 2)), ("a10", (1, 1, 1)),
)
_QUADRATIC_MONOMIALS = (
    ("b1", (2, 0, 0)), ("b2", (0, 2, 0)), ("b3", (0, 0, 2)),
    ("b4", (1, 1, 0)), ("b5", (1, 0, 1)), ("b6", (0, 1, 1)),
)


def raw_cubic(case: str, varset: VarSet | None = None) -> Poly:
    """The general cubic with no normalization; Case I carries the linear term x3."""
    vs = varset or standard_varset(3)
    x1, x2, x3 = (vs.gen(x) for x in vs.geometric)
    xs = (x1, x2, x3)
    f = Poly.constant(vs, 0)
    for name, exps in _CUBIC_MONOMIALS + _QUADRATIC_MONOMIALS:
        term = vs.gen(name)
        for x, e in zip(xs, exps):
            if e:
                term = term * x ** e
        f = f + term
    case = _case_id(case)
    if case == "I":
        f = f + x3
    return f


def _case_id(case) -> str:
    c = str(case).upper()
    if c in ("I", "1"):
        return "I"
    if c in ("II", "2"):
        return "II"
    raise ValueError(f"unknown case {case!r}; expected I or II")


def generic_cubic(case: str) -> tuple[Poly, VarSet]:
    """Case I comes with b1 = 1, b2 = b4 = 0 already applied."""
    vs = standard_varset(3)
    f = raw_cubic(case, vs)
    if _case_id(case) == "I":
        f = f.subs("b1", 1).subs("b2", 0).subs("b4", 0)
    return f, vs


def _check_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(int(i) for i in seq)
    if not 1 <= len(seq) <= 5:
        raise ValueError(f"index sequence {seq} must have length 1..5")
    if any(i not in (1, 2) for i in seq):
        raise ValueError(f"index sequence {seq} uses indices outside {{1, 2}}")
    if any(a > b for a, b in zip(seq, seq[1:])):
        raise ValueError(f"index sequence {seq} is not nondecreasing")
    return seq


class QTower:
    """G_{i1..ik} = T_{ik}(G_{i1..ik-1}) with G_() = g, T_i the tangential operator.

    A value at level L feeds at most depth - L further derivatives, so its
    terms of higher geometric degree never reach the origin.  Jets are kept
    one degree beyond that as a margin.  ``truncate=False`` keeps everything.
    """

    def __init__(self, f: Poly, depth: int, *, H=1, truncate: bool = True):
        self.f = f
        self.depth = depth
        self.truncate = truncate
        self.grad = f.gradient()
        root = g_element(CmcContext(3, H, f))
        if truncate:
            root = root.truncate(depth + 1)
        self._cache: dict[tuple[int, ...], RadicalElement] = {(): root}

    def element(self, seq: Sequence[int]) -> RadicalElement:
        seq = tuple(seq)
        if len(seq) > self.depth:
            raise ValueError(f"sequence {seq} is deeper than the tower depth {self.depth}")
        hit = self._cache.get(seq)
        if hit is not None:
            return hit
        parent = self.element(seq[:-1])
        bound = self.depth - len(seq) + 1 if self.truncate else None
        G = tangential(parent, self.f, seq[-1], grad=self.grad, xbound=bound)
        if bound is not None:
            G = G.truncate(bound)
        self._cache[seq] = G
        return G

    def value(self, seq: Sequence[int]) -> Poly:
        return self.element(_check_sequence(seq)).eval_at_origin()


def q_values(seqs: Iterable[Sequence[int]], ledger: SubstitutionLedger, *,
             case: str = "I", truncate: bool = True) -> dict[tuple[int, ...], Poly]:
    seqs = [_check_sequence(s) for s in seqs]
    f, _ = generic_cubic(case)
    f = ledger.apply(f)
    tower = QTower(f, max(len(s) for s in seqs), truncate=truncate)
    return {s: tower.value(s) for s in seqs}


def q_value(indices: Sequence[int], ledger: SubstitutionLedger, *, case: str = "I",
            truncate: bool = True) -> Poly:
    seq = _check_sequence(indices)
    return q_values([seq], ledger, case=case, truncate=truncate)[seq]
