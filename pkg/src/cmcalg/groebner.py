"""Buchberger's algorithm, normal forms and ideal membership over QQ."""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gmpy2 import mpq

from .orders import MonomialOrder, OrderSpace
from .poly import Poly, VarSet

DEFAULT_MAX_TERMS = 10_000_000
DEFAULT_MAX_PAIRS = 100_000


class ResourceGuardError(RuntimeError):
    """A configured term or pair ceiling was reached."""

    def __init__(self, message: str, *, kind: str, limit: int, observed: int):
        super().__init__(message)
        self.kind = kind
        self.limit = limit
        self.observed = observed


def default_max_terms() -> int:
    raw = os.environ.get("CMCALG_MAX_TERMS")
    if raw:
        return int(raw)
    return DEFAULT_MAX_TERMS


@dataclass
class GroebnerStats:
    pairs_processed: int = 0
    pairs_skipped: int = 0
    zero_reductions: int = 0
    terms_peak: int = 0


@dataclass
class GroebnerBasis:
    generators: list[Poly]
    order: MonomialOrder
    reduced: bool = False
    stats: GroebnerStats = field(default_factory=GroebnerStats)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def varset(self) -> VarSet:
        return self.generators[0].varset


class _Engine:
    def __init__(self, varset: VarSet, space: OrderSpace, max_terms: int | None,
                 max_pairs: int | None):
        self.varset = varset
        self.space = space
        self.max_terms = default_max_terms() if max_terms is None else max_terms
        self.max_pairs = DEFAULT_MAX_PAIRS if max_pairs is None else max_pairs
        self.stored = 0
        self.stats = GroebnerStats()

    def to_space(self, p: Poly) -> dict[int, mpq]:
        enc = self.space.encode
        return {enc(m): c for m, c in p.terms.items()}

    def from_space(self, d: dict[int, mpq]) -> Poly:
        dec = self.space.decode
        return Poly(self.varset, {dec(k): c for k, c in d.items()}, clean=False)

    def _check_terms(self, working: int, growth: int = 0) -> None:
        """Record the live term count and refuse a step that could pass the ceiling.

        ``growth`` bounds how many terms the next step can add, so the guard
        fires while the footprint is still within the limit.
        """
        total = self.stored + working
        if total > self.stats.terms_peak:
            self.stats.terms_peak = total
        if total + growth > self.max_terms:
            raise ResourceGuardError(
                f"term ceiling {self.max_terms} reached ({total} live terms, next step "
                f"adds up to {growth})", kind="terms", limit=self.max_terms, observed=total)

    def reduce(self, p: dict[int, mpq], basis: Sequence[tuple[int, dict[int, mpq]]],
               full: bool = True) -> dict[int, mpq]:
        """Remainder of ``p`` on division by ``basis`` (pairs of lead monomial, poly)."""
        divides = self.space.divides
        p = dict(p)
        rem: dict[int, mpq] = {}
        check = self._check_terms
        while p:
            m = max(p)
            c = p[m]
            for lm, g in basis:
                if divides(lm, m):
                    break
            else:
                if not full:
                    rem.update(p)
                    return rem
                rem[m] = p.pop(m)
                continue
            check(len(p) + len(rem), len(g) - 1)
            del p[m]
            q = c / g[lm]
            shift = m - lm
            get = p.get
            for mg, cg in g.items():
                if mg == lm:
                    continue
                mm = mg + shift
                v = get(mm)
                if v is None:
                    p[mm] = -q * cg
                else:
                    v -= q * cg
                    if v:
                        p[mm] = v
                    else:
                        del p[mm]
            check(len(p) + len(rem))
        return rem

    def spoly(self, f: dict[int, mpq], lf: int, g: dict[int, mpq], lg: int) -> dict[int, mpq]:
        sp = self.space
        l = sp.lcm(lf, lg)
        sf, sg = l - lf, l - lg
        cf, cg = f[lf], g[lg]
        out: dict[int, mpq] = {}
        for m, c in f.items():
            out[m + sf] = c / cf
        for m, c in g.items():
            mm = m + sg
            v = out.get(mm, 0) - c / cg
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return out


def _monic(d: dict[int, mpq]) -> tuple[int, dict[int, mpq]]:
    lm = max(d)
    c = d[lm]
    if c == 1:
        return lm, d
    inv = 1 / c
    return lm, {m: v * inv for m, v in d.items()}


def _support(polys: Iterable[Poly]) -> set[str]:
    names: set[str] = set()
    for p in polys:
        names.update(p.variables())
    return names


def _prepare(gens: Sequence[Poly], order: MonomialOrder, max_terms, max_pairs):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("generator list is empty or all zero")
    vs = gens[0].varset
    for g in gens:
        if g.varset != vs:
            raise ValueError("generators live over different variable sets")
    space = order.space(vs, _support(gens) or None)
    return gens, _Engine(vs, space, max_terms, max_pairs)


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    """S(f, g) = (L/LT(f)) f - (L/LT(g)) g with L the lcm of leading monomials."""
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    _, eng = _prepare([f, g], order, None, None)
    df, dg = eng.to_space(f), eng.to_space(g)
    return eng.from_space(eng.spoly(df, max(df), dg, max(dg)))


def leading_monomial(p: Poly, order: MonomialOrder) -> tuple[int, ...]:
    key = order.key_function(p.varset)
    return p.varset.unpack(max(p.terms, key=key))


def leading_term(p: Poly, order: MonomialOrder) -> tuple[tuple[int, ...], mpq]:
    key = order.key_function(p.varset)
    m = max(p.terms, key=key)
    return p.varset.unpack(m), p.terms[m]


def normal_form(p: Poly, basis: Sequence[Poly], order: MonomialOrder, *,
                max_terms: int | None = None) -> Poly:
    """Fully reduced remainder of p modulo ``basis`` (divisors tried in list order)."""
    basis = [b for b in basis if not b.is_zero()]
    if p.is_zero():
        return p
    if not basis:
        return p
    vs = p.varset
    space = order.space(vs, _support(list(basis) + [p]))
    eng = _Engine(vs, space, max_terms, None)
    div = []
    for b in basis:
        d = eng.to_space(b)
        div.append((max(d), d))
    return eng.from_space(eng.reduce(eng.to_space(p), div))


def buchberger(gens: Sequence[Poly], order: MonomialOrder, *, criteria: bool = True,
               reduce: bool = True, max_terms: int | None = None,
               max_pairs: int | None = None) -> GroebnerBasis:
    """Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    generator index).  With ``criteria`` the Gebauer-Moeller update applies
    the coprime-leading-monomial and chain criteria.
    """
    gens, eng = _prepare(gens, order, max_terms, max_pairs)
    sp = eng.space
    polys: list[dict[int, mpq]] = []
    lms: list[int] = []
    active: list[int] = []
    heap: list[tuple[int, int, int]] = []
    alive: set[tuple[int, int]] = set()

    def basis_view():
        return [(lms[i], polys[i]) for i in active]

    def add(h: dict[int, mpq]) -> None:
        eng._check_terms(0, len(h))
        lm, h = _monic(h)
        idx = len(polys)
        polys.append(h)
        lms.append(lm)
        eng.stored += len(h)
        if not criteria:
            for i in range(idx):
                alive.add((i, idx))
                heapq.heappush(heap, (sp.lcm(lms[i], lm), i, idx))
            active.append(idx)
        else:
            _gm_update(idx)
        if len(alive) > eng.max_pairs:
            raise ResourceGuardError(
                f"pair ceiling {eng.max_pairs} reached ({len(alive)} pending pairs)",
                kind="pairs", limit=eng.max_pairs, observed=len(alive))

    def _gm_update(h: int) -> None:
        th = lms[h]
        cand = [(g, sp.lcm(lms[g], th)) for g in active]
        n_cand = len(cand)
        kept: list[tuple[int, int]] = []
        while cand:
            g1, l1 = cand.pop(0)
            if (sp.coprime(lms[g1], th)
                    or (not any(sp.divides(l2, l1) for _, l2 in cand)
                        and not any(sp.divides(l2, l1) for _, l2 in kept))):
                kept.append((g1, l1))
        new_pairs = [(g, l) for g, l in kept if not sp.coprime(lms[g], th)]
        eng.stats.pairs_skipped += n_cand - len(new_pairs)
        # chain criterion on existing pairs
        for pair in list(alive):
            i, j = pair
            lij = sp.lcm(lms[i], lms[j])
            if (sp.divides(th, lij) and sp.lcm(lms[i], th) != lij
                    and sp.lcm(lms[j], th) != lij):
                alive.discard(pair)
                eng.stats.pairs_skipped += 1
        for g, l in new_pairs:
            alive.add((g, h))
            heapq.heappush(heap, (l, g, h))
        active[:] = [g for g in active if not sp.divides(th, lms[g])] + [h]

    for g in gens:
        d = eng.to_space(g)
        if polys:
            d = eng.reduce(d, basis_view())
        if d:
            add(d)

    while heap:
        l, i, j = heapq.heappop(heap)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        eng.stats.pairs_processed += 1
        eng._check_terms(0, len(polys[i]) + len(polys[j]))
        s = eng.spoly(polys[i], lms[i], polys[j], lms[j])
        h = eng.reduce(s, basis_view()) if s else s
        if h:
            add(h)
        else:
            eng.stats.zero_reductions += 1

    result = [(lms[i], polys[i]) for i in active]
    if reduce:
        result = _interreduce(eng, result)
    else:
        result.sort(key=lambda t: t[0], reverse=True)
    return GroebnerBasis([eng.from_space(d) for _, d in result], order, reduced=reduce,
                         stats=eng.stats)


def _interreduce(eng: _Engine, basis: list[tuple[int, dict[int, mpq]]]):
    sp = eng.space
    basis = sorted(basis, key=lambda t: t[0])
    minimal: list[tuple[int, dict[int, mpq]]] = []
    for lm, g in basis:
        if any(sp.divides(lm2, lm) for lm2, _ in minimal):
            continue
        minimal.append((lm, g))
    out = []
    for idx, (lm, g) in enumerate(minimal):
        others = [t for k, t in enumerate(minimal) if k != idx]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = eng.reduce(tail, others)
        head_c = g[lm]
        red = {m: c / head_c for m, c in tail.items()}
        red[lm] = mpq(1)
        out.append((lm, red))
    out.sort(key=lambda t: t[0], reverse=True)
    return out


def reduce_basis(gb: GroebnerBasis) -> GroebnerBasis:
    """The unique reduced basis: monic and inter-reduced."""
    gens, eng = _prepare(gb.generators, gb.order, None, None)
    items = []
    for g in gens:
        d = eng.to_space(g)
        items.append((max(d), d))
    red = _interreduce(eng, items)
    return GroebnerBasis([eng.from_space(d) for _, d in red], gb.order, reduced=True,
                         stats=gb.stats)


def ideal_member(p: Poly, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb.generators, gb.order).is_zero()


def ideal_equal(A: Sequence[Poly], B: Sequence[Poly], order: MonomialOrder, *,
                max_terms: int | None = None, max_pairs: int | None = None) -> bool:
    """True iff A and B generate the same ideal."""
    if not A or not B:
        raise ValueError("ideal_equal needs nonempty generator lists")
    # the smaller side first: a failed inclusion there skips the expensive basis
    if sum(map(len, A)) < sum(map(len, B)):
        A, B = B, A
    gb_b = buchberger(B, order, max_terms=max_terms, max_pairs=max_pairs)
    if not all(ideal_member(a, gb_b) for a in A):
        return False
    gb_a = buchberger(A, order, max_terms=max_terms, max_pairs=max_pairs)
    return all(ideal_member(b, gb_a) for b in B)


def s_pair_audit(gb: GroebnerBasis) -> list[tuple[int, int]]:
    """Index pairs whose S-polynomial does not reduce to zero (empty for a valid basis)."""
    gens = gb.generators
    bad = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_polynomial(gens[i], gens[j], gb.order)
            if not normal_form(s, gens, gb.order).is_zero():
                bad.append((i, j))
    return bad


def same_up_to_scaling(p: Poly, q: Poly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    m = next(iter(p.terms))
    if m not in q.terms:
        return False
    return p * (q.terms[m] / p.terms[m]) == q
