"""Case II: the gradient of f vanishes along a curve through the origin."""

from __future__ import annotations

import time

from ..cmc import CmcContext, cmc_residual
from ..parse import parse_poly
from ..poly import Poly
from . import displays as D
from .ledger import SubstitutionLedger
from .report import CONCLUSION_VERIFIED, PipelineReport
from .tower import raw_cubic

STAGE_COUNT = 7

B11_NOTE = ("the vanishing second derivative along the x1-axis reads 2*b1 = 0; the "
            "printed coefficient name b11 does not occur in the cubic and is taken as b1")


def _residual(f: Poly) -> Poly:
    return cmc_residual(CmcContext(3, 1, f))


def run_case2(stage: int | None = None) -> PipelineReport:
    last = STAGE_COUNT if stage is None else stage
    if not 1 <= last <= STAGE_COUNT:
        raise ValueError(f"stage must be in 1..{STAGE_COUNT}")
    t0 = time.perf_counter()
    report = PipelineReport("II")
    f0 = raw_cubic("II")
    vs = f0.varset
    P = lambda text: parse_poly(text, vs)  # noqa: E731
    ledger = SubstitutionLedger()
    peak = 0

    def track(*polys: Poly) -> None:
        nonlocal peak
        peak = max([peak] + [len(p) for p in polys])

    def set_zero(names) -> list:
        return [ledger.add(n, P("0")) for n in names]

    # stage 1
    added = set_zero([n for n, _ in D.CASE2_VANISHING])
    added.append(ledger.add("a1", P("0")))
    f = ledger.apply(f0)
    report.record("stage1:f on the x1-axis", f.subs("x2", 0).subs("x3", 0), P("0"),
                  substitution=added, note=B11_NOTE + "; a1 is the third x1-derivative at 0")
    report.notes.append(B11_NOTE)

    # stage 2
    if last >= 2:
        u = _residual(f)
        track(u)
        axis = u.subs("x2", 0).subs("x3", 0)
        deg = axis.degree("x1")
        report.record("stage2:x1^12 coefficient of u(x1, 0, 0)", axis.coefficient({"x1": 12}),
                      P(D.CASE2_X1_AXIS_COEFF), reference="display x1^12 coefficient",
                      note=f"u(x1, 0, 0) has degree {deg} in x1; a sum of squares cubed "
                           "vanishes over the reals only when a4 = a5 = 0")
        report.stages[-1].substitution = [str(e) for e in set_zero(["a4", "a5"])]
        f = ledger.apply(f0)

    # stages 3 and 4: the two symmetric branches through x2 = 0 and x3 = 0
    branches = (
        (3, "a8", "x2", "x3", D.CASE2_P2_SUBSTITUTION, D.CASE2_P2_NUMERATOR, "p2"),
        (4, "a6", "x3", "x2", D.CASE2_P3_SUBSTITUTION, D.CASE2_P3_NUMERATOR, "p3"),
    )
    for k, lead, zero_var, free_var, (num_text, den_text), numerator, name in branches:
        if last < k:
            break
        num, den = P(num_text), P(den_text)
        plane = f.subs(zero_var, 0)
        on_curve, _ = plane.substitute_rational("x1", num, den)
        report.record(f"stage{k}:f({num_text}/{den_text}) on {zero_var} = 0", on_curve, P("0"),
                      note=f"the curve x1 = ({num_text})/{den_text} lies in the zero set")
        u = _residual(f)
        restricted = u.subs(zero_var, 0)
        deg = restricted.degree("x1")
        cleared, clear = restricted.substitute_rational("x1", num, den, clear_exp=12)
        track(u, cleared)
        coeff = cleared.coefficient({free_var: 12})
        # the printed value is numerator / lead^6; clearing by lead^12 leaves lead^6 behind
        expected = P(numerator) * P(lead) ** 6
        report.record(f"stage{k}:{free_var}^12 coefficient of {name}", coeff, expected,
                      reference=f"display {name} coefficient",
                      note=f"{name} = {lead}^{clear} * u({num_text}/{den_text}, ...); u has "
                           f"degree {deg} in x1, so {lead}^6 would already clear it")
        report.stages[-1].substitution = [str(ledger.add(lead, P("0")))]
        report.notes.append(f"stage {k}: the coefficient is -16/{lead}^6 times a sum of squares "
                            f"cubed, forcing {lead} = 0 over the reals")
        f = ledger.apply(f0)

    if last >= 5:
        entry = ledger.add("a10", P("1"))
        f = ledger.apply(f0)
        report.record("stage5:scale", f, substitution=[entry],
                      note="a10 is nonzero, otherwise f = 0 on x2 = 0; rescaling f makes it 1")

    if last >= 6:
        den = P(D.CASE2_P4_DENOMINATOR)
        targets = (("b3", D.CASE2_X3_18, 18), ("a3", D.CASE2_X3_24, 24))
        for var, text, exp in targets:
            num = ledger.apply(P(D.CASE2_P4_NUMERATOR))
            on_surface, _ = f.substitute_rational("x1", num, den)
            report.record(f"stage6:f(num/(x2*x3), x2, x3) before eliminating {var}",
                          on_surface, P("0"),
                          note="f is linear in x1 with coefficient x2*x3")
            u = _residual(f)
            p4, _ = u.substitute_rational("x1", num, den, clear_exp=6)
            track(u, p4)
            coeff = p4.coefficient({"x2": 0, "x3": exp})
            report.record(f"stage6:x3^{exp} coefficient of p4", coeff, P(text),
                          reference=f"display x3^{exp} coefficient",
                          note="coefficient of the monomial x2^0*x3^" + str(exp))
            report.stages[-1].substitution = [str(ledger.add(var, P("0")))]
            f = ledger.apply(f0)

    if last >= 7:
        factors = [P(t) for t in D.CASE2_FACTORS]
        report.record("stage7:factorization", f, factors[0] * factors[1],
                      reference="factorization display",
                      note=" * ".join(f"({t})" for t in D.CASE2_FACTORS))
        report.finish(CONCLUSION_VERIFIED)

    report.stats = {"terms_peak": peak, "pairs_processed": 0,
                    "wall_ms": int((time.perf_counter() - t0) * 1000)}
    return report
