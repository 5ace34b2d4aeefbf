"""Case I: a regular point with principal curvatures 2 and 0."""

from __future__ import annotations

import time

from ..groebner import buchberger, ideal_member
from ..orders import MonomialOrder
from ..parse import parse_poly
from ..poly import Poly
from . import displays as D
from .ledger import SubstitutionLedger, solve_linear
from .report import CONCLUSION_VERIFIED, PipelineReport
from .tower import QTower, raw_cubic

STAGE_COUNT = 6

_IDEAL_ORDER = MonomialOrder("grevlex", D.IDEAL_VARIABLES)


def _label(seq) -> str:
    return "q" + "".join(map(str, seq))


def _displays_by_label() -> dict[str, D.QDisplay]:
    return {d.label: d for d in D.Q_DISPLAYS}


def _stage_q_checks(report: PipelineReport, stage: int, labels, values, new_entries,
                    vs) -> None:
    """``new_entries`` are the substitutions made since the previous stage."""
    shown = _displays_by_label()
    for label in labels:
        d = shown[label]
        report.record(f"stage{stage}:{label}", values[d.sequence], parse_poly(d.text, vs),
                      substitution=new_entries, reference=f"display {label}", note=d.note)


def _solve(report: PipelineReport, stage: int, ledger: SubstitutionLedger, values,
           label: str, target: str, vs) -> None:
    q = ledger.apply(values[tuple(int(c) for c in label[1:])])
    entry = solve_linear(q, target)
    entry = ledger.add(entry.target, entry.value)
    report.record(f"stage{stage}:solve {target} from {label}", entry.value,
                  parse_poly(D.SOLVED_DISPLAYS[target], vs), substitution=[entry],
                  reference=f"display {target}")
    residue = ledger.apply(values[tuple(int(c) for c in label[1:])])
    if not residue.is_zero():
        report.record(f"stage{stage}:ledger soundness {label}", residue, residue * 0)


def run_case1(stage: int | None = None, *, truncate: bool = True) -> PipelineReport:
    """Replay the Case I stages 1..``stage`` (all six by default)."""
    last = STAGE_COUNT if stage is None else stage
    if not 1 <= last <= STAGE_COUNT:
        raise ValueError(f"stage must be in 1..{STAGE_COUNT}")
    t0 = time.perf_counter()
    report = PipelineReport("I")
    f0 = raw_cubic("I")
    vs = f0.varset
    ledger = SubstitutionLedger()
    for target, text in D.NORMALIZATION:
        ledger.add(target, parse_poly(text, vs))
    report.record("normalization", ledger.apply(f0), substitution=ledger.entries,
                  note="unit normal e3 and principal directions e1, e2 at the origin")
    terms_peak = 0
    seen = 0

    def fresh():
        nonlocal seen
        out, seen = ledger.entries[seen:], len(ledger.entries)
        return out

    def tower_values(seqs):
        nonlocal terms_peak
        tower = QTower(ledger.apply(f0), max(len(s) for s in seqs), truncate=truncate)
        out = {s: tower.value(s) for s in seqs}
        for el in tower._cache.values():
            terms_peak = max(terms_peak, len(el.P) + len(el.Q))
        return out

    for k, (labels, solves) in enumerate(D.CASE1_STAGES, 1):
        if k > last:
            break
        values = tower_values([tuple(int(c) for c in lab[1:]) for lab in labels])
        for v in values.values():
            stale = [p for p in v.variables() if p in ledger.eliminated]
            if stale:
                report.notes.append(f"stage {k}: q contains eliminated {stale}")
        _stage_q_checks(report, k, labels, values, fresh(), vs)
        for label, target in solves:
            _solve(report, k, ledger, values, label, target, vs)

    if last >= 4:
        shown = [d for d in D.Q_DISPLAYS if len(d.sequence) >= 4]
        seqs = list(dict.fromkeys(list(D.IDEAL_SEQUENCES) + [d.sequence for d in shown]))
        values = tower_values(seqs)
        _stage_q_checks(report, 4, [d.label for d in shown], values, fresh(), vs)
        for d in shown:
            if d.note:
                report.notes.append(f"{d.label}: {d.note}")
        for seq in D.IDEAL_SEQUENCES[:2]:
            report.record(f"stage4:{_label(seq)} under the stage-3 ledger", values[seq],
                          note="re-derived after a8 and a9 are eliminated; enters the ideal")
        ideal = [values[s] for s in D.IDEAL_SEQUENCES]

    pairs = 0
    if last >= 5:
        expected = [parse_poly(t, vs) for t in D.IDEAL_BASIS]
        gb = buchberger(ideal, _IDEAL_ORDER)
        gb_expected = buchberger(expected, _IDEAL_ORDER)
        # equal ideals: each generating set lies in the other's ideal
        equal = (all(ideal_member(p, gb_expected) for p in ideal)
                 and all(ideal_member(p, gb) for p in expected))
        pairs = gb.stats.pairs_processed
        terms_peak = max(terms_peak, gb.stats.terms_peak)
        report.record("stage5:reduced basis of the ten q's", _set_text(gb.generators),
                      _set_text(gb_expected.generators), reference="basis display",
                      note=f"ideal equality {'holds' if equal else 'fails'} under "
                           f"{_IDEAL_ORDER.describe()}")

    if last >= 6:
        for target, text in D.FINAL_RELATIONS:
            ledger.add(target, parse_poly(text, vs))
        f = ledger.apply(f0)
        factors = [parse_poly(t, vs) for t in D.CASE1_FACTORS]
        report.record("stage6:factorization", f, factors[0] * factors[1],
                      substitution=fresh(),
                      reference="factorization display",
                      note=" * ".join(f"({t})" for t in D.CASE1_FACTORS))
        report.finish(CONCLUSION_VERIFIED)

    report.stats = {"terms_peak": terms_peak, "pairs_processed": pairs,
                    "wall_ms": int((time.perf_counter() - t0) * 1000)}
    return report


def _set_text(polys: list[Poly]) -> str:
    return "{" + ", ".join(sorted(str(p) for p in polys)) + "}"


def q_identity_count(report: PipelineReport) -> tuple[int, int]:
    """(matched, checked) over the printed q displays only."""
    qs = [s for s in report.checked if s.reference.startswith("display q")]
    return sum(1 for s in qs if s.match), len(qs)
