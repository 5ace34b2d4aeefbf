"""Ordered coefficient substitutions solved out of the vanishing conditions."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..poly import Poly


class NotSolvableError(ValueError):
    pass


@dataclass(frozen=True)
class LedgerEntry:
    target: str
    value: Poly

    def __str__(self) -> str:
        return f"{self.target} := {self.value}"


@dataclass
class SubstitutionLedger:
    """Entries are applied in order; each right-hand side is kept free of
    every parameter already eliminated, so one pass is idempotent."""

    entries: list[LedgerEntry] = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def eliminated(self) -> list[str]:
        return [e.target for e in self.entries]

    def copy(self) -> "SubstitutionLedger":
        return SubstitutionLedger(list(self.entries))

    def apply(self, p: Poly) -> Poly:
        for e in self.entries:
            p = p.subs(e.target, e.value)
        return p

    def add(self, target: str, value: Poly) -> LedgerEntry:
        if not isinstance(value, Poly):
            raise TypeError("ledger values must be polynomials")
        if target in self.eliminated:
            raise ValueError(f"{target} is already eliminated")
        value = self.apply(value)
        if target in value.variables():
            raise ValueError(f"{target} := {value} is cyclic")
        entry = LedgerEntry(target, value)
        # earlier right-hand sides must not mention the new target
        self.entries = [LedgerEntry(e.target, e.value.subs(target, value)) for e in self.entries]
        self.entries.append(entry)
        return entry

    def extended(self, target: str, value: Poly) -> "SubstitutionLedger":
        out = self.copy()
        out.add(target, value)
        return out


def solve_linear(q: Poly, target: str) -> LedgerEntry:
    """Solve q = 0 for ``target``; q must be linear in it with a rational coefficient."""
    vs = q.varset
    if target not in vs:
        raise NotSolvableError(f"unknown parameter {target!r}")
    if vs.is_geometric(target):
        raise NotSolvableError(f"{target} is a geometric variable")
    deg = q.degree(target)
    if deg < 1:
        raise NotSolvableError(f"{target} does not occur in {q}")
    if deg > 1:
        raise NotSolvableError(f"{q} is not linear in {target}")
    coeff = q.coefficient({target: 1})
    if not coeff.is_constant():
        raise NotSolvableError(f"coefficient {coeff} of {target} is not a constant")
    rest = q.coefficient({target: 0})
    value = rest * (-1 / coeff.constant_value())
    geometric = [v for v in value.variables() if vs.is_geometric(v)]
    if geometric:
        raise NotSolvableError(
            f"solution {target} := {value} involves geometric variables {geometric}")
    return LedgerEntry(target, value)
