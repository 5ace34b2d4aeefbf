import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cmcalg.groebner import (ResourceGuardError, buchberger, default_max_terms, ideal_equal,
                             ideal_member, leading_monomial, normal_form, reduce_basis,
                             s_pair_audit, s_polynomial, same_up_to_scaling)
from cmcalg.orders import MonomialOrder
from cmcalg.parse import parse_poly
from cmcalg.poly import Poly, VarSet

from strategies import XYZ

XY = VarSet(["x", "y"])
LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def P(text, vs=XY):
    return parse_poly(text, vs)


def basis_set(gb):
    return {str(g) for g in gb}


def test_s_polynomial_examples():
    assert s_polynomial(P("x^2 - 1"), P("x*y - 1"), LEX) == P("x - y")
    f = P("x^2 + 3*y")
    assert s_polynomial(f, f, LEX).is_zero()
    s = s_polynomial(P("x^2"), P("y^2"), LEX)
    assert normal_form(s, [P("x^2"), P("y^2")], LEX).is_zero()
    with pytest.raises(ValueError):
        s_polynomial(P("0"), f, LEX)


def test_normal_form_examples():
    assert normal_form(P("x^2*y"), [P("x^2 - 1")], LEX) == P("y")
    p = P("x^3 - 2*x*y + 5")
    assert normal_form(p, [p], GREVLEX).is_zero()


def test_buchberger_examples():
    gb = buchberger([P("x^2 - 1"), P("x*y - 1")], LEX)
    assert basis_set(gb) == {"x - y", "y^2 - 1"}
    assert gb.reduced
    gb = buchberger([P("x"), P("y")], LEX)
    assert basis_set(gb) == {"x", "y"}
    with pytest.raises(ValueError):
        buchberger([P("0")], LEX)


def test_reduce_basis_examples():
    from cmcalg.groebner import GroebnerBasis
    gb = GroebnerBasis([P("x - y"), P("y^2 - 1"), P("x^2 - 1")], LEX)
    red = reduce_basis(gb)
    assert basis_set(red) == {"x - y", "y^2 - 1"}
    assert basis_set(reduce_basis(red)) == basis_set(red)


def test_ideal_member_examples():
    gb = buchberger([P("x"), P("y")], LEX)
    assert not ideal_member(P("1"), gb)
    gens = [P("x^2 - y"), P("x*y - 1")]
    gb = buchberger(gens, GREVLEX)
    combo = P("3*x + y^2") * gens[0] + P("x - 7") * gens[1]
    assert ideal_member(combo, gb)
    assert all(ideal_member(g, gb) for g in gens)


def test_ideal_equal_examples():
    assert not ideal_equal([P("x")], [P("x^2")], LEX)
    A = [P("x^2 - y"), P("y^3 + x")]
    combo = P("x") * A[0] - P("y^2 + 1") * A[1]
    assert ideal_equal(A, A + [combo], GREVLEX)
    with pytest.raises(ValueError):
        ideal_equal([], A, LEX)


def test_same_up_to_scaling():
    assert same_up_to_scaling(P("-1 - y + x"), P("x - y - 1") * -3)
    assert not same_up_to_scaling(P("x + y"), P("x - y"))


def test_resource_guard_terms_and_pairs():
    vs = VarSet([f"x{i}" for i in range(1, 6)])
    xs = vs.names
    gens = []
    for k in range(1, 5):
        terms = ["*".join(xs[(i + j) % 5] for j in range(k)) for i in range(5)]
        gens.append(parse_poly(" + ".join(terms), vs))
    gens.append(parse_poly("*".join(xs) + " - 1", vs))
    with pytest.raises(ResourceGuardError) as exc:
        buchberger(gens, GREVLEX, max_terms=300)
    assert exc.value.kind == "terms" and exc.value.observed <= 300
    with pytest.raises(ResourceGuardError) as exc:
        buchberger(gens, GREVLEX, max_pairs=3)
    assert exc.value.kind == "pairs"


def test_default_max_terms_env(monkeypatch):
    monkeypatch.delenv("CMCALG_MAX_TERMS", raising=False)
    assert default_max_terms() == 10_000_000
    monkeypatch.setenv("CMCALG_MAX_TERMS", "1234")
    assert default_max_terms() == 1234


# random small ideals -----------------------------------------------------------

def random_ideal(rng, vs=XYZ, count=None, degree=2, terms=3):
    count = count or rng.randint(2, 3)
    mons = [e for e in itertools.product(range(degree + 1), repeat=len(vs)) if sum(e) <= degree]
    gens = []
    while len(gens) < count:
        items = {rng.choice(mons): rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(terms)}
        p = Poly.from_exponents(vs, items)
        if not p.is_zero() and not p.is_constant():
            gens.append(p)
    return gens


IDEALS = [random_ideal(random.Random(seed)) for seed in range(12)]
ORDERS = [MonomialOrder("lex"), MonomialOrder("grlex"), MonomialOrder("grevlex", ["z"])]


@pytest.mark.parametrize("gens", IDEALS, ids=[f"ideal{i}" for i in range(len(IDEALS))])
@pytest.mark.parametrize("order", ORDERS, ids=["lex", "grlex", "grevlex_z"])
def test_random_ideal_invariants(gens, order):
    gb = buchberger(gens, order)
    assert s_pair_audit(gb) == []
    assert all(ideal_member(g, gb) for g in gens)
    lms = [leading_monomial(g, order) for g in gb]
    for g in gb:
        assert g.terms[g.varset.pack(leading_monomial(g, order))] == 1
    for i, g in enumerate(gb):
        for j, lm in enumerate(lms):
            if i != j:
                assert not any(all(a >= b for a, b in zip(g.varset.unpack(m), lm)) for m in g.terms)
    # criteria never change the reduced basis
    assert basis_set(buchberger(gens, order, criteria=False)) == basis_set(gb)
    # unreduced output is still a basis of the same ideal
    raw = buchberger(gens, order, reduce=False)
    assert s_pair_audit(raw) == []
    assert basis_set(reduce_basis(raw)) == basis_set(gb)


@pytest.mark.parametrize("gens", IDEALS, ids=[f"ideal{i}" for i in range(len(IDEALS))])
def test_shuffle_and_duplication_invariance(gens):
    order = MonomialOrder("grevlex")
    want = basis_set(buchberger(gens, order))
    rng = random.Random(len(gens))
    for _ in range(20):
        shuffled = gens + [rng.choice(gens)]
        rng.shuffle(shuffled)
        assert basis_set(buchberger(shuffled, order)) == want


def _solve_rational(rows, rhs):
    """Is the linear system rows * c = rhs solvable over QQ?"""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return all(any(v != 0 for v in row[:-1]) or row[-1] == 0 for row in m)


def brute_member(p, gens, cofactor_degree):
    """Search for cofactors h_i of degree <= cofactor_degree with sum h_i g_i = p."""
    vs = p.varset
    mons = [e for e in itertools.product(range(cofactor_degree + 1), repeat=len(vs))
            if sum(e) <= cofactor_degree]
    columns = []
    for g in gens:
        for e in mons:
            columns.append((Poly.from_exponents(vs, {e: 1}) * g).terms)
    support = sorted(set(p.terms).union(*[c.keys() for c in columns]))
    rows = [[Fraction(int(c[m].numerator), int(c[m].denominator)) if m in c else Fraction(0)
             for c in columns] for m in support]
    rhs = [Fraction(int(p.terms[m].numerator), int(p.terms[m].denominator))
           if m in p.terms else Fraction(0) for m in support]
    return _solve_rational(rows, rhs)


XY2 = VarSet(["x", "y"])
member_cases = st.tuples(
    st.integers(0, 10_000),
    st.booleans(),
)


@settings(max_examples=60)
@given(member_cases)
def test_membership_agrees_with_bruteforce(case):
    seed, build_member = case
    rng = random.Random(seed)
    gens = random_ideal(rng, vs=XY2, count=2, degree=2, terms=2)
    mons = [e for e in itertools.product(range(3), repeat=2) if sum(e) <= 2]
    if build_member:
        p = Poly.constant(XY2, 0)
        for g in gens:
            h = Poly.from_exponents(XY2, {rng.choice(mons): rng.randint(-3, 3) for _ in range(2)})
            p = p + h * g
    else:
        p = Poly.from_exponents(XY2, {rng.choice(mons): rng.randint(-3, 3) for _ in range(3)})
    gb = buchberger(gens, GREVLEX)
    found = brute_member(p, gens, 4)
    member = ideal_member(p, gb)
    if found:
        assert member
    if not member:
        assert not found
    if build_member:
        assert member and found
