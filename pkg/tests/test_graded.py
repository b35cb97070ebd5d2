import numpy as np
import pytest

from frobranch.errors import NotOneDimensional, PowerVanishes
from frobranch.ffield import PrimeField, extend_field
from frobranch.graded import (
    ClosureMembership,
    GradedQuotient,
    HomogPoly,
    base_change,
    branch_count,
    closure_quotient_dim,
    degree_basis,
    dehomogenize,
    find_linear_reduction,
    frobenius_closure_membership,
    frobenius_power,
    hilbert_function,
    ideal_membership,
    is_linear_reduction,
    linear_form,
    monomials_of_degree,
    multiplicity,
    reducedness_status,
)
from frobranch.oracle import axes_ring

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)


def circle_ring(field):
    # k[x,y]/(x^2+y^2)
    return GradedQuotient(field, 2, [HomogPoly.from_ints(field, 2, {(2, 0): 1, (0, 2): 1})], ("x", "y"))


def fermat_ring(field, d):
    # k[x,y]/(x^d+y^d)
    return GradedQuotient(field, 2, [HomogPoly.from_ints(field, 2, {(d, 0): 1, (0, d): 1})], ("x", "y"))


def test_monomial_order_is_grevlex():
    assert monomials_of_degree(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert monomials_of_degree(3, 2)[0] == (2, 0, 0)
    # grevlex: within a degree, last exponent ascending first
    for m, m2 in zip(monomials_of_degree(3, 3), monomials_of_degree(3, 3)[1:]):
        assert tuple(reversed(m)) < tuple(reversed(m2))


def test_degree_basis_circle():
    R = circle_ring(F3)
    basis, rank = degree_basis(R, 2)
    assert set(basis) == {(1, 1), (0, 2)}
    assert rank == 1


def test_degree_basis_degree_zero():
    R = circle_ring(F3)
    basis, rank = degree_basis(R, 0)
    assert basis == ((0, 0),) and rank == 0


def test_degree_basis_axes():
    R = axes_ring(F2, 3)
    basis, rank = degree_basis(R, 2)
    assert set(basis) == {(2, 0, 0), (0, 2, 0), (0, 0, 2)}
    assert rank == 3


def test_hilbert_function_sequences():
    R = circle_ring(F3)
    assert [hilbert_function(R, d) for d in range(4)] == [1, 2, 2, 2]
    poly = GradedQuotient(F5, 1, [])
    assert all(hilbert_function(poly, d) == 1 for d in range(6))
    R3 = axes_ring(F2, 3)
    assert [hilbert_function(R3, d) for d in (1, 2, 3, 4)] == [3, 3, 3, 3]


def test_hilbert_function_against_monomial_staircase():
    # independent oracle for monomial ideals: count monomials not divisible
    # by any generator
    cases = [
        (F2, 3, [(1, 1, 0), (1, 0, 1), (0, 1, 1)]),
        (F3, 2, [(2, 1)]),
        (F5, 3, [(2, 0, 0), (0, 3, 0)]),
    ]
    for field, n, gens in cases:
        R = GradedQuotient(field, n, [HomogPoly.from_ints(field, n, {g: 1}) for g in gens])
        for d in range(7):
            count = 0
            for m in monomials_of_degree(n, d):
                if not any(all(a >= b for a, b in zip(m, g)) for g in gens):
                    count += 1
            assert hilbert_function(R, d) == count


def test_multiplicity_values():
    assert multiplicity(circle_ring(F3)) == (2, 1)
    assert multiplicity(GradedQuotient(F5, 1, [])) == (1, 0)
    e, n = multiplicity(axes_ring(F2, 4))
    assert e == 4


def test_multiplicity_rejects_two_dimensional():
    # k[x,y] with no relations: HF grows linearly, never stabilizes
    with pytest.raises(NotOneDimensional):
        multiplicity(GradedQuotient(F3, 2, []))


def test_ideal_membership_circle():
    R = circle_ring(F3)
    y2 = HomogPoly.from_ints(F3, 2, {(0, 2): 1})
    x3 = HomogPoly.from_ints(F3, 2, {(3, 0): 1})
    xy = HomogPoly.from_ints(F3, 2, {(1, 1): 1})
    assert ideal_membership(R, x3, [y2])          # x^3 = -x*y^2 mod x^2+y^2
    assert not ideal_membership(R, xy, [y2])
    zero = HomogPoly(F3, 2, 2, {})
    assert ideal_membership(R, zero, [y2])


def test_is_linear_reduction():
    R = circle_ring(F5)
    y = linear_form(R, [F5.zero(), F5.one()])
    ok, n0 = is_linear_reduction(R, y)
    assert ok and n0 == 1

    R2 = axes_ring(F3, 2)
    x1 = linear_form(R2, [F3.one(), F3.zero()])
    ok, _ = is_linear_reduction(R2, x1)
    assert not ok

    P = GradedQuotient(F3, 1, [])
    x = linear_form(P, [F3.one()])
    assert is_linear_reduction(P, x) == (True, 0)


def test_find_linear_reduction_base_field():
    red = find_linear_reduction(circle_ring(F3))
    assert red.scalar_extension == 1
    red2 = find_linear_reduction(axes_ring(F2, 2))
    assert red2.scalar_extension == 1
    # x1 + x2 is the only candidate that works over GF(2)
    assert set(red2.form.terms) == {(1, 0), (0, 1)}


def test_find_linear_reduction_needs_extension():
    # xy(x+y) has every GF(2)-line as a factor, so no reduction exists
    # over GF(2) and scalars must be extended
    x = HomogPoly.from_ints(F2, 2, {(1, 0): 1})
    y = HomogPoly.from_ints(F2, 2, {(0, 1): 1})
    R = GradedQuotient(F2, 2, [x * y * (x + y)], ("x", "y"))
    red = find_linear_reduction(R)
    assert red.scalar_extension == 2
    assert red.ring.field.order == 4


def test_frobenius_power():
    y = HomogPoly.from_ints(F3, 2, {(0, 1): 1})
    (cube,) = frobenius_power([y], 1)
    assert cube.terms == HomogPoly.from_ints(F3, 2, {(0, 3): 1}).terms
    s = HomogPoly.from_ints(F2, 2, {(1, 0): 1, (0, 1): 1})
    (sq,) = frobenius_power([s], 1)
    assert set(sq.terms) == {(2, 0), (0, 2)}  # freshman's dream
    gens = [HomogPoly.from_ints(F2, 2, {(2, 0): 1}), HomogPoly.from_ints(F2, 2, {(1, 1): 1})]
    out = frobenius_power(gens, 2)
    assert [set(g.terms) for g in out] == [{(8, 0)}, {(4, 4)}]


def test_frobenius_closure_membership_axes():
    R = axes_ring(F2, 3)
    f = HomogPoly.from_ints(F2, 3, {(0, 2, 0): 1})
    J = [HomogPoly.from_ints(F2, 3, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})]
    assert frobenius_closure_membership(R, f, J, 3) == ClosureMembership(True, 0)


def test_frobenius_closure_membership_not_in():
    R = circle_ring(F3)
    xy = HomogPoly.from_ints(F3, 2, {(1, 1): 1})
    y2 = HomogPoly.from_ints(F3, 2, {(0, 2): 1})
    assert frobenius_closure_membership(R, xy, [y2], 3) == ClosureMembership(False, 3)


def test_frobenius_closure_membership_in_ideal():
    R = circle_ring(F3)
    y2 = HomogPoly.from_ints(F3, 2, {(0, 2): 1})
    assert frobenius_closure_membership(R, y2, [y2], 3).e == 0


def test_closure_quotient_dim():
    R = circle_ring(F3)
    y = linear_form(R, [F3.zero(), F3.one()])
    assert closure_quotient_dim(R, y, 2) == 1

    R3 = axes_ring(F5, 3)
    x = linear_form(R3, [F5.one()] * 3)
    assert closure_quotient_dim(R3, x, 2) == 2

    P = GradedQuotient(F5, 1, [])
    t = linear_form(P, [F5.one()])
    assert closure_quotient_dim(P, t, 4) == 0


def test_closure_quotient_dim_power_vanishes():
    # x is nilpotent in k[x,y]/(x^2), so its square is zero and the quotient
    # is not a meaningful branch count
    R = GradedQuotient(F3, 2, [HomogPoly.from_ints(F3, 2, {(2, 0): 1})], ("x", "y"))
    x = linear_form(R, [F3.one(), F3.zero()])
    with pytest.raises(PowerVanishes):
        closure_quotient_dim(R, x, 2)


def test_branch_count_examples():
    assert branch_count(circle_ring(F3)).branches_formula == 2
    assert branch_count(fermat_ring(F7, 4)).branches_formula == 4
    r = branch_count(axes_ring(F2, 3))
    assert r.branches_formula == 3 and r.branches_multiplicity == 3 and r.consistent


def test_branch_count_invariant_under_scalar_extension():
    for make in (lambda F: circle_ring(F), lambda F: fermat_ring(F, 3)):
        base = branch_count(make(F5)).branches_formula
        for s in (2, 3):
            ext = extend_field(F5, s)
            assert branch_count(make(ext)).branches_formula == base


def test_containment_chain_at_slice():
    # span(x^n) inside the degree-n slice of (x^n)+m^(n+1) inside [m^n]_n
    for R in (circle_ring(F3), fermat_ring(F7, 4), axes_ring(F2, 3)):
        red = find_linear_reduction(R)
        ring, x = red.ring, red.form
        _, n0 = is_linear_reduction(ring, x)
        nf = ring.normal_form_vector(x**n0)
        assert np.any(nf) or n0 == 0
        # the degree-n piece of m^(n+1) is zero, so the middle term is span(x^n);
        # its dimension is 1 and it sits inside the HF(n)-dimensional slice
        assert 1 <= hilbert_function(ring, n0)


def test_degree_one_multiple_lands_in_higher_power():
    # ideal-level shadow: z*f lies in (x^n)+m^(n+1) for any linear z, since
    # z*f is already in m^(n+1); the degree-(n+1) slice of m^(n+1) is the
    # whole space, so membership must be trivially true
    R = circle_ring(F3)
    red = find_linear_reduction(R)
    ring, x = red.ring, red.form
    _, n0 = is_linear_reduction(ring, x)
    mono_gens = [
        HomogPoly(ring.field, ring.nvars, n0 + 1, {m: ring.field.one()})
        for m in monomials_of_degree(ring.nvars, n0 + 1)
    ]
    for m in degree_basis(ring, n0)[0]:
        f = HomogPoly(ring.field, ring.nvars, n0, {m: ring.field.one()})
        for i in range(ring.nvars):
            z = linear_form(ring, [ring.field.one() if j == i else ring.field.zero() for j in range(ring.nvars)])
            assert ideal_membership(ring, z * f, [x**n0] + mono_gens)


def test_reducedness_status():
    assert reducedness_status(GradedQuotient(F3, 1, [])) == "verified-polynomial-ring"
    assert reducedness_status(axes_ring(F2, 3)) == "verified-monomial"
    assert reducedness_status(circle_ring(F3)) == "verified-squarefree"
    sq = GradedQuotient(F3, 2, [HomogPoly.from_ints(F3, 2, {(2, 0): 1})])
    assert reducedness_status(sq) == "not-reduced"
    mixed = GradedQuotient(F3, 3, [HomogPoly.from_ints(F3, 3, {(1, 1, 0): 1, (0, 0, 2): 1})])
    assert reducedness_status(mixed) == "unverified"


def test_dehomogenize():
    f = HomogPoly.from_ints(F3, 2, {(2, 0): 1, (0, 2): 1})
    g = dehomogenize(f, at=0)  # x = 1
    assert [c.value for c in g.coefficients] == [1, 0, 1]


def test_base_change_keeps_presentation():
    R = circle_ring(F3)
    S = base_change(R, 2)
    assert S.field.order == 9
    assert multiplicity(S) == multiplicity(R)
