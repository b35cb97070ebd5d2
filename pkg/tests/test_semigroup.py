import random

import pytest

from frobranch.errors import CapExceeded, DimensionCapExceeded, NotFNilpotentRing
from frobranch.semigroup import (
    AffineSemigroup,
    cone_facets,
    eventual_p_membership,
    frobenius_closure_exponent,
    frobenius_number,
    fte_bruteforce,
    is_f_nilpotent,
    membership,
    pure_insep_index,
    saturation_hilbert_basis,
    smith_normal_form,
    solve_integer,
    tight_closure_membership_monomial,
    verify_no_certificate,
    weak_normalization,
)

PINCHED_VERONESE = AffineSemigroup([(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 0, 2)])


def veronese():
    return AffineSemigroup([(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)])


# -- Smith normal form --------------------------------------------------------


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal() == [1, 6]
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal() == [1, 1]
    assert smith_normal_form([[2]]).diagonal() == [2]


def test_snf_divisibility_chain():
    nf = smith_normal_form([[4, 6], [6, 10]])
    d = nf.diagonal()
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])


def test_snf_random_verified():
    # the U*M*V = D identity and unimodularity are asserted at construction
    rng = random.Random(17)
    for _ in range(50):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        M = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        nf = smith_normal_form(M)
        d = nf.diagonal()
        assert all(x >= 0 for x in d)
        assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])


def test_solve_integer():
    nf = smith_normal_form([[2, 0], [0, 3]])
    assert solve_integer(nf, [4, 9]) == [2, 3]
    assert solve_integer(nf, [1, 0]) is None


# -- membership ---------------------------------------------------------------


def test_membership_numerical():
    A = AffineSemigroup([(2,), (3,)])
    assert not membership(A, (1,))
    assert membership(A, (5,))
    assert membership(A, (0,))
    assert all(membership(A, (a,)) for a in range(2, 50))


def test_membership_pinched_veronese():
    assert not membership(PINCHED_VERONESE, (0, 1, 1))
    assert membership(PINCHED_VERONESE, (0, 2, 2))
    assert membership(PINCHED_VERONESE, (1, 1, 0))
    assert not membership(PINCHED_VERONESE, (1, 0, 0))


def test_membership_closed_under_addition():
    rng = random.Random(3)
    A = PINCHED_VERONESE
    gens = A.generators
    for _ in range(40):
        a = tuple(sum(x) for x in zip(*(rng.choice(gens) for _ in range(rng.randint(1, 4)))))
        b = tuple(sum(x) for x in zip(*(rng.choice(gens) for _ in range(rng.randint(1, 4)))))
        assert membership(A, a) and membership(A, b)
        assert membership(A, tuple(x + y for x, y in zip(a, b)))


def test_frobenius_number():
    assert frobenius_number(AffineSemigroup([(2,), (3,)])) == 1
    assert frobenius_number(AffineSemigroup([(1,)])) == -1
    assert frobenius_number(AffineSemigroup([(3,), (5,)])) == 7


# -- cone geometry ------------------------------------------------------------


def test_cone_facets_ray():
    assert cone_facets(AffineSemigroup([(2,), (3,)])) == [(1,)]


def test_cone_facets_pinched_veronese():
    assert sorted(cone_facets(PINCHED_VERONESE)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_cone_facets_two_rays():
    facets = cone_facets(AffineSemigroup([(1, 0), (1, 2)]))
    assert sorted(facets) == [(0, 1), (2, -1)]


def test_cone_facets_lower_dimensional_cone():
    # a single ray in the plane: facets include the span equations
    facets = cone_facets(AffineSemigroup([(1, 1)]))
    for g in ((1, 1), (3, 3)):
        assert all(sum(w[i] * g[i] for i in range(2)) >= 0 for w in facets)
    assert any(sum(w[i] * (2, 1)[i] for i in range(2)) < 0 for w in facets)


def test_cone_facets_dimension_cap():
    with pytest.raises(DimensionCapExceeded):
        cone_facets(AffineSemigroup([(1, 0, 0, 0, 0)]))


# -- saturation ---------------------------------------------------------------


def test_saturation_numerical():
    assert saturation_hilbert_basis(AffineSemigroup([(2,), (3,)])) == ((1,),)


def test_saturation_pinched_veronese():
    hb = saturation_hilbert_basis(PINCHED_VERONESE)
    assert hb == ((0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0))


def test_saturation_already_saturated():
    V = veronese()
    assert set(saturation_hilbert_basis(V)) == set(V.generators)


# -- eventual p-power membership ----------------------------------------------


def test_eventual_p_membership_gap():
    A = AffineSemigroup([(2,), (3,)])
    res = eventual_p_membership(A, (1,), 2)
    assert res.status == "yes" and res.e == 1


def test_eventual_p_membership_generator():
    for g in PINCHED_VERONESE.generators:
        for p in (2, 3, 5):
            res = eventual_p_membership(PINCHED_VERONESE, g, p)
            assert res.status == "yes" and res.e == 0


def test_eventual_p_membership_no_certificate():
    res = eventual_p_membership(PINCHED_VERONESE, (0, 1, 1), 3)
    assert res.status == "no"
    cert = res.certificate
    assert cert["torsion_order"] == 2
    assert [1, 0, 0] in cert["vanishing_facets"]
    assert verify_no_certificate(PINCHED_VERONESE, (0, 1, 1), 3, cert)


def test_eventual_p_membership_monotone():
    rng = random.Random(23)
    A = PINCHED_VERONESE
    for v in saturation_hilbert_basis(A):
        for p in (2, 3):
            res = eventual_p_membership(A, v, p)
            if res.status == "yes":
                q = p ** (res.e + 1)
                assert membership(A, tuple(q * x for x in v))


# -- F-nilpotence -------------------------------------------------------------


def test_pinched_veronese_verdicts():
    rep2 = is_f_nilpotent(PINCHED_VERONESE, 2)
    assert rep2.verdict == "f-nilpotent" and rep2.e0 == 1
    for p in (3, 5, 7):
        rep = is_f_nilpotent(PINCHED_VERONESE, p)
        assert rep.verdict == "not-f-nilpotent"
        assert rep.witness == (0, 1, 1)
        assert verify_no_certificate(PINCHED_VERONESE, rep.witness, p, rep.certificate)


def test_cusp_f_nilpotent():
    A = AffineSemigroup([(2,), (3,)])
    rep = is_f_nilpotent(A, 5)
    assert rep.verdict == "f-nilpotent" and rep.e0 == 1


def test_saturated_semigroup_index_zero():
    rep = pure_insep_index(veronese(), 3)
    assert rep.verdict == "f-nilpotent" and rep.e0 == 0


def test_pure_insep_index_attained():
    rep = is_f_nilpotent(PINCHED_VERONESE, 2)
    exps = [r.e for r in rep.per_element.values() if r.status == "yes"]
    assert max(exps) == rep.e0


def test_weak_normalization():
    A = AffineSemigroup([(2,), (3,)])
    wn = weak_normalization(A, 2)
    assert wn.generators == ((1,),) and not wn.undetermined

    wn2 = weak_normalization(PINCHED_VERONESE, 2)
    assert set(wn2.generators) == set(saturation_hilbert_basis(PINCHED_VERONESE))

    wn3 = weak_normalization(PINCHED_VERONESE, 3)
    assert set(wn3.generators) == set(PINCHED_VERONESE.generators)


def test_weak_normalization_sandwich():
    # A <= *A <= saturation, at the level of generator sets
    for p in (2, 3, 5):
        wn = weak_normalization(PINCHED_VERONESE, p)
        star = AffineSemigroup(wn.generators)
        for g in PINCHED_VERONESE.generators:
            assert membership(star, g)
        sat = PINCHED_VERONESE
        for g in wn.generators:
            assert sat.in_cone(g) and sat.in_lattice(g)


def test_star_generators_pairwise_sums():
    wn = weak_normalization(PINCHED_VERONESE, 2)
    for a in wn.generators:
        for b in wn.generators:
            s = tuple(x + y for x, y in zip(a, b))
            assert eventual_p_membership(PINCHED_VERONESE, s, 2).status == "yes"


# -- tight closure and Fte ----------------------------------------------------


def test_tight_closure_cusp():
    A = AffineSemigroup([(2,), (3,)])
    rep = is_f_nilpotent(A, 2)
    assert tight_closure_membership_monomial(A, 2, [(3,)], (4,), rep)
    assert not tight_closure_membership_monomial(A, 2, [(3,)], (2,), rep)
    assert tight_closure_membership_monomial(A, 2, [(3,)], (3,), rep)


def test_tight_closure_requires_f_nilpotent():
    rep = is_f_nilpotent(PINCHED_VERONESE, 3)
    with pytest.raises(NotFNilpotentRing):
        tight_closure_membership_monomial(PINCHED_VERONESE, 3, [(2, 0, 0)], (2, 0, 0), rep)


def test_fte_cusp():
    A = AffineSemigroup([(2,), (3,)])
    rep = is_f_nilpotent(A, 2)
    assert fte_bruteforce(A, 2, [3], rep) == 1


def test_fte_frobenius_closed_ideal():
    A = AffineSemigroup([(1,)])
    rep = is_f_nilpotent(A, 3)
    assert rep.e0 == 0
    assert fte_bruteforce(A, 3, [2], rep) == 0


def test_fte_cap_too_small():
    A = AffineSemigroup([(2,), (3,)])
    rep = is_f_nilpotent(A, 2)
    with pytest.raises(CapExceeded):
        fte_bruteforce(A, 2, [3], rep, e_cap=0)


def test_numerical_semigroups_always_f_nilpotent():
    rng = random.Random(41)
    for _ in range(25):
        gens = sorted({rng.randint(2, 30) for _ in range(rng.randint(2, 4))})
        from math import gcd
        if gcd(*gens) != 1:
            gens.append(gens[-1] + 1)  # force gcd 1
        A = AffineSemigroup([(g,) for g in gens])
        for p in (2, 3, 5):
            rep = is_f_nilpotent(A, p)
            assert rep.verdict == "f-nilpotent", (gens, p)


def test_frobenius_closure_exponent_agrees_with_tight_shortcut():
    A = AffineSemigroup([(3,), (5,)])
    rep = is_f_nilpotent(A, 2)
    for u in range(0, 30):
        if not membership(A, (u,)):
            continue
        shortcut = tight_closure_membership_monomial(A, 2, [(5,)], (u,), rep)
        chased = frobenius_closure_exponent(A, 2, [5], u, rep.e0 + 2) is not None
        assert shortcut == chased, u
