from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppforge import catalog
from ppforge.algebras import is_homomorphism, is_pre_poisson, sub_adjacent, zero_pre_poisson
from ppforge.bialgebra import dualize_cobracket
from ppforge.errors import NotFactorizable, NotLRInvariant
from ppforge.exact_core import invert_matrix, qarray, skew_part
from ppforge.yang_baxter import (
    RMatrix,
    canonical_double_r,
    check_coboundary_conditions,
    classify_r,
    coboundary_cobrackets,
    factorize,
    homomorphism_report,
    i_map,
    induced_minus,
    induced_plus,
    induced_products_r,
    is_lr_invariant,
    lr_operator_form,
    r_minus,
    r_plus,
    s_equation,
    skew_lr_i_form,
    skew_part_invariant,
    zinbiel_ybe,
)

# -- loop oracle for the three-leg equations ---------------------------------------

LEGS = {"12": (0, 1), "13": (0, 2), "23": (1, 2), "21": (1, 0)}


def placed(r, legs):
    """Terms of r_{legs} as (slots, coefficient) with None for the unit."""
    n = len(r)
    for a, b in product(range(n), repeat=2):
        if r[a][b]:
            slots = [None, None, None]
            slots[legs[0]], slots[legs[1]] = a, b
            yield slots, r[a][b]


def leg_product(r, first, second, table):
    n = len(r)
    out = np.zeros((n, n, n), dtype=object)
    for (u, cu), (v, cv) in product(placed(r, LEGS[first]), placed(r, LEGS[second])):
        shared = [k for k in range(3) if u[k] is not None and v[k] is not None]
        assert len(shared) == 1
        k = shared[0]
        rest = [u[m] if u[m] is not None else v[m] for m in range(3)]
        for w in range(n):
            coeff = table[u[k]][v[k]][w]
            if coeff:
                rest[k] = w
                out[tuple(rest)] += cu * cv * coeff
    return out


def oracle_z(rm):
    r, s = rm.r.tolist(), rm.algebra.star.tolist()
    d = sub_adjacent(rm.algebra).dot.tolist()
    return (-leg_product(r, "13", "12", s) - leg_product(r, "23", "21", s)
            + leg_product(r, "13", "21", d) + leg_product(r, "12", "23", d)
            - leg_product(r, "13", "23", d))


def oracle_s(rm):
    r, c = rm.r.tolist(), rm.algebra.circ.tolist()
    b = sub_adjacent(rm.algebra).bracket.tolist()
    return (leg_product(r, "13", "12", c) - leg_product(r, "23", "21", c)
            + leg_product(r, "23", "12", b) - leg_product(r, "13", "21", b)
            - leg_product(r, "13", "23", b))


small_r = st.lists(st.sampled_from([0, 0, 1, -1, 2]), min_size=9, max_size=9).map(
    lambda v: np.array(v, dtype=object).reshape(3, 3))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["n3", "deep1", "deep2", "deep3"]), small_r)
def test_equations_match_leg_products(name, r):
    rm = RMatrix(catalog.algebra(name), r)
    assert zinbiel_ybe(rm).tolist() == oracle_z(rm).tolist()
    assert s_equation(rm).tolist() == oracle_s(rm).tolist()


# -- maps attached to r --------------------------------------------------------------

def test_maps_of_canonical_r():
    rm = catalog.double_r("zero1")
    assert canonical_double_r(1).tolist() == [[0, 1], [0, 0]]
    assert r_plus(rm).tolist() == [[0, 0], [1, 0]]     # (xi, x) -> (0, xi)
    assert r_minus(rm).tolist() == [[0, 1], [0, 0]]    # (xi, x) -> (x, 0)
    assert i_map(rm).tolist() == [[0, -1], [1, 0]]     # (xi, x) -> (-x, xi)
    a = skew_part(canonical_double_r(2))
    assert a[0, 2] == Fraction(1, 2) and a[2, 0] == Fraction(-1, 2)


def test_symmetric_r_has_zero_i():
    rm = RMatrix(catalog.algebra("z2"), [[1, 2], [2, 0]])
    assert not np.any(i_map(rm))
    i = i_map(RMatrix(catalog.algebra("z2"), [[1, 2], [0, 3]]))
    assert np.array_equal(i.T, -i)


def test_coboundary_of_z2_with_e1e1():
    rm = RMatrix(catalog.algebra("z2"), [[1, 0], [0, 0]])
    delta, small = coboundary_cobrackets(rm)
    # Delta(e1) = 2 e1 (x) e2 - e2 (x) e1
    assert delta.values[0].tolist() == [[0, 2], [-1, 0]]
    assert not np.any(delta.values[1])
    assert not np.any(small.values)


def test_zero_r_and_zero_algebra():
    p = catalog.algebra("deep3")
    zero = RMatrix(p, np.zeros((3, 3), dtype=object))
    assert not np.any(zinbiel_ybe(zero)) and not np.any(s_equation(zero))
    assert all(not np.any(c.values) for c in coboundary_cobrackets(zero))
    flat = RMatrix(zero_pre_poisson(2), [[1, 2], [3, 4]])
    assert not np.any(zinbiel_ybe(flat))
    assert all(not np.any(c.values) for c in coboundary_cobrackets(flat))
    f = classify_r(zero)
    assert f.triangular and not f.factorizable


def test_abelian_circ_solves_s():
    rm = RMatrix(catalog.algebra("z2"), [[1, -1], [2, 3]])
    assert not np.any(s_equation(rm))


@pytest.mark.parametrize("name", catalog.ALGEBRAS)
def test_canonical_r_on_doubles(name):
    rm = catalog.double_r(name)
    assert not np.any(zinbiel_ybe(rm))
    assert not np.any(s_equation(rm))
    assert skew_part_invariant(rm)
    invert_matrix(i_map(rm))
    assert classify_r(rm).factorizable
    assert check_coboundary_conditions(rm)


def test_lr_invariance_example():
    rm = RMatrix(catalog.algebra("z2"), [[1, 0], [0, 0]])
    assert skew_part_invariant(rm)
    rep = is_lr_invariant(rm)
    assert not rep
    v = rep.violations[0]
    assert v.identity_id == "lr-star" and v.indices == (1,)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(catalog.ALGEBRAS[2:]), st.data())
def test_invariance_formulations_agree(name, data):
    p = catalog.algebra(name)
    n = p.dim
    r = np.array(data.draw(st.lists(st.sampled_from([0, 0, 1, -1]), min_size=n * n,
                                    max_size=n * n)), dtype=object).reshape(n, n)
    rm = RMatrix(p, r)
    assert bool(is_lr_invariant(rm)) == bool(lr_operator_form(rm))
    skew = rm.with_r(skew_part(r))
    assert bool(skew_part_invariant(rm)) == bool(skew_lr_i_form(skew))


@pytest.mark.parametrize("name", sorted(catalog.quasi_triangular()))
def test_quasi_triangular_instances(name):
    rm = catalog.quasi_triangular()[name]
    flags = classify_r(rm)
    assert flags.quasi_triangular and flags.coboundary_valid
    dual = induced_products_r(rm)
    assert is_pre_poisson(dual)
    assert is_homomorphism(r_plus(rm), dual, rm.algebra)
    assert is_homomorphism(r_minus(rm), dual, rm.algebra)
    assert is_pre_poisson(induced_plus(rm)) and is_pre_poisson(induced_minus(rm))
    delta, small = coboundary_cobrackets(rm)
    assert dualize_cobracket(delta).tolist() == dual.star.tolist()
    assert dualize_cobracket(small).tolist() == dual.circ.tolist()


def test_catalog_flags():
    assert classify_r(catalog.r_instance("z2-triangular")).triangular
    n3 = classify_r(catalog.r_instance("n3-quasi"))
    assert n3.quasi_triangular and not n3.triangular and not n3.factorizable
    assert classify_r(catalog.r_instance("zero2-factorizable")).factorizable


def test_mutations_with_nonzero_z_break_the_homomorphisms():
    rm = catalog.double_r("deep3")
    for a, b in [(0, 5), (5, 4), (2, 5), (5, 2)]:
        r = np.array(rm.r)
        r[a, b] += 1
        m = rm.with_r(r)
        assert np.any(zinbiel_ybe(m))
        assert not homomorphism_report(m)
        assert not check_coboundary_conditions(m)


def test_symmetric_r_gives_zero_induced_products():
    rm = catalog.r_instance("z2-triangular")
    assert not np.any(induced_plus(rm).star) and not np.any(induced_minus(rm).circ)


def test_induced_plus_requires_invariance():
    rm = RMatrix(catalog.algebra("z2"), [[0, 1], [0, 0]])
    with pytest.raises(NotLRInvariant):
        induced_plus(rm)


@pytest.mark.parametrize("name", sorted(catalog.factorizable()))
def test_factorize(name):
    rm = catalog.factorizable()[name]
    rng = np.random.default_rng(len(name))
    for _ in range(3):
        x = qarray(rng.integers(-3, 4, size=rm.dim).astype(object))
        plus, minus = factorize(rm, x)
        assert (plus - minus).tolist() == x.tolist()
    zero = qarray(np.zeros(rm.dim, dtype=object))
    assert all(not np.any(v) for v in factorize(rm, zero))


def test_factorize_canonical_block():
    rm = catalog.double_r("zero1")
    plus, minus = factorize(rm, qarray([2, 3]))
    assert plus.tolist() == [0, 3] and minus.tolist() == [-2, 0]


def test_factorize_needs_invertible_i():
    with pytest.raises(NotFactorizable):
        factorize(catalog.r_instance("z2-triangular"), qarray([1, 0]))
