from fractions import Fraction

import numpy as np
import pytest

from ppforge import catalog
from ppforge.algebras import (
    PoissonAlgebra,
    is_homomorphism,
    is_pre_poisson,
    sub_adjacent,
    table_from_products,
    zero_table,
)
from ppforge.errors import NotFactorizable, NotQuadraticRB, NotRotaBaxter, ZeroWeight
from ppforge.exact_core import identity, invert_matrix, matmul, qarray, zeros
from ppforge.geometry import is_phase_space, restrict, standard_omega
from ppforge.representations import is_relative_rb, regular_action
from ppforge.rota_baxter import (
    QuadraticRBPrePoisson,
    RBStructure,
    RBSymplecticPoisson,
    descendent,
    displayed_phase_tables,
    factorizable_from_quadratic_rb,
    form_compatibility,
    is_quadratic_rb,
    is_rb,
    is_rb_poisson,
    is_rb_pre_poisson,
    is_rb_symplectic_poisson,
    check_descendent_isomorphism,
    phase_space_from_rb_symplectic,
    quadratic_rb_from_factorizable,
    rb_pre_poisson_from_rb_symplectic,
    rb_symplectic_from_quadratic_rb,
    tilde_rb,
)
from ppforge.yang_baxter import classify_r, i_map, r_plus

WEIGHTS = [1, 2, -3]


@pytest.mark.parametrize("name", catalog.ALGEBRAS)
@pytest.mark.parametrize("weight", [0, 1, Fraction(-2, 3)])
def test_trivial_operators(name, weight):
    p = catalog.algebra(name)
    n = p.dim
    scaled = -Fraction(weight) * identity(n)
    assert is_rb_pre_poisson(p, zeros((n, n)), weight)
    assert is_rb_pre_poisson(p, scaled, weight)
    assert is_rb_poisson(sub_adjacent(p), zeros((n, n)), weight)
    assert is_rb_poisson(sub_adjacent(p), scaled, weight)


def test_weight_zero_poisson_example():
    p = PoissonAlgebra(table_from_products(2, {(1, 1): {2: 2}}), zero_table(2))
    assert is_rb_poisson(p, [[0, 0], [1, 0]], 0)
    assert not is_rb_poisson(p, identity(2), 0)


def test_is_rb_dispatch_and_structure():
    p = catalog.algebra("z2")
    assert is_rb(p, zeros((2, 2)), 5)
    assert is_rb(sub_adjacent(p), zeros((2, 2)), 5)
    with pytest.raises(NotRotaBaxter):
        RBStructure(p, identity(2), 0)
    assert RBStructure(p, -identity(2), 1).weight == 1


@pytest.mark.parametrize("name", ["z2", "pl2", "deep1"])
def test_expanded_identity_matches_relative_form_on_regular_action(name):
    # passing operators, then each one perturbed in a single entry
    a = regular_action(catalog.double(name)[0])
    q = catalog.rb_bundle(name, 2)
    n = q.algebra.dim
    cases = [(q.B, 2), (zeros((n, n)), 1), (-3 * identity(n), 3)]
    for B, weight in list(cases):
        for i, j in [(0, 0), (0, n - 1), (n - 1, 1)]:
            bumped = np.array(B)
            bumped[i, j] += 1
            cases.append((bumped, weight))
    verdicts = []
    for B, weight in cases:
        direct = is_rb_pre_poisson(q.algebra, B, weight)
        relative = is_relative_rb(B, weight, a)
        assert bool(direct) == bool(relative)
        assert len(direct.violations) == len(relative.violations)
        verdicts.append(bool(direct))
    assert verdicts[:3] == [True] * 3 and not all(verdicts)


def test_descendent_of_scaled_identity():
    p = catalog.algebra("deep3")
    d = descendent(p, -2 * identity(3), 2)
    assert d.star.tolist() == (-2 * p.star).tolist()
    assert d.circ.tolist() == (-2 * p.circ).tolist()
    assert not np.any(descendent(p, zeros((3, 3)), 0).star)
    with pytest.raises(NotRotaBaxter):
        descendent(p, identity(3), 0)


@pytest.mark.parametrize("name", catalog.ALGEBRAS)
def test_descendent_maps_onto_the_algebra(name):
    q = catalog.rb_bundle(name, 1)
    d = descendent(q.algebra, q.B, q.weight)
    assert is_pre_poisson(d)
    assert is_homomorphism(q.B, d, q.algebra)


def test_example_for_dimension_one():
    q = quadratic_rb_from_factorizable(catalog.double_r("zero1"), 1)
    assert q.B.tolist() == [[-1, 0], [0, 0]]
    assert q.omega.tolist() == [[0, -1], [1, 0]]
    assert is_quadratic_rb(q)


@pytest.mark.parametrize("name", catalog.ALGEBRAS)
def test_canonical_operator_is_scaled_projection(name):
    n = catalog.algebra(name).dim
    projection = np.zeros((2 * n, 2 * n), dtype=object)
    projection[:n, :n] = identity(n)
    for weight in (1, 2):
        q = catalog.rb_bundle(name, weight)
        assert q.B.tolist() == (-weight * projection).tolist()
        assert q.omega.tolist() == standard_omega(n).tolist()


def test_zero_instance():
    z = QuadraticRBPrePoisson(catalog.double("zero1")[0], zeros((2, 2)), 0, standard_omega(1))
    assert is_quadratic_rb(z)


def test_form_mutation_breaks_compatibility():
    q = catalog.rb_bundle("z2", 1)
    w = np.array(q.omega)
    w[0, 1] += 1
    w[1, 0] -= 1
    rep = is_quadratic_rb(QuadraticRBPrePoisson(q.algebra, q.B, 1, w, check=False))
    assert "compatibility/rb-form-compatibility" in rep.identities()
    with pytest.raises(NotQuadraticRB):
        QuadraticRBPrePoisson(q.algebra, q.B, 1, w)


@pytest.mark.parametrize("name", sorted(catalog.factorizable()))
@pytest.mark.parametrize("weight", WEIGHTS)
def test_factorizable_round_trip(name, weight):
    rm = catalog.factorizable()[name]
    q = quadratic_rb_from_factorizable(rm, weight)
    assert is_quadratic_rb(q)
    back = factorizable_from_quadratic_rb(q)
    assert back == rm
    assert classify_r(back).factorizable
    t = QuadraticRBPrePoisson(q.algebra, tilde_rb(q.B, weight), weight, q.omega)
    assert is_quadratic_rb(t)


def test_tilde_operator():
    B = qarray([[1, 2], [0, 3]])
    assert tilde_rb(tilde_rb(B, 3), 3).tolist() == B.tolist()
    assert tilde_rb(zeros((2, 2)), 2).tolist() == [[-2, 0], [0, -2]]
    rm = catalog.double_r("pl2")
    q = quadratic_rb_from_factorizable(rm, 3)
    expected = matmul(-3 * r_plus(rm), invert_matrix(i_map(rm)))
    assert tilde_rb(q.B, 3).tolist() == expected.tolist()


@pytest.mark.parametrize("weight", [1, 3, -2])
@pytest.mark.parametrize("name", ["zero1", "z2", "pl2", "n3"])
def test_iso_check(name, weight):
    rm = catalog.double_r(name)
    assert check_descendent_isomorphism(quadratic_rb_from_factorizable(rm, weight), rm)


def test_iso_check_rejects_a_perturbed_operator():
    rm = catalog.double_r("z2")
    q = quadratic_rb_from_factorizable(rm, 1)
    B = np.array(q.B)
    B[0, 1] += 1
    rep = check_descendent_isomorphism(QuadraticRBPrePoisson(q.algebra, B, 1, q.omega, check=False), rm)
    assert any(i.startswith("rota-baxter/") for i in rep.identities())


def test_iso_check_on_the_other_factorizable_instance():
    rm = catalog.r_instance("zero2-factorizable")
    assert check_descendent_isomorphism(quadratic_rb_from_factorizable(rm, 2), rm)


def test_weight_zero_and_singular_inputs_rejected():
    rm = catalog.double_r("z2")
    with pytest.raises(ZeroWeight):
        quadratic_rb_from_factorizable(rm, 0)
    with pytest.raises(NotFactorizable):
        quadratic_rb_from_factorizable(catalog.r_instance("z2-triangular"), 1)
    q = QuadraticRBPrePoisson(catalog.double("zero1")[0], zeros((2, 2)), 0, standard_omega(1))
    with pytest.raises(ZeroWeight):
        factorizable_from_quadratic_rb(q)


@pytest.mark.parametrize("name", catalog.ALGEBRAS)
def test_symplectic_correspondence(name):
    q = catalog.rb_bundle(name, 2)
    s = rb_symplectic_from_quadratic_rb(q)
    assert is_rb_symplectic_poisson(s)
    assert s.algebra == sub_adjacent(q.algebra)
    assert rb_pre_poisson_from_rb_symplectic(s) == q


def test_perturbed_operator_breaks_symplectic_structure():
    s = rb_symplectic_from_quadratic_rb(catalog.rb_bundle("z2", 1))
    B = np.array(s.B)
    B[0, 0] += 1
    rep = is_rb_symplectic_poisson(RBSymplecticPoisson(s.algebra, B, 1, s.omega, check=False))
    assert not rep
    assert not form_compatibility(B, s.omega, 1)


@pytest.mark.parametrize("name", ["zero1", "z2", "pl2", "n3"])
def test_phase_space_from_rb_symplectic(name):
    q = catalog.rb_bundle(name, 1)
    big, w, split = phase_space_from_rb_symplectic(rb_symplectic_from_quadratic_rb(q))
    m = q.algebra.dim
    assert big.dim == 2 * m
    assert is_phase_space(big, split, w)
    assert restrict(big, slice(0, m)) == sub_adjacent(q.algebra)


def test_phase_space_from_rb_differs_from_semidirect_when_dual_products_live():
    from ppforge.geometry import phase_space

    q = catalog.rb_bundle("z2", 1)
    big, _, _ = phase_space_from_rb_symplectic(rb_symplectic_from_quadratic_rb(q))
    assert big != phase_space(q.algebra)[0]
    z = catalog.rb_bundle("zero1", 1)
    big0, _, _ = phase_space_from_rb_symplectic(rb_symplectic_from_quadratic_rb(z))
    assert big0 == phase_space(z.algebra)[0]


def test_displayed_tables_with_zero_dual_are_semidirect():
    from ppforge.algebras import zero_pre_poisson
    from ppforge.geometry import phase_space

    p = catalog.algebra("deep2")
    dot, bracket = displayed_phase_tables(p, zero_pre_poisson(3))
    assert PoissonAlgebra(dot, bracket) == phase_space(p)[0]
