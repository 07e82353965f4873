"""End-to-end acceptance checks, one test per criterion.

Each test records a short label; the summary hook in conftest.py prints one
pass/fail line per criterion at the end of the run.
"""

import json
import random
import shutil
import subprocess
import sys

import numpy as np
import pytest

from ppforge import catalog
from ppforge.algebras import (
    PoissonAlgebra,
    PrePoissonAlgebra,
    is_homomorphism,
    is_poisson,
    is_pre_poisson,
    pre_poisson_from_rb0,
    sub_adjacent,
)
from ppforge.bialgebra import (
    Cobracket,
    PrePoissonBialgebra,
    double_of_bialgebra,
    double_tables,
    is_pre_poisson_bialgebra,
)
from ppforge.cli import catalog_document, catalog_names
from ppforge.exact_core import invert_matrix
from ppforge.geometry import (
    SplitDecoration,
    compatible_pre_poisson,
    is_manin_triple,
    is_phase_space,
    is_symplectic_poisson,
    phase_space,
    restrict,
)
from ppforge.representations import (
    Action,
    coregular_rep,
    dual_rep,
    is_action,
    is_pre_poisson_rep,
    is_relative_rb,
    regular_rep,
)
from ppforge.rota_baxter import (
    QuadraticRBPrePoisson,
    factorizable_from_quadratic_rb,
    is_quadratic_rb,
    check_descendent_isomorphism,
    quadratic_rb_from_factorizable,
    tilde_rb,
)
from ppforge.serialization import parse_document, serialize
from ppforge.yang_baxter import (
    RMatrix,
    canonical_double_r,
    classify_r,
    homomorphism_report,
    i_map,
    induced_plus,
    induced_products_r,
    r_minus,
    r_plus,
    s_equation,
    skew_part_invariant,
    zinbiel_ybe,
)


@pytest.fixture
def label(record_property):
    return lambda text: record_property("criterion", text)


def flip(c):
    return c.transpose(1, 0, 2)


def test_criterion_01_sub_adjacent_is_poisson(label):
    label("1 sub-adjacent algebras are Poisson (random + catalog)")
    algebras = catalog.random_pre_poisson(seed=2024, count=60)
    algebras += [catalog.algebra(n) for n in catalog.ALGEBRAS]
    assert len(algebras) >= 58
    assert sum(a.dim == 3 for a in algebras) > 10
    for p in algebras:
        assert is_pre_poisson(p)
        rep = is_poisson(sub_adjacent(p))
        assert rep and not rep.violations


def test_criterion_02_weight_zero_rb_gives_pre_poisson(label):
    label("2 weight-zero RB operators induce pre-Poisson algebras")
    pairs = catalog.poisson_rb0_pairs()
    assert len(pairs) >= 10
    for name, (p, B) in pairs.items():
        q = pre_poisson_from_rb0(p, B)
        assert is_pre_poisson(q), name
        assert is_homomorphism(B, sub_adjacent(q), p), name


def test_criterion_03_dual_of_regular_is_coregular(label):
    label("3 dual of the regular rep equals the coregular rep")
    for name in catalog.ALGEBRAS:
        p = catalog.algebra(name)
        dual, co = dual_rep(regular_rep(p)), coregular_rep(p)
        for a, b in zip(dual.maps, co.maps):
            assert np.array_equal(a, b), name
        assert is_pre_poisson_rep(dual)


def test_criterion_04_phase_space_and_manin_triple(label):
    label("4 phase spaces, compatible restriction, Manin triples")
    for name in catalog.ALGEBRAS:
        p = catalog.algebra(name)
        n = p.dim
        big, w = phase_space(p)
        split = SplitDecoration(n, n)
        assert is_symplectic_poisson(big, w) and is_phase_space(big, split, w)
        q = compatible_pre_poisson(big, w)
        back = restrict(q, slice(0, n))
        assert np.array_equal(back.star, p.star) and np.array_equal(back.circ, p.circ)
        assert is_manin_triple(q, split, w)


def _three_predicates(b: PrePoissonBialgebra, w, split) -> tuple[bool, bool, bool]:
    d = PrePoissonAlgebra(*double_tables(b.algebra, *b.dual_tables), check=False)
    big = PoissonAlgebra(d.star + flip(d.star), d.circ - flip(d.circ), check=False)
    quick = {"first_only": True}
    return (bool(is_pre_poisson_bialgebra(b, **quick)),
            bool(is_pre_poisson(d, **quick)) and bool(is_manin_triple(d, split, w, **quick)),
            bool(is_poisson(big, **quick)) and bool(is_phase_space(big, split, w, **quick)))


def test_criterion_05_three_bialgebra_predicates_agree(label):
    label("5 bialgebra / Manin triple / phase space agree, incl. mutations")
    for name in catalog.BIALGEBRAS:
        b = catalog.bialgebra(name)
        _, w, split = double_of_bialgebra(b)
        assert _three_predicates(b, w, split) == (True, True, True), name

    rng = random.Random(55)
    small = [n for n in catalog.BIALGEBRAS if catalog.bialgebra(n).dim <= 3]
    broken = 0
    for _ in range(30):
        b = catalog.bialgebra(rng.choice(small))
        _, w, split = double_of_bialgebra(b)
        which = rng.choice(("delta_star", "delta_circ"))
        values = np.array(getattr(b, which).values)
        values[tuple(rng.randrange(b.dim) for _ in range(3))] += rng.choice((-1, 1))
        parts = {"delta_star": b.delta_star, "delta_circ": b.delta_circ, which: Cobracket(values)}
        mutated = PrePoissonBialgebra(b.algebra, parts["delta_star"], parts["delta_circ"],
                                      check=False)
        verdicts = _three_predicates(mutated, w, split)
        assert len(set(verdicts)) == 1, verdicts
        broken += not verdicts[0]
    assert broken >= 20


def test_criterion_06_canonical_r_on_doubles(label):
    label("6 canonical r on every catalog double is factorizable")
    for name in catalog.BIALGEBRAS:
        b = catalog.bialgebra(name)
        d, _, _ = double_of_bialgebra(b)
        assert d.dim <= 8
        rm = RMatrix(d, canonical_double_r(b.dim))
        assert not np.any(zinbiel_ybe(rm)) and not np.any(s_equation(rm)), name
        assert skew_part_invariant(rm), name
        invert_matrix(i_map(rm))
        assert classify_r(rm).factorizable, name


def test_criterion_07_r_plus_minus_are_homomorphisms(label):
    label("7 induced products and r+/r- homomorphisms; Z != 0 breaks them")
    instances = catalog.quasi_triangular()
    for name, rm in instances.items():
        dual = induced_products_r(rm)
        assert is_pre_poisson(dual), name
        assert is_homomorphism(r_plus(rm), dual, rm.algebra), name
        assert is_homomorphism(r_minus(rm), dual, rm.algebra), name

    # mutations on zero algebras keep Z = 0, so sample widely
    rng = random.Random(7)
    nonzero_z = 0
    for _ in range(120):
        rm = instances[rng.choice(sorted(instances))]
        r = np.array(rm.r)
        r[rng.randrange(rm.dim), rng.randrange(rm.dim)] += rng.choice((-1, 1))
        m = rm.with_r(r)
        if not np.any(zinbiel_ybe(m)):
            continue
        nonzero_z += 1
        assert not homomorphism_report(m)
    assert nonzero_z >= 10


def test_criterion_08_r_plus_is_relative_rb(label):
    label("8 r+ is relative Rota-Baxter of weight 1 for the coregular action")
    for name, rm in catalog.quasi_triangular().items():
        a = Action(rm.algebra, induced_plus(rm), *coregular_rep(rm.algebra).maps, check=False)
        assert is_action(a), name
        assert is_relative_rb(r_plus(rm), 1, a), name


def test_criterion_09_factorizable_round_trip(label):
    label("9 factorizable r <-> quadratic RB round trip, tilde operator, isomorphism")
    for name, rm in catalog.factorizable().items():
        for weight in (1, 2, -3):
            q = quadratic_rb_from_factorizable(rm, weight)
            assert is_quadratic_rb(q), (name, weight)
            back = factorizable_from_quadratic_rb(q)
            assert np.array_equal(back.r, rm.r) and back == rm, (name, weight)
            t = QuadraticRBPrePoisson(q.algebra, tilde_rb(q.B, weight), weight, q.omega,
                                      check=False)
            assert is_quadratic_rb(t), (name, weight)
            assert check_descendent_isomorphism(q, rm), (name, weight)


def test_criterion_10_dimension_one_example(label):
    label("10 the n = 1 double with weight 1 gives B = -(x, 0) and the standard form")
    q = quadratic_rb_from_factorizable(catalog.double_r("zero1"), 1)
    lam = 1
    # B(x + xi) = -lam (x, 0) and w(x + xi, y + eta) = xi(y) - eta(x), basis (e1, e1*)
    vectors = [(1, 0), (0, 1)]
    expected_B = np.array([[-lam * u[0], 0] for u in vectors], dtype=object).T
    expected_w = np.array([[u[1] * v[0] - v[1] * u[0] for v in vectors] for u in vectors],
                          dtype=object)
    assert q.B.tolist() == expected_B.tolist() == [[-1, 0], [0, 0]]
    assert q.omega.tolist() == expected_w.tolist() == [[0, -1], [1, 0]]
    assert is_quadratic_rb(q)


def _ppforge(*args):
    exe = shutil.which("ppforge")
    cmd = [exe] if exe else [sys.executable, "-m", "ppforge.cli"]
    return subprocess.run(cmd + list(args), capture_output=True, text=True)


def test_criterion_11_command_line(label, tmp_path):
    label("11 command line exit codes, localized violation, byte-exact serialization")
    assert _ppforge("roundtrip", "--catalog", "double-z2", "--lambda", "1").returncode == 0
    assert _ppforge("check", "--catalog", "z2", "--check", "zinbiel").returncode == 0

    raw = json.loads(serialize(catalog_document("double-z2")))
    raw["star"][0][0][1] = "2"
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(raw))
    proc = _ppforge("check", str(bad), "--check", "manin-triple")
    assert proc.returncode == 2
    assert "quadratic-star at (1,1,4): lhs=[-2] rhs=[-1]" in proc.stdout

    for name in catalog_names():
        text = serialize(catalog_document(name))
        assert serialize(parse_document(text.encode())) == text, name
