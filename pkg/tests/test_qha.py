from fractions import Fraction

import pytest

from qhayd.errors import ShapeError
from qhayd.fields import QQ, PrimeField
from qhayd.linalg import Matrix
from qhayd.qha import (
    antipode,
    antipode_inv,
    check_antipode,
    check_counit,
    check_pentagon,
    check_phi_counit,
    check_quasi_coassoc,
    coproduct,
    counit_of,
    delta_tree_matrix,
    iterated_coproduct,
    left_comb,
    mul,
    right_comb,
    tree_leaves,
    validate,
)
from qhayd.tensors import Tensor, basis_vec
from qhayd.zoo import build_entry, sweedler_h4, zoo_names

from conftest import entry


def test_every_zoo_algebra_validates(zoo_entry):
    rep = validate(zoo_entry.algebra)
    assert rep.passed, [item.name for item in rep.failures()]


def test_grouplike_coproduct(z2):
    h = z2.algebra
    g = basis_vec(h.field, 2, 1)
    t = coproduct(h, g)
    assert t.at((1, 1)) == QQ.one()
    assert sum(1 for _, c in t.nonzeros()) == 1


def test_h4_element_primitives(h4):
    h = h4.algebra
    f = h.field
    one, g, x, gx = (basis_vec(f, 4, i) for i in range(4))
    # antipode(x) = -gx, hand-checked from S(x) = -gx
    assert antipode(h, x) == tuple(-c for c in gx)
    assert antipode(h, gx) == x
    # S^2(x) = -x = g x g^-1
    assert h.s_squared().apply(x) == tuple(-c for c in x)
    assert antipode_inv(h, antipode(h, x)) == x
    # xg = -gx
    assert mul(h, x, g) == tuple(-c for c in gx)
    assert mul(h, x, x) == (f.zero(),) * 4
    assert counit_of(h, g) == f.one()
    assert counit_of(h, x) == f.zero()


def test_counit_after_antipode_equals_counit(zoo_entry):
    h = zoo_entry.algebra
    for i in range(h.dim):
        e = basis_vec(h.field, h.dim, i)
        assert counit_of(h, h.s.apply(e)) == counit_of(h, e)


def test_iterated_coproduct_trivial_cases(h4):
    h = h4.algebra
    x = basis_vec(h.field, 4, 2)
    assert iterated_coproduct(h, x, None).coeffs == x
    assert iterated_coproduct(h, x, (None, None)).coeffs == coproduct(h, x).coeffs


def test_iterated_coproduct_grouplike_both_bracketings(h4):
    h = h4.algebra
    g = basis_vec(h.field, 4, 1)
    left = iterated_coproduct(h, g, left_comb(3))
    right = iterated_coproduct(h, g, right_comb(3))
    expected = Tensor.zeros(h.field, 4, 3).coeffs
    expected = list(expected)
    expected[(1 * 4 + 1) * 4 + 1] = h.field.one()
    assert left.coeffs == tuple(expected)
    assert right.coeffs == tuple(expected)


def test_bracketings_differ_by_associator_conjugation(zoo_entry):
    # (Id x Delta)Delta = Phi ((Delta x Id)Delta) Phi^-1 elementwise
    h = zoo_entry.algebra
    from qhayd.qha import sparse_from_vec, vec_from_sparse

    alg = h.algebra
    n = h.dim
    phi, phi_inv = h.qb.phi_sparse(), h.qb.phi_inv_sparse()
    for i in range(n):
        left = iterated_coproduct(h, basis_vec(h.field, n, i), right_comb(3)).coeffs
        right = iterated_coproduct(h, basis_vec(h.field, n, i), left_comb(3)).coeffs
        conj = alg.power_mul(phi, alg.power_mul(sparse_from_vec(right, (n, n, n)), phi_inv, 3), 3)
        assert left == vec_from_sparse(h.field, conj, (n, n, n))


def test_tree_validation():
    assert tree_leaves(None) == 1
    assert tree_leaves((None, (None, None))) == 3
    with pytest.raises(ShapeError):
        tree_leaves("junk")
    with pytest.raises(ShapeError):
        left_comb(0)


def test_delta_tree_matrix_cached(h4):
    h = h4.algebra
    m1 = delta_tree_matrix(h.qb, (None, None))
    m2 = delta_tree_matrix(h.qb, (None, None))
    assert m1 is m2


def test_char2_rejected_for_sweedler():
    with pytest.raises(ShapeError):
        sweedler_h4(PrimeField(2))


def _mutate_qha(h, which, flat_index):
    """Bump one structure-constant entry by one; returns a new algebra."""
    from qhayd.qha import QuasiBialgebra, QuasiHopfAlgebra

    f = h.field
    one = f.one()
    if which == "delta":
        entries = list(h.delta.entries)
        entries[flat_index % len(entries)] += one
        delta = Matrix(f, h.delta.rows, h.delta.cols, tuple(entries))
        qb = QuasiBialgebra(h.qb.algebra, delta, h.qb.counit, h.phi, h.phi_inv)
        return QuasiHopfAlgebra(qb, h.s, h.s_inv, h.alpha, h.beta)
    if which == "phi":
        coeffs = list(h.phi.coeffs)
        coeffs[flat_index % len(coeffs)] += one
        phi = Tensor(f, h.dim, 3, tuple(coeffs))
        qb = QuasiBialgebra(h.qb.algebra, h.delta, h.qb.counit, phi, h.phi_inv)
        return QuasiHopfAlgebra(qb, h.s, h.s_inv, h.alpha, h.beta)
    if which == "s":
        entries = list(h.s.entries)
        entries[flat_index % len(entries)] += one
        s = Matrix(f, h.dim, h.dim, tuple(entries))
        return QuasiHopfAlgebra(h.qb, s, h.s_inv, h.alpha, h.beta)
    if which == "counit":
        entries = list(h.qb.counit.entries)
        entries[flat_index % len(entries)] += one
        counit = Matrix(f, 1, h.dim, tuple(entries))
        qb = QuasiBialgebra(h.qb.algebra, h.delta, counit, h.phi, h.phi_inv)
        return QuasiHopfAlgebra(qb, h.s, h.s_inv, h.alpha, h.beta)
    raise AssertionError(which)


def mutations_of(h, count=12):
    out = []
    kinds = ("delta", "phi", "s", "counit")
    for t in range(count):
        out.append(_mutate_qha(h, kinds[t % 4], 2 * t + 1))
    return out


def test_single_entry_mutations_fail(zoo_entry):
    h = zoo_entry.algebra
    for k, mutant in enumerate(mutations_of(h, 12)):
        rep = validate(mutant)
        assert not rep.passed, f"mutation {k} slipped through"
        bad = rep.failures()[0]
        assert bad.witness is not None or bad.name in ("pentagon", "associator-counit",
                                                       "associator-invertible",
                                                       "antipode-associator",
                                                       "antipode-associator-inverse")


def test_corrupted_counit_names_the_generator(h4):
    h = h4.algebra
    mutant = _mutate_qha(h, "counit", 2)  # corrupt eps on basis element x
    rep = validate(mutant)
    names = {item.name for item in rep.failures()}
    assert "counit-axiom" in names or "counit-homomorphism" in names
    for item in rep.failures():
        if item.name == "counit-axiom":
            assert item.witness.location == (2,)


def test_perturbed_phi_breaks_pentagon_or_inverse(k2w):
    h = k2w.algebra
    mutant = _mutate_qha(h, "phi", 7)
    rep = validate(mutant)
    failing = {item.name for item in rep.failures()}
    assert failing & {"pentagon", "associator-invertible", "quasi-coassociativity",
                      "associator-counit", "antipode-associator",
                      "antipode-associator-inverse"}


def test_individual_checkers_match_validate(h4):
    h = h4.algebra
    assert check_quasi_coassoc(h.qb).passed
    assert check_pentagon(h.qb).passed
    assert check_counit(h.qb).passed
    assert check_phi_counit(h.qb).passed
    assert check_antipode(h).passed
