from itertools import product

import pytest

from qhayd.ayd import AydTypeI, check_type_i, check_type_ii, convert_i_to_ii
from qhayd.ayd_solve import (
    check_candidate,
    enumerate_ayd_i,
    enumerate_ayd_ii,
    linear_space_type_i,
    linear_space_type_ii,
)
from qhayd.errors import BudgetExceededError, ShapeError
from qhayd.fields import PrimeField, QQ
from qhayd.linalg import Matrix
from qhayd.repcat import character_module, regular_module, trivial_module
from qhayd.zoo import build_entry, group_algebra, cyclic_table

F2 = PrimeField(2)
F3 = PrimeField(3)


def brute_force_type_i(m):
    """Independent oracle: try every coaction map over F_p directly."""
    f = m.field
    ncoef = m.dim * m.h.dim * m.dim
    out = []
    for combo in product(range(f.p), repeat=ncoef):
        mat = Matrix(f, m.dim * m.h.dim, m.dim, tuple(f.from_int(c) for c in combo))
        if check_type_i(AydTypeI(m, mat)).passed:
            out.append(tuple(x.residue for x in mat.entries))
    return sorted(out)


def test_enumeration_matches_raw_brute_force_z2_f3():
    h = build_entry("z2", F3)
    triv = h.modules["trivial"]
    points = enumerate_ayd_i(triv)
    got = sorted(tuple(x.residue for x in p.rho.entries) for p in points)
    assert got == brute_force_type_i(triv)
    assert len(got) == 2


def test_enumeration_matches_raw_brute_force_z2_f2_type_ii():
    from qhayd.ayd import AydTypeII

    h = build_entry("z2", F2)
    triv = h.modules["trivial"]
    points = enumerate_ayd_ii(triv)
    got = sorted(tuple(x.residue for x in p.lam.entries) for p in points)
    raw = []
    for combo in product(range(2), repeat=2):
        mat = Matrix(F2, 2, 1, tuple(F2.from_int(c) for c in combo))
        if check_type_ii(AydTypeII(triv, mat)).passed:
            raw.append(combo)
    assert got == sorted(raw)


def test_linear_space_contains_bundled_points(h4):
    triv = h4.modules["trivial"]
    space = linear_space_type_i(triv)
    assert not space.is_empty
    # the unique solution is rho(x) = x (x) g
    assert space.affine_dim == 0
    rho = space.point([])
    assert tuple(rho.col(0)) == h4.ayds["k_g"].ayd.rho.col(0)


def test_linear_space_excludes_bad_point(h4):
    triv = h4.modules["trivial"]
    bad = Matrix.from_rows(QQ, [[QQ.one()], [QQ.zero()], [QQ.zero()], [QQ.zero()]])
    rep = check_candidate(triv, bad)
    assert not rep.passed


def test_empty_space_short_circuits():
    e = build_entry("k2w", F3)
    char1 = e.modules["char1"]
    space = linear_space_type_i(char1)
    # the linear space is nonempty but the quadratic filter kills everything
    assert enumerate_ayd_i(char1) == []


def test_space_dimension_matches_enumeration_count():
    e = build_entry("k2w", F3)
    triv = e.modules["trivial"]
    space = linear_space_type_i(triv)
    assert space.affine_dim == 1
    pts = enumerate_ayd_i(triv)
    assert len(pts) == 2  # quadratic filter keeps u with u_1^2 = 1


def test_rational_space_dimension_invariant_under_base_change():
    for p in (3, 5):
        fp = PrimeField(p)
        over_q = build_entry("z2")
        over_p = build_entry("z2", fp)
        dq = linear_space_type_i(over_q.modules["trivial"]).affine_dim
        dp = linear_space_type_i(over_p.modules["trivial"]).affine_dim
        assert dq == dp
        dq = linear_space_type_ii(over_q.modules["trivial"]).affine_dim
        dp = linear_space_type_ii(over_p.modules["trivial"]).affine_dim
        assert dq == dp


def test_every_enumerated_point_checks_and_nonpoints_fail():
    e = build_entry("z2", F3)
    sign = e.modules["sign"]
    pts = enumerate_ayd_i(sign)
    keys = {tuple(x.residue for x in p.rho.entries) for p in pts}
    assert keys
    for p in pts:
        assert check_type_i(p).passed
    for combo in product(range(3), repeat=2):
        if combo not in keys:
            mat = Matrix(F3, 2, 1, tuple(F3.from_int(c) for c in combo))
            assert not check_type_i(AydTypeI(sign, mat)).passed


def test_type_i_and_ii_in_bijection_under_convert():
    for name, field in (("z2", F2), ("z2", F3), ("k2w", F3), ("h4", F3)):
        if name == "k2w" and field.p == 2:
            continue
        e = build_entry(name, field)
        for mod_name, m in sorted(e.modules.items()):
            if m.dim > 1:
                continue
            pts_i = enumerate_ayd_i(m)
            pts_ii = enumerate_ayd_ii(m)
            assert len(pts_i) == len(pts_ii), (name, mod_name)
            converted = sorted(
                tuple(x.residue for x in convert_i_to_ii(p).lam.entries) for p in pts_i
            )
            direct = sorted(tuple(x.residue for x in p.lam.entries) for p in pts_ii)
            assert converted == direct, (name, mod_name)


def test_budget_guard_refuses_cleanly():
    f5 = PrimeField(5)
    e = build_entry("h4", f5)
    reg = e.modules["regular"]
    with pytest.raises(BudgetExceededError) as exc:
        enumerate_ayd_i(reg, budget=100)
    assert exc.value.count == 5 ** exc.value.affine_dim
    assert exc.value.count > 100


def test_enumeration_needs_prime_field():
    e = build_entry("z2")
    with pytest.raises(ShapeError):
        enumerate_ayd_i(e.modules["trivial"])


def test_deterministic_order():
    e = build_entry("z2", F3)
    triv = e.modules["trivial"]
    a = [tuple(x.residue for x in p.rho.entries) for p in enumerate_ayd_i(triv)]
    b = [tuple(x.residue for x in p.rho.entries) for p in enumerate_ayd_i(triv)]
    assert a == b == sorted(a)
