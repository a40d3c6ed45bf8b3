import json

import pytest

from qhayd.ayd import AydTypeI, check_type_i
from qhayd.errors import ShapeError
from qhayd.fields import PrimeField, QQ
from qhayd.jsonio import (
    algebra_from_json,
    algebra_to_json,
    ayd_from_json,
    ayd_to_json,
    field_from_json,
    field_to_json,
    module_from_json,
    module_to_json,
)
from qhayd.qha import validate
from qhayd.repcat import check_module

from conftest import entry


def test_field_round_trip():
    assert field_from_json(field_to_json(QQ)) == QQ
    assert field_from_json(field_to_json(PrimeField(7))) == PrimeField(7)
    with pytest.raises(ShapeError):
        field_from_json({"type": "R"})
    with pytest.raises(ShapeError):
        field_from_json({"type": "Fp", "p": 6})


def test_algebra_round_trip(zoo_entry):
    doc = algebra_to_json(zoo_entry.algebra)
    # force through real JSON text to catch non-serializable leftovers
    doc = json.loads(json.dumps(doc))
    h = algebra_from_json(doc)
    assert h == zoo_entry.algebra
    assert validate(h).passed


def test_algebra_without_optional_parts(h4):
    doc = algebra_to_json(h4.algebra)
    del doc["phi_inv"]
    del doc["S_inv"]
    h = algebra_from_json(doc)
    assert h == h4.algebra  # both are recomputed exactly


def test_malformed_algebra_documents_rejected(h4):
    doc = algebra_to_json(h4.algebra)
    for key in ("field", "dim", "mult", "delta", "S"):
        broken = dict(doc)
        del broken[key]
        with pytest.raises(ShapeError):
            algebra_from_json(broken)
    wrong = dict(doc)
    wrong["unit"] = ["1", "0"]
    with pytest.raises(ShapeError):
        algebra_from_json(wrong)
    bad_scalar = dict(doc)
    bad_scalar["alpha"] = ["1", "x", "0", "0"]
    with pytest.raises(ShapeError):
        algebra_from_json(bad_scalar)


def test_module_round_trip(h4):
    m = h4.modules["regular"]
    doc = json.loads(json.dumps(module_to_json(m)))
    m2 = module_from_json(doc)
    assert m2.dim == m.dim and m2.action == m.action
    assert check_module(m2).passed


def test_module_with_algebra_path(tmp_path, h4):
    (tmp_path / "alg.json").write_text(json.dumps(algebra_to_json(h4.algebra)))
    doc = module_to_json(h4.modules["trivial"], algebra_ref="alg.json")
    m = module_from_json(doc, tmp_path)
    assert m.h == h4.algebra


def test_ayd_round_trip(h4):
    b = h4.ayds["k_g"]
    doc = json.loads(json.dumps(ayd_to_json(b.ayd)))
    t = ayd_from_json(doc)
    assert isinstance(t, AydTypeI)
    assert t.rho == b.ayd.rho
    assert check_type_i(t).passed


def test_ayd_shape_errors(h4):
    doc = ayd_to_json(h4.ayds["k_g"].ayd)
    doc["map"] = doc["map"][:-1]
    with pytest.raises(ShapeError):
        ayd_from_json(doc)
    doc2 = ayd_to_json(h4.ayds["k_g"].ayd)
    doc2["type"] = "III"
    with pytest.raises(ShapeError):
        ayd_from_json(doc2)


def test_prime_field_document(k3w):
    doc = json.loads(json.dumps(algebra_to_json(k3w.algebra)))
    assert doc["field"] == {"type": "Fp", "p": 7}
    h = algebra_from_json(doc)
    assert h == k3w.algebra


def test_module_map_round_trip(h4):
    import json as _json

    from qhayd.ayd import tau_from_rho
    from qhayd.jsonio import module_map_from_json, module_map_to_json
    from qhayd.repcat import regular_module

    tau = tau_from_rho(h4.ayds["k_g"].ayd, regular_module(h4.algebra))
    doc = _json.loads(_json.dumps(module_map_to_json(tau)))
    back = module_map_from_json(doc)
    assert back.matrix == tau.matrix
    assert back.source.action == tau.source.action
    assert back.target.action == tau.target.action
