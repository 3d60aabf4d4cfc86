import json

import pytest

from nervekit import serialize as ser
from nervekit.action import self_action
from nervekit.bicategory import delooping
from nervekit.category import cyclic_group, monoid_category
from nervekit.errors import ParseError, ValidationError
from nervekit.functors import build_contraction, decalage
from nervekit.nerve import classical_nerve, duskin_nerve
from nervekit.stock import cached, stock_augmented_aspherical, stock_two_groups
from nervekit.torsor import torsor_nerve


def round_trip(obj, kind):
    text = ser.dumps(obj)
    back = ser.from_dict(json.loads(text), kind)
    return text, ser.dumps(back)


def artifacts():
    N = classical_nerve(monoid_category(cyclic_group(2)), 3)
    T = cached("torsors")["triv BZ/2"]
    return {
        "nerve": (N, "simplicial"),
        "duskin": (duskin_nerve(stock_two_groups()["(Z/2->1)"]), "simplicial"),
        "dec": (decalage(N).aug, "simplicial"),
        "contracted": (build_contraction(stock_augmented_aspherical()["N(EZ/2) -> *"]), "simplicial"),
        "category": (monoid_category(cyclic_group(3)), "category"),
        "bicategory": (stock_two_groups()["(Z/2->Z/2)"], "bicategory"),
        "action": (self_action(delooping(cyclic_group(2))), "action"),
        "fibered": (T.fibered, "action"),
        "torsor": (T, "torsor"),
        "map": (torsor_nerve(T).projection, "map"),
    }


@pytest.mark.parametrize("name", sorted(artifacts()))
def test_round_trip_is_byte_identical(name):
    obj, kind = artifacts()[name]
    a, b = round_trip(obj, kind)
    assert a == b
    assert ser.validate_payload(kind, ser.from_dict(json.loads(a), kind))


def test_canonical_form_sorted_and_indented():
    text = ser.dumps(monoid_category(cyclic_group(2)))
    d = json.loads(text)
    assert text == json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    assert list(d) == sorted(d)


def test_detect_kind():
    for name, (obj, kind) in artifacts().items():
        assert ser.detect_kind(json.loads(ser.dumps(obj))) == kind, name
    with pytest.raises(ParseError):
        ser.detect_kind([1, 2])


def test_dangling_face_id():
    d = ser.to_dict(classical_nerve(monoid_category(cyclic_group(2)), 2))
    d["face"][0]["0"] = ["*", "ghost"]
    with pytest.raises(ParseError, match="dangling id"):
        ser.from_dict(d)


def test_unknown_field():
    d = ser.to_dict(monoid_category(cyclic_group(2)))
    d["colour"] = "blue"
    with pytest.raises(ParseError, match="colour"):
        ser.from_dict(d)


def test_kind_mismatch():
    d = ser.to_dict(monoid_category(cyclic_group(2)))
    with pytest.raises(ParseError):
        ser.from_dict(d, "bicategory")


def test_load_artifact_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError, match="invalid JSON"):
        ser.load_artifact(str(p))
    with pytest.raises(ParseError, match="no such file"):
        ser.load_artifact(str(tmp_path / "missing.json"))


def test_load_artifact_validates(tmp_path):
    B = stock_two_groups()["(Z/2->1)"].copy_with(lunitor={"e": "(e,1)"})
    p = tmp_path / "bad_bicat.json"
    ser.save_artifact(B, str(p))
    with pytest.raises(ValidationError) as e:
        ser.load_artifact(str(p))
    assert e.value.report.axiom == "triangle"
    assert ser.load_artifact(str(p), validate=False).kind == "bicategory"


def test_action_with_bicategory_path(tmp_path):
    B = delooping(cyclic_group(2))
    ser.save_artifact(B, str(tmp_path / "b.json"))
    d = ser.to_dict(self_action(B))
    d["bicategory"] = "b.json"
    (tmp_path / "a.json").write_text(ser.canonical_dumps(d))
    art = ser.load_artifact(str(tmp_path / "a.json"))
    assert art.payload.B.one_cells == B.one_cells


def test_shipped_data_loads():
    from importlib.resources import files

    data = files("nervekit") / "data"
    kinds = {}
    for name in ("nerve_z2.json", "delta1.json", "trivial_torsor_z2.json"):
        kinds[name] = ser.load_artifact(str(data / name)).kind
    assert kinds == {"nerve_z2.json": "simplicial", "delta1.json": "simplicial",
                     "trivial_torsor_z2.json": "torsor"}
