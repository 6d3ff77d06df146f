import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from herdkit import io
from herdkit.coalg import absorbing_monoid, check_hopf, group_algebra, heap_algebra, sweedler
from herdkit.corpus import corpus_generate, cyclic, groups_up_to, symmetric3
from herdkit.errors import SchemaError
from herdkit.setcore import check_group, check_heap, group_to_heap
from herdkit.tannaka import simple_diagram
from herdkit.vflock import regular_comodule, weight_comodule

A3 = heap_algebra(group_to_heap(cyclic(3)))

VALUES = {
    "heap": group_to_heap(symmetric3()),
    "group": symmetric3(),
    "herd": A3,
    "hopf": sweedler(),
    "bimonoid": absorbing_monoid(),
    "comonoid": A3.comonoid,
    "comodule": regular_comodule(A3),
    "diagram": simple_diagram(A3, [0, 1, 2]),
}


@pytest.mark.parametrize("kind", sorted(VALUES))
def test_roundtrip(tmp_path, kind):
    value = VALUES[kind]
    path = io.save_structure(value, tmp_path / f"{kind}.json")
    back = io.load_structure(path)
    assert io._kind_of(back) == kind
    assert io.to_json(back) == io.to_json(value)
    if kind not in ("diagram", "comonoid"):
        assert back == value


def test_numbers_are_strings(tmp_path):
    obj = json.loads(io.save_structure(A3, tmp_path / "a.json").read_text())
    assert obj["kind"] == "herd" and obj["dim"] == "3"
    assert all(isinstance(x, str) for x in obj["q"]["entries"])


def test_plain_integers_accepted():
    h = io.from_json({"kind": "heap", "size": 1, "q": [0]})
    assert check_heap(h).passed


def test_zero_denominator(tmp_path):
    obj = io.to_json(A3)
    obj["eps"]["entries"][1] = "1/0"
    with pytest.raises(SchemaError) as exc:
        io.from_json(obj)
    assert exc.value.pointer == "/eps/entries/1"


@pytest.mark.parametrize("mutate,pointer", [
    (lambda o: o.update(q=o["q"][:-1]), "/q"),
    (lambda o: o["q"].__setitem__(5, "7"), "/q/5"),
    (lambda o: o.pop("size"), "/size"),
    (lambda o: o.update(kind="tree"), "/kind"),
    (lambda o: o["q"].__setitem__(0, True), "/q/0"),
])
def test_heap_schema_errors(mutate, pointer):
    obj = io.to_json(group_to_heap(cyclic(2)))
    mutate(obj)
    with pytest.raises(SchemaError) as exc:
        io.from_json(obj)
    assert exc.value.pointer == pointer
    assert pointer in str(exc.value)


def test_matrix_shape_checked():
    obj = io.to_json(A3)
    obj["delta"]["rows"] = "3"
    with pytest.raises(SchemaError) as exc:
        io.from_json(obj)
    assert exc.value.pointer.startswith("/delta")


def test_invalid_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{")
    with pytest.raises(SchemaError):
        io.load_structure(p)


def test_comodule_over_by_path(tmp_path):
    io.save_structure(A3, tmp_path / "herd.json")
    M = weight_comodule(A3, 2)
    obj = io.to_json(M)
    obj["over"] = "herd.json"
    (tmp_path / "m.json").write_text(json.dumps(obj))
    assert io.load_structure(tmp_path / "m.json") == M


def test_comodule_without_over_needs_herd():
    obj = io.to_json(weight_comodule(A3, 1))
    del obj["over"]
    with pytest.raises(SchemaError):
        io.from_json(obj)
    assert io.from_json(obj, herd=A3) == weight_comodule(A3, 1)


@given(st.sampled_from(groups_up_to(8)))
def test_group_json_roundtrip(g):
    back = io.from_json(json.loads(io.dumps(io.to_json(g))))
    assert back == g and check_group(back).passed


def test_hopf_survives(tmp_path):
    H = group_algebra(symmetric3())
    back = io.load_structure(io.save_structure(H, tmp_path / "h.json"))
    assert check_hopf(back).passed


# -- corpus ----------------------------------------------------------------------------


def test_corpus_groups(tmp_path):
    paths = corpus_generate("groups", 4, tmp_path)
    assert [p.stem for p in paths] == ["C1", "C2", "C3", "C4", "V4"]
    assert all(check_group(io.load_structure(p)).passed for p in paths)


def test_corpus_heaps(tmp_path):
    paths = corpus_generate("heaps", 4, tmp_path)
    assert len(paths) == 5
    assert all(check_heap(io.load_structure(p)).passed for p in paths)


def test_corpus_cap_one(tmp_path):
    assert [p.stem for p in corpus_generate("groups", 1, tmp_path)] == ["C1"]


def test_corpus_deterministic(tmp_path):
    a = [p.read_bytes() for p in corpus_generate("herds", 3, tmp_path / "a")]
    b = [p.read_bytes() for p in corpus_generate("herds", 3, tmp_path / "b")]
    assert a == b
