import json
import math

import pytest

from b0kit.catalog import ZOO, catalog, group_from_json, load_group, parse_name, zoo_name
from b0kit.errors import BadParams, UnknownName
from b0kit.groups import center, derived_subgroup

EXPECTED_ORDERS = {
    "cyclic:n=12": 12,
    "abelian:invariants=3,9": 27,
    "dihedral:n=16": 16,
    "quaternion": 8,
    "modular16": 16,
    "heisenberg:p=3": 27,
    "extraspecial:p=3;sign=-": 27,
    "ut:q=2;n=3": 8,
    "symmetric:n=4": 24,
    "alternating:n=4": 12,
    "dihedral:n=8xcyclic:n=2": 16,
}


def exponent(G) -> int:
    return math.lcm(*(int(o) for o in G.element_orders()))


@pytest.mark.parametrize("name,params", ZOO, ids=[zoo_name(n, p) for n, p in ZOO])
def test_zoo_builds(name, params):
    G = catalog(name, params)
    key = zoo_name(name, params)
    if key in EXPECTED_ORDERS:
        assert G.n == EXPECTED_ORDERS[key]


def test_catalog_examples():
    D = catalog("dihedral", {"n": 8})
    assert D.n == 8 and center(D).order == 2
    assert catalog("ut", {"q": 4, "n": 3}).n == 64
    E = catalog("extraspecial", {"p": 3, "sign": "+"})
    assert E.n == 27 and exponent(E) == 3
    E2 = catalog("extraspecial", {"p": 3, "sign": "-"})
    assert E2.n == 27 and exponent(E2) == 9
    assert center(E).order == 3 and derived_subgroup(E).order == 3


def test_modular16_and_quaternion():
    M = catalog("modular16")
    assert exponent(M) == 8 and derived_subgroup(M).order == 2 and center(M).order == 4
    Q = catalog("quaternion")
    assert sorted(Q.element_orders()).count(2) == 1


def test_errors():
    with pytest.raises(UnknownName):
        catalog("mathieu", {})
    with pytest.raises(BadParams):
        catalog("dihedral", {})
    with pytest.raises(BadParams):
        catalog("dihedral", {"n": 7})
    with pytest.raises(BadParams):
        catalog("extraspecial", {"p": 3, "sign": "?"})


def test_parse_name():
    assert parse_name("dihedral:n=8") == ("dihedral", {"n": 8})
    assert parse_name("abelian:invariants=2,4") == ("abelian", {"invariants": [2, 4]})
    assert parse_name("extraspecial:p=3;sign=-") == ("extraspecial", {"p": 3, "sign": "-"})
    assert parse_name("quaternion") == ("quaternion", {})


def test_json_descriptions(tmp_path):
    D = catalog("dihedral", {"n": 8})
    assert group_from_json({"table": D.table.tolist()}).n == 8
    assert group_from_json({"perm_gens": [[1, 2, 3, 0], [0, 3, 2, 1]]}).n == 8
    desc = {"matrix_gens": {"field": {"p": 2, "e": 2, "irr": [1, 1, 1]}, "n": 2,
                            "gens": [[[[1, 0], [1, 0]], [[0, 0], [1, 0]]], [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]]}}
    assert group_from_json(desc).n == 4
    # SL(2,4) = PSL(2,4), order 60
    desc = {"matrix_gens": {"field": {"p": 2, "e": 2, "irr": [1, 1, 1]}, "n": 2,
                            "gens": [[[[1, 0], [1, 0]], [[0, 0], [1, 0]]], [[[1, 0], [0, 0]], [[1, 0], [1, 0]]],
                                     [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]]}, "projective": True}
    assert group_from_json(desc).n == 60
    assert group_from_json({"catalog": {"name": "quaternion"}}).n == 8
    path = tmp_path / "d8.json"
    path.write_text(json.dumps({"table": D.table.tolist()}))
    G = load_group(path)
    assert G.n == 8 and G.name == "d8"
    with pytest.raises(BadParams):
        group_from_json({"nothing": 1})
