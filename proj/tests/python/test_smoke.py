import pytest

import arbor


def test_automorphism_round_trip():
    sigma = arbor.TreeAutomorphism.from_support(3, ["", "ab"])
    assert sigma.par("")
    assert sigma.par("ab")
    assert not sigma.par("a")
    assert arbor.TreeAutomorphism.decode(sigma.encode()) == sigma
    assert (sigma * sigma.inverse()).is_identity()
    assert sigma.support() == ["", "ab"]


def test_order_formula_and_closure():
    assert [arbor.pink_log2_order(3, 2, n) for n in range(1, 6)] == [1, 3, 7, 13, 24]
    assert arbor.closure_log2(arbor.pink_generators(3, 2, 4)) == 13
    assert arbor.count_predicate(3, 2, 4) == 2**13


def test_generators_are_members():
    for gen in arbor.pink_generators(3, 1, 5):
        report = arbor.membership(gen, 3, 1)
        assert report["in_group"]
        assert report["variants"]["tBp"]


def test_kernel_formula():
    k = arbor.kernel(3, 2, 5)
    assert k["log2"] == k["log2_formula"] == 11


def test_dynamics():
    assert arbor.orbit_portrait(7, 1) == (3, 2)
    assert arbor.orbit_portrait(7, 0) is None
    assert (7, 1) in arbor.find_pcf_params(3, 2, 7)
    assert arbor.valid_base_points(5, 2) == [0, 4]
    assert arbor.mod2_iterate_check(12)
    assert arbor.misiurewicz_mod2_check(3, 2)


def test_frobenius_special_instance():
    doc = arbor.frobenius(7, 1, 4)
    assert doc["ok"]
    assert doc["sigma"] == "ATn:5:8368811d"
    assert doc["membership"]["in_group"]
    assert doc["membership"]["p"] == 1
    assert doc["membership"]["r"] == 0
    assert [lv["chi"] for lv in doc["levels"]] == [-1, -1, 1, 1, 1]


def test_label_json_shape():
    doc = arbor.label(5, 2, 4)
    assert doc["ok"]
    tree = doc["tree"]
    assert tree["portrait"] == {"r": 3, "s": 1}
    assert tree["nodes"][""] == [4] + [0] * 31
    assert len(tree["nodes"]) == 63
    assert doc["labeling"]["case"] == "short"


def test_kummer_rank():
    k = arbor.kummer(7, 1, 4, 3, 2)
    assert k["rank"] == 1
    assert not k["condition1"]


def test_homtest_small():
    rep = arbor.homtest(3, trials=50)
    assert rep["ok"]
    assert rep["seed"] == 3


def test_errors():
    with pytest.raises(arbor.ArborError):
        arbor.pink_generators(2, 1, 3)
    with pytest.raises(ValueError):
        arbor.label(7, 1, 3)
