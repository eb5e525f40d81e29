import clopenlab as cl

ODOMETER = "kind: odometer\nbase: 2\n"


def test_action_and_space_model():
    a = cl.Action(ODOMETER)
    assert a.kind == "odometer"
    assert cl.is_empty(a, "[0]@L1 & [1]@L1")
    assert cl.sets_equal(a, "~[0]@L1", "[1]@L1")
    assert cl.apply_word(a, "[0]@L1", "g0") == "[1]@L1"


def test_equidecomposition():
    a = cl.Action(ODOMETER)
    res = cl.subequidecompose(a, "[0]@L1", "[1]@L1")
    assert res["found"] and res["verdict"] == "equidecomposable"
    w = res["witness"]
    ok, why = cl.verify_witness(a, "[0]@L1", "[1]@L1", w["json"])
    assert ok, why
    # strict subset: halves are not equidecomposable with quarters
    res = cl.type_leq(a, "[0]@L1", "[0]@L1 & [0]@L2")
    assert res["verdict"] != "equidecomposable"


def test_states():
    a = cl.Action(ODOMETER)
    gap = cl.comparison_gap(a, "[0]@L1 & [0]@L2", "[1]@L1", depth=2)
    assert gap["value"] == "-1/4" and gap["exact"]
    mb = cl.measure_bounds(a, "[0]@L1", depth=2)
    assert mb["min"]["value"] == mb["max"]["value"] == "1/2"
    assert not cl.paradox_search(a, "X", max_n=2)["found"]


def test_monoid():
    p = cl.MonoidPresentation.parse("gens: 2\nrel: 2 0 = 0 2\n")
    v = cl.check_property(p, "unperforated", bound=4)
    assert v["verdict"] == "fails"
    assert cl.check_property(p, "cancellative", bound=4)["verdict"] == "holds-within-bound"
    g = cl.grothendieck(p)
    assert g["rank"] == 1 and g["torsion"] == ["2"]
    assert "unperforated" in cl.property_catalog()


def test_coinvariants():
    a = cl.Action(ODOMETER)
    res = cl.coinvariants(a, depth=3)
    assert res["computed"] and res["group"] == "Z" and res["atoms"] == 8


def test_zsubset():
    lo, hi = cl.z_density("2,0", window=64)
    assert lo == "1/2" and hi == "1/2"
    res = cl.z_equidecompose("2,0", "2,1", shifts=[-1, 0, 1])
    assert res["verdict"] == "witness"
    res = cl.z_equidecompose("weiss:3", "complement:weiss:3", shifts=[-1, 0, 1])
    assert res["verdict"] == "hall-violation"


def test_krieger():
    a = cl.Action(ODOMETER)
    rep = cl.krieger_ladder(a, depth=3)
    assert rep["error"] == ""
    assert rep["steps_completed"] == 2 and rep["verified"]
