import pytest

import tbtd


def test_generate_and_classify():
    arr = tbtd.generate("krawtchouk", 3)
    assert arr["theta"] == ["3", "1", "-1", "-3"]
    tag = tbtd.classify(arr)
    assert tag["kind"] == "krawtchouk"
    assert tag["h"] == "1"


def test_build_and_verify():
    sys_doc = tbtd.build(tbtd.generate("q-racah", 3, q="2"))
    assert sys_doc["c"][0] == "1"
    assert sys_doc["b"][1] == "17/4"
    assert tbtd.all_passed(tbtd.verify(sys_doc))
    sys_doc["b"][1] = "0"
    failed = [c["name"] for r in tbtd.verify(sys_doc) for c in r["checks"] if not c["passed"]]
    assert "irreducible" in failed


def test_triple():
    t = tbtd.triple(tbtd.generate("bannai-ito", 4))
    assert t["kappa"] == "1"
    assert tbtd.all_passed(tbtd.triple_checks(tbtd.generate("q-racah", 4, q="3", field="Q(i)")))


def test_errors():
    with pytest.raises(tbtd.TbtdError) as e:
        tbtd.generate("bannai-ito", 3)
    assert e.value.code == "BannaiItoOddDiameter"
    with pytest.raises(tbtd.TbtdError) as e:
        tbtd.triple(tbtd.generate("krawtchouk", 3))
    assert e.value.code == "NoSquareRootInField"


def test_reduce_word():
    assert tbtd.reduce_word("rsssr") == "rsr"
    assert tbtd.reduce_word("rrr") == ""
