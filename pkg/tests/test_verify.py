import json

import pytest

from e2orbits.errors import InvalidParameter, OutOfScopeRing
from e2orbits.explorer import SearchParams
from e2orbits.linalg2 import Mat2
from e2orbits.ring import gaussian_order, make_ring
from e2orbits.verify import (
    Certificate,
    Status,
    check_lemma1,
    lemma2_scan,
    recheck,
    verify_corrigendum,
)


def test_corrigendum_d2_passes():
    cert = verify_corrigendum(2, range(2, 41, 2))
    assert cert.overall is Status.PASS
    names = [c.name for c in cert.checks]
    for k in (1, 2, 4, 5, 6, 7, 8):
        assert sum(n.startswith(f"{k}.") for n in names) == 20
    assert sum(n.startswith("3.") for n in names) == 1
    assert sum(n.startswith("9.") for n in names) == 190


@pytest.mark.parametrize("d", [3, 4, 5])
def test_corrigendum_other_d(d):
    assert verify_corrigendum(d, [d * k for k in range(1, 11)]).overall is Status.PASS


def test_corrigendum_fault_injection():
    def corrupt(F):
        return Mat2(F.m11, F.m12, F.m21 + 1, F.m22)

    cert = verify_corrigendum(2, [2], tamper=corrupt)
    assert cert.overall is Status.FAIL
    [bad] = cert.failures
    assert bad.name == "1.family_det[n=2]"
    assert "det = " in json.loads(bad.witness)["mismatch"]


def test_corrigendum_preconditions():
    with pytest.raises(InvalidParameter):
        verify_corrigendum(2, [3])
    with pytest.raises(InvalidParameter):
        verify_corrigendum(1, [2])
    with pytest.raises(InvalidParameter):
        verify_corrigendum(2, [])


def test_serialize_reload_recheck():
    cert = verify_corrigendum(3, [3, 6, 9])
    text = cert.dumps()
    again = Certificate.from_json(text)
    assert again.to_json() == cert.to_json()
    assert recheck(text) == []


def test_recheck_detects_edited_witness():
    obj = verify_corrigendum(2, [2, 4]).to_json()
    chk = next(c for c in obj["checks"] if c["name"] == "6.square[n=2]")
    data = json.loads(chk["witness"])
    data["expected"] = data["expected"].replace("-4", "-5", 1)
    chk["witness"] = json.dumps(data)
    assert recheck(obj) == ["6.square[n=2]"]


@pytest.mark.parametrize("R,samples,seed", [(gaussian_order(2), 500, 1), (gaussian_order(1), 500, 1),
                                            (make_ring("half", 3), 200, 7)], ids=str)
def test_lemma1(R, samples, seed):
    cert = check_lemma1(R, samples, seed)
    assert cert.overall is Status.PASS and len(cert.checks) == 3 * samples
    assert recheck(cert) == []


def test_lemma1_is_seeded():
    a = check_lemma1(gaussian_order(2), 20, 4).to_json()
    assert a == check_lemma1(gaussian_order(2), 20, 4).to_json()
    assert a != check_lemma1(gaussian_order(2), 20, 5).to_json()


def test_lemma2_small_scan():
    cert = lemma2_scan(gaussian_order(2), 41)
    assert cert.overall is Status.PASS
    assert cert.inconclusive_count > 0
    positives = [c for c in cert.checks if not c.inconclusive]
    assert positives and all(json.loads(c.witness)["kind"] == "orbit_word" for c in positives)
    assert recheck(cert.dumps()) == []


def test_lemma2_sqrt5():
    cert = lemma2_scan(make_ring("sqrt", 5), 150)
    assert cert.overall is Status.PASS


def test_lemma2_flags_missing_variant_word():
    # a depth budget too small to realize the S-word must fail the variant checks
    cert = lemma2_scan(gaussian_order(2), 13, SearchParams(52, 16, 1000, 1))
    assert cert.overall is Status.FAIL
    assert all(json.loads(c.witness)["kind"] == "missing" for c in cert.failures)


def test_lemma2_out_of_scope():
    with pytest.raises(OutOfScopeRing):
        lemma2_scan(gaussian_order(1), 10)
    with pytest.raises(OutOfScopeRing):
        lemma2_scan(make_ring("sqrt", 3), 10)
