"""Exit criteria. Each test prints one ``ACCEPT PASS/FAIL`` line (shown in the run summary)."""

import random
import time

import pytest

from e2orbits.cli import main
from e2orbits.explorer import DEFAULT_PARAMS, Outcome, matrix_in_E2, reduce_pair
from e2orbits.linalg2 import ElemMove, ElemWord, Mat2, Side, UniPair, mat_inv_sl2, mat_mul, s_matrix, word_to_matrix
from e2orbits.ring import elements_up_to_norm, gaussian_order, make_ring, pell_fundamental
from e2orbits.unimodular import complete_pair, corrigendum_pair, enumerate_special, is_unimodular, trivial_variants
from e2orbits.verify import Status, check_lemma1, lemma2_scan, verify_corrigendum

from oracles import completion_brute, disc_brute, pell_brute

RESULTS = []


@pytest.fixture
def report(request):
    def _report(ok, detail=""):
        line = f"ACCEPT {'PASS' if ok else 'FAIL'}  {request.node.name}  {detail}"
        RESULTS.append(line)
        print(line)
        assert ok, line

    return _report


def test_c01_corrigendum_certificate(report, capsys):
    t0 = time.perf_counter()
    code = main(["verify", "--ring", "sqrt:4", "--d", "2", "--n", "2..40"])
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    cert = verify_corrigendum(2, range(2, 41, 2))
    groups = {c.name.split(".")[0] for c in cert.checks}
    ok = code == 0 and cert.overall is Status.PASS and groups == {str(k) for k in range(1, 10)} and elapsed < 5
    for d in (3, 4, 5):
        ok = ok and verify_corrigendum(d, [d * k for k in range(1, 11)]).overall is Status.PASS
    report(ok, f"d=2 n=2..40: exit {code}, {len(cert.checks)} checks, {elapsed:.2f}s; d=3,4,5 k<=10")


def test_c02_s_word(report):
    R = gaussian_order(2)
    w = ElemWord([ElemMove(Side.UPPER, R(1)), ElemMove(Side.LOWER, R(-1)), ElemMove(Side.UPPER, R(1))])
    S = Mat2.of(R, [[0, 1], [-1, 0]])
    res = matrix_in_E2(S)
    ok = word_to_matrix(w) == S and res.found and len(res.word) <= 3 and word_to_matrix(res.word) == S
    report(ok, f"recovered word {res.word}")


def test_c03_specialness_numbers(report):
    p, _ = corrigendum_pair(2, 2)
    a, b = p.alpha, p.beta
    norms = (a.norm_sq(), b.norm_sq(), (a + b).norm_sq(), (a - b).norm_sq())
    report(norms == (13, 13, 36, 16) and norms[0] < norms[2] and norms[0] < norms[3], f"norms {norms}")


def test_c04_lemma1_properties(report):
    t0 = time.perf_counter()
    certs = [check_lemma1(R, 500, 1) for R in (gaussian_order(1), gaussian_order(2), make_ring("half", 3))]
    elapsed = time.perf_counter() - t0
    fails = sum(len(c.failures) for c in certs)
    ok = fails == 0 and all(len(c.checks) == 1500 for c in certs) and elapsed < 10
    report(ok, f"{fails} failures over 3 x 500 samples, {elapsed:.2f}s")


def test_c05_euclidean_sanity(report):
    R = gaussian_order(1)
    t0 = time.perf_counter()
    els = elements_up_to_norm(R, 100, include_zero=True)
    target = set(trivial_variants(UniPair(R.one, R.zero)))
    count = stalls = 0
    for a in els:
        for b in els:
            p = UniPair(a, b)
            if not is_unimodular(p):
                continue
            count += 1
            r = reduce_pair(p)
            if r.outcome is not Outcome.REDUCED or r.final not in target:
                stalls += 1
    elapsed = time.perf_counter() - t0
    report(stalls == 0 and elapsed < 30, f"{count} unimodular pairs, {stalls} stalls, {elapsed:.1f}s")


def test_c06_lemma2_scan(report):
    R = gaussian_order(2)
    cert = lemma2_scan(R, 200)
    specials = enumerate_special(R, 200)
    variant_checks = [c for c in cert.checks if not c.inconclusive]
    ok = cert.overall is Status.PASS and len(variant_checks) == 6 * len(specials) // 4
    report(ok, f"{len(specials)} special pairs, {len(variant_checks)} variant links verified, "
               f"{cert.inconclusive_count} cross-class pairs unconnected (inconclusive)")


def test_c07_reader_exercise(report):
    R = gaussian_order(2)
    M = Mat2.of(R, [[(1, -1), -2], [-2, (1, 1)]])
    S = s_matrix(R)
    conj = matrix_in_E2(mat_mul(mat_mul(M, S), mat_inv_sl2(M)), DEFAULT_PARAMS)
    plain = matrix_in_E2(S, DEFAULT_PARAMS)
    ok = conj.outcome is Outcome.NOT_FOUND and conj.inconclusive and plain.found
    report(ok, f"M S M^-1: {conj.outcome.value} (inconclusive); S: {plain.word}")


def test_c08_pell(report):
    ok = all((pell_fundamental(D).x, pell_fundamental(D).y) == pell_brute(D) for D in (2, 3, 5, 6, 7, 8, 10))
    ok = ok and all(pell_fundamental(D) is None for D in (1, 4, 9, 16))
    report(ok, "D in {2,3,5,6,7,8,10} match brute force; squares absent")


def test_c09_completion_oracle(report):
    rng = random.Random(2024)
    disagreements = 0
    for R in (make_ring("sqrt", 1), make_ring("sqrt", 4), make_ring("sqrt", 5), make_ring("half", 2),
              make_ring("half", 3)):
        disc = disc_brute(R, 100)
        small = elements_up_to_norm(R, 50, include_zero=True)
        for _ in range(500):
            p = UniPair(rng.choice(small), rng.choice(small))
            got = complete_pair(p)
            valid = got is None or (got.pair == p and got.matrix.m11 * got.matrix.m22 - got.matrix.m12 *
                                    got.matrix.m21 == R.one)
            if not valid or (got is None) != (completion_brute(p, disc) is None):
                disagreements += 1
    report(disagreements == 0, f"{disagreements} disagreements over 5 x 500 pairs")


def test_c10_special_pairs_stall(report):
    exceptions = total = 0
    for R in (gaussian_order(2), make_ring("sqrt", 5)):
        for p in enumerate_special(R, 200):
            total += 1
            r = reduce_pair(p)
            if r.outcome is not Outcome.STALLED:
                exceptions += 1
    report(exceptions == 0, f"{total} special pairs, {exceptions} exceptions")
