"""Exit criteria. Each test prints one PASS/FAIL line (see the terminal
summary) with its wall time against the allowed budget."""

import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES
from expdiophantine.diophantine import ScopeTag, evaluate, scope_pairs, verify_scope
from expdiophantine.ljunggren import search_ljunggren
from expdiophantine.lucas import check_carmichael, check_lemma1, check_lemma3, nonsquares
from expdiophantine.pell import fundamental_solution, solutions


@contextmanager
def criterion(number, title, budget_s):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget_s, f"took {elapsed:.2f}s, budget {budget_s}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"[{status}] {number:>2}. {title} ({elapsed:.2f}s / {budget_s}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_01_pell_regression():
    with criterion(1, "Pell fundamental solutions", 1):
        expected = {6083: (78, 1), 2: (3, 2), 3: (2, 1), 5: (9, 4), 61: (1766319049, 226153980)}
        for d, (u1, v1) in expected.items():
            f = fundamental_solution(d)
            assert (f.u1, f.v1) == (u1, v1)
            assert u1 * u1 - d * v1 * v1 == 1


def test_02_identity_suite():
    with criterion(2, "doubling and Chebyshev identities, d <= 200", 10):
        bad = []
        for d in nonsquares(200):
            s = [None] + solutions(d, 10)
            u1 = s[1].u
            for t in range(1, 6):
                if s[2 * t].u != 2 * s[t].u ** 2 - 1 or s[2 * t].v != 2 * s[t].v * s[t].u:
                    bad.append((d, t))
            if s[3].u != 4 * u1**3 - 3 * u1 or s[5].u != 16 * u1**5 - 20 * u1**3 + 5 * u1:
                bad.append((d, "chebyshev"))
        assert bad == []


def test_03_lemma_sweeps():
    with criterion(3, "Lemma 1 (k <= 10) and Lemma 3 (k <= 12), d <= 200", 60):
        ds = nonsquares(200)
        assert [v for d in ds for v in check_lemma1(d, 10)] == []
        assert [v for d in ds for v in check_lemma3(d, 12)] == []


def test_04_carmichael_sweep():
    with criterion(4, "primitive divisor of v_n for 6 < n <= 20, d <= 100", 300):
        assert [v for d in nonsquares(100) for v in check_carmichael(d, 20)] == []


def test_05_ljunggren():
    with criterion(5, "x^p = 2y^2 - 1 solution sets", 30):
        assert [(s.x, s.y) for s in search_ljunggren(3, 10**6)] == [(1, 1), (23, 78)]
        for p in (5, 7, 11):
            assert [(s.x, s.y) for s in search_ljunggren(p, 10**5)] == [(1, 1)]


def test_06_known_solutions():
    with criterion(6, "known solutions", 1):
        for (a, b, n), x in {
            (2, 5, 1): 2,
            (2, 4, 3): 21,
            (3, 243, 1): 22,
            (7, 2401, 1): 120,
            (13, 239, 4): 9653280,
        }.items():
            cert = evaluate(a, b, n)
            assert cert is not None and cert.x == x


def _key(c):
    return (c.a, c.b, c.n, c.x)


def test_07_theorem1_sweep():
    with criterion(7, "Theorem 1 cases, a, b <= 40, n <= 12", 300):
        exceptions = []
        for tag in (ScopeTag.THM1_CASE1, ScopeTag.THM1_CASE2, ScopeTag.THM1_CASE3):
            r = verify_scope(tag, 40, 40, 12)
            assert r.violations == []
            assert all(c.n == 2 for c in r.expected_exceptions)
            exceptions += [_key(c) for c in r.expected_exceptions]
        assert (7, 2, 2, 12) in exceptions
        assert (17, 3, 2, 48) in exceptions


def test_08_theorem2_sweep():
    with criterion(8, "Theorem 2, a even <= 40, b in {3, 11, 19}, n <= 12", 120):
        assert {b for _, b in scope_pairs(ScopeTag.THM2, 40, 40)} == {3, 11, 19}
        r = verify_scope(ScopeTag.THM2, 40, 40, 12)
        assert r.violations == [] and r.expected_exceptions == []
        assert r.pairs_checked == 20 * 3


def test_09_cohn_sweep():
    with criterion(9, "4 | n, a < b <= 250, n in {4, 8, 12}", 300):
        r = verify_scope(ScopeTag.COHN_4N, 250, 250, 12)
        assert r.violations == []
        assert [_key(c) for c in r.expected_exceptions] == [(13, 239, 4, 9653280)]


@pytest.mark.parametrize(
    "scope", [ScopeTag.THM1_CASE1, ScopeTag.THM1_CASE2, ScopeTag.THM1_CASE3, ScopeTag.THM2, ScopeTag.COHN_4N]
)
def test_10_determinism(scope):
    bounds = {ScopeTag.COHN_4N: (250, 250, 12)}.get(scope, (40, 40, 12))
    with criterion(10, f"byte-identical {scope.value} report under 1/2/8 shards", 600):
        dumps = {verify_scope(scope, *bounds, shards=k).dumps() for k in (1, 2, 8)}
        assert len(dumps) == 1
