"""Acceptance criteria AC1-AC9, each at its stated time limit."""

import random
import time
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from macext import AlphabetSpec, Certificate, construct_counterexample, field_for_q, verify_certificate
from macext.characters import CyclotomicInt, check_indicator_transform, fourier, inverse_fourier
from macext.construction import lower_bound_n, min_m_search
from macext.isometry import (all_subgroups, alphabet_points, brute_force_extension, closure,
                             extend_search, g_pseudo_injective, general_linear, hamming_weight_fn,
                             monomial_iff_isometry_check, trivial_group, unextendable_for_weight,
                             weight_symmetry_group)
from macext.lattice import (Subspace, all_subspaces, contains, count_complement_avoiding,
                            enumerate_subspaces, find_min_x, gauss_binom, intersect, mobius,
                            orthogonal_complement, subspace_sum)
from macext.linalg import vec_mat
from macext.multiplicity import (avoids, build_sectors, check_E_zero, eta_from_xi, eta_perp,
                                 eta_row, kernel_basis)

F2, F3 = field_for_q(2), field_for_q(3)
A212 = AlphabetSpec(F2, 1, 2)


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


@pytest.fixture(scope="module")
def cert_212():
    return construct_counterexample(A212)


# ---------------------------------------------------------------- oracles

def _point_sets(F, m):
    """Every subspace of GF(q)^m as a frozenset, by closing spans of vector sets."""
    vecs = list(product(range(F.q), repeat=m))
    seen = {frozenset([tuple([0] * m)])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v not in S:
                    T = frozenset(tuple(F.add(a, F.mul(c, b)) for a, b in zip(s, v))
                                  for s in S for c in range(F.q))
                    if T not in seen:
                        seen.add(T)
                        nxt.append(T)
        frontier = nxt
    return seen


def _log_q(n, q):
    d = 0
    while n > 1:
        n //= q
        d += 1
    return d


def _rational_rank(rows):
    work = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, len(work[0]) if work else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rk], work[piv] = work[piv], work[rk]
        for i in range(len(work)):
            if i != rk and work[i][c]:
                f = work[i][c] / work[rk][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[rk])]
        rk += 1
    return rk


def _oracle_kernel_dim(m, ell, q):
    """dim Ker E' from point sets, subset tests and the closed-form Moebius value."""
    F = field_for_q(q)
    subs = _point_sets(F, m)
    X = next(S for S in subs if S == frozenset(v for v in product(range(q), repeat=m) if not any(v[:ell])))
    zero = frozenset([tuple([0] * m)])
    meets_trivially = [S for S in subs if S & X == zero]
    S_eq = [S for S in meets_trivially if len(S) == q**ell]
    S_lt = [S for S in meets_trivially if len(S) < q**ell]
    rows = []
    for V in S_eq:
        row = []
        for U in S_lt:
            if U <= V:
                d = ell - _log_q(len(U), q)
                row.append((-1) ** d * q ** (d * (d - 1) // 2))
            else:
                row.append(0)
        rows.append(row)
    return len(S_eq), len(S_lt), len(S_eq) - _rational_rank(rows)


# ---------------------------------------------------------------- AC1

@pytest.mark.acceptance("AC1")
def test_ac1_end_to_end_q2_k1_l2(cert_212):
    with Timer(10):
        c = construct_counterexample(A212)
        assert c.m <= 6
        r = verify_certificate(Certificate.loads(c.dumps()))
    assert r["ok"], r["checks"]
    for key in ("eq1", "kernels_distinct", "eq2_violated", "lower_bound_n"):
        assert r["checks"][key] == "pass"
    assert len(set(c.kernels_lambda)) == c.n and len(set(c.kernels_mu)) == c.n
    assert c.n >= 3 == lower_bound_n(2, 1)
    # Minimal m by the rank oracle: zero kernel at m = 2, 3 and nonzero at 4.
    assert min_m_search(A212, 6).minimal_m == c.m == 4
    dims = {m: _oracle_kernel_dim(m, 2, 2) for m in (2, 3, 4)}
    assert dims[2][2] == 0 and dims[3][2] == 0 and dims[4][2] > 0
    assert dims[4][:2] == (16, 13)


# ---------------------------------------------------------------- AC2

@pytest.mark.acceptance("AC2")
def test_ac2_brute_force(cert_212):
    assert cert_212.n <= 4
    with Timer(60):
        G = general_linear(F2, 2)
        found, tried = brute_force_extension(cert_212.lam, cert_212.mu, G, budget=10**7)
        r = verify_certificate(cert_212, brute_force=True)
    assert found is None and tried == 6**cert_212.n * 6
    assert r["checks"]["brute_force"] == "pass" and r["checks"]["eq2_violated"] == "pass"
    assert r["details"]["brute_force"]["result"] == "no extension found"


# ---------------------------------------------------------------- AC3

@pytest.mark.acceptance("AC3")
def test_ac3_q3_k1_l2():
    with Timer(300):
        c = construct_counterexample(AlphabetSpec(F3, 1, 2))
        r = verify_certificate(Certificate.loads(c.dumps()), group="full")
    assert r["ok"], r["checks"]
    assert c.n >= lower_bound_n(3, 1)


@pytest.mark.acceptance("AC3")
def test_ac3_q2_k2_l3():
    with Timer(300):
        c = construct_counterexample(AlphabetSpec(F2, 2, 3))
        r = verify_certificate(Certificate.loads(c.dumps()))
    assert r["ok"], r["checks"]
    assert c.n >= 15 == lower_bound_n(2, 2)


# ---------------------------------------------------------------- AC4

@pytest.mark.acceptance("AC4")
@pytest.mark.parametrize("q", [2, 3])
def test_ac4a_complement_avoiding_counts(q):
    F = field_for_q(q)
    with Timer(10):
        for a in range(1, 5):
            pts = _point_sets(F, a)
            for b in range(a + 1):
                B = frozenset(v for v in product(range(q), repeat=a) if not any(v[b:]))
                for c in range(a - b + 1):
                    brute = sum(1 for C in pts if len(C) == q**c and len(C & B) == 1)
                    assert brute == count_complement_avoiding(a, b, c, q), (a, b, c)


@pytest.mark.acceptance("AC4")
def test_ac4b_eta_v_vanishes():
    with Timer(10):
        for m in range(1, 5):
            for V in all_subspaces(m, F2):
                if V.dim > 1:
                    assert check_E_zero(eta_row(V), k=1)[0], V


@pytest.mark.acceptance("AC4")
def test_ac4c_mobius_inversion():
    with Timer(10):
        subs = all_subspaces(4, F2)
        for T in subs:
            uppers = [U for U in subs if contains(U, T)]
            for V in uppers:
                total = sum(mobius(U, V) for U in uppers if contains(V, U))
                assert total == (1 if T == V else 0)


@pytest.mark.acceptance("AC4")
def test_ac4d_qbin_inequality():
    def holds(x, t, q):
        return sum(gauss_binom(x, i, q) for i in range(t)) < q ** (t * (x - t))
    with Timer(10):
        assert find_min_x(1, 2) == 2
        x = find_min_x(2, 2)
        assert x > 2 and holds(x, 2, 2) and not any(holds(y, 2, 2) for y in range(3, x))
        assert x == 5  # 1 + 15 = 16 vs 2^4 at x = 4 fails; 1 + 31 < 64 at x = 5


@pytest.mark.acceptance("AC4")
@pytest.mark.parametrize("q", [2, 3])
def test_ac4e_eta_and_eta_perp_zero(q):
    with Timer(10):
        F = field_for_q(q)
        m = min_m_search(AlphabetSpec(F, 1, 2), 6).minimal_m
        basis = kernel_basis(m, 2, 1, F)
        assert basis
        for xi in basis:
            eta = eta_from_xi(xi)
            assert check_E_zero(eta, k=1)[0]
            assert check_E_zero(eta_perp(eta), k=1)[0]


# ---------------------------------------------------------------- AC5

@pytest.mark.acceptance("AC5")
def test_ac5_fourier_duality():
    with Timer(30):
        for q, m in [(2, 3), (2, 4), (3, 2)]:
            F = field_for_q(q)
            for V in all_subspaces(m, F):
                assert check_indicator_transform(V)
        rng = random.Random(2024)
        cases = [(2, 3), (2, 4), (3, 2), (4, 2), (5, 1)]
        for i in range(100):
            q, m = cases[i % len(cases)]
            F = field_for_q(q)
            f = {x: rng.randint(-9, 9) for x in product(range(q), repeat=m)}
            assert inverse_fourier(F, m, fourier(F, m, f)) == f
        subs = all_subspaces(4, F2)
        for V in subs:
            Vp = orthogonal_complement(V)
            assert orthogonal_complement(Vp) == V
            for U in subs:
                assert orthogonal_complement(intersect(V, U)) == subspace_sum(Vp, orthogonal_complement(U))


# ---------------------------------------------------------------- AC6

@pytest.mark.acceptance("AC6")
def test_ac6_isometry_iff_monomial():
    with Timer(60):
        groups = [trivial_group(F2, 2), general_linear(F2, 2)]
        for n in (1, 2):
            r = monomial_iff_isometry_check(A212, n, groups)
            assert r["holds"], r
            assert r["maps"] == 2 ** ((2 * n) ** 2)
            for res in r["groups"]:
                assert res["isometries"] == res["monomial"] > 0


# ---------------------------------------------------------------- AC7

def _omega_sums_agree(cert, omega):
    F = cert.alphabet.field
    for w in product(range(2), repeat=cert.m):
        a = sum(omega[(vec_mat(F, w, L.rows, 2),)] for L in cert.lam.maps)
        b = sum(omega[(vec_mat(F, w, M.rows, 2),)] for M in cert.mu.maps)
        if a != b:
            return False
    return True


@pytest.mark.acceptance("AC7")
def test_ac7_weights():
    rng = random.Random(7)
    pts = alphabet_points(A212)
    weights = [hamming_weight_fn(A212)]
    for _ in range(5):
        weights.append({a: Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for a in pts})
    with Timer(30):
        assert weight_symmetry_group(weights[0], A212).order == 6
        for omega in weights:
            cert, report = unextendable_for_weight(omega, A212)
            assert report["ok"]
            assert _omega_sums_agree(cert, omega)
            U = weight_symmetry_group(omega, A212)
            assert extend_search(cert.lam, cert.mu, U, A212) is None
            found, _ = brute_force_extension(cert.lam, cert.mu, closure(U, A212))
            assert found is None


# ---------------------------------------------------------------- AC8

def _tampers():
    def swap_with_lambda_1(d):
        d["mu"][0] = [list(r) for r in d["lambda"][0]]

    def swap_columns(d):
        d["mu"][-1], d["lambda"][-1] = d["lambda"][-1], d["mu"][-1]

    def change_entry(d):
        d["mu"][1][0][1] ^= 1

    def drop_coordinate(d):
        d["lambda"].pop()
        d["mu"].pop()

    return [swap_with_lambda_1, swap_columns, change_entry, drop_coordinate]


@pytest.mark.acceptance("AC8")
@pytest.mark.parametrize("tamper", _tampers(), ids=lambda f: f.__name__)
def test_ac8_tamper_detected(cert_212, tamper):
    data = cert_212.to_json()
    tamper(data)
    r = verify_certificate(Certificate.from_json(data))
    assert not r["ok"]
    assert r["checks"]["eq1"] == "fail" or r["checks"]["eq2_violated"] == "fail"


@pytest.mark.acceptance("AC8")
def test_ac8_round_trip(cert_212):
    again = Certificate.loads(cert_212.dumps())
    assert again.transcript == cert_212.transcript
    assert again.dumps() == cert_212.dumps()
    assert verify_certificate(again) == verify_certificate(cert_212)


# ---------------------------------------------------------------- AC9

@pytest.mark.acceptance("AC9")
def test_ac9_pseudo_injectivity_agreement():
    subgroups = all_subgroups(general_linear(F2, 2))
    assert sorted(G.order for G in subgroups) == [1, 2, 2, 2, 3, 6]
    for G in subgroups:
        r = g_pseudo_injective(A212, G)
        assert r.agree, (G.order, r.to_json())
