"""Independent re-verification of a certificate.

Nothing here reuses the construction's shortcuts: the isometry property is
recounted coordinate by coordinate over every point of W, kernels are
recomputed from the stored matrices, and unextendability is read off the
kernel multisets (with an optional exhaustive monomial search on top).
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Any

from ._config import BudgetExceeded
from .construction import Certificate, CodeMap, lower_bound_n
from .isometry import (AutGroup, brute_force_extension, closure, general_linear, orbits,
                       trivial_group)
from .lattice import Subspace, intersect, mobius, subspaces_of
from .linalg import kernel_fq, vec_mat
from .multiplicity import eta_perp


class MalformedCertificate(ValueError):
    pass


def _pf(ok: bool) -> str:
    return "pass" if ok else "fail"


def _images(code: CodeMap) -> list[dict]:
    F = code.field
    vectors = list(product(range(F.q), repeat=code.m))
    return [{v: vec_mat(F, v, M.rows, code.ell) for v in vectors} for M in code.maps]


def _eq1_trivial(cert: Certificate) -> tuple[bool, Any]:
    """Multisets {lambda_i(w)} and {mu_i(w)} agree for every w in W."""
    if cert.lam.n != cert.mu.n:
        return False, "coordinate count mismatch"
    tl, tm = _images(cert.lam), _images(cert.mu)
    vectors = list(tl[0]) if tl else []
    for w in product(vectors, repeat=cert.alphabet.k):
        a = Counter(tuple(t[r] for r in w) for t in tl)
        b = Counter(tuple(t[r] for r in w) for t in tm)
        if a != b:
            return False, [list(r) for r in w]
    return True, None


def _swc_for_group(cert: Certificate, G: AutGroup) -> bool:
    part = orbits(G, cert.alphabet)
    if cert.lam.n != cert.mu.n:
        return False
    tl, tm = _images(cert.lam), _images(cert.mu)
    vectors = list(tl[0]) if tl else []
    for w in product(vectors, repeat=cert.alphabet.k):
        a = Counter(part.orbit_of[tuple(t[r] for r in w)] for t in tl)
        b = Counter(part.orbit_of[tuple(t[r] for r in w)] for t in tm)
        if a != b:
            return False
    return True


def _xi_in_kernel(cert: Certificate) -> bool:
    """Every U meeting X trivially below dimension ell sees a zero Moebius sum."""
    ell, X = cert.alphabet.ell, cert.X
    for V in cert.xi.support:
        if V.dim != ell or intersect(V, X).dim != 0:
            return False
    lower = {U for V in cert.xi.support for d in range(ell) for U in subspaces_of(V, d)}
    return all(sum(c * mobius(U, V) for V, c in cert.xi.items()) == 0 for U in lower)


def resolve_group(cert: Certificate, group: str | AutGroup | None) -> AutGroup | None:
    F, ell = cert.alphabet.field, cert.alphabet.ell
    if group is None or isinstance(group, AutGroup):
        return group
    if group == "trivial":
        return trivial_group(F, ell)
    if group == "full":
        return general_linear(F, ell)
    raise ValueError(f"unknown group {group!r}")


def verify_certificate(cert: Certificate, group: str | AutGroup | None = None,
                       brute_force: bool = False, budget: int = 10**7) -> dict:
    """Recheck every claim; returns {"checks": ..., "details": ..., "ok": bool}.

    Raises BudgetExceeded when ``brute_force`` is requested over budget.
    """
    A, F = cert.alphabet, cert.alphabet.field
    if (cert.lam.m, cert.mu.m) != (cert.m, cert.m) or cert.lam.ell != A.ell or cert.mu.ell != A.ell:
        raise MalformedCertificate("coordinate maps do not match the stated m and ell")
    checks: dict[str, str] = {}
    details: dict[str, Any] = {"q": F.q, "k": A.k, "ell": A.ell, "m": cert.m,
                               "n_lambda": cert.lam.n, "n_mu": cert.mu.n}

    eq1, where = _eq1_trivial(cert)
    checks["eq1"] = _pf(eq1)
    if where is not None:
        details["eq1_first_failure"] = where

    kl = [Subspace(F, cert.m, kernel_fq(M).rows) for M in cert.lam.maps]
    km = [Subspace(F, cert.m, kernel_fq(M).rows) for M in cert.mu.maps]
    checks["stored_kernels"] = _pf(kl == cert.kernels_lambda and km == cert.kernels_mu)
    checks["kernels_distinct"] = _pf(not set(kl) & set(km))
    # Matching at the zero orbit needs Ker lambda_i = Ker mu_pi(i) for some pi.
    checks["eq2_violated"] = _pf(Counter(kl) != Counter(km))
    checks["kernel_intersection_equal"] = _pf(
        bool(kl) and bool(km) and _meet(kl) == _meet(km))

    checks["xi_in_kernel"] = _pf(len(cert.xi) > 0 and _xi_in_kernel(cert))
    dual = eta_perp(cert.xi)
    pos = Counter({V: c for V, c in dual.items() if c > 0})
    neg = Counter({V: -c for V, c in dual.items() if c < 0})
    checks["kernels_match_xi"] = _pf(Counter(kl) == pos and Counter(km) == neg)

    # Zero-column test on the subcode lambda(Ker lambda_1).
    if kl:
        K1 = kl[0]
        f_has_zero_col = any(all(not any(vec_mat(F, v, M.rows, A.ell)) for v in K1.basis)
                             for M in cert.mu.maps)
        checks["zero_column"] = _pf(not f_has_zero_col)
    else:
        checks["zero_column"] = _pf(False)

    bound = lower_bound_n(F.q, A.k)
    checks["lower_bound_n"] = _pf(cert.lam.n >= bound)
    details["lower_bound_n"] = {"bound": bound, "n": cert.lam.n}

    G = resolve_group(cert, group)
    if G is not None:
        checks["swc_group"] = _pf(_swc_for_group(cert, G))
        details["group_order"] = G.order

    if brute_force:
        Gbar = closure(G, A) if G is not None else general_linear(F, A.ell)
        found, tried = brute_force_extension(cert.lam, cert.mu, Gbar, budget)
        checks["brute_force"] = _pf(found is None)
        details["brute_force"] = {"result": "no extension found" if found is None else "extension found",
                                  "candidates": tried, "group_order": Gbar.order}

    return {"checks": checks, "details": details, "ok": all(v == "pass" for v in checks.values())}


def _meet(spaces: list[Subspace]) -> Subspace:
    acc = spaces[0]
    for S in spaces[1:]:
        acc = intersect(acc, S)
    return acc


__all__ = ["verify_certificate", "MalformedCertificate", "BudgetExceeded", "resolve_group"]
