"""Codes over matrix-module alphabets with unextendable swc isometries.

Given a nonzero integer vector xi in the kernel of E', the dual function
eta-perp is supported on (m - ell)-dimensional subspaces V of W = GF(q)^m that
complement X-perp = span(e_1..e_ell).  Each such V with positive value c
contributes c coordinates ``lambda_i`` = projection of W = V + X-perp onto
X-perp, read in the coordinates of GF(q)^ell; negative values contribute the
coordinates ``mu_i`` the same way.  The code is C = lambda(W) and the isometry
is f = mu o lambda^{-1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from math import prod
from typing import Any

from .gf import FieldSpec
from .lattice import Subspace, gauss_binom, intersect, orthogonal_complement
from .linalg import MatrixFq, integer_kernel, inverse, kernel_fq, vec_mat
from .multiplicity import (MultiplicityFn, SectorSets, apply_Eprime, build_Eprime, build_sectors,
                           check_E_zero, eta_from_xi, eta_perp, kernel_xi)

CERT_VERSION = 1


class ConstructionInapplicable(ValueError):
    """The alphabet has ell <= k, i.e. a cyclic socle."""


class NoKernelFound(RuntimeError):
    """E' has trivial kernel for every m tried."""


@dataclass(frozen=True)
class AlphabetSpec:
    """A = M_{k x ell}(GF(q)) as a module over R = M_k(GF(q))."""

    field: FieldSpec
    k: int
    ell: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.ell < 1:
            raise ValueError("k and ell must be positive")

    def require_noncyclic(self) -> None:
        if self.ell <= self.k:
            raise ConstructionInapplicable(
                f"construction inapplicable: need ell > k, got ell={self.ell}, k={self.k}")

    @property
    def point_count(self) -> int:
        return self.field.q ** (self.k * self.ell)


def lower_bound_n(q: int, k: int) -> int:
    """prod_{i=1..k} (1 + q^i)."""
    return prod(1 + q**i for i in range(1, k + 1))


@dataclass(frozen=True)
class CodeMap:
    """Coordinate maps W -> A, each an m x ell matrix acting on the right."""

    field: FieldSpec
    m: int
    ell: int
    maps: tuple[MatrixFq, ...]

    def __post_init__(self) -> None:
        for M in self.maps:
            if (M.nrows, M.ncols) != (self.m, self.ell) or M.field != self.field:
                raise ValueError("coordinate map with the wrong shape or field")

    @property
    def n(self) -> int:
        return len(self.maps)

    def apply(self, w) -> tuple:
        """lambda(w) for a point w of W given as a tuple of k rows."""
        F = self.field
        return tuple(tuple(vec_mat(F, r, M.rows, self.ell) for r in w) for M in self.maps)

    def kernels(self) -> list[Subspace]:
        return [Subspace(self.field, self.m, kernel_fq(M).rows) for M in self.maps]

    def to_json(self) -> list:
        return [M.to_json() for M in self.maps]


def projection_along(V: Subspace, ell: int) -> MatrixFq:
    """W = V + span(e_1..e_ell) -> GF(q)^ell, killing V and fixing e_1..e_ell."""
    F, m = V.field, V.ambient
    if V.dim != m - ell:
        raise ValueError(f"complement must have dimension {m - ell}, got {V.dim}")
    frame = MatrixFq(F, m, m, V.basis + tuple(tuple(int(i == j) for j in range(m)) for i in range(ell)))
    try:
        inv = inverse(frame)
    except ValueError:
        raise ValueError("subspace does not complement span(e_1..e_ell)") from None
    return MatrixFq(F, m, ell, tuple(r[m - ell:] for r in inv.rows))


def build_lambda_mu(xi: MultiplicityFn, sectors: SectorSets, alphabet: AlphabetSpec) -> tuple[CodeMap, CodeMap]:
    if not len(xi):
        raise ValueError("xi must be nonzero")
    F, m, ell = alphabet.field, xi.ambient, alphabet.ell
    allowed = set(sectors.S_perp)
    lam, mu = [], []
    for V, c in eta_perp(eta_from_xi(xi)).items():
        if V not in allowed:
            raise ValueError("dual support outside S_perp")
        P = projection_along(V, ell)
        (lam if c > 0 else mu).extend([P] * abs(c))
    if len(lam) != len(mu):
        raise ValueError(f"unbalanced dual function: {len(lam)} positive vs {len(mu)} negative")
    return CodeMap(F, m, ell, tuple(lam)), CodeMap(F, m, ell, tuple(mu))


@dataclass
class Certificate:
    alphabet: AlphabetSpec
    m: int
    xi: MultiplicityFn
    X: Subspace
    lam: CodeMap
    mu: CodeMap
    kernels_lambda: list[Subspace]
    kernels_mu: list[Subspace]
    transcript: dict[str, Any] = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.lam.n

    def to_json(self) -> dict:
        F = self.alphabet.field
        return {
            "version": CERT_VERSION,
            "field": F.to_json(),
            "k": self.alphabet.k,
            "ell": self.alphabet.ell,
            "m": self.m,
            "n": self.n,
            "X": self.X.to_json(),
            "xi": self.xi.to_json(),
            "lambda": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "kernels_lambda": [K.to_json() for K in self.kernels_lambda],
            "kernels_mu": [K.to_json() for K in self.kernels_mu],
            "transcript": self.transcript,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        """Parse a certificate; raises ValueError/KeyError/TypeError when malformed."""
        if data.get("version") != CERT_VERSION:
            raise ValueError(f"unsupported certificate version {data.get('version')!r}")
        F = FieldSpec.from_json(data["field"])
        k, ell, m = int(data["k"]), int(data["ell"]), int(data["m"])
        alphabet = AlphabetSpec(F, k, ell)

        def maps(key: str) -> CodeMap:
            mats = tuple(MatrixFq.from_rows(F, rows, ell) for rows in data[key])
            return CodeMap(F, m, ell, mats)

        return cls(
            alphabet=alphabet,
            m=m,
            xi=MultiplicityFn.from_json(F, m, data["xi"]),
            X=Subspace.from_json(F, data["X"]),
            lam=maps("lambda"),
            mu=maps("mu"),
            kernels_lambda=[Subspace.from_json(F, K) for K in data["kernels_lambda"]],
            kernels_mu=[Subspace.from_json(F, K) for K in data["kernels_mu"]],
            transcript=dict(data.get("transcript", {})),
        )

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls.from_json(json.loads(text))


def lemma_bound_m(ell: int, q: int) -> int:
    """Least m with q^(ell (m - ell)) > sum_{i<ell} binom(m, i)_q."""
    m = ell
    while q ** (ell * (m - ell)) <= sum(gauss_binom(m, i, q) for i in range(ell)):
        m += 1
    return m


@dataclass
class MinMReport:
    minimal_m: int | None
    lemma_m: int
    scanned: list[dict]

    def to_json(self) -> dict:
        return {"minimal_m": self.minimal_m, "lemma_bound_m": self.lemma_m, "scanned": self.scanned}


def min_m_search(alphabet: AlphabetSpec, max_m: int) -> MinMReport:
    """Least m in [ell, max_m] at which E' has a nonzero integer kernel."""
    alphabet.require_noncyclic()
    F, k, ell = alphabet.field, alphabet.k, alphabet.ell
    scanned = []
    found = None
    for m in range(ell, max_m + 1):
        E = build_Eprime(m, ell, k, F)
        dim = integer_kernel(E).nrows
        scanned.append({"m": m, "rows": E.nrows, "cols": E.ncols, "kernel_dim": dim})
        if dim:
            found = m
            break
    return MinMReport(found, lemma_bound_m(ell, F.q), scanned)


def _pf(ok: bool) -> str:
    return "pass" if ok else "fail"


def _meet_all(spaces: list[Subspace]) -> Subspace:
    acc = spaces[0]
    for S in spaces[1:]:
        acc = intersect(acc, S)
    return acc


def construct_counterexample(alphabet: AlphabetSpec, m: int | None = None,
                             max_m: int | None = None) -> Certificate:
    """Build the code and isometry, recording the construction-side checks."""
    alphabet.require_noncyclic()
    F, k, ell = alphabet.field, alphabet.k, alphabet.ell
    if m is None:
        limit = lemma_bound_m(ell, F.q) if max_m is None else max_m
        m = min_m_search(alphabet, limit).minimal_m
        if m is None:
            raise NoKernelFound(f"E' has trivial kernel for every m <= {limit}")
    if m < ell:
        raise ValueError(f"need m >= ell, got m={m}")
    sectors = build_sectors(m, ell, F)
    xi = kernel_xi(m, ell, k, F, sectors)
    if xi is None:
        raise NoKernelFound(f"E' has trivial kernel at m={m}")
    lam, mu = build_lambda_mu(xi, sectors, alphabet)

    eta = eta_from_xi(xi)
    dual = eta_perp(eta)
    kl, km = lam.kernels(), mu.kernels()
    e_eta, _ = check_E_zero(eta, k)
    # The trivial-group isometry condition reduces to E(eta-perp)(w - psi^{-1}(a)) = 0 on all points.
    e_dual, _ = check_E_zero(dual, k)
    bound = lower_bound_n(F.q, k)
    Xp = orthogonal_complement(sectors.X)
    psi_ok = all(all(vec_mat(F, e, P.rows, ell) == e[:ell] for e in Xp.basis) for P in lam.maps + mu.maps)
    transcript = {
        "xi_nonzero": _pf(len(xi) > 0),
        "xi_in_kernel": _pf(not any(apply_Eprime(xi, sectors).values())),
        "E_eta_zero": _pf(e_eta),
        "eq1": _pf(e_dual),
        "dual_sum_zero": _pf(sum(v for _, v in dual.items()) == 0),
        "psi_on_X_perp": _pf(psi_ok),
        "kernels_match_support": _pf(all(K == V for K, V in zip(kl + km, _support_list(dual))) and len(kl) == len(km)),
        "kernels_distinct": _pf(not set(kl) & set(km)),
        "kernel_intersection_equal": _pf(_meet_all(kl) == _meet_all(km)),
        "lower_bound_n": {"bound": bound, "n": lam.n, "status": _pf(lam.n >= bound)},
        "brute_force": "not run",
    }
    return Certificate(alphabet, m, xi, sectors.X, lam, mu, kl, km, transcript)


def _support_list(dual: MultiplicityFn) -> list[Subspace]:
    pos = [V for V, c in dual.items() for _ in range(c) if c > 0]
    neg = [V for V, c in dual.items() for _ in range(-c) if c < 0]
    return pos + neg
