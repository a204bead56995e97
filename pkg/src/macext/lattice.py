"""The lattice of subspaces of GF(q)^m.

Submodules of an m-dimensional module over the matrix ring M_k(GF(q)) form a
poset isomorphic to this lattice, so it stands in for the submodule lattice
of every matrix-module alphabet; ``k`` only affects cardinalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterator, Sequence

from ._config import check_cap, subspace_cap
from .gf import FieldSpec
from .linalg import Row, _null_basis, row_basis, vec_mat


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^ambient held by its canonical RREF basis."""

    field: FieldSpec
    ambient: int
    basis: tuple[Row, ...]

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, vectors: Sequence[Sequence[int]]) -> "Subspace":
        return cls(field, ambient, row_basis(field, vectors, ambient))

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, tuple(tuple(int(i == j) for j in range(ambient)) for i in range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sort_key(self) -> tuple:
        return (self.dim, tuple(x for r in self.basis for x in r))

    def __lt__(self, other: "Subspace") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={[list(r) for r in self.basis]})"

    @cached_property
    def points(self) -> frozenset[Row]:
        """All vectors of the subspace."""
        F = self.field
        return frozenset(vec_mat(F, c, self.basis, self.ambient)
                         for c in product(range(F.q), repeat=self.dim))

    @cached_property
    def checks(self) -> tuple[Row, ...]:
        """Basis of the orthogonal complement, used as parity checks."""
        return tuple(_null_basis(self.field, self.basis, self.ambient)) if self.basis else \
            Subspace.full(self.field, self.ambient).basis

    def __contains__(self, v: Sequence[int]) -> bool:
        F = self.field
        add, mul = F._add, F._mul
        for h in self.checks:
            s = 0
            for a, b in zip(v, h):
                if a and b:
                    s = add[s][mul[a][b]]
            if s:
                return False
        return True

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "dim": self.dim, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, field: FieldSpec, data: dict) -> "Subspace":
        sub = cls.span(field, int(data["ambient"]), data["basis"])
        if sub.basis != tuple(tuple(r) for r in data["basis"]) or sub.dim != int(data["dim"]):
            raise ValueError("subspace basis is not in canonical form")
        return sub


def _check_same(U: Subspace, V: Subspace) -> None:
    if U.ambient != V.ambient or U.field != V.field:
        raise ValueError("subspaces live in different ambient spaces")


def contains(V: Subspace, U: Subspace) -> bool:
    """True when U is a subspace of V."""
    _check_same(U, V)
    return all(u in V for u in U.basis)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    return Subspace.span(U.field, U.ambient, U.basis + V.basis)


def orthogonal_complement(V: Subspace) -> Subspace:
    """{w : w . v = 0 for all v in V} under the standard dot product."""
    return Subspace(V.field, V.ambient, V.checks)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    return orthogonal_complement(subspace_sum(orthogonal_complement(U), orthogonal_complement(V)))


def gauss_binom(a: int, b: int, q: int) -> int:
    """Number of b-dimensional subspaces of GF(q)^a."""
    if b < 0 or b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def mobius(U: Subspace, V: Subspace) -> int:
    """Moebius function of the subspace lattice; 0 unless U is inside V."""
    if not contains(V, U):
        return 0
    d = V.dim - U.dim
    return (-1) ** d * U.field.q ** comb(d, 2)


def count_complement_avoiding(a: int, b: int, c: int, q: int) -> int:
    """Number of c-dim subspaces of GF(q)^a meeting a fixed b-dim subspace in 0."""
    return q ** (b * c) * gauss_binom(a - b, c, q)


def _rref_patterns(F: FieldSpec, m: int, d: int) -> Iterator[tuple[Row, ...]]:
    q = F.q
    for pivots in combinations(range(m), d):
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, m) if j not in pivots]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * m for _ in range(d)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def _enumerate_cached(F: FieldSpec, m: int, d: int) -> tuple[Subspace, ...]:
    subs = [Subspace(F, m, basis) for basis in _rref_patterns(F, m, d)]
    subs.sort(key=Subspace.sort_key)
    return tuple(subs)


def enumerate_subspaces(m: int, d: int, field: FieldSpec, cap: int | None = None) -> list[Subspace]:
    """All d-dimensional subspaces of GF(q)^m, lexicographic in canonical basis."""
    if not 0 <= d <= m:
        raise ValueError(f"need 0 <= d <= m, got d={d}, m={m}")
    check_cap(gauss_binom(m, d, field.q), subspace_cap() if cap is None else cap, "subspace enumeration")
    return list(_enumerate_cached(field, m, d))


def all_subspaces(m: int, field: FieldSpec, cap: int | None = None) -> list[Subspace]:
    out: list[Subspace] = []
    for d in range(m + 1):
        out.extend(enumerate_subspaces(m, d, field, cap))
    return out


def subspaces_of(V: Subspace, d: int) -> list[Subspace]:
    """All d-dimensional subspaces of V, in canonical order."""
    F = V.field
    out = {Subspace.span(F, V.ambient, [vec_mat(F, c, V.basis, V.ambient) for c in coeffs.basis])
           for coeffs in enumerate_subspaces(V.dim, d, F)}
    return sorted(out, key=Subspace.sort_key)


def find_min_x(t: int, q: int) -> int:
    """Least x > t with sum_{i<t} binom(x, i)_q < q^(t (x - t))."""
    if t < 1 or q < 2:
        raise ValueError("need t >= 1 and q >= 2")
    x = t + 1
    while sum(gauss_binom(x, i, q) for i in range(t)) >= q ** (t * (x - t)):
        x += 1
    return x


def lattice_stats(m: int, field: FieldSpec) -> dict:
    """Subspace counts per dimension, enumerated and by formula."""
    rows = []
    for d in range(m + 1):
        rows.append({"dim": d, "enumerated": len(enumerate_subspaces(m, d, field)),
                     "gauss_binom": gauss_binom(m, d, field.q)})
    return {"q": field.q, "m": m, "per_dim": rows, "total": sum(r["enumerated"] for r in rows)}
