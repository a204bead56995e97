"""Multiplicity functions on the subspace lattice and the maps E and E'.

A multiplicity function assigns integers to finitely many subspaces; ``E``
turns it into the point function ``x -> sum_U eta(U) [x in U]``.  Points of a
module of dimension m over M_k(GF(q)) are k x m matrices, and such a point
lies in the submodule attached to U exactly when all of its rows lie in U.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Iterator, Sequence

from ._config import check_cap, point_cap
from .gf import FieldSpec
from .lattice import (Subspace, enumerate_subspaces, mobius, orthogonal_complement,
                      subspace_sum, subspaces_of)
from .linalg import MatrixInt, Row, integer_kernel


@dataclass
class MultiplicityFn:
    field: FieldSpec
    ambient: int
    support: dict[Subspace, int] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        for U in self.support:
            if U.ambient != self.ambient or U.field != self.field:
                raise ValueError("multiplicity support outside the ambient space")
        self.support = {U: v for U, v in sorted(self.support.items(), key=lambda kv: kv[0].sort_key()) if v}

    def __getitem__(self, U: Subspace) -> int:
        return self.support.get(U, 0)

    def __len__(self) -> int:
        return len(self.support)

    def items(self):
        return self.support.items()

    def positive_sum(self) -> int:
        return sum(v for v in self.support.values() if v > 0)

    def to_json(self) -> list[dict]:
        return [{"subspace": U.to_json(), "value": v} for U, v in self.support.items()]

    @classmethod
    def from_json(cls, field: FieldSpec, ambient: int, data: list[dict]) -> "MultiplicityFn":
        support: dict[Subspace, int] = {}
        for item in data:
            U = Subspace.from_json(field, item["subspace"])
            support[U] = support.get(U, 0) + int(item["value"])
        return cls(field, ambient, support)


@dataclass(frozen=True)
class SectorSets:
    X: Subspace
    S_eq: tuple[Subspace, ...]
    S_lt: tuple[Subspace, ...]
    S_perp: tuple[Subspace, ...]


def _as_rows(x: Sequence) -> tuple[Row, ...]:
    if x and isinstance(x[0], (tuple, list)):
        return tuple(tuple(r) for r in x)
    return (tuple(x),)


def eval_E(eta: MultiplicityFn, x: Sequence) -> int:
    """E(eta) at a point given as a vector or as a k x m matrix (list of rows)."""
    rows = _as_rows(x)
    if any(len(r) != eta.ambient for r in rows):
        raise ValueError("point does not live in the ambient space")
    return sum(v for U, v in eta.items() if all(r in U.points for r in rows))


def iter_points(field: FieldSpec, m: int, k: int = 1, cap: int | None = None) -> Iterator[tuple[Row, ...]]:
    """All k x m matrices over the field, as tuples of rows."""
    check_cap(field.q ** (k * m), point_cap() if cap is None else cap, "point enumeration")
    vectors = list(product(range(field.q), repeat=m))
    return product(vectors, repeat=k)


def check_E_zero(eta: MultiplicityFn, k: int = 1, cap: int | None = None) -> tuple[bool, tuple[Row, ...] | None]:
    """Whether E(eta) vanishes on every k x m point; else the first failing point."""
    members = [(U.points, v) for U, v in eta.items()]
    for x in iter_points(eta.field, eta.ambient, k, cap):
        total = 0
        for pts, v in members:
            if all(r in pts for r in x):
                total += v
        if total:
            return False, x
    return True, None


def eta_row(V: Subspace) -> MultiplicityFn:
    """The function U -> mobius(U, V)."""
    support = {}
    for d in range(V.dim + 1):
        for U in subspaces_of(V, d):
            support[U] = mobius(U, V)
    return MultiplicityFn(V.field, V.ambient, support)


def avoids(V: Subspace, X: Subspace) -> bool:
    return subspace_sum(V, X).dim == V.dim + X.dim


def build_sectors(m: int, ell: int, field: FieldSpec) -> SectorSets:
    """X = span(e_{ell+1..m}) and the subspaces meeting X (or X-perp) trivially."""
    if not 1 <= ell <= m:
        raise ValueError(f"need 1 <= ell <= m, got ell={ell}, m={m}")
    X = Subspace.span(field, m, [[int(i == j) for j in range(m)] for i in range(ell, m)])
    Xp = orthogonal_complement(X)
    S_eq = tuple(V for V in enumerate_subspaces(m, ell, field) if avoids(V, X))
    S_lt = tuple(V for d in range(ell) for V in enumerate_subspaces(m, d, field) if avoids(V, X))
    S_perp = tuple(V for V in enumerate_subspaces(m, m - ell, field) if avoids(V, Xp))
    return SectorSets(X, S_eq, S_lt, S_perp)


def _check_params(m: int, ell: int, k: int) -> None:
    if not (m >= ell > k >= 1):
        raise ValueError(f"need m >= ell > k >= 1, got m={m}, ell={ell}, k={k}")


def build_Eprime(m: int, ell: int, k: int, field: FieldSpec,
                 sectors: SectorSets | None = None) -> MatrixInt:
    """Matrix of E' : rows indexed by S_eq, columns by S_lt, entry mobius(U, V)."""
    _check_params(m, ell, k)
    sectors = sectors or build_sectors(m, ell, field)
    col = {U: j for j, U in enumerate(sectors.S_lt)}
    rows = []
    for V in sectors.S_eq:
        row = [0] * len(col)
        for d in range(ell):
            for U in subspaces_of(V, d):
                row[col[U]] = mobius(U, V)
        rows.append(row)
    return MatrixInt.from_rows(rows, len(col))


def apply_Eprime(xi: MultiplicityFn, sectors: SectorSets) -> dict[Subspace, int]:
    """E'(xi) as a map on S_lt, computed straight from the Moebius function."""
    out = {}
    for U in sectors.S_lt:
        out[U] = sum(v * mobius(U, V) for V, v in xi.items())
    return out


def kernel_basis(m: int, ell: int, k: int, field: FieldSpec,
                 sectors: SectorSets | None = None) -> list[MultiplicityFn]:
    """Canonical integer basis of Ker E', each vector as a function on S_eq."""
    sectors = sectors or build_sectors(m, ell, field)
    K = integer_kernel(build_Eprime(m, ell, k, field, sectors))
    return [MultiplicityFn(field, m, {V: c for V, c in zip(sectors.S_eq, row) if c}) for row in K.rows]


def kernel_xi(m: int, ell: int, k: int, field: FieldSpec,
              sectors: SectorSets | None = None) -> MultiplicityFn | None:
    """Kernel basis vector with the least positive-part sum (first on ties)."""
    basis = kernel_basis(m, ell, k, field, sectors)
    if not basis:
        return None
    return min(basis, key=MultiplicityFn.positive_sum)


def eta_from_xi(xi: MultiplicityFn) -> MultiplicityFn:
    """Extend xi on S_eq by zero to the whole lattice."""
    return MultiplicityFn(xi.field, xi.ambient, dict(xi.support))


def eta_perp(eta: MultiplicityFn) -> MultiplicityFn:
    """V -> eta(V-perp)."""
    return MultiplicityFn(eta.field, eta.ambient, {orthogonal_complement(V): v for V, v in eta.items()})


def from_pairs(field: FieldSpec, ambient: int, pairs: Iterable[tuple[Subspace, int]]) -> MultiplicityFn:
    support: dict[Subspace, int] = {}
    for U, v in pairs:
        support[U] = support.get(U, 0) + v
    return MultiplicityFn(field, ambient, support)
