"""Characters of GF(q)^m with exact values in Z[zeta_p].

The character indexed by y is ``x -> zeta_p ** Tr(x . y)``.  This module is a
cross-check of the duality layer: the Fourier transform of the indicator of
V must be |V| times the indicator of the dot-product complement of V.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Sequence

from ._config import check_cap, point_cap
from .gf import FieldSpec
from .lattice import Subspace, all_subspaces, orthogonal_complement
from .linalg import Row


@dataclass(frozen=True)
class CyclotomicInt:
    """sum_i coeffs[i] zeta_p^i over the power basis 1, zeta, ..., zeta^(p-2)."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"need {self.p - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def _reduce(cls, p: int, full: Sequence[int]) -> "CyclotomicInt":
        # full has p slots for zeta^0..zeta^(p-1); zeta^(p-1) = -(1 + ... + zeta^(p-2)).
        top = full[p - 1]
        return cls(p, tuple(c - top for c in full[: p - 1]))

    @classmethod
    def zeta_power(cls, p: int, j: int) -> "CyclotomicInt":
        full = [0] * p
        full[j % p] = 1
        return cls._reduce(p, full)

    @classmethod
    def integer(cls, p: int, n: int) -> "CyclotomicInt":
        return cls(p, (n,) + (0,) * (p - 2))

    def _same(self, other: "CyclotomicInt") -> None:
        if self.p != other.p:
            raise ValueError(f"cyclotomic rings differ: p={self.p} vs p={other.p}")

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._same(other)
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return self + (-other)

    def __mul__(self, other: "CyclotomicInt | int") -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.p, tuple(a * other for a in self.coeffs))
        self._same(other)
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    full[(i + j) % p] += a * b
        return CyclotomicInt._reduce(p, full)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational_value(self) -> int | None:
        """The integer this element equals, or None when it is not rational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]


def cyc_add(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a + b


def cyc_mul(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    return a * b


def cyc_eq(a: CyclotomicInt, b: CyclotomicInt) -> bool:
    a._same(b)
    return a.coeffs == b.coeffs


def pairing(F: FieldSpec, x: Sequence[int], y: Sequence[int]) -> int:
    """Tr(x . y), an element of GF(p)."""
    s = 0
    for a, b in zip(x, y):
        s = F.add(s, F.mul(a, b))
    return F.trace(s)


def char_eval(F: FieldSpec, y: Sequence[int], x: Sequence[int]) -> CyclotomicInt:
    if len(x) != len(y):
        raise ValueError("character index and point have different lengths")
    return CyclotomicInt.zeta_power(F.p, pairing(F, x, y))


def _points(F: FieldSpec, m: int, cap: int | None) -> list[Row]:
    check_cap(F.q**m, point_cap() if cap is None else cap, "character enumeration")
    return list(product(range(F.q), repeat=m))


def check_nondegenerate(F: FieldSpec, m: int) -> bool:
    """Only y = 0 pairs trivially with every point."""
    pts = _points(F, m, None)
    return all(any(pairing(F, x, y) for x in pts) for y in pts if any(y))


def fourier(F: FieldSpec, m: int, f: Mapping[Row, int] | Callable[[Row], int],
            cap: int | None = None) -> dict[Row, CyclotomicInt]:
    """y -> sum_x f(x) chi_y(x) over all of GF(q)^m."""
    pts = _points(F, m, cap)
    get = f if callable(f) else (lambda x: f.get(x, 0))
    values = [(x, get(x)) for x in pts]
    values = [(x, v) for x, v in values if v]
    p = F.p
    out = {}
    for y in pts:
        full = [0] * p
        for x, v in values:
            full[pairing(F, x, y)] += v
        out[y] = CyclotomicInt._reduce(p, full)
    return out


def inverse_fourier(F: FieldSpec, m: int, g: Mapping[Row, CyclotomicInt],
                    cap: int | None = None) -> dict[Row, int]:
    """x -> (1/|W|) sum_y g(y) chi_y(-x); raises unless every value is an exact integer."""
    pts = _points(F, m, cap)
    size = F.q**m
    p = F.p
    out = {}
    for x in pts:
        minus_x = tuple(F.neg(a) for a in x)
        acc = CyclotomicInt.integer(p, 0)
        for y in pts:
            gy = g.get(y)
            if gy is not None and not gy.is_zero():
                acc = acc + gy * char_eval(F, y, minus_x)
        value = acc.rational_value()
        if value is None or value % size:
            raise ArithmeticError(f"inverse transform at {x} is not an integer multiple of {size}")
        out[x] = value // size
    return out


def check_indicator_transform(V: Subspace) -> bool:
    """F(1_V) == |V| * 1_{V-perp} pointwise."""
    F, m = V.field, V.ambient
    transform = fourier(F, m, {x: 1 for x in V.points})
    Vp = orthogonal_complement(V)
    size = F.q**V.dim
    expected_in = CyclotomicInt.integer(F.p, size)
    zero = CyclotomicInt.integer(F.p, 0)
    return all(cyc_eq(val, expected_in if y in Vp.points else zero) for y, val in transform.items())


def duality_check(m: int, field: FieldSpec) -> dict:
    """Run the indicator-transform identity on every subspace of GF(q)^m."""
    subs = all_subspaces(m, field)
    failures = [S.to_json() for S in subs if not check_indicator_transform(S)]
    return {"q": field.q, "m": m, "subspaces": len(subs), "passed": len(subs) - len(failures),
            "failures": failures}
