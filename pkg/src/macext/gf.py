"""Arithmetic in small finite fields GF(p^e).

An element is a plain ``int`` in ``range(q)`` read as the radix-p digits of a
polynomial over GF(p): ``value = c_0 + c_1 p + ... + c_{e-1} p^{e-1}``
represents ``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` modulo the field's monic
modulus.  All operations go through precomputed tables, which is cheap for
the desk-scale fields this package targets (q <= 16 by default).

Built-in moduli (coefficients c_0..c_e, lowest degree first)::

    q=2,3,5,7,11,13   x                 [0, 1]
    q=4               x^2 + x + 1       [1, 1, 1]
    q=8               x^3 + x + 1       [1, 1, 0, 1]
    q=9               x^2 + 1           [1, 0, 1]
    q=16              x^4 + x + 1       [1, 1, 0, 0, 1]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

from ._config import check_cap, field_cap

BUILTIN_MODULI: dict[int, tuple[int, int, tuple[int, ...]]] = {
    2: (2, 1, (0, 1)),
    3: (3, 1, (0, 1)),
    4: (2, 2, (1, 1, 1)),
    5: (5, 1, (0, 1)),
    7: (7, 1, (0, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (1, 0, 1)),
    11: (11, 1, (0, 1)),
    13: (13, 1, (0, 1)),
    16: (2, 4, (1, 1, 0, 0, 1)),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod(a: list[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over GF(p)."""
    a = [c % p for c in a]
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return a[:db] if db > 0 else []


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides modulus."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(list(modulus), list(low) + [1], p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^e) with a fixed monic irreducible modulus."""

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return field_make(int(data["p"]), int(data["e"]), [int(c) for c in data["modulus"]])

    # -- encoding -------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, coeffs: Sequence[int]) -> int:
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + c % self.p
        return value

    # -- tables ---------------------------------------------------------
    @cached_property
    def _add(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for a in range(self.q):
            da = self.digits(a)
            rows.append(tuple(
                self.from_digits([(x + y) % self.p for x, y in zip(da, self.digits(b))])
                for b in range(self.q)
            ))
        return tuple(rows)

    @cached_property
    def _mul(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for a in range(self.q):
            da = self.digits(a)
            row = []
            for b in range(self.q):
                db = self.digits(b)
                prod = [0] * (2 * self.e - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] += x * y
                row.append(self.from_digits(_poly_mod(prod, self.modulus, self.p)))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def _neg(self) -> tuple[int, ...]:
        return tuple(self.from_digits([-c for c in self.digits(a)]) for a in range(self.q))

    @cached_property
    def _inv(self) -> tuple[int, ...]:
        inv = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self._mul[a][b] == 1:
                    inv[a] = b
                    break
        return tuple(inv)

    @cached_property
    def _trace(self) -> tuple[int, ...]:
        out = []
        for a in range(self.q):
            total, power = 0, a
            for _ in range(self.e):
                total = self._add[total][power]
                power = self.pow(power, self.p)
            out.append(total)
        return tuple(out)

    # -- arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        result = 1
        for _ in range(n):
            result = self._mul[result][a]
        return result

    def trace(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(e-1)); the result lies in GF(p)."""
        return self._trace[a]

    def elements(self) -> range:
        return range(self.q)


def field_make(p: int, e: int = 1, modulus: Sequence[int] | None = None,
               cap: int | None = None) -> FieldSpec:
    """Build GF(p^e), taking the modulus from the built-in table when omitted."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if e < 1:
        raise ValueError(f"e={e} must be positive")
    q = p**e
    check_cap(q, field_cap() if cap is None else cap, "field size")
    if modulus is None:
        if q not in BUILTIN_MODULI:
            raise ValueError(f"no built-in modulus for q={q}; pass one explicitly")
        modulus = BUILTIN_MODULI[q][2]
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != e + 1:
        raise ValueError(f"modulus must have degree e={e}, got {len(modulus) - 1}")
    if not is_irreducible(modulus, p):
        raise ValueError(f"modulus {list(modulus)} is not monic irreducible over GF({p})")
    return FieldSpec(p, e, modulus)


def field_for_q(q: int, cap: int | None = None) -> FieldSpec:
    """GF(q) with the built-in modulus; q must be a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise ValueError(f"q={q} is not a prime power")
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"q={q} is not a prime power")
    return field_make(p, e, cap=cap)
