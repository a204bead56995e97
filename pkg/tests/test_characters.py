import cmath
import random
from itertools import product

import pytest

from macext.characters import (CyclotomicInt, char_eval, check_indicator_transform,
                               check_nondegenerate, duality_check, fourier, inverse_fourier,
                               pairing)
from macext.gf import field_for_q
from macext.lattice import all_subspaces


def _numeric(c: CyclotomicInt) -> complex:
    z = cmath.exp(2j * cmath.pi / c.p)
    return sum(a * z**i for i, a in enumerate(c.coeffs))


def test_cyclotomic_arithmetic_p3():
    z = CyclotomicInt.zeta_power(3, 1)
    one = CyclotomicInt.integer(3, 1)
    # 1 + zeta + zeta^2 = 0
    assert (one + z + z * z).is_zero()
    assert (z * z * z) == one
    assert (z - z).is_zero()
    assert CyclotomicInt.integer(3, 5).rational_value() == 5
    assert z.rational_value() is None
    assert cmath.isclose(_numeric(z * z + z), -1)


def test_zeta_p2_is_minus_one():
    assert CyclotomicInt.zeta_power(2, 1) == CyclotomicInt.integer(2, -1)


def test_char_eval_examples():
    F2, F3 = field_for_q(2), field_for_q(3)
    assert char_eval(F2, (1, 1), (1, 0)).rational_value() == -1
    assert char_eval(F2, (1, 1), (1, 1)).rational_value() == 1
    assert char_eval(F3, (1,), (1,)) == CyclotomicInt.zeta_power(3, 1)
    with pytest.raises(ValueError):
        char_eval(F3, (1,), (1, 0))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_pairing_nondegenerate(q):
    assert check_nondegenerate(field_for_q(q), 2 if q > 4 else 3)


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 1)])
def test_character_orthogonality(q, m):
    F = field_for_q(q)
    pts = list(product(range(q), repeat=m))
    for y in pts:
        for z in pts[:5]:
            total = CyclotomicInt.integer(F.p, 0)
            for x in pts:
                minus = tuple(F.neg(a) for a in z)
                total = total + char_eval(F, y, x) * char_eval(F, minus, x)
            expected = q**m if y == z else 0
            assert total.rational_value() == expected


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (4, 2)])
def test_inverse_transform_random(q, m):
    F = field_for_q(q)
    rng = random.Random(q * 10 + m)
    pts = list(product(range(q), repeat=m))
    for _ in range(5):
        f = {x: rng.randint(-4, 4) for x in pts}
        assert inverse_fourier(F, m, fourier(F, m, f)) == f


def test_inverse_transform_rejects_non_integral():
    F = field_for_q(2)
    g = {(0,): CyclotomicInt.integer(2, 1)}
    with pytest.raises(ArithmeticError):
        inverse_fourier(F, 1, g)


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (4, 2)])
def test_indicator_transform_all_subspaces(q, m):
    F = field_for_q(q)
    assert all(check_indicator_transform(V) for V in all_subspaces(m, F))


def test_duality_check_report():
    r = duality_check(3, field_for_q(2))
    assert r["subspaces"] == 16 and r["passed"] == 16 and r["failures"] == []


def test_pairing_is_trace_of_dot():
    F = field_for_q(4)
    for x in product(range(4), repeat=2):
        assert pairing(F, x, (1, 0)) == F.trace(x[0])
