"""Exact arithmetic in Q(sqrt2, sqrt3, sqrt5)."""
import math
import random
from fractions import Fraction

import pytest

from garside_wb.diagram import INFINITY
from garside_wb.exact import BASIS, ExactScalar, FieldError


def rand_scalar(rng, spread=6):
    return ExactScalar(
        tuple(
            Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
            for _ in BASIS
        )
    )


class TestConstructors:
    def test_two_cos_values(self):
        for m, value in [(2, 0.0), (3, 1.0), (4, math.sqrt(2)),
                         (5, 2 * math.cos(math.pi / 5)), (6, math.sqrt(3))]:
            assert float(ExactScalar.two_cos(m)) == pytest.approx(value)
        assert ExactScalar.two_cos(INFINITY) == 2

    def test_unsupported_label(self):
        with pytest.raises(FieldError, match="field not supported"):
            ExactScalar.two_cos(7)

    def test_golden_ratio_identity(self):
        phi = ExactScalar.two_cos(5)
        assert phi * phi == phi + 1

    def test_sqrt_outside_basis(self):
        with pytest.raises(FieldError):
            ExactScalar.sqrt_of(7)

    def test_immutability(self):
        x = ExactScalar(1)
        with pytest.raises(AttributeError):
            x.coords = ()


class TestFieldAxioms:
    def test_random_identities(self):
        rng = random.Random(5)
        for _ in range(50):
            a, b, c = (rand_scalar(rng) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a
            assert a * b == b * a
            assert a - a == 0

    def test_inverse_round_trip(self):
        rng = random.Random(6)
        for _ in range(30):
            a = rand_scalar(rng)
            if a.is_zero():
                continue
            assert a * a.inverse() == 1
            assert (1 / a) * a == 1

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            ExactScalar(0).inverse()


class TestSign:
    def test_matches_float_on_random_values(self):
        rng = random.Random(9)
        for _ in range(100):
            a = rand_scalar(rng)
            approx = float(a)
            if abs(approx) > 1e-6:
                assert a.sign() == (1 if approx > 0 else -1)
            assert (-a).sign() == -a.sign()

    def test_tiny_differences(self):
        # 1393/985 is a continued-fraction convergent of sqrt(2) from below,
        # off by about 5e-7; the sign must still come out exact
        approx = ExactScalar(Fraction(1393, 985))
        assert (ExactScalar.sqrt_of(2) - approx).sign() == 1
        assert (approx - ExactScalar.sqrt_of(2)).sign() == -1
        # sqrt2 * sqrt3 == sqrt6 exactly
        prod = ExactScalar.sqrt_of(2) * ExactScalar.sqrt_of(3)
        assert (prod - ExactScalar.sqrt_of(6)).sign() == 0

    def test_comparisons(self):
        assert ExactScalar.sqrt_of(2) < ExactScalar.sqrt_of(3)
        assert ExactScalar.sqrt_of(2) + ExactScalar.sqrt_of(3) > 3
        assert ExactScalar.sqrt_of(2) + ExactScalar.sqrt_of(3) < ExactScalar(
            Fraction(315, 100)
        )
