"""Exact coefficient field: canonical form, arithmetic, evaluation."""

import random
from fractions import Fraction

import pytest

from qheis.errors import EvaluationPole, InvalidParameter
from qheis.qfield import ONE, ZERO, LaurentQ, QScalar, qpow


def conv(a, b):
    """Independent polynomial multiplication oracle over Fractions."""
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += Fraction(x) * Fraction(y)
    return out


def test_qpow_identity_cases():
    assert qpow(0) == ONE
    assert qpow(0).is_one()
    s = qpow(-3)
    assert s.as_laurent().terms == {-3: Fraction(1)}
    assert qpow(2) * qpow(-2) == ONE


def test_add_trivial():
    assert QScalar(1) + QScalar(-1) == ZERO
    assert qpow(1) + qpow(1) == QScalar.from_laurent({1: 2})


def test_add_cross_multiply_oracle():
    # 1/(1-q) + 1/(1+q) == 2/(1-q^2), checked by clearing denominators
    x = QScalar.from_num_den((1,), (1, -1))
    y = QScalar.from_num_den((1,), (1, 1))
    s = x + y
    expected = QScalar.from_num_den((2,), tuple(int(c) for c in conv((1, -1), (1, 1))))
    assert s == expected
    # and the hand cross-multiplication: (1+q) + (1-q) over (1-q)(1+q)
    assert s == QScalar.from_num_den((2,), (1, 0, -1))


def test_mul():
    assert qpow(2) * qpow(-2) == ONE
    omq2 = QScalar.from_num_den((1, 0, -1), (1,))
    assert omq2 * omq2.inv() == ONE
    prod = QScalar.from_num_den((1, -1), (1,)) * QScalar.from_num_den((1, 1), (1,))
    assert prod == QScalar.from_num_den(tuple(int(c) for c in conv((1, -1), (1, 1))), (1,))


def test_inv():
    assert ONE.inv() == ONE
    assert qpow(5).inv() == qpow(-5)
    m = 1
    s = ONE - qpow(2 * m * m)
    assert s * s.inv() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


def test_eval():
    assert qpow(3).evaluate(2) == 8
    inv = (ONE - qpow(2)).inv()
    assert inv.evaluate(2) == Fraction(-1, 3)
    with pytest.raises(InvalidParameter):
        inv.evaluate(1)
    with pytest.raises(InvalidParameter):
        inv.evaluate(0)
    with pytest.raises(EvaluationPole):
        (ONE / (QScalar(2) - qpow(1))).evaluate(2)


def test_eval_is_ring_homomorphism():
    rng = random.Random(11)
    q0 = Fraction(3, 2)
    for _ in range(200):
        x = _random_scalar(rng)
        y = _random_scalar(rng)
        try:
            vx, vy, vxy = x.evaluate(q0), y.evaluate(q0), (x * y).evaluate(q0)
            vsum = (x + y).evaluate(q0)
        except EvaluationPole:
            continue
        assert vxy == vx * vy
        assert vsum == vx + vy


def _random_scalar(rng, allow_den=True):
    def poly():
        return tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 4)))

    num = poly()
    den = poly() if allow_den else (1,)
    while not any(den):
        den = poly()
    if not any(num):
        num = (1,)
    return QScalar.from_num_den(num, den, shift=rng.randint(-3, 3))


def test_field_axioms_randomized():
    rng = random.Random(7)
    for _ in range(1000):
        x = _random_scalar(rng)
        y = _random_scalar(rng)
        z = _random_scalar(rng)
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x


def test_canonicalization_idempotent():
    rng = random.Random(13)
    for _ in range(300):
        x = _random_scalar(rng)
        again = QScalar.from_num_den(x.num, x.den, shift=x.shift)
        assert (again.shift, again.num, again.den) == (x.shift, x.num, x.den)
        assert hash(again) == hash(x)


def test_canonical_equality_of_equivalent_fractions():
    a = QScalar.from_num_den((2, 0, -2), (4,))      # (2-2q^2)/4
    b = QScalar.from_num_den((1, 0, -1), (2,))      # (1-q^2)/2
    assert a == b
    c = QScalar.from_num_den((1, 0, -1), (1, -1))   # (1-q^2)/(1-q) = 1+q
    assert c == QScalar.from_laurent({0: 1, 1: 1})


def test_pow():
    s = QScalar.from_num_den((1, 1), (1,))
    assert s**3 == s * s * s
    assert s**-2 == (s * s).inv()
    assert qpow(4) ** -3 == qpow(-12)
    assert s**0 == ONE


def test_laurent_roundtrip_and_arithmetic():
    l1 = LaurentQ({-1: Fraction(1, 2), 2: 3})
    l2 = LaurentQ({1: 1})
    assert (l1 * l2).terms == {0: Fraction(1, 2), 3: Fraction(3)}
    assert (l1 + (-l1)).terms == {}
    s = l1.to_qscalar()
    assert LaurentQ.from_qscalar(s) == l1
    with pytest.raises(ValueError):
        LaurentQ.from_qscalar((ONE - qpow(2)).inv())


def test_fraction_and_int_interop():
    assert QScalar(Fraction(3, 2)) * 2 == QScalar(3)
    assert 1 - qpow(2) == QScalar.from_num_den((1, 0, -1), (1,))
    assert 1 / qpow(3) == qpow(-3)
    assert hash(QScalar(7)) == hash(Fraction(7))
