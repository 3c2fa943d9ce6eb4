"""Exact arithmetic in Q(q): rational functions in a formal parameter q.

A scalar is stored as q^shift * num(q) / den(q) with integer-coefficient
polynomials num, den whose constant terms are nonzero.  The representation
is canonical (see QScalar), so equality and hashing are structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import EvaluationPole, InvalidParameter

# ---------------------------------------------------------------------------
# integer polynomials as tuples, constant coefficient first, no trailing zeros


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _content(a):
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    return g


def _pscale_exact(a, k):
    return tuple(x // k for x in a)


def _prim(c):
    """Trim and divide out the integer content (sign kept); list in, list out."""
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return c
    g = 0
    for x in c:
        g = gcd(g, abs(x))
    if g > 1:
        c = [x // g for x in c]
    return c


def _prem(f, g):
    """Integer pseudo-remainder of f by g (lists, g nonzero)."""
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(r) - 1 >= dg and r:
        c = r[-1]
        s = len(r) - 1 - dg
        r = [lg * x for x in r[:-1]]
        for i in range(dg):
            r[s + i] -= c * g[i]
        while r and r[-1] == 0:
            r.pop()
    return r


_PGCD_MEMO: dict = {}


def _pgcd(a, b):
    """Primitive gcd in Z[q], positive leading coefficient (primitive PRS)."""
    key = (a, b)
    cached = _PGCD_MEMO.get(key)
    if cached is not None:
        return cached
    fa = _prim(list(a))
    fb = _prim(list(b))
    while fb:
        fa, fb = fb, _prim(_prem(fa, fb))
    if fa[-1] < 0:
        fa = [-x for x in fa]
    out = tuple(fa)
    _PGCD_MEMO[key] = out
    return out


def _pdiv_exact(a, b):
    """Exact quotient a/b in Z[q]; b must divide a, so every synthetic
    division step stays integral."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    while len(r) - 1 >= db and r:
        c, rem = divmod(r[-1], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        s = len(r) - 1 - db
        q[s] = c
        r = r[:-1]
        for i in range(db):
            r[s + i] -= c * b[i]
        while r and r[-1] == 0:
            r.pop()
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _peval(a, q0: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * q0 + c
    return acc


def _poly_text(coeffs, shift=0):
    """Render sum of c*q^k terms; exponents run from `shift` upward."""
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        k = shift + i
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = "q" if k == 1 else f"q^{k}"
        else:
            body = f"{mag}*q" if k == 1 else f"{mag}*q^{k}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign0, body0 = parts[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------


class QScalar:
    """Canonical rational function in q over the rationals.

    Invariants: num and den have nonzero constant coefficients (the q-power
    is pulled into `shift`), their primitive parts are coprime, their integer
    contents are coprime, and den's constant coefficient is positive.  Zero
    is (0, (), (1,)).  Canonical form makes __eq__/__hash__ structural.
    """

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, QScalar):
            shift, num, den = value.shift, value.num, value.den
        elif isinstance(value, int):
            shift, num, den = 0, ((value,) if value else ()), (1,)
        elif isinstance(value, Fraction):
            shift = 0
            num = (value.numerator,) if value.numerator else ()
            den = (value.denominator,)
        else:
            raise TypeError(f"cannot build QScalar from {type(value).__name__}")
        self.shift, self.num, self.den = _canon(shift, num, den)
        self._hash = None

    @classmethod
    def _raw(cls, shift, num, den):
        self = object.__new__(cls)
        self.shift, self.num, self.den = shift, num, den
        self._hash = None
        return self

    @classmethod
    def from_num_den(cls, num, den, shift=0):
        """Build from raw integer coefficient sequences (constant first)."""
        return cls._raw(*_canon(shift, _trim(num), _trim(den)))

    @classmethod
    def from_laurent(cls, terms) -> "QScalar":
        """Build from {exponent: rational coefficient}."""
        if isinstance(terms, LaurentQ):
            terms = terms.terms
        items = {k: Fraction(v) for k, v in terms.items() if v}
        if not items:
            return ZERO
        lo = min(items)
        hi = max(items)
        lcm = 1
        for v in items.values():
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        num = [0] * (hi - lo + 1)
        for k, v in items.items():
            num[k - lo] = int(v * lcm)
        return cls._raw(*_canon(lo, _trim(num), (lcm,)))

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.shift == 0 and self.num == (1,) and self.den == (1,)

    def as_laurent(self):
        """LaurentQ view, or None when the denominator is not constant."""
        if len(self.den) != 1:
            return None
        d = self.den[0]
        return LaurentQ(
            {self.shift + i: Fraction(c, d) for i, c in enumerate(self.num) if c}
        )

    def is_q_power(self):
        """True when the value is exactly q^k for some integer k."""
        return self.num == (1,) and self.den == (1,)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return QScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        v = min(self.shift, o.shift)
        a = _pmul(_qshift(self.num, self.shift - v), o.den)
        b = _pmul(_qshift(o.num, o.shift - v), self.den)
        return QScalar._raw(*_canon(v, _padd(a, b), _pmul(self.den, o.den)))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return QScalar._raw(self.shift, _pneg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        if self.den == (1,) == o.den and len(self.num) == 1 == len(o.num):
            # pure monomials: no reduction needed
            return QScalar._raw(
                self.shift + o.shift, (self.num[0] * o.num[0],), (1,)
            )
        return QScalar._raw(
            *_canon(
                self.shift + o.shift,
                _pmul(self.num, o.num),
                _pmul(self.den, o.den),
            )
        )

    __rmul__ = __mul__

    def inv(self) -> "QScalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QScalar._raw(*_canon(-self.shift, self.den, self.num))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return ONE
        base = self if k > 0 else self.inv()
        k = abs(k)
        if base.is_q_power():
            return QScalar._raw(base.shift * k, (1,), (1,))
        acc = ONE
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.shift == o.shift and self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.shift == 0 and len(self.num) <= 1 and len(self.den) == 1:
                val = Fraction(self.num[0] if self.num else 0, self.den[0])
                self._hash = hash(val)
            else:
                self._hash = hash((self.shift, self.num, self.den))
        return self._hash

    # -- evaluation / rendering ----------------------------------------------

    def evaluate(self, q0) -> Fraction:
        """Exact value at q = q0; q0 must avoid {0, 1, -1} and poles."""
        q0 = Fraction(q0)
        if q0 in (0, 1, -1):
            raise InvalidParameter(f"q = {q0} is excluded (root of unity or zero)")
        dv = _peval(self.den, q0)
        if dv == 0:
            raise EvaluationPole(f"denominator vanishes at q = {q0}")
        return q0**self.shift * _peval(self.num, q0) / dv

    def __str__(self):
        if not self.num:
            return "0"
        num_terms = sum(1 for c in self.num if c)
        numtext = _poly_text(self.num, self.shift)
        if self.den == (1,):
            return numtext
        dentext = _poly_text(self.den)
        left = numtext if num_terms == 1 else f"({numtext})"
        den_terms = sum(1 for c in self.den if c)
        right = dentext if den_terms == 1 else f"({dentext})"
        return f"{left}/{right}"

    def __repr__(self):
        return f"QScalar({self})"


def _qshift(poly, k):
    """Multiply an integer polynomial by q^k, k >= 0."""
    if k == 0 or not poly:
        return poly
    return (0,) * k + tuple(poly)


def _canon(shift, num, den):
    if not den:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if not num:
        return 0, (), (1,)
    i = 0
    while num[i] == 0:
        i += 1
    if i:
        shift += i
        num = num[i:]
    if den == (1,):
        return shift, tuple(num), (1,)
    j = 0
    while den[j] == 0:
        j += 1
    if j:
        shift -= j
        den = den[j:]
    if len(num) > 1 and len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdiv_exact(num, g)
            den = _pdiv_exact(den, g)
    cn = _content(num)
    cd = _content(den)
    cg = gcd(cn, cd)
    if cg > 1:
        num = _pscale_exact(num, cg)
        den = _pscale_exact(den, cg)
    if den[0] < 0:
        num = _pneg(num)
        den = _pneg(den)
    return shift, tuple(num), tuple(den)


ZERO = QScalar(0)
ONE = QScalar(1)

_QPOW_CACHE: dict[int, QScalar] = {}


def qpow(k: int) -> QScalar:
    """Canonical q^k."""
    s = _QPOW_CACHE.get(k)
    if s is None:
        s = QScalar._raw(k, (1,), (1,))
        _QPOW_CACHE[k] = s
    return s


Q = qpow(1)


class LaurentQ:
    """Laurent polynomial in q with exact rational coefficients.

    Thin canonical map {exponent: Fraction}; embeds exactly into QScalar
    (denominator a power of q).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v:
                    clean[int(k)] = v
        self.terms = clean

    @classmethod
    def from_qscalar(cls, s: QScalar) -> "LaurentQ":
        lau = s.as_laurent()
        if lau is None:
            raise ValueError(f"{s} is not a Laurent polynomial in q")
        return lau

    def to_qscalar(self) -> QScalar:
        return QScalar.from_laurent(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return LaurentQ(out)

    def __neg__(self):
        return LaurentQ({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict[int, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                w = out.get(k, 0) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return LaurentQ(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = "q" if k == 1 else f"q^{k}"
            else:
                body = f"{mag}*q" if k == 1 else f"{mag}*q^{k}"
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        text = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentQ({self})"


# ---------------------------------------------------------------------------
# helpers shared by renderers (duck-typed over QScalar / Fraction / int)


def scalar_is_negative(c) -> bool:
    if isinstance(c, QScalar):
        return bool(c.num) and c.num[-1] < 0
    return c < 0


def scalar_text(c) -> str:
    return str(c)


def scalar_is_simple(c) -> bool:
    """True when the coefficient renders as a single product-safe factor."""
    if isinstance(c, QScalar):
        lau = c.as_laurent()
        return lau is not None and len(lau.terms) <= 1
    return True
