"""Simple S-module realizations and the induced weight modules over Dq.

Each quotient family pins two primed generators to scalars sigma, tau
(with sigma*tau = 0) and realizes the module on monomials in the other
two.  Weight modules stack copies of a base module along an eigenvalue
ladder: one distinguished torus generator acts diagonally, the other
shifts layers, and S acts layerwise.  Probes certify cyclicity up to a
multiplier degree and estimate growth exponents from filtration counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegreeTooSmall, TruncationOverflow, WrongOrder, ZeroVector
from .presets import S_ORDERS, AlgebraParams, factorize_D, make_Dq, make_S
from .qfield import ONE, ZERO, qpow, scalar_text
from .rewrite import Element

# family -> (order, {generator acting by sigma, generator acting by tau})
FAMILY_SCALARS = {
    "J1": {"bp": "sigma", "cp": "tau"},
    "J2": {"bp": "sigma", "Ep": "tau"},
    "J3": {"Fp": "sigma", "cp": "tau"},
    "J4": {"Fp": "sigma", "Ep": "tau"},
}


def _scal_pow(c, k):
    if k == 0:
        return ONE
    if not c:
        return ZERO
    if hasattr(c, "__pow__"):
        return c**k
    raise TypeError(type(c))


@dataclass
class QuotientModule:
    """S/J_k(sigma, tau) on the monomial basis of its first two generators."""

    family: str
    sigma: object
    tau: object
    params: AlgebraParams

    def __post_init__(self):
        if self.family not in FAMILY_SCALARS:
            raise ValueError(f"unknown family {self.family!r}")
        if self.sigma and self.tau:
            raise ValueError("sigma * tau must vanish")
        self.order = S_ORDERS[self.family]
        self.spres = make_S(self.params, self.order)
        assignment = FAMILY_SCALARS[self.family]
        self._scalars = {
            self.spres.index[g]: (self.sigma if which == "sigma" else self.tau)
            for g, which in assignment.items()
        }
        self._letter_cache: dict = {}

    # -- vectors --------------------------------------------------------------

    def vector(self, terms) -> dict:
        return {k: c for k, c in terms.items() if c}

    def cyclic_vector(self) -> dict:
        return {(0, 0): ONE}

    def basis_vector(self, i, j, coeff=ONE) -> dict:
        return {(int(i), int(j)): coeff}

    def dim_filtration(self, d: int) -> int:
        return sum(1 for i in range(d + 1) for j in range(d + 1) if i + j <= d)

    # -- action -----------------------------------------------------------------

    def _collapse(self, s_el: Element) -> dict:
        """Turn an S element into vector terms by scalar-collapsing the
        trailing two generators."""
        out = {}
        for mono, c in s_el.terms.items():
            coeff = c
            for gi in (3, 2):
                e = mono[gi]
                if e:
                    coeff = coeff * _scal_pow(self._scalars[gi], e)
                    if not coeff:
                        break
            if not coeff:
                continue
            key = (mono[0], mono[1])
            prev = out.get(key)
            s = coeff if prev is None else prev + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return out

    def _letter_action(self, gi: int, key) -> dict:
        cached = self._letter_cache.get((gi, key))
        if cached is None:
            mono = [0, 0, 0, 0]
            mono[0], mono[1] = key
            prod = self.spres.multiply(
                self.spres.gen(self.spres.table.names[gi]), self.spres.monomial(tuple(mono))
            )
            cached = self._collapse(prod)
            self._letter_cache[(gi, key)] = cached
        return cached

    def act(self, s: Element, vec: dict) -> dict:
        """Exact action of an S element; result may be the zero vector."""
        if s.pres.table.names != self.spres.table.names:
            raise WrongOrder(
                f"element is over order {s.pres.table.names}, module uses {self.order}"
            )
        out: dict = {}
        for mono, c in s.terms.items():
            current = {k: v * c for k, v in vec.items()}
            for gi in (3, 2, 1, 0):
                e = mono[gi]
                if not e or not current:
                    continue
                for _ in range(e):
                    nxt: dict = {}
                    for key, coeff in current.items():
                        for k2, c2 in self._letter_action(gi, key).items():
                            w = coeff * c2
                            prev = nxt.get(k2)
                            sm = w if prev is None else prev + w
                            if sm:
                                nxt[k2] = sm
                            else:
                                nxt.pop(k2, None)
                    current = nxt
            for key, coeff in current.items():
                prev = out.get(key)
                sm = coeff if prev is None else prev + coeff
                if sm:
                    out[key] = sm
                else:
                    out.pop(key, None)
        return out

    def render_vector(self, vec: dict) -> str:
        if not vec:
            return "0"
        g1, g2 = self.order[0], self.order[1]
        bits = []
        for (i, j) in sorted(vec, key=lambda k: (k[0] + k[1], k)):
            c = vec[(i, j)]
            mono = "*".join(
                ([f"{g1}^{i}"] if i else []) + ([f"{g2}^{j}"] if j else [])
            )
            coeff = scalar_text(c)
            body = f"{coeff}*{mono}.v" if mono else f"{coeff}.v"
            bits.append(body)
        return " + ".join(bits)


def act_S(mod: QuotientModule, s: Element, vec: dict) -> dict:
    return mod.act(s, vec)


@dataclass
class WeightModule:
    """Ladder of base-module copies indexed by a truncated layer window."""

    kind: str                      # "K" or "a"
    lam: object                    # eigenvalue of the diagonal generator at layer 0
    base: QuotientModule
    truncation: int

    def __post_init__(self):
        if self.kind not in ("K", "a"):
            raise ValueError("kind must be 'K' or 'a'")
        if not self.lam:
            raise ValueError("base eigenvalue must be nonzero")
        if self.truncation < 0:
            raise ValueError("truncation window must be >= 0")
        self.dq = make_Dq(self.base.params)

    def vector(self, terms) -> dict:
        return {k: c for k, c in terms.items() if c}

    def basis_vector(self, t, i, j, coeff=ONE) -> dict:
        if abs(t) > self.truncation:
            raise TruncationOverflow(f"layer {t} outside window {self.truncation}")
        return {(int(t), int(i), int(j)): coeff}

    def eigenvalue(self, t):
        """Diagonal-generator eigenvalue on layer t."""
        if self.kind == "K":
            return self.lam * qpow(-t)
        return self.lam * qpow(t)

    def support(self):
        """Eigenvalues realized on the truncated window."""
        return {self.eigenvalue(t) for t in range(-self.truncation, self.truncation + 1)}

    def act(self, x: Element, vec: dict) -> dict:
        """Action of a Dq element through the torus (x) S factorization.

        The S part acts layerwise, the shifting torus generator moves the
        layer, and the diagonal one contributes its eigenvalue; for the
        K-weight kind the diagonal factor K^k is applied after the shift
        by a^l, for the a-weight kind a^l acts before the shift by K^k.
        """
        out: dict = {}
        for (k, l), s_el in factorize_D(self.base.params, x):
            shift, diag_exp = (l, k) if self.kind == "K" else (k, l)
            for (t, i, j), c in vec.items():
                acted = self.base.act(s_el, {(i, j): c})
                if not acted:
                    continue
                t2 = t + shift
                if abs(t2) > self.truncation:
                    raise TruncationOverflow(
                        f"shift to layer {t2} leaves window {self.truncation}"
                    )
                diag_layer = t2 if self.kind == "K" else t
                scal = _scal_pow(self.eigenvalue(diag_layer), diag_exp) if diag_exp else ONE
                for (i2, j2), c2 in acted.items():
                    key = (t2, i2, j2)
                    w = c2 * scal
                    prev = out.get(key)
                    sm = w if prev is None else prev + w
                    if sm:
                        out[key] = sm
                    else:
                        out.pop(key, None)
        return out

    def dim_filtration(self, d: int) -> int:
        layers = [t for t in range(-d, d + 1)]
        return sum(self.base.dim_filtration(d) for _ in layers)


def act_D(wm: WeightModule, x: Element, vec: dict) -> dict:
    return wm.act(x, vec)


def support(wm: WeightModule):
    return wm.support()


# ---------------------------------------------------------------------------
# probes


def _vec_key_order(key):
    return (key[0] + key[1], key)


def cyclicity_probe(mod: QuotientModule, w: dict, mult_degree: int) -> str:
    """Span {s.w : s a normal monomial of degree <= mult_degree} by exact
    elimination; Cyclic when the cyclic vector lies in the span, otherwise
    Undetermined (a finite probe cannot refute simplicity)."""
    if not w:
        raise ZeroVector("probe needs a nonzero vector")
    target = dict(mod.cyclic_vector())
    pivots: dict = {}

    def reduce(vec):
        vec = dict(vec)
        while vec:
            lead = max(vec, key=_vec_key_order)
            if lead not in pivots:
                return vec
            factor = vec[lead]
            for k2, c2 in pivots[lead].items():
                wv = vec.get(k2, ZERO) - factor * c2
                if wv:
                    vec[k2] = wv
                else:
                    vec.pop(k2, None)
        return vec

    def insert(vec):
        nonlocal target
        vec = reduce(vec)
        if not vec:
            return False
        lead = max(vec, key=_vec_key_order)
        lc = vec[lead]
        pivots[lead] = {k: _div(c, lc) for k, c in vec.items()}
        target = reduce(target)
        return True

    target = reduce(target)
    if not target:
        return "Cyclic"
    from itertools import product

    names = mod.spres.table.names
    for total in range(mult_degree + 1):
        for exps in product(range(total + 1), repeat=4):
            if sum(exps) != total:
                continue
            s = mod.spres.monomial(exps)
            insert(mod.act(s, w))
            if not target:
                return "Cyclic"
    return "Cyclic" if not target else "Undetermined"


def _div(c, lc):
    from fractions import Fraction

    if isinstance(c, int):
        c = Fraction(c)
    return c / lc


def growth_exponent(obj, d_max: int) -> float:
    """Least-squares slope of log dim against log d over the top half of
    the degree range; polynomial growth of degree r gives a slope near r."""
    if d_max < 8:
        raise DegreeTooSmall("growth fit needs d_max >= 8")
    ds = list(range(max(1, d_max // 2), d_max + 1))
    xs = [math.log(d) for d in ds]
    ys = [math.log(obj.dim_filtration(d)) for d in ds]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    num = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    den = sum((x - xbar) ** 2 for x in xs)
    return num / den
