"""Degree-truncated ideal spans in S, membership and containment probes,
the prime-spectrum catalog, the monomial-avoidance probe, and the quantum
torus quotient of S by both commutator ideals.

Spans are exact linear subspaces: starting from the generators, the span
is closed under left and right multiplication by generators as long as the
product stays inside the degree-bound filtration, with a deterministic
row-echelon basis.  Membership is a semi-decision: Verified is a true
certificate, NotDetected only means not found at this bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundMismatch, DegreeTooSmall
from .presets import AlgebraParams, make_S, torus_of_S_quotient
from .qfield import ONE, ZERO, QScalar, qpow
from .rewrite import Element, Presentation


def _div(c, lc):
    if isinstance(c, int):
        c = Fraction(c)
    return c / lc


class TruncatedIdeal:
    """Row-echelon span of a two-sided (or left) ideal inside a degree bound."""

    def __init__(self, spres: Presentation, generators, side, degree_bound):
        self.spres = spres
        self.generators = [spres.normal_form(g) for g in generators]
        self.side = side
        self.degree_bound = degree_bound
        # pivots: lead monomial -> monic row terms
        self.pivots: dict = {}
        self.pivot_order: list = []
        self._rank: dict = {}
        # provenance: pivot lead -> (move, lead coeff before normalization);
        # a move is ("gen", idx) or ("left"/"right", gen_index, parent_lead)
        self._moves: dict = {}
        self._combos = None
        self._build()

    # -- linear algebra ----------------------------------------------------------

    def _lead(self, terms):
        return max(terms, key=self.spres.term_key)

    def _reduce_terms(self, terms, max_rank=None):
        terms = dict(terms)
        while terms:
            lead = self._lead(terms)
            prow = self.pivots.get(lead)
            if prow is None or (max_rank is not None and self._rank[lead] >= max_rank):
                return terms
            factor = terms[lead]
            for m, c in prow.items():
                w = terms.get(m, ZERO) - factor * c
                if w:
                    terms[m] = w
                else:
                    terms.pop(m, None)
        return terms

    def _insert(self, terms, move):
        rem = self._reduce_terms(terms)
        if not rem:
            return None
        lead = self._lead(rem)
        lc = rem[lead]
        self._rank[lead] = len(self.pivot_order)
        self.pivots[lead] = {m: _div(c, lc) for m, c in rem.items()}
        self.pivot_order.append(lead)
        self._moves[lead] = (move, lc)
        return lead

    def _build(self):
        if not self.generators:
            return
        D = self.degree_bound
        for g in self.generators:
            if g and g.degree() > D:
                raise DegreeTooSmall(
                    f"degree bound {D} is below a generator of degree {g.degree()}"
                )
        queue = []
        for idx, g in enumerate(self.generators):
            if not g:
                continue
            lead = self._insert(g.terms, ("gen", idx))
            if lead is not None:
                queue.append(lead)
        sides = ("left",) if self.side == "left" else ("left", "right")
        gens = [self.spres.gen(name) for name in self.spres.table.names]
        pos = 0
        while pos < len(queue):
            lead = queue[pos]
            pos += 1
            row = Element(self.spres, dict(self.pivots[lead]))
            for gi, g in enumerate(gens):
                for side in sides:
                    prod = (
                        self.spres.multiply(g, row)
                        if side == "left"
                        else self.spres.multiply(row, g)
                    )
                    if not prod or prod.degree() > D:
                        continue
                    new_lead = self._insert(prod.terms, (side, gi, lead))
                    if new_lead is not None:
                        queue.append(new_lead)

    # -- queries ---------------------------------------------------------------

    @property
    def dimension(self):
        return len(self.pivots)

    def basis(self):
        return [
            Element(self.spres, dict(self.pivots[lead]))
            for lead in sorted(self.pivot_order, key=self.spres.term_key)
        ]

    def member(self, x: Element) -> str:
        """'Verified' when x lies in the span, else 'NotDetected'."""
        x = self.spres.normal_form(x)
        if x.degree() > self.degree_bound:
            raise DegreeTooSmall(
                f"element degree {x.degree()} exceeds bound {self.degree_bound}"
            )
        return "Verified" if not self._reduce_terms(x.terms) else "NotDetected"

    # -- certificates -------------------------------------------------------------

    def _combo_of_pivots(self):
        """Each pivot as a combination {(m1, gen_idx, m2): coeff}, rebuilt
        deterministically from the recorded moves."""
        if self._combos is not None:
            return self._combos
        spres = self.spres
        unit = tuple([0] * len(spres.table.names))
        combos: dict = {}
        for my_rank, lead in enumerate(self.pivot_order):
            (move, lc) = self._moves[lead]
            if move[0] == "gen":
                raw = {(unit, move[1], unit): ONE}
            else:
                side, gi, parent = move
                raw = {}
                gmono = [0] * len(spres.table.names)
                gmono[gi] = 1
                g_el = spres.monomial(tuple(gmono))
                for (m1, idx, m2), c in combos[parent].items():
                    if side == "left":
                        expanded = spres.multiply(g_el, spres.monomial(m1))
                        for mm, cc in expanded.terms.items():
                            key = (mm, idx, m2)
                            raw[key] = raw.get(key, ZERO) + c * cc
                    else:
                        expanded = spres.multiply(spres.monomial(m2), g_el)
                        for mm, cc in expanded.terms.items():
                            key = (m1, idx, mm)
                            raw[key] = raw.get(key, ZERO) + c * cc
                raw = {k: v for k, v in raw.items() if v}
            # replay the insert-time reduction against the earlier pivots only
            rem = dict(self._value_of_combo(raw).terms)
            combo = dict(raw)
            while rem:
                rlead = self._lead(rem)
                prow = self.pivots.get(rlead)
                if prow is None or self._rank[rlead] >= my_rank:
                    break
                factor = rem[rlead]
                for m, c in prow.items():
                    w = rem.get(m, ZERO) - factor * c
                    if w:
                        rem[m] = w
                    else:
                        rem.pop(m, None)
                for k, c in combos[rlead].items():
                    w = combo.get(k, ZERO) - factor * c
                    if w:
                        combo[k] = w
                    else:
                        combo.pop(k, None)
            inv = _div(ONE, lc)
            combos[lead] = {k: c * inv for k, c in combo.items()}
        self._combos = combos
        return combos

    def _value_of_combo(self, combo):
        spres = self.spres
        acc = spres.zero()
        for (m1, idx, m2), c in combo.items():
            word = spres.multiply(
                spres.multiply(spres.monomial(m1), self.generators[idx]),
                spres.monomial(m2),
            )
            acc = acc + word.scale(c)
        return acc

    def certificate(self, x: Element):
        """Combination [(coeff, m1, gen_index, m2), ...] with
        sum coeff * m1 * gen * m2 == x, or None when not in the span."""
        x = self.spres.normal_form(x)
        combos = self._combo_of_pivots()
        rem = dict(x.terms)
        out: dict = {}
        while rem:
            lead = self._lead(rem)
            prow = self.pivots.get(lead)
            if prow is None:
                return None
            factor = rem[lead]
            for m, c in prow.items():
                w = rem.get(m, ZERO) - factor * c
                if w:
                    rem[m] = w
                else:
                    rem.pop(m, None)
            for k, c in combos[lead].items():
                w = out.get(k, ZERO) + factor * c
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return [(c, m1, idx, m2) for (m1, idx, m2), c in out.items()]

    def replay_certificate(self, cert) -> Element:
        return self._value_of_combo({(m1, idx, m2): c for c, m1, idx, m2 in cert})


def ideal_span(spres, generators, side="twoSided", degree_bound=8) -> TruncatedIdeal:
    if side not in ("left", "twoSided"):
        raise ValueError("side must be 'left' or 'twoSided'")
    return TruncatedIdeal(spres, generators, side, degree_bound)


def member(ideal: TruncatedIdeal, x: Element) -> str:
    return ideal.member(x)


@dataclass
class ContainmentReport:
    status: str                 # "Contained" | "NotDetectedAtBound"
    witness: object = None


def containment_probe(small: TruncatedIdeal, big: TruncatedIdeal) -> ContainmentReport:
    """Check every basis element of `small` for membership in `big`."""
    if small.degree_bound != big.degree_bound:
        raise BoundMismatch("containment probe needs equal degree bounds")
    if small.spres.table.names != big.spres.table.names:
        raise BoundMismatch("containment probe needs the same algebra")
    for row in small.basis():
        if big.member(row) != "Verified":
            return ContainmentReport("NotDetectedAtBound", witness=row)
    return ContainmentReport("Contained")


@dataclass
class AvoidanceReport:
    clean: bool
    checked: list
    detected: list


def monomial_avoidance_probe(ideal: TruncatedIdeal, degree_bound=None) -> AvoidanceReport:
    """No pure monomial in bp, cp may lie in a prime ideal's span;
    a detection demonstrates a non-prime input."""
    spres = ideal.spres
    D = degree_bound if degree_bound is not None else ideal.degree_bound
    ib, ic = spres.index["bp"], spres.index["cp"]
    checked = []
    detected = []
    for i in range(D + 1):
        for j in range(D + 1 - i):
            mono = [0] * len(spres.table.names)
            mono[ib], mono[ic] = i, j
            el = spres.monomial(tuple(mono))
            checked.append((i, j))
            if ideal.member(el) == "Verified":
                detected.append((i, j))
    return AvoidanceReport(not detected, checked, detected)


# ---------------------------------------------------------------------------
# the catalog of Spec(S)


def phi_elements(spres: Presentation):
    phi1 = spres.commutator(spres.gen("Ep"), spres.gen("cp"))
    phi2 = spres.commutator(spres.gen("Fp"), spres.gen("bp"))
    return phi1, phi2


@dataclass
class SpecCatalog:
    params: AlgebraParams
    degree_bound: int
    z_samples: tuple
    spres: Presentation = field(repr=False)
    ideals: dict = field(repr=False)

    def named(self):
        return sorted(self.ideals)


def build_spec_catalog(
    p: AlgebraParams, degree_bound=8, z_samples=None, spres=None
) -> SpecCatalog:
    if z_samples is None:
        z_samples = (ONE, qpow(1), QScalar(-2))
    spres = spres or make_S(p)
    phi1, phi2 = phi_elements(spres)
    mh = abs(p.m) // p.d
    nh = abs(p.n) // p.d
    ideals = {
        "0": ideal_span(spres, [], degree_bound=degree_bound),
        "I1": ideal_span(spres, [phi1], degree_bound=degree_bound),
        "I2": ideal_span(spres, [phi2], degree_bound=degree_bound),
        "I3": ideal_span(spres, [phi1, phi2], degree_bound=degree_bound),
    }
    for z in z_samples:
        if p.m * p.n > 0:
            g1 = spres.power(phi1, nh) - spres.power(spres.gen("bp"), mh).scale(z)
            g2 = spres.power(phi2, mh) - spres.power(spres.gen("cp"), nh).scale(z)
        else:
            g1 = spres.power(phi1, nh) - spres.power(spres.gen("Fp"), mh).scale(z)
            g2 = spres.power(phi2, mh) - spres.power(spres.gen("Ep"), nh).scale(z)
        ztext = str(z)
        ideals[f"J1({ztext})"] = ideal_span(spres, [g1, phi2], degree_bound=degree_bound)
        ideals[f"J2({ztext})"] = ideal_span(spres, [phi1, g2], degree_bound=degree_bound)
    return SpecCatalog(p, degree_bound, tuple(z_samples), spres, ideals)


def spec_diagram(catalog: SpecCatalog):
    """Containment edges of the catalog as {from, to, status} records.

    Edges below the commutator ideals follow the displayed containment
    diagram; the outer edges between the z-families and I1/I2 are probed
    and reported without being asserted (documented inconsistency between
    the diagram and the monomial-avoidance statement).
    """
    edges = []
    names = catalog.named()
    j1s = [n for n in names if n.startswith("J1(")]
    j2s = [n for n in names if n.startswith("J2(")]
    pairs = [("0", "I1"), ("0", "I2"), ("I1", "I3"), ("I2", "I3")]
    pairs += [("I2", j) for j in j1s]
    pairs += [("I1", j) for j in j2s]
    pairs += [("I1", j) for j in j1s]
    pairs += [("I2", j) for j in j2s]
    for small, big in pairs:
        report = containment_probe(catalog.ideals[small], catalog.ideals[big])
        edges.append({"from": small, "to": big, "status": report.status})
    return edges


# ---------------------------------------------------------------------------
# the quantum torus quotient of S/(phi1 + phi2)


def torus_quotient_map(p: AlgebraParams, spres=None):
    """Morphism S -> k[E'^{+-1}, F'^{+-1}] killing both commutator ideals."""
    from .morphisms import Morphism

    spres = spres or make_S(p)
    torus = torus_of_S_quotient(p)
    c_coeff = (ONE - qpow(2 * p.m * p.m)).inv()
    b_coeff = (ONE - qpow(-2 * p.n * p.n)).inv()
    return Morphism(
        spres,
        torus,
        {
            "Ep": torus.gen("Ep"),
            "Fp": torus.gen("Fp"),
            "cp": torus.gen("Ep", -1).scale(c_coeff),
            "bp": torus.gen("Fp", -1).scale(b_coeff),
        },
        name="torus-quotient",
    )
