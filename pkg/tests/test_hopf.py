"""Hopf layer: axioms, dual pairing, module-algebra action, smash relations."""

import random

import pytest

from qheis.hopf import DualPairing, TensorElement, check_hopf_axioms, hopf_Oq, hopf_Uq
from qheis.presets import make_Dq, make_Oq, params
from qheis.qfield import ONE, ZERO, qpow
from qheis.sampling import random_element


def test_coproduct_generators(p11):
    ho = hopf_Oq(p11)
    oq = ho.pres
    ia, ib = oq.index["a"], oq.index["b"]

    def mono(i, e):
        v = [0, 0, 0]
        v[i] = e
        return tuple(v)

    assert ho.coproduct(oq.gen("a")) == TensorElement(
        oq, {(mono(ia, 1), mono(ia, 1)): 1}
    )
    assert ho.coproduct(oq.gen("b")) == TensorElement(
        oq, {(mono(ib, 1), mono(ia, -1)): 1, (mono(ia, 1), mono(ib, 1)): 1}
    )


def test_coproduct_multiplicative(p11):
    ho = hopf_Oq(p11)
    oq = ho.pres
    bc = oq.multiply(oq.gen("b"), oq.gen("c"))
    assert ho.coproduct(bc) == ho.coproduct(oq.gen("b")) * ho.coproduct(oq.gen("c"))
    assert len(ho.coproduct(bc).terms) == 4


def test_counit(p11):
    ho = hopf_Oq(p11)
    oq = ho.pres
    assert ho.counit(oq.gen("a", 5)) == ONE
    assert ho.counit(oq.gen("b")) == ZERO
    x = oq.gen("a").scale(qpow(1) * 3) + oq.gen("c")
    assert ho.counit(x) == 3 * qpow(1)


def test_antipode(mn_params):
    ho = hopf_Oq(mn_params)
    oq = ho.pres
    m, n = mn_params.m, mn_params.n
    assert ho.antipode(oq.gen("a")) == oq.gen("a", -1)
    assert ho.antipode(oq.gen("c")) == oq.gen("c").scale(-qpow(m * m))
    ab = oq.multiply(oq.gen("a"), oq.gen("b"))
    expected = oq.multiply(
        oq.gen("b").scale(-qpow(-n * n)), oq.gen("a", -1)
    )
    assert ho.antipode(ab) == expected


def test_antipode_uq(mn_params):
    hu = hopf_Uq(mn_params)
    uq = hu.pres
    m, n = mn_params.m, mn_params.n
    assert hu.antipode(uq.gen("K")) == uq.gen("K", -1)
    assert hu.antipode(uq.gen("E")) == uq.normal_form([("E", 1), ("K", -m)]).scale(-ONE)
    assert hu.antipode(uq.gen("F")) == uq.normal_form([("K", n), ("F", 1)]).scale(-ONE)


def test_hopf_axioms(mn_params):
    for h in (hopf_Oq(mn_params), hopf_Uq(mn_params)):
        report = check_hopf_axioms(h, degree_bound=3, samples=30, seed=5)
        assert report.ok, (report.relation_failures, report.sample_failures[:3])


def test_antipode_law_on_b_explicit(mn_params):
    """m(S (x) id)Delta(b) collapses to zero, matching the hand rewrite."""
    ho = hopf_Oq(mn_params)
    oq = ho.pres
    total = oq.zero()
    for (m1, m2), c in ho.coproduct(oq.gen("b")).terms.items():
        total = total + oq.multiply(ho.antipode(oq.monomial(m1)), oq.monomial(m2)).scale(c)
    assert not total
    n = mn_params.n
    lhs = oq.multiply(oq.gen("b").scale(-qpow(-n * n)), oq.gen("a", -n))
    rhs = oq.multiply(oq.gen("a", -n), oq.gen("b"))
    assert lhs + rhs == total


def test_pairing_base_values(p11):
    dp = DualPairing(p11)
    uq, oq = dp.uq, dp.oq
    assert dp.pair(uq.gen("K"), oq.gen("a")) == qpow(-1)
    assert dp.pair(uq.gen("K"), oq.gen("a", -1)) == qpow(1)
    assert dp.pair(uq.gen("E"), oq.gen("c")) == ONE
    assert dp.pair(uq.gen("F"), oq.gen("b")) == ONE
    assert dp.pair(uq.gen("E"), oq.gen("b")) == ZERO
    assert dp.pair(uq.gen("K", -1), oq.gen("a")) == qpow(1)
    assert dp.pair(uq.one(), oq.gen("b")) == ZERO


def test_action_table(mn_params):
    dp = DualPairing(mn_params)
    uq, oq = dp.uq, dp.oq
    m, n = mn_params.m, mn_params.n
    K, E, F = uq.gen("K"), uq.gen("E"), uq.gen("F")
    a, b, c = oq.gen("a"), oq.gen("b"), oq.gen("c")
    assert dp.act(K, a) == a.scale(qpow(-1))
    assert dp.act(K, b) == b.scale(qpow(n))
    assert dp.act(K, c) == c.scale(qpow(-m))
    assert not dp.act(E, a)
    assert not dp.act(E, b)
    assert dp.act(E, c) == oq.gen("a", -m)
    assert not dp.act(F, a)
    assert dp.act(F, b) == oq.gen("a", n)
    assert not dp.act(F, c)


def test_action_on_b_squared(mn_params):
    dp = DualPairing(mn_params)
    n = mn_params.n
    b2 = dp.oq.multiply(dp.oq.gen("b"), dp.oq.gen("b"))
    got = dp.act(dp.uq.gen("F"), b2)
    expected = dp.oq.multiply(dp.oq.gen("a", n), dp.oq.gen("b")).scale(
        ONE + qpow(-2 * n * n)
    )
    assert got == expected


def test_pairing_peeling_order_independence(mn_params):
    """Peeling the O side first must agree with the engine's U-side peeling."""
    dp = DualPairing(mn_params)
    rng = random.Random(59)

    def pair_o_first(mu, mx):
        o_letters = [
            (i, 1 if e > 0 else -1)
            for i, e in enumerate(mx)
            for _ in range(abs(e))
        ]
        if not o_letters:
            return dp.hu.counit_mono(mu)
        if len(o_letters) == 1:
            return dp._pair_mono(mu, mx)
        head = dp._mono_from_letters(o_letters[:1], len(mx))
        rest = dp._mono_from_letters(o_letters[1:], len(mx))
        total = ZERO
        for (u1, u2), c in dp.hu._delta_mono(mu).terms.items():
            v = pair_o_first(u1, head)
            if v:
                total = total + c * v * pair_o_first(u2, rest)
        return total

    for _ in range(300):
        u = random_element(dp.uq, rng, max_degree=3, n_terms=1)
        x = random_element(dp.oq, rng, max_degree=3, n_terms=1)
        (mu,), (mx,) = list(u.terms), list(x.terms)
        assert dp._pair_mono(mu, mx) == pair_o_first(mu, mx)


def test_pairing_bilinearity(p11):
    dp = DualPairing(p11)
    rng = random.Random(61)
    for _ in range(25):
        u = random_element(dp.uq, rng, max_degree=2)
        v = random_element(dp.uq, rng, max_degree=2)
        x = random_element(dp.oq, rng, max_degree=2)
        assert dp.pair(u + v, x) == dp.pair(u, x) + dp.pair(v, x)


def test_module_algebra_law(mn_params):
    dp = DualPairing(mn_params)
    failures = dp.check_module_algebra(samples=25, seed=67)
    assert not failures


def test_module_algebra_k_on_bc(p11):
    dp = DualPairing(p11)
    bc = dp.oq.multiply(dp.oq.gen("b"), dp.oq.gen("c"))
    got = dp.act(dp.uq.gen("K"), bc)
    assert got == bc.scale(qpow(p11.n - p11.m))


def test_smash_reconstruction(mn_params):
    dp = DualPairing(mn_params)
    results = dp.check_smash()
    assert len(results) == 16
    bad = [r for r in results if not r["ok"]]
    assert not bad, bad


def test_smash_named_relations(p11):
    """The rebuilt cross products match the displayed smash relations."""
    dp = DualPairing(p11)
    dq = make_Dq(p11)
    m, n = p11.m, p11.n
    # E*c = c*E + a^{-m} K^m
    assert dq.normal_form([("E", 1), ("c", 1)]) == dq.multiply(
        dq.gen("c"), dq.gen("E")
    ) + dq.normal_form([("a", -m), ("K", m)])
    # F*b = q^{-n^2} b*F + a^n
    assert dq.normal_form([("F", 1), ("b", 1)]) == dq.multiply(
        dq.gen("b"), dq.gen("F")
    ).scale(qpow(-n * n)) + dq.gen("a", n)
    # K*a = q^{-1} a*K
    assert dq.normal_form([("K", 1), ("a", 1)]) == dq.multiply(
        dq.gen("a"), dq.gen("K")
    ).scale(qpow(-1))


def test_pairing_mismatched_params():
    from qheis.errors import MismatchedParams

    dp = DualPairing(params(1, 1))
    other_oq = make_Oq(params(2, 3))
    with pytest.raises(MismatchedParams):
        dp.pair(other_oq.gen("a"), other_oq.gen("a"))
    from qheis.presets import make_Uq

    with pytest.raises(MismatchedParams):
        dp.pair(make_Uq(params(2, 3)).gen("K"), other_oq.gen("a"))
    with pytest.raises(MismatchedParams):
        dp.act(make_Uq(params(2, 3)).gen("K"), other_oq.gen("a"))


def test_pairing_gram_rank_probe(p11):
    """Non-degeneracy evidence: the truncated Gram matrix has full rank."""
    dp = DualPairing(p11)
    u_monos = []
    for i in range(4):
        for r in range(4 - i):
            for k in range(-2, 3):
                mono = [0, 0, 0]
                mono[dp.uq.index["F"]] = i
                mono[dp.uq.index["K"]] = k
                mono[dp.uq.index["E"]] = r
                u_monos.append(tuple(mono))
    o_monos = []
    for j in range(4):
        for s in range(4 - j):
            for l in range(-2, 3):
                mono = [0, 0, 0]
                mono[dp.oq.index["b"]] = j
                mono[dp.oq.index["a"]] = l
                mono[dp.oq.index["c"]] = s
                o_monos.append(tuple(mono))
    rows = []
    for mu in u_monos:
        row = {}
        for idx, mx in enumerate(o_monos):
            v = dp._pair_mono(mu, mx)
            if v:
                row[idx] = v
        rows.append(row)
    # sparse Gaussian elimination over Q(q)
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            lead = min(row)
            if lead in pivots:
                factor = row[lead]
                prow = pivots[lead]
                for col, val in prow.items():
                    w = row.get(col, ZERO) - factor * val
                    if w:
                        row[col] = w
                    else:
                        row.pop(col, None)
            else:
                lv = row[lead]
                pivots[lead] = {c: v / lv for c, v in row.items()}
                rank += 1
                break
    assert rank == len(u_monos) == len(o_monos)
