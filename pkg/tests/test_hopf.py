import json
import random

import pytest

from motivic_ext import hopf
from motivic_ext.hopf import PresentationError, builtin, from_dict, quotient_by_tau, to_dict


def mono(p, text):
    m = p.parse_monomial(text)
    assert m is not None
    return m


# ----------------------------------------------------------------- presets

def test_preset_sizes():
    a1q = builtin("A1-mod-tau")
    assert a1q.ngens == 3
    assert len(a1q.all_monomial_exps()) == 8
    a2q = builtin("A2-mod-tau")
    assert a2q.ngens == 5
    assert len(a2q.all_monomial_exps()) == 64  # 2*2*2*4*2
    a2 = builtin("A2")
    assert len(a2.all_monomial_exps()) == 64  # free of rank 64 over F2[tau]
    assert a2.has_tau and not a2q.has_tau


def test_unknown_preset_rejected():
    with pytest.raises(PresentationError):
        builtin("NOPE")


def test_generator_degrees():
    a2 = builtin("A2")
    degs = {g.name: (g.t, g.w) for g in a2.gens}
    assert degs == {
        "tau0": (1, 0),
        "tau1": (3, 1),
        "tau2": (7, 3),
        "xi1": (2, 1),
        "xi2": (6, 3),
    }


def test_quotient_by_tau_matches_preset():
    for base in ("A1", "A2"):
        q = quotient_by_tau(builtin(base))
        ref = builtin(base + "-mod-tau")
        assert [g[:4] for g in q.gens] == [g[:4] for g in ref.gens]
        assert [g.rewrite for g in q.gens] == [g.rewrite for g in ref.gens]
        assert q.coproducts == ref.coproducts
    with pytest.raises(PresentationError):
        quotient_by_tau(builtin("A1-mod-tau"))


# ----------------------------------------------------------------- basis

def test_monomial_basis_small_degrees():
    a1q = builtin("A1-mod-tau")
    # (3, 1) holds both tau1 and tau0*xi1; lex order on exponent vectors.
    assert a1q.monomial_basis((3, 1)) == [mono(a1q, "tau1"), mono(a1q, "tau0 xi1")]
    assert a1q.monomial_basis((3, 2)) == []
    a2 = builtin("A2")
    assert a2.monomial_basis((1, 0)) == [mono(a2, "tau0")]
    assert a2.monomial_basis((0, -1)) == [mono(a2, "tau")]


def test_monomial_basis_exhaustive_oracle():
    # Independent enumeration: walk all 8 monomials of the rank-one quotient.
    a1q = builtin("A1-mod-tau")
    degrees = {}
    for e0 in range(2):
        for e1 in range(2):
            for e2 in range(2):
                t = e0 * 1 + e1 * 3 + e2 * 2
                w = e0 * 0 + e1 * 1 + e2 * 1
                degrees.setdefault((t, w), []).append((e0, e1, e2))
    for deg, exps in degrees.items():
        assert [m[0] for m in a1q.monomial_basis(deg)] == sorted(exps)


def test_tau_power_enumeration():
    a1 = builtin("A1")
    # (3, 0): tau*tau1 and tau*tau0*xi1 (k = 1), nothing at k = 0 has weight 0.
    basis = a1.monomial_basis((3, 0))
    assert [a1.format_monomial(m) for m in basis] == ["tau tau1", "tau tau0 xi1"]


# ----------------------------------------------------------------- product

def test_square_of_first_tau():
    a1 = builtin("A1")
    sq = a1.multiply(mono(a1, "tau0"), mono(a1, "tau0"))
    assert sq == {mono(a1, "tau xi1")}
    a1q = builtin("A1-mod-tau")
    assert a1q.multiply(mono(a1q, "tau0"), mono(a1q, "tau0")) == set()


def test_unit_is_neutral():
    a2 = builtin("A2")
    one = mono(a2, "1")
    for text in ("tau0", "xi1^2", "tau tau2 xi2"):
        m = mono(a2, text)
        assert a2.multiply(one, m) == {m}


def test_chained_rewrite():
    a2 = builtin("A2")
    # tau1^2 = tau xi2, and (tau0 tau1)^2 walks through two rewrites.
    assert a2.multiply(mono(a2, "tau1"), mono(a2, "tau1")) == {mono(a2, "tau xi2")}
    m = mono(a2, "tau0 tau1")
    assert a2.multiply(m, m) == {mono(a2, "tau^2 xi1 xi2")}


def test_bidegree_additivity_random():
    rng = random.Random(1)
    a2 = builtin("A2")
    monos = [(exps, rng.randrange(3)) for exps in a2.all_monomial_exps()]
    for _ in range(200):
        a = rng.choice(monos)
        b = rng.choice(monos)
        prod = a2.multiply(a, b)
        for m in prod:
            ta, wa = a2.degree(a)
            tb, wb = a2.degree(b)
            assert a2.degree(m) == (ta + tb, wa + wb)


# ----------------------------------------------------------------- coproduct

def test_reduced_coproduct_values():
    a2q = builtin("A2-mod-tau")
    rc = a2q.reduced_coproduct(mono(a2q, "tau1"))
    assert rc == {(mono(a2q, "xi1"), mono(a2q, "tau0"))}
    assert a2q.reduced_coproduct(mono(a2q, "xi1")) == set()
    assert a2q.reduced_coproduct(mono(a2q, "xi1^2")) == set()
    assert a2q.reduced_coproduct(mono(a2q, "xi2")) == {
        (mono(a2q, "xi1^2"), mono(a2q, "xi1"))
    }
    assert a2q.reduced_coproduct(mono(a2q, "tau2")) == {
        (mono(a2q, "xi2"), mono(a2q, "tau0")),
        (mono(a2q, "xi1^2"), mono(a2q, "tau1")),
    }


def test_reduced_coproduct_rejects_units():
    a1 = builtin("A1")
    with pytest.raises(PresentationError):
        a1.reduced_coproduct(mono(a1, "1"))
    with pytest.raises(PresentationError):
        a1.reduced_coproduct(mono(a1, "tau^2"))


def _full_coproduct_sum(p, m):
    """Delta(m) as a set of (k, a, b), tau power of m folded in."""
    exps, k0 = m
    return {(k + k0, a, b) for (k, a, b) in p.coproduct_exps(exps)}


def test_coassociativity_on_basis_up_to_degree_20():
    for name in ("A1", "A2", "A1-mod-tau", "A2-mod-tau"):
        p = builtin(name)
        for exps in p.all_monomial_exps():
            t, _ = p.degree_of_exps(exps)
            if t == 0 or t > 20:
                continue
            lhs, rhs = set(), set()
            for (k, a, b) in p.coproduct_exps(exps):
                for (k2, a2, b2) in p.coproduct_exps(a):
                    lhs ^= {(k + k2, a2, b2, b)}
                for (k2, a2, b2) in p.coproduct_exps(b):
                    rhs ^= {(k + k2, a, a2, b2)}
            assert lhs == rhs, f"{name}: coassociativity fails on {exps}"


def test_counit_on_basis():
    for name in ("A1", "A2-mod-tau"):
        p = builtin(name)
        for exps in p.all_monomial_exps():
            terms = p.coproduct_exps(exps)
            left = {(b, k) for (k, a, b) in terms if a == p.unit_exps}
            right = {(a, k) for (k, a, b) in terms if b == p.unit_exps}
            assert left == {(exps, 0)}
            assert right == {(exps, 0)}


def test_coproduct_multiplicative_random():
    rng = random.Random(12)
    p = builtin("A2")
    monos = p.all_monomial_exps()
    for _ in range(60):
        a = rng.choice(monos)
        b = rng.choice(monos)
        ab = p.reduce_exps([x + y for x, y in zip(a, b)])
        lhs = set() if ab is None else {
            (k + ab[1], x, y) for (k, x, y) in p.coproduct_exps(ab[0])
        }
        rhs = set()
        for (k1, a1, b1) in p.coproduct_exps(a):
            for (k2, a2, b2) in p.coproduct_exps(b):
                left = p.reduce_exps([x + y for x, y in zip(a1, a2)])
                right = p.reduce_exps([x + y for x, y in zip(b1, b2)])
                if left is None or right is None:
                    continue
                rhs ^= {(k1 + k2 + left[1] + right[1], left[0], right[0])}
        assert lhs == rhs


# ----------------------------------------------------------------- files

def test_round_trip_through_dict():
    for name in ("A1", "A2-mod-tau"):
        p = builtin(name)
        data = to_dict(p)
        data["name"] = "custom-" + name
        q = from_dict(json.loads(json.dumps(data)))
        assert q.ngens == p.ngens
        assert [g[:4] for g in q.gens] == [g[:4] for g in p.gens]
        assert q.coproducts == p.coproducts


def test_reserved_names_rejected():
    data = to_dict(builtin("A1"))
    with pytest.raises(PresentationError):
        from_dict(data)


def test_bad_coproduct_rejected():
    data = to_dict(builtin("A1"))
    data["name"] = "broken"
    # Missing the 1 (x) tau1 end: fails the counit law.
    data["coproduct"]["tau1"] = [["tau1", "1"], ["xi1", "tau0"]]
    with pytest.raises(PresentationError):
        from_dict(data)
    # Inhomogeneous term.
    data["coproduct"]["tau1"] = [["tau1", "1"], ["1", "tau1"], ["xi1", "tau1"]]
    with pytest.raises(PresentationError):
        from_dict(data)


def test_resolve_algebra(tmp_path):
    p = builtin("A1")
    assert hopf.resolve_algebra("A1") is p
    data = to_dict(p)
    data["name"] = "my-algebra"
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(data))
    q = hopf.resolve_algebra(str(path))
    assert q.name == "my-algebra"
    with pytest.raises(PresentationError):
        hopf.resolve_algebra("missing")
