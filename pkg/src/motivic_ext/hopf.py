"""Presentations of trigraded commutative Hopf algebras over F2.

A presentation lists generators with bidegrees (t, w) = (internal degree,
weight), nilpotence heights with rewrite rules (g^h equals an optional
tau-multiple of another monomial, or zero), and the full coproduct of each
generator.  tau is not a generator: it is a distinguished central grouplike
of bidegree (0, -1), carried on monomials as a separate exponent, so every
(t, w) slice of the monomial basis is finite even when tau is present.

Monomials are pairs (exps, k): a tuple of generator exponents, all below
the heights, plus the tau power k >= 0.  F2-sums of monomials are Python
sets with symmetric-difference arithmetic.  Coproducts are stored as sets
of triples (k, left_exps, right_exps) with both factors reduced and the
whole tau power pulled out front.

Built-in presentations: the dual subalgebras of the motivic mod-2 Steenrod
algebra generated by the first n + 1 squares, for n = 1, 2, and their
quotients by tau.
"""

from __future__ import annotations

import json
from itertools import product as iproduct
from typing import NamedTuple, Optional

Exps = tuple  # generator exponent vector
Monomial = tuple  # (Exps, tau_power)

MAX_REWRITE_PASSES = 64


class Gen(NamedTuple):
    name: str
    t: int
    w: int
    height: int
    rewrite: Optional[Monomial]  # value of g**height; None means zero


class PresentationError(ValueError):
    pass


class HopfPresentation:
    """Immutable validated presentation; all operations are pure."""

    def __init__(self, name, has_tau, gens, coproducts, validate=True):
        self.name = name
        self.has_tau = bool(has_tau)
        self.gens = tuple(gens)
        self.ngens = len(self.gens)
        if len({g.name for g in self.gens}) != self.ngens:
            raise PresentationError("duplicate generator names")
        self.gen_index = {g.name: i for i, g in enumerate(self.gens)}
        # coproducts[i]: frozenset of (k, left_exps, right_exps) for gens[i]
        self.coproducts = tuple(frozenset(c) for c in coproducts)
        self._unit = tuple([0] * self.ngens)
        self._coproduct_cache: dict[Exps, frozenset] = {}
        self._all_monomials = None
        if validate:
            self._validate()

    # ----------------------------------------------------------- basics

    @property
    def unit_exps(self) -> Exps:
        return self._unit

    def degree_of_exps(self, exps: Exps) -> tuple[int, int]:
        t = w = 0
        for e, g in zip(exps, self.gens):
            t += e * g.t
            w += e * g.w
        return t, w

    def degree(self, m: Monomial) -> tuple[int, int]:
        t, w = self.degree_of_exps(m[0])
        return t, w - m[1]

    def monomial(self, exps, k=0) -> Monomial:
        return (tuple(exps), k)

    # ----------------------------------------------------- multiplication

    def reduce_exps(self, exps) -> Optional[Monomial]:
        """Rewrite exponents below the heights; returns (exps, extra_tau) or None."""
        exps = list(exps)
        k = 0
        for _ in range(MAX_REWRITE_PASSES):
            for i, g in enumerate(self.gens):
                if exps[i] >= g.height:
                    exps[i] -= g.height
                    if g.rewrite is None:
                        return None
                    rexps, rk = g.rewrite
                    k += rk
                    for j, e in enumerate(rexps):
                        exps[j] += e
                    break
            else:
                return (tuple(exps), k)
        raise PresentationError("rewrite rules do not terminate")

    def multiply(self, a: Monomial, b: Monomial) -> set:
        """Product of two reduced monomials as an F2-sum (empty set = zero)."""
        exps = [x + y for x, y in zip(a[0], b[0])]
        red = self.reduce_exps(exps)
        if red is None:
            return set()
        return {(red[0], red[1] + a[1] + b[1])}

    def multiply_sums(self, xs: set, ys: set) -> set:
        out: set = set()
        for a in xs:
            for b in ys:
                out ^= self.multiply(a, b)
        return out

    # ----------------------------------------------------------- coproduct

    def coproduct_exps(self, exps: Exps) -> frozenset:
        """Full coproduct of a tau-free reduced monomial.

        Returns a frozenset of (k, left_exps, right_exps); multiplicative in
        the generators, with each tensor factor reduced and the resulting
        tau powers collected out front.
        """
        cached = self._coproduct_cache.get(exps)
        if cached is not None:
            return cached
        terms = {(0, self._unit, self._unit)}
        for i, e in enumerate(exps):
            for _ in range(e):
                new: set = set()
                for (k1, a1, b1) in terms:
                    for (k2, a2, b2) in self.coproducts[i]:
                        left = self.reduce_exps([x + y for x, y in zip(a1, a2)])
                        if left is None:
                            continue
                        right = self.reduce_exps([x + y for x, y in zip(b1, b2)])
                        if right is None:
                            continue
                        term = (k1 + k2 + left[1] + right[1], left[0], right[0])
                        if term in new:
                            new.remove(term)
                        else:
                            new.add(term)
                terms = new
        result = frozenset(terms)
        self._coproduct_cache[exps] = result
        return result

    def reduced_coproduct(self, m: Monomial) -> set:
        """Delta(m) - m (x) 1 - 1 (x) m, as pairs of monomials.

        Requires positive internal degree (m = 1 and m = tau^k are
        rejected).  Tau powers are carried on the left factor.
        """
        exps, k = m
        if self.degree_of_exps(exps)[0] <= 0:
            raise PresentationError("reduced coproduct needs positive internal degree")
        out = set()
        for (kk, a, b) in self.coproduct_exps(exps):
            if a == self._unit or b == self._unit:
                continue
            out.add(((a, k + kk), (b, 0)))
        return out

    # ----------------------------------------------------------- monomials

    def all_monomial_exps(self) -> list[Exps]:
        """Every reduced tau-free exponent vector, in lexicographic order."""
        if self._all_monomials is None:
            ranges = [range(g.height) for g in self.gens]
            self._all_monomials = sorted(iproduct(*ranges))
        return self._all_monomials

    def monomial_basis(self, deg: tuple[int, int]) -> list[Monomial]:
        """All reduced monomials of bidegree ``deg``, in lex order, tau power last.

        For a tau-free presentation the tau power is forced to zero; with tau
        the weight constraint determines the power, which must be >= 0.
        """
        t, w = deg
        out = []
        for exps in self.all_monomial_exps():
            mt, mw = self.degree_of_exps(exps)
            if mt != t:
                continue
            k = mw - w
            if k == 0 or (self.has_tau and k > 0):
                out.append((exps, k))
        return out

    def positive_monomial_exps_by_degree(self, max_t: int) -> dict[int, list[Exps]]:
        """Positive-internal-degree exponent vectors grouped by t, lex-sorted."""
        table: dict[int, list[Exps]] = {}
        for exps in self.all_monomial_exps():
            mt, _ = self.degree_of_exps(exps)
            if 0 < mt <= max_t:
                table.setdefault(mt, []).append(exps)
        return table

    # ----------------------------------------------------------- validation

    def _validate(self):
        if not self.has_tau:
            for g in self.gens:
                if g.rewrite is not None and g.rewrite[1] > 0:
                    raise PresentationError(
                        f"rewrite of {g.name} uses tau in a tau-free presentation"
                    )
        for i, g in enumerate(self.gens):
            if g.t < 0:
                raise PresentationError(f"generator {g.name} has negative internal degree")
            if g.t == 0:
                raise PresentationError(
                    f"generator {g.name} has internal degree 0; only tau may sit there"
                )
            if g.height < 2:
                raise PresentationError(f"generator {g.name} needs height >= 2")
            if g.rewrite is not None:
                rt, rw = self.degree(g.rewrite)
                if (rt, rw) != (g.t * g.height, g.w * g.height):
                    raise PresentationError(
                        f"rewrite of {g.name}^{g.height} is not bidegree-homogeneous"
                    )
            self._validate_coproduct(i)
        self._validate_coassociativity()

    def _validate_coproduct(self, i: int):
        g = self.gens[i]
        terms = self.coproducts[i]
        left_unit = set()
        right_unit = set()
        for (k, a, b) in terms:
            ta, wa = self.degree_of_exps(a)
            tb, wb = self.degree_of_exps(b)
            if (ta + tb, wa + wb - k) != (g.t, g.w):
                raise PresentationError(f"coproduct of {g.name} is not homogeneous")
            if a == self._unit:
                left_unit.add((b, k))
            if b == self._unit:
                right_unit.add((a, k))
        expected = {(tuple(1 if j == i else 0 for j in range(self.ngens)), 0)}
        if left_unit != expected or right_unit != expected:
            raise PresentationError(f"coproduct of {g.name} fails the counit law")

    def _validate_coassociativity(self):
        for i, g in enumerate(self.gens):
            lhs = set()  # (k, a, b, c) from (Delta (x) 1) Delta
            for (k, a, b) in self.coproducts[i]:
                for (k2, a2, b2) in self.coproduct_exps(a):
                    t = (k + k2, a2, b2, b)
                    lhs ^= {t}
            rhs = set()
            for (k, a, b) in self.coproducts[i]:
                for (k2, a2, b2) in self.coproduct_exps(b):
                    t = (k + k2, a, a2, b2)
                    rhs ^= {t}
            if lhs != rhs:
                raise PresentationError(f"coproduct of {g.name} is not coassociative")

    # ----------------------------------------------------------- formatting

    def format_monomial(self, m: Monomial) -> str:
        exps, k = m
        parts = []
        if k == 1:
            parts.append("tau")
        elif k > 1:
            parts.append(f"tau^{k}")
        for e, g in zip(exps, self.gens):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return " ".join(parts) if parts else "1"

    def parse_monomial(self, text: str) -> Optional[Monomial]:
        """Inverse of format_monomial; '0' yields None (the zero element)."""
        text = text.strip()
        if text == "0":
            return None
        exps = [0] * self.ngens
        k = 0
        if text != "1":
            for factor in text.replace("*", " ").split():
                name, _, power = factor.partition("^")
                e = int(power) if power else 1
                if name == "tau":
                    k += e
                elif name in self.gen_index:
                    exps[self.gen_index[name]] += e
                else:
                    raise PresentationError(f"unknown generator {name!r} in {text!r}")
        if k and not self.has_tau:
            raise PresentationError(f"tau appears in monomial for tau-free algebra: {text!r}")
        red = self.reduce_exps(exps)
        if red is None:
            return None
        return (red[0], k + red[1])

    def __repr__(self):
        return f"HopfPresentation({self.name!r}, {self.ngens} generators, has_tau={self.has_tau})"

    # ----------------------------------------------------------- hashing

    def content_key(self) -> str:
        """Deterministic serialization used for cache keys."""
        return json.dumps(to_dict(self), sort_keys=True)


# ------------------------------------------------------------------ presets

def _motivic_subalgebra(n: int, mod_tau: bool) -> HopfPresentation:
    """Dual of the subalgebra generated by the first n+1 squares, or its tau quotient."""
    names = [f"tau{i}" for i in range(n + 1)] + [f"xi{i}" for i in range(1, n + 1)]
    index = {nm: i for i, nm in enumerate(names)}
    ngens = len(names)

    def mono(name_powers, k=0):
        exps = [0] * ngens
        for nm, e in name_powers:
            exps[index[nm]] += e
        return (tuple(exps), k)

    gens = []
    for i in range(n + 1):
        if i < n and not mod_tau:
            rewrite = mono([(f"xi{i + 1}", 1)], 1)  # tau_i^2 = tau * xi_{i+1}
        else:
            rewrite = None
        gens.append(Gen(f"tau{i}", 2 ** (i + 1) - 1, 2 ** i - 1, 2, rewrite))
    for i in range(1, n + 1):
        gens.append(Gen(f"xi{i}", 2 ** (i + 1) - 2, 2 ** i - 1, 2 ** (n + 1 - i), None))

    coproducts = []
    for i in range(n + 1):  # tau_i
        terms = [(0, mono([(f"tau{i}", 1)])[0], mono([])[0])]
        for k in range(i + 1):
            left = mono([(f"xi{i - k}", 2 ** k)]) if i - k > 0 else mono([])
            terms.append((0, left[0], mono([(f"tau{k}", 1)])[0]))
        coproducts.append(terms)
    for i in range(1, n + 1):  # xi_i
        terms = []
        for k in range(i + 1):
            left = mono([(f"xi{i - k}", 2 ** k)]) if i - k > 0 else mono([])
            right = mono([(f"xi{k}", 1)]) if k > 0 else mono([])
            terms.append((0, left[0], right[0]))
        coproducts.append(terms)

    name = f"A{n}-mod-tau" if mod_tau else f"A{n}"
    return HopfPresentation(name, not mod_tau, gens, coproducts)


_PRESETS = {
    "A1": lambda: _motivic_subalgebra(1, False),
    "A1-mod-tau": lambda: _motivic_subalgebra(1, True),
    "A2": lambda: _motivic_subalgebra(2, False),
    "A2-mod-tau": lambda: _motivic_subalgebra(2, True),
}

PRESET_NAMES = tuple(sorted(_PRESETS))
_preset_cache: dict[str, HopfPresentation] = {}


def builtin(name: str) -> HopfPresentation:
    if name not in _PRESETS:
        raise PresentationError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if name not in _preset_cache:
        _preset_cache[name] = _PRESETS[name]()
    return _preset_cache[name]


def quotient_by_tau(p: HopfPresentation) -> HopfPresentation:
    """Kill tau: rewrite targets containing tau become zero."""
    if not p.has_tau:
        raise PresentationError(f"{p.name} is already tau-free")
    gens = [
        g._replace(rewrite=None if (g.rewrite is None or g.rewrite[1] > 0) else g.rewrite)
        for g in p.gens
    ]
    coproducts = [
        [(k, a, b) for (k, a, b) in terms if k == 0] for terms in p.coproducts
    ]
    return HopfPresentation(p.name + "-mod-tau", False, gens, coproducts)


# ------------------------------------------------------------------ files

def to_dict(p: HopfPresentation) -> dict:
    return {
        "name": p.name,
        "has_tau": p.has_tau,
        "generators": [
            {
                "name": g.name,
                "t": g.t,
                "w": g.w,
                "height": g.height,
                "rewrite": "0" if g.rewrite is None else p.format_monomial(g.rewrite),
            }
            for g in p.gens
        ],
        "coproduct": {
            g.name: sorted(
                [p.format_monomial((a, k)), p.format_monomial((b, 0))]
                for (k, a, b) in sorted(p.coproducts[i])
            )
            for i, g in enumerate(p.gens)
        },
    }


def from_dict(data: dict) -> HopfPresentation:
    name = data["name"]
    if name in _PRESETS:
        raise PresentationError(f"presentation name {name!r} is reserved for a preset")
    gens = []
    names = [g["name"] for g in data["generators"]]
    for g in data["generators"]:
        gens.append(Gen(g["name"], int(g["t"]), int(g["w"]), int(g["height"]), None))
    shell = HopfPresentation(name, data["has_tau"], gens, [[] for _ in gens], validate=False)
    gens2 = []
    for g, raw in zip(gens, data["generators"]):
        rewrite = shell.parse_monomial(raw.get("rewrite", "0"))
        gens2.append(g._replace(rewrite=rewrite))
    shell2 = HopfPresentation(name, data["has_tau"], gens2, [[] for _ in gens], validate=False)
    coproducts = []
    for nm in names:
        terms = []
        for pair in data["coproduct"][nm]:
            left = shell2.parse_monomial(pair[0])
            right = shell2.parse_monomial(pair[1])
            if left is None or right is None:
                raise PresentationError(f"zero factor in coproduct of {nm}")
            if right[1] != 0:
                left = (left[0], left[1] + right[1])
                right = (right[0], 0)
            terms.append((left[1], left[0], right[0]))
        coproducts.append(terms)
    return HopfPresentation(name, data["has_tau"], gens2, coproducts)


def load_presentation(path: str) -> HopfPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return from_dict(json.load(fh))


def resolve_algebra(spec: str) -> HopfPresentation:
    """A preset name, or a path to a presentation JSON file."""
    if spec in _PRESETS:
        return builtin(spec)
    if spec.endswith(".json"):
        return load_presentation(spec)
    raise PresentationError(f"unknown algebra {spec!r}; not a preset and not a .json path")
