"""The cobar complex of a Hopf presentation; the reference Ext engine.

Words [m1|...|mf] of positive-degree reduced monomials span the cobar
complex; the differential inserts the reduced coproduct into each slot (no
signs over F2) and the concatenation product makes the complex a DGA.  We
grade by (stem, filtration, weight) with stem = internal degree - f, so the
class of [tau0] sits at (0, 1, 0).

Everything is computed one tridegree at a time.  For a presentation with
tau, fixing (s, f, w) fixes the tau power of each word (the power is the
word's weight excess over w), so words are stored as bare tuples of
exponent vectors and every slice is finite.  Slices at w < -1 are
tau-shifts of the w = -1 slice and are never materialized.

Homology bases are canonical echelon representatives of kernel modulo
image in the fixed word order, so class indices are reproducible across
runs and thread schedules.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from . import gf2lin
from .gf2lin import Echelon, SparseMatrixF2, SubspaceBasis
from .hopf import HopfPresentation

Word = tuple  # tuple of tau-free exponent vectors, one per slot


class ClassKey(NamedTuple):
    """A basis element of Ext in one tridegree."""

    s: int
    f: int
    w: int
    index: int

    @property
    def tridegree(self):
        return (self.s, self.f, self.w)


class BracketResult(NamedTuple):
    value: frozenset  # F2-sum of ClassKey for one representative of the coset
    indeterminacy: SubspaceBasis  # subspace of the target group, class coordinates


class _Slice(NamedTuple):
    words: list
    index: dict
    bound_ech: Echelon  # image of the incoming differential
    reps: list  # canonical homology representatives, packed over words
    express_ech: Echelon  # boundaries + tagged reps


class CobarEngine:
    """Per-tridegree cobar homology of one presentation, with products."""

    def __init__(self, p: HopfPresentation):
        self.p = p
        self._basis_cache: dict[tuple, list] = {}
        self._dword_cache: dict[Word, frozenset] = {}
        self._slice_cache: dict[tuple, _Slice] = {}
        self._wbound_cache: dict[tuple, tuple] = {}
        self._by_degree: Optional[dict] = None

    # ------------------------------------------------------------- words

    def _positive_by_degree(self) -> dict:
        if self._by_degree is None:
            table: dict[int, list] = {}
            for exps in self.p.all_monomial_exps():
                t, w = self.p.degree_of_exps(exps)
                if t > 0:
                    table.setdefault(t, []).append((exps, w))
            self._by_degree = table
        return self._by_degree

    def _weight_bounds(self, length: int, total_t: int):
        """(min, max) achievable weight sum for words of given length and degree."""
        key = (length, total_t)
        if key in self._wbound_cache:
            return self._wbound_cache[key]
        if length == 0:
            result = (0, 0) if total_t == 0 else None
        elif total_t < length:
            result = None
        else:
            result = None
            for t, monos in self._positive_by_degree().items():
                if t > total_t:
                    continue
                rest = self._weight_bounds(length - 1, total_t - t)
                if rest is None:
                    continue
                ws = [w for _, w in monos]
                lo, hi = min(ws) + rest[0], max(ws) + rest[1]
                result = (lo, hi) if result is None else (min(result[0], lo), max(result[1], hi))
        self._wbound_cache[key] = result
        return result

    def word_degree(self, word: Word):
        t = w = 0
        for exps in word:
            et, ew = self.p.degree_of_exps(exps)
            t += et
            w += ew
        return t, w

    def tau_power(self, word: Word, w: int) -> int:
        return self.word_degree(word)[1] - w

    def basis(self, s: int, f: int, w: int) -> list:
        """All words at (s, f, w), in lexicographic order on the slot tuples."""
        key = (s, f, w)
        cached = self._basis_cache.get(key)
        if cached is not None:
            return cached
        total_t = s + f
        out: list = []
        if f == 0:
            if total_t == 0 and (w == 0 or (self.p.has_tau and w < 0)):
                out = [()]
        elif f > 0 and total_t >= f:
            table = self._positive_by_degree()
            degrees = sorted(table)
            has_tau = self.p.has_tau

            def extend(prefix, slots_left, t_left, w_sum):
                if slots_left == 0:
                    if t_left == 0:
                        k = w_sum - w
                        if k == 0 or (has_tau and k > 0):
                            out.append(tuple(prefix))
                    return
                for t in degrees:
                    if t > t_left - (slots_left - 1):
                        break
                    rest = self._weight_bounds(slots_left - 1, t_left - t)
                    if rest is None:
                        continue
                    for exps, mw in table[t]:
                        total_lo = w_sum + mw + rest[0]
                        total_hi = w_sum + mw + rest[1]
                        if has_tau:
                            if total_hi < w:
                                continue
                        else:
                            if not (total_lo <= w <= total_hi):
                                continue
                        prefix.append(exps)
                        extend(prefix, slots_left - 1, t_left - t, w_sum + mw)
                        prefix.pop()

            extend([], f, total_t, 0)
            out.sort()
        self._basis_cache[key] = out
        return out

    # ------------------------------------------------------ differential

    def d_word(self, word: Word) -> frozenset:
        """Differential of a single word, as an F2-set of words."""
        cached = self._dword_cache.get(word)
        if cached is not None:
            return cached
        p = self.p
        acc: set = set()
        for i, exps in enumerate(word):
            for (left, right) in p.reduced_coproduct((exps, 0)):
                # left carries the tau shift; word tau powers are implicit.
                new = word[:i] + (left[0], right[0]) + word[i + 1 :]
                acc ^= {new}
        result = frozenset(acc)
        self._dword_cache[word] = result
        return result

    def differential(self, s: int, f: int, w: int) -> SparseMatrixF2:
        """Matrix of d from the (s, f, w) slice to the (s-1, f+1, w) slice."""
        source = self.basis(s, f, w)
        target = self.basis(s - 1, f + 1, w)
        tindex = {word: i for i, word in enumerate(target)}
        entries = []
        for j, word in enumerate(source):
            for out in self.d_word(word):
                entries.append((tindex[out], j))
        return SparseMatrixF2(len(target), len(source), entries)

    def d_vector(self, s: int, f: int, w: int, vec: int) -> int:
        """Apply d to a packed vector over basis(s, f, w), packed over the target."""
        source = self.basis(s, f, w)
        target_index = {word: i for i, word in enumerate(self.basis(s - 1, f + 1, w))}
        out = 0
        for j in gf2lin.bits(vec):
            for word in self.d_word(source[j]):
                out ^= 1 << target_index[word]
        return out

    # ---------------------------------------------------------- homology

    def _slice(self, s: int, f: int, w: int) -> _Slice:
        key = (s, f, w)
        cached = self._slice_cache.get(key)
        if cached is not None:
            return cached
        words = self.basis(s, f, w)
        index = {word: i for i, word in enumerate(words)}
        n = len(words)

        bvecs = []
        if f > 0:
            for word in self.basis(s + 1, f - 1, w):
                v = 0
                for out in self.d_word(word):
                    v ^= 1 << index[out]
                bvecs.append(v)
        bound_rows = gf2lin.span_rref(bvecs, n)

        target_index = {word: i for i, word in enumerate(self.basis(s - 1, f + 1, w))}
        dvecs = []
        for word in words:
            v = 0
            for out in self.d_word(word):
                v ^= 1 << target_index[out]
            dvecs.append(v)
        kernel, _ = gf2lin.kernel_and_image(dvecs, len(target_index))

        # Reduction modulo boundaries is a linear projection, so the span of
        # the projected cycles is canonical and its RREF is the rep basis.
        projected = gf2lin.reduce_mod_rref(kernel, bound_rows, n)
        reps = gf2lin.span_rref([v for v in projected if v], n)

        bound_ech = Echelon()
        ech = Echelon(tag_start=n)
        for v in bound_rows:
            bound_ech.add(v)
            ech.add(v)
        for i, v in enumerate(reps):
            ech.add(v | 1 << (n + i))
        sl = _Slice(words, index, bound_ech, reps, ech)
        self._slice_cache[key] = sl
        return sl

    def cycle_space(self, s: int, f: int, w: int) -> SubspaceBasis:
        return gf2lin.kernel_basis(self.differential(s, f, w))

    def boundary_space(self, s: int, f: int, w: int) -> SubspaceBasis:
        sl = self._slice(s, f, w)
        return SubspaceBasis(len(sl.words), sl.bound_ech.rows.values())

    def dim(self, s: int, f: int, w: int) -> int:
        return len(self._slice(s, f, w).reps)

    def ext_group(self, s: int, f: int, w: int) -> list[ClassKey]:
        return [ClassKey(s, f, w, i) for i in range(self.dim(s, f, w))]

    def representative(self, key: ClassKey) -> int:
        return self._slice(*key.tridegree).reps[key.index]

    def representative_words(self, key: ClassKey) -> list:
        sl = self._slice(*key.tridegree)
        return [sl.words[i] for i in gf2lin.bits(sl.reps[key.index])]

    def express(self, s: int, f: int, w: int, vec: int) -> int:
        """Coordinates of a cycle in the canonical homology basis (packed bits).

        Raises if the vector is not a cycle of that slice.
        """
        sl = self._slice(s, f, w)
        res = sl.express_ech.reduce(vec)
        if res & ((1 << len(sl.words)) - 1):
            raise ValueError(f"vector is not a cycle at {(s, f, w)})")
        return res >> len(sl.words)

    def express_keys(self, s: int, f: int, w: int, vec: int) -> frozenset:
        coords = self.express(s, f, w, vec)
        return frozenset(ClassKey(s, f, w, i) for i in gf2lin.bits(coords))

    # ---------------------------------------------------------- products

    def product_vector(self, deg_a, vec_a: int, deg_b, vec_b: int):
        """Concatenation product of two packed cochains; returns (tridegree, vector)."""
        sa, fa, wa = deg_a
        sb, fb, wb = deg_b
        target = (sa + sb, fa + fb, wa + wb)
        sl_a = self._slice(*deg_a)
        sl_b = self._slice(*deg_b)
        tindex = self._slice(*target).index
        out = 0
        for i in gf2lin.bits(vec_a):
            wa_word = sl_a.words[i]
            for j in gf2lin.bits(vec_b):
                word = wa_word + sl_b.words[j]
                out ^= 1 << tindex[word]
        return target, out

    def product(self, a: ClassKey, b: ClassKey) -> frozenset:
        """Product of two classes as an F2-sum of classes in the target tridegree."""
        target, vec = self.product_vector(
            a.tridegree, self.representative(a), b.tridegree, self.representative(b)
        )
        return self.express_keys(*target, vec)

    def tau_action(self, a: ClassKey) -> frozenset:
        """Multiply by tau: same words, weight drops by one."""
        if not self.p.has_tau:
            raise ValueError("tau acts only on presentations with tau")
        s, f, w = a.tridegree
        sl = self._slice(s, f, w)
        tindex = self._slice(s, f, w - 1).index
        vec = 0
        for i in gf2lin.bits(self.representative(a)):
            vec ^= 1 << tindex[sl.words[i]]
        return self.express_keys(s, f, w - 1, vec)

    def tau_matrix(self, s: int, f: int, w: int) -> SparseMatrixF2:
        """Matrix of tau from classes at (s, f, w) to classes at (s, f, w-1)."""
        n = self.dim(s, f, w)
        entries = []
        for i in range(n):
            for key in self.tau_action(ClassKey(s, f, w, i)):
                entries.append((key.index, i))
        return SparseMatrixF2(self.dim(s, f, w - 1), n, entries)

    # ------------------------------------------------------------ massey

    def massey_triple(self, a: ClassKey, b: ClassKey, c: ClassKey) -> BracketResult:
        """Triple Massey product <a, b, c>; requires ab = 0 and bc = 0.

        The returned value is U.C + A.V for the canonical nullhomotopies
        d(U) = A.B, d(V) = B.C produced by gf2lin.solve; the indeterminacy
        is a.Ext + Ext.c in the target tridegree.
        """
        if self.product(a, b):
            raise ValueError("bracket undefined: ab is nonzero")
        if self.product(b, c):
            raise ValueError("bracket undefined: bc is nonzero")
        A, B, C = (self.representative(k) for k in (a, b, c))
        dab, ab_vec = self.product_vector(a.tridegree, A, b.tridegree, B)
        dbc, bc_vec = self.product_vector(b.tridegree, B, c.tridegree, C)
        u_deg = (dab[0] + 1, dab[1] - 1, dab[2])
        v_deg = (dbc[0] + 1, dbc[1] - 1, dbc[2])
        U = gf2lin.solve(self.differential(*u_deg), ab_vec)
        V = gf2lin.solve(self.differential(*v_deg), bc_vec)
        if U is None or V is None:
            raise AssertionError("product of classes is zero yet not a boundary")
        t1, uc = self.product_vector(u_deg, U, c.tridegree, C)
        t2, av = self.product_vector(a.tridegree, A, v_deg, V)
        assert t1 == t2
        value = self.express_keys(*t1, uc ^ av)

        indet = []
        s, f, w = t1
        for left, right in ((a, (s - a.s, f - a.f, w - a.w)), (c, (s - c.s, f - c.f, w - c.w))):
            for i in range(self.dim(*right)):
                term = self.product(left, ClassKey(right[0], right[1], right[2], i))
                vec = 0
                for key in term:
                    vec |= 1 << key.index
                indet.append(vec)
        n = self.dim(*t1)
        return BracketResult(value, SubspaceBasis(n, indet))
