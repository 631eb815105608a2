"""Miura map into the Heisenberg vertex algebra, n-products, and level checks.

The Heisenberg algebra is the diagonal part of the reduced realization, so
the same :class:`ReducedAlgebra` engine serves both sides of the map.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .brst import Report
from .pyramid import ODD_KINDS, Kind, Pyramid
from .scalar import ONE, Scalar, alpha
from .statespace import (Mode, ModeAlgebra, ReducedAlgebra, State, add_scaled, energy,
                         is_heisenberg, mode_deg, mono_parity)
from .walgebra import (Realization, apply_word, cdet_expand, generator_indices,
                       generators, hilbert_product, miura_factors, ordered_monomials)


class NotInReducedForm(ValueError):
    """Raised when a state has modes outside the lower-triangular ``e`` generators."""


# Miura projection -------------------------------------------------------------

def miura_project(v: State) -> State:
    """Drop every monomial that contains a strictly lower ``e_ij`` (``i > j``)."""
    out = {}
    for mono, c in v.terms.items():
        for x in mono:
            if x.kind != Kind.ELOW:
                raise NotInReducedForm(f"{x} is not a lower-triangular e mode")
        if is_heisenberg(mono):
            out[mono] = c
    return State.wrap(out)


def miura_expand(p: Pyramid, alg: ReducedAlgebra | None = None) -> dict[tuple[int, int], State]:
    """Coefficients ``v_l^(r)|0>`` of ``(x + a_1 T + e_11(u)) ... (x + a_n T + e_nn(u))``."""
    real = Realization(p, "reduced", reduced=alg)
    vec = apply_word(real, miura_factors(p))
    n = p.n
    out = {}
    for (xp, up), terms in vec.items():
        if xp < n and terms:
            out[(n - xp, up)] = State.wrap(terms)
    return out


def verify_miura(p: Pyramid, alg: ReducedAlgebra | None = None) -> Report:
    alg = alg or ReducedAlgebra(p)
    rep = Report("miura", str(p), 0,
                 statement="Miura projection of w_l^(r)|0> equals v_l^(r)|0> for admissible (l, r)")
    gens = generators(p, realization=Realization(p, "reduced", reduced=alg))
    vs = miura_expand(p, alg)
    for (l, r), w in gens.items():
        rep.checks += 1
        lhs = miura_project(w)
        rhs = vs.get((l, r), State.zero())
        if lhs != rhs:
            rep.status = "fail"
            rep.counterexample = {"l": l, "r": r, "projected": str(lhs), "expected": str(rhs)}
            break
    return rep


# n-products --------------------------------------------------------------------

def gen_binomial(a: int, j: int) -> int:
    """``a (a-1) ... (a-j+1) / j!`` for any integer ``a``."""
    num, den = 1, 1
    for t in range(j):
        num *= a - t
        den *= t + 1
    return num // den


class VertexOps:
    """``a_(n) b`` for states of one realization, by reconstruction.

    ``Y(x_(-j-1) a', z) = :(d^j/j!) x(z) Y(a', z):`` with ``x`` the leftmost
    mode of a PBW monomial; nested products associate to the right.  For
    ``E``, ``psi`` and ``e`` the field mode ``x_(n)`` is ``x[n]``; for ``psi*``
    it is ``psi*[n+1]``.
    """

    def __init__(self, alg: ModeAlgebra):
        self.alg = alg
        self._cache: dict = {}

    @staticmethod
    def field_index(x: Mode) -> int:
        return x.m - 1 if x.kind == Kind.PSISTAR else x.m

    @staticmethod
    def _mode_at(x: Mode, i: int) -> Mode:
        return x._replace(m=i + 1 if x.kind == Kind.PSISTAR else i)

    def _mono(self, amono: tuple, n: int, bmono: tuple) -> dict:
        key = (amono, n, bmono)
        res = self._cache.get(key)
        if res is not None:
            return res
        alg = self.alg
        res = {}
        if not amono:
            if n == -1:
                res = {bmono: ONE}
        else:
            x, rest = amono[0], amono[1:]
            j = -self.field_index(x) - 1
            ea, eb = energy(rest), energy(bmono)
            # i < 0:  (d^(j) x)_(i) a'_(n-i-1) b
            for i in range(n - ea - eb, 0):
                c = (-1) ** j * gen_binomial(i, j)
                if not c:
                    continue
                inner = self._mono(rest, n - i - 1, bmono)
                if inner:
                    add_scaled(res, alg.act_dict(self._mode_at(x, i - j), inner), Scalar.const(c))
            # i >= 0:  +- a'_(n-i-1) (d^(j) x)_(i) b
            sign = -1 if (x.kind in ODD_KINDS and mono_parity(rest)) else 1
            top = eb + j + (0 if x.kind == Kind.PSISTAR else 1)
            for i in range(0, top):
                c = (-1) ** j * gen_binomial(i, j) * sign
                if not c:
                    continue
                xb = alg._act_mono(self._mode_at(x, i - j), bmono)
                for mono2, c2 in xb.items():
                    add_scaled(res, self._mono(rest, n - i - 1, mono2), c2 * c)
        self._cache[key] = res
        return res

    def n_product(self, a: State, n: int, b: State) -> State:
        out: dict = {}
        for am, ca in a.terms.items():
            for bm, cb in b.terms.items():
                t = self._mono(am, n, bm)
                if t:
                    add_scaled(out, t, ca * cb)
        return State.wrap(out)


def n_product(alg: ModeAlgebra, a: State, n: int, b: State) -> State:
    return VertexOps(alg).n_product(a, n, b)


def state_degree(v: State) -> int:
    """Common conformal degree of a homogeneous state."""
    degs = {sum(mode_deg(x) for x in mono) for mono in v.terms}
    if len(degs) != 1:
        raise ValueError(f"state is not homogeneous, degrees {sorted(degs)}")
    return degs.pop()


# critical level --------------------------------------------------------------------

def critical_commutativity(p: Pyramid, extra: int = 1) -> Report:
    """Non-negative products of generators vanish at ``k = -N``.

    Window ``0 <= n < deg' w + deg' w'``; the next ``extra`` values of ``n``
    are computed too and must vanish identically in ``k``.
    """
    alg = ReducedAlgebra(p)
    ops = VertexOps(alg)
    gens = generators(p, realization=Realization(p, "reduced", reduced=alg))
    crit = -p.N
    rep = Report("critical", str(p), 0,
                 statement="w_(n) w'|0> = 0 for all generators w, w' and n >= 0 at k = -N")
    nonzero_generic = []
    for (l1, r1), w1 in gens.items():
        for (l2, r2), w2 in gens.items():
            top = state_degree(w1) + state_degree(w2)
            for n in range(0, top + extra):
                prod = ops.n_product(w1, n, w2)
                rep.checks += 1
                if n >= top:
                    if prod:
                        rep.status = "fail"
                        rep.counterexample = {"w": [l1, r1], "w'": [l2, r2], "n": n,
                                              "reason": "product beyond the grading window"}
                        return rep
                    continue
                if prod.evaluate(crit):
                    rep.status = "fail"
                    rep.counterexample = {"w": [l1, r1], "w'": [l2, r2], "n": n,
                                          "product": str(prod.evaluate(crit))}
                    return rep
                if prod:
                    nonzero_generic.append([l1, r1, l2, r2, n])
    rep.details = {"critical_level": crit, "generic_nonzero": nonzero_generic}
    if not nonzero_generic:
        rep.status = "fail"
        rep.counterexample = {"reason": "all non-negative products vanish at generic level"}
    return rep


def critical_alphas(p: Pyramid) -> bool:
    """``a_i(-N) = -l_i`` for every row."""
    return all(alpha(p, i).evaluate(-p.N) == -p.lam(i) for i in range(1, p.n + 1))


# injectivity rank -------------------------------------------------------------------

def _reduce_rows(rows: list[dict]) -> tuple[int, list[Fraction] | None]:
    """Rank of the rows; on dependence also a kernel combination of the rows."""
    pivots: dict = {}  # column -> (row, combo)
    rank = 0
    for idx, row in enumerate(rows):
        row = dict(row)
        combo = {idx: Fraction(1)}
        while row:
            col = min(row)
            if col not in pivots:
                break
            prow, pcombo = pivots[col]
            f = row[col] / prow[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            for c, v in pcombo.items():
                combo[c] = combo.get(c, 0) - f * v
        if not row:
            vec = [combo.get(t, Fraction(0)) for t in range(len(rows))]
            return rank, vec
        pivots[min(row)] = (row, combo)
        rank += 1
    return rank, None


def injectivity_rank(p: Pyramid, degree_cap: int, seed: int = 0, tries: int = 3) -> Report:
    """Rank of the Miura images of ordered generator monomials at a random level."""
    alg = ReducedAlgebra(p)
    ops = VertexOps(alg)
    vs = miura_expand(p, alg)
    vgens = {key: vs.get(key, State.zero()) for key in generator_indices(p)}
    words = list(ordered_monomials(p, degree_cap)) if degree_cap >= 1 else [()]
    images = []
    for word in words:
        v = State.vacuum()
        for l, r, m in reversed(word):
            v = ops.n_product(vgens[(l, r)], m, v)
        images.append(v)
    expected = sum(hilbert_product(p, degree_cap)) if degree_cap >= 1 else 1
    rep = Report("injectivity", str(p), degree_cap,
                 statement="Miura images of ordered generator monomials are linearly independent")
    rng = random.Random(seed)
    levels = []
    rank, kernel = 0, None
    for _ in range(tries):
        k = Fraction(rng.randint(-999, 999), rng.randint(1, 97))
        if k == -p.N:
            continue
        levels.append(str(k))
        cols: dict = {}
        rows = []
        for v in images:
            row = {}
            for mono, c in v.terms.items():
                val = c.evaluate(k)
                if val:
                    row[cols.setdefault(mono, len(cols))] = val
            rows.append(row)
        rank, kernel = _reduce_rows(rows)
        rep.checks += 1
        if kernel is None:
            break
    rep.details = {"rank": rank, "monomials": len(words), "hilbert_sum": expected,
                   "seed": seed, "levels_tried": levels}
    if kernel is not None or rank != len(words) or rank != expected:
        rep.status = "fail"
        rep.counterexample = {"kind": "RankDeficient",
                              "kernel": [[list(map(list, w)), str(c)]
                                         for w, c in zip(words, kernel or []) if c]}
    return rep


def homomorphism_check(p: Pyramid) -> Report:
    """``Y(a_(-1) b) = Y(a)_(-1) Y(b)`` on generator pairs, ``Y`` the Miura projection."""
    alg = ReducedAlgebra(p)
    ops = VertexOps(alg)
    gens = cdet_expand(p, realization=Realization(p, "reduced", reduced=alg))
    gens = {key: gens.get(key, State.zero()) for key in generator_indices(p)}
    rep = Report("homomorphism", str(p), 0,
                 statement="Miura projection respects the (-1)-product on generator pairs")
    for a_key, a in gens.items():
        for b_key, b in gens.items():
            rep.checks += 1
            lhs = miura_project(ops.n_product(a, -1, b))
            rhs = ops.n_product(miura_project(a), -1, miura_project(b))
            if lhs != rhs:
                rep.status = "fail"
                rep.counterexample = {"a": list(a_key), "b": list(b_key)}
                return rep
    return rep


__all__ = [
    "NotInReducedForm", "miura_project", "miura_expand", "verify_miura",
    "VertexOps", "n_product", "critical_commutativity", "critical_alphas",
    "injectivity_rank", "homomorphism_check", "state_degree",
]
