"""Generators of the W-algebra from the column determinant of the matrix ``E``.

Entries of ``E`` are polynomials in central variables ``x`` and ``u`` whose
coefficients are operators (identity, the translation ``T``, or a mode
``e_ij^(r)[-1]``).  A determinant word is applied to the vacuum from right
to left, so every coefficient of ``x^{n-l} u^r`` is a state ``w_l^(r)|0>``.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .brst import Brst, Report
from .pyramid import Kind, Pyramid
from .scalar import ONE, alpha
from .statespace import Mode, ReducedAlgebra, State, add_scaled

# an operator token is ("1",), ("T",) or ("e", i, j, r, m)
Term = tuple  # (x_power, u_power, Scalar, token)
OperatorPoly = list  # list[Term]

BACKENDS = ("full", "reduced")


class Realization:
    """How the tokens of an operator polynomial act on states."""

    def __init__(self, pyramid: Pyramid, backend: str = "reduced",
                 brst: Brst | None = None, reduced: ReducedAlgebra | None = None):
        if backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
        self.p = pyramid
        self.backend = backend
        if backend == "full":
            self.brst = brst or Brst(pyramid)
            self.alg = self.brst.C
        else:
            self.alg = reduced or ReducedAlgebra(pyramid)

    def apply(self, token: tuple, terms: dict) -> dict:
        tag = token[0]
        if tag == "1":
            return terms
        if tag == "T":
            return self.alg.translate_dict(terms)
        _, i, j, r, m = token
        if self.backend == "full":
            return self.brst.dressed_dict(i, j, r, m, terms)
        return self.alg.act_dict(Mode(m, Kind.ELOW, i, j, r), terms)


def matrix_E(p: Pyramid) -> list[list[OperatorPoly]]:
    """The ``n x n`` matrix of operator polynomials (zero entries are ``[]``).

    Diagonal ``x + a_i T + e_ii(u)``, superdiagonal ``-u^{l_{i+1}-1}``, below
    the diagonal ``e_ij(u) = sum_r e_ij^(r)[-1] u^r``.
    """
    n = p.n
    mat: list[list[OperatorPoly]] = [[[] for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            entry = [(0, r, ONE, ("e", i, j, r, -1)) for r in range(p.lam(j))]
            if i == j:
                entry = [(1, 0, ONE, ("1",)), (0, 0, alpha(p, i), ("T",))] + entry
            mat[i - 1][j - 1] = entry
        if i < n:
            mat[i - 1][i] = [(0, p.lam(i + 1) - 1, -ONE, ("1",))]
    return mat


def miura_factors(p: Pyramid) -> list[OperatorPoly]:
    """Diagonal factors ``x + a_i T + e_ii(u)`` of the Miura product."""
    mat = matrix_E(p)
    return [mat[i][i] for i in range(p.n)]


def _perm_sign(perm: tuple) -> int:
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv & 1 else 1


def apply_entry(real: Realization, entry: OperatorPoly, vec: dict) -> dict:
    out: dict = {}
    for (xp, up), terms in vec.items():
        for dx, du, c, tok in entry:
            t = real.apply(tok, terms)
            if t:
                key = (xp + dx, up + du)
                acc = out.setdefault(key, {})
                add_scaled(acc, t, c)
    return {key: t for key, t in out.items() if t}


def apply_word(real: Realization, word: list[OperatorPoly]) -> dict:
    """Apply ``word[0] word[1] ... word[-1]`` to the vacuum."""
    vec = {(0, 0): {(): ONE}}
    for entry in reversed(word):
        vec = apply_entry(real, entry, vec)
        if not vec:
            break
    return vec


def _accumulate(total: dict, vec: dict, sign: int) -> None:
    c = ONE if sign > 0 else -ONE
    for key, terms in vec.items():
        add_scaled(total.setdefault(key, {}), terms, c)


def _det_expand(real: Realization, transpose: bool) -> dict:
    p = real.p
    mat = matrix_E(p)
    n = p.n
    total: dict = {}
    for perm in itertools.permutations(range(n)):
        if transpose:
            word = [mat[c][perm[c]] for c in range(n)]
        else:
            word = [mat[perm[c]][c] for c in range(n)]
        if any(not e for e in word):
            continue
        _accumulate(total, apply_word(real, word), _perm_sign(perm))
    return total


def _split(p: Pyramid, total: dict) -> dict[tuple[int, int], State]:
    n = p.n
    out = {}
    for (xp, up), terms in total.items():
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            continue
        if xp == n:
            if up != 0 or terms != {(): ONE}:
                raise AssertionError("leading coefficient of the determinant is not x^n")
            continue
        out[(n - xp, up)] = State.wrap(terms)
    return out


def cdet_expand(p: Pyramid, backend: str = "reduced", realization: Realization | None = None
                ) -> dict[tuple[int, int], State]:
    """``{(l, r): w_l^(r)|0>}`` for every nonzero coefficient of ``cdet E``."""
    real = realization or Realization(p, backend)
    return _split(p, _det_expand(real, transpose=False))


def rdet_expand(p: Pyramid, backend: str = "reduced", realization: Realization | None = None
                ) -> dict[tuple[int, int], State]:
    """Same for the row determinant ``sum sgn(s) a_{1 s(1)} ... a_{n s(n)}``."""
    real = realization or Realization(p, backend)
    return _split(p, _det_expand(real, transpose=True))


def admissible_window(p: Pyramid, l: int) -> range:
    """``r`` with ``l_{n-l+2}+...+l_n < r + l <= l_{n-l+1}+...+l_n``."""
    if not 1 <= l <= p.n:
        raise ValueError(f"l must lie in 1..{p.n}")
    return range(p.top_sum(l - 1) - l + 1, p.top_sum(l) - l + 1)


def generator_indices(p: Pyramid) -> list[tuple[int, int]]:
    return [(l, r) for l in range(1, p.n + 1) for r in admissible_window(p, l)]


def generators(p: Pyramid, backend: str = "reduced", realization: Realization | None = None
               ) -> dict[tuple[int, int], State]:
    """The generator table ``{(l, r): w_l^(r)|0>}`` restricted to the windows."""
    coeffs = cdet_expand(p, backend, realization)
    return {(l, r): coeffs.get((l, r), State.zero()) for l, r in generator_indices(p)}


def dress(state: State, brst: Brst) -> State:
    """Map a reduced-realization state into the full complex.

    Each ``e`` mode becomes the dressed mode, each ``psi*`` mode the
    corresponding Clifford mode, applied right to left on the vacuum.
    """
    out: dict = {}
    for mono, c in state.terms.items():
        terms = {(): ONE}
        for x in reversed(mono):
            if x.kind == Kind.ELOW:
                terms = brst.dressed_dict(x.i, x.j, x.r, x.m, terms)
            elif x.kind == Kind.PSISTAR:
                terms = brst.C.act_dict(x, terms)
            else:
                raise ValueError(f"{x} is not a reduced-realization mode")
            if not terms:
                break
        add_scaled(out, terms, c)
    return State.wrap(out)


def certify_generators(p: Pyramid, brst: Brst | None = None) -> Report:
    """Check ``d w_l^(r)|0> = 0`` in the full complex for every windowed ``(l, r)``."""
    b = brst or Brst(p)
    real = Realization(p, "full", brst=b)
    gens = generators(p, realization=real)
    rep = Report("closure", str(p), 0,
                 statement="d(w_l^(r)|0>) = 0 for all (l, r) in the admissible windows")
    certified = []
    for (l, r), w in gens.items():
        rep.checks += 1
        dw = b.d(w)
        if not w or dw:
            rep.status = "fail"
            rep.counterexample = {"l": l, "r": r, "zero_generator": not w,
                                  "dw_terms": len(dw)}
            break
        certified.append([l, r])
    rep.details = {"generators": certified, "count": len(gens), "N": p.N}
    if len(gens) != p.N and rep.passed:
        rep.status = "fail"
        rep.counterexample = {"count": len(gens), "N": p.N}
    return rep


def ij_degree(mono: tuple) -> int:
    """Degree with ``e_ij^(r)[m]`` weighted ``j - i``."""
    return sum(x.j - x.i for x in mono)


def lowest_component(state: State) -> State:
    if not state:
        return state
    low = min(ij_degree(mono) for mono in state.terms)
    return state.filter(lambda mono: ij_degree(mono) == low)


def leading_shift(p: Pyramid, l: int) -> int:
    return p.top_sum(l - 1) - l + 1


def leading_term(p: Pyramid, l: int, r: int, gens: dict | None = None) -> State:
    if r not in admissible_window(p, l):
        raise ValueError(f"(l, r) = ({l}, {r}) is outside the admissible window")
    gens = gens if gens is not None else generators(p)
    return lowest_component(gens[(l, r)])


def P_vacuum_state(p: Pyramid, l: int, rp: int, alg: ReducedAlgebra | None = None) -> State:
    """``P_l^(r')[-1]|0>`` in the reduced realization."""
    alg = alg or ReducedAlgebra(p)
    out: dict = {}
    # P_terms only reads the pyramid
    for i, j, s in Brst(p).P_terms(l, rp):
        add_scaled(out, alg.act_dict(Mode(-1, Kind.ELOW, i, j, s), {(): ONE}), ONE)
    return State.wrap(out)


# Hilbert-Poincare series --------------------------------------------------------

def hilbert_product(p: Pyramid, q_cap: int) -> list[int]:
    """Coefficients of ``prod_{s>=0} prod_l (1 - q^{l+s})^{-l_{n-l+1}}`` up to ``q^cap``."""
    coeffs = [1] + [0] * q_cap
    n = p.n
    for l in range(1, n + 1):
        mult = p.lam(n - l + 1)
        for s in range(q_cap + 1):
            d = l + s
            if d > q_cap:
                break
            for _ in range(mult):
                for idx in range(d, q_cap + 1):
                    coeffs[idx] += coeffs[idx - d]
    return coeffs


def generator_modes(p: Pyramid, q_cap: int) -> list[tuple[int, int, int]]:
    """Triples ``(l, r, m)`` with ``m < 0`` and conformal degree ``l - m - 1 <= cap``."""
    out = []
    for l, r in generator_indices(p):
        for m in range(-1, -q_cap - 1, -1):
            if l - m - 1 <= q_cap:
                out.append((l, r, m))
    return sorted(out)


def ordered_monomials(p: Pyramid, q_cap: int) -> Iterator[tuple]:
    """Non-decreasing words in the triples, of total degree ``<= cap``."""
    triples = generator_modes(p, q_cap)

    def rec(start: int, prefix: tuple, budget: int):
        yield prefix
        for idx in range(start, len(triples)):
            l, r, m = triples[idx]
            deg = l - m - 1
            if deg <= budget:
                yield from rec(idx, prefix + (triples[idx],), budget - deg)

    yield from rec(0, (), q_cap)


def count_monomials(p: Pyramid, q_cap: int) -> list[int]:
    counts = [0] * (q_cap + 1)
    for word in ordered_monomials(p, q_cap):
        counts[sum(l - m - 1 for l, _, m in word)] += 1
    return counts


def hilbert_series(p: Pyramid, q_cap: int) -> list[int]:
    if q_cap < 1:
        raise ValueError("q_cap must be at least 1")
    series = hilbert_product(p, q_cap)
    counted = count_monomials(p, q_cap)
    if series != counted:
        raise AssertionError(f"series {series} != monomial count {counted}")
    return series
