"""BRST structure on the full complex ``C^k(a)``.

``d_st`` is the residue of ``Q(z)``, ``chi`` is the finite sum of
``psi*_{i,i+1}^{(l_{i+1}-1)}[1]``, and ``d = d_st + chi``.  Dressed fields
``e_ij^(r)`` are realized mode by mode as explicit fermion-bilinear sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .pyramid import GenIndex, InadmissibleIndex, Kind, Pyramid
from .scalar import K, ONE, Scalar, alpha, form
from .statespace import FullComplex, Mode, State, add_scaled, addto, energy

DictFn = Callable[[dict], dict]


class EndoOp:
    """A Scalar-linear endomorphism of states, with a parity."""

    __slots__ = ("fn", "parity", "name")

    def __init__(self, fn: DictFn, parity: int = 0, name: str = ""):
        self.fn = fn
        self.parity = parity & 1
        self.name = name

    def __call__(self, v: State) -> State:
        return State.wrap(self.fn(v.terms))

    def __add__(self, other: "EndoOp") -> "EndoOp":
        f, g = self.fn, other.fn

        def fn(t):
            out = dict(f(t))
            add_scaled(out, g(t), ONE)
            return out
        return EndoOp(fn, self.parity, f"({self.name} + {other.name})")

    def __sub__(self, other: "EndoOp") -> "EndoOp":
        return self + (-ONE) * other

    def __rmul__(self, c) -> "EndoOp":
        c = c if isinstance(c, Scalar) else Scalar.const(c)
        f = self.fn

        def fn(t):
            out: dict = {}
            add_scaled(out, f(t), c)
            return out
        return EndoOp(fn, self.parity, f"{c}*{self.name}")

    def __matmul__(self, other: "EndoOp") -> "EndoOp":
        f, g = self.fn, other.fn
        return EndoOp(lambda t: f(g(t)), self.parity + other.parity,
                      f"{self.name}.{other.name}")

    def __repr__(self):
        return f"EndoOp({self.name})"


def zero_op(parity: int = 0) -> EndoOp:
    return EndoOp(lambda t: {}, parity, "0")


def identity_op() -> EndoOp:
    return EndoOp(lambda t: dict(t), 0, "1")


def supercommutator(a: EndoOp, b: EndoOp) -> EndoOp:
    """``[a, b} = ab - (-1)^{|a||b|} ba``."""
    sign = -ONE if (a.parity and b.parity) else ONE
    f, g = a.fn, b.fn

    def fn(t):
        out = dict(f(g(t)))
        add_scaled(out, g(f(t)), -sign)
        return out
    return EndoOp(fn, a.parity + b.parity, f"[{a.name}, {b.name}]")


class Brst:
    """Differentials and dressed fields on ``C^k(a)`` for one pyramid."""

    def __init__(self, pyramid: Pyramid, level: Scalar = K):
        self.p = pyramid
        self.C = FullComplex(pyramid, level)
        self.level = level
        self._dst_cache: dict = {}
        self._dressed_cache: dict = {}
        self._cubic = self._cubic_triples()

    # plain modes ---------------------------------------------------------------

    def mode_op(self, kind: Kind, i: int, j: int, r: int, m: int) -> EndoOp:
        x = Mode(m, kind, i, j, r)
        if not self.C.admissible(x):
            return zero_op(1 if kind in (Kind.PSI, Kind.PSISTAR) else 0)
        act = self.C.act_dict
        return EndoOp(lambda t: act(x, t), 1 if kind in (Kind.PSI, Kind.PSISTAR) else 0,
                      str(x))

    def psistar_op(self, i: int, j: int, r: int, m: int) -> EndoOp:
        return self.mode_op(Kind.PSISTAR, i, j, r, m)

    def psi_op(self, i: int, j: int, r: int, m: int) -> EndoOp:
        return self.mode_op(Kind.PSI, i, j, r, m)

    def _word(self, word: list, mono: tuple) -> dict:
        return self.C.word_dict(word, {mono: ONE})

    # d_st ----------------------------------------------------------------------

    def _cubic_triples(self) -> list:
        p = self.p
        out = []
        for i in range(1, p.n + 1):
            for j in range(i + 1, p.n + 1):
                for h in range(j + 1, p.n + 1):
                    pairs = {(i, j), (j, h), (i, h)}
                    assert len(pairs) == 3, "cubic term needs distinct index pairs"
                    for a in p.psi_range(i, j):
                        for b in p.psi_range(j, h):
                            if a + b in p.psi_range(i, h):
                                out.append((i, j, h, a, b))
        return out

    def _d_st_mono(self, mono: tuple) -> dict:
        res = self._dst_cache.get(mono)
        if res is not None:
            return res
        p = self.p
        act = self.C.act_dict
        e = energy(mono)
        res = {}
        start = {mono: ONE}
        # sum_m E_ij^(a)[m] psi*_ij^(a)[-m]; the two commute, so |m| <= e
        for i in range(1, p.n + 1):
            for j in range(i + 1, p.n + 1):
                for a in p.psi_range(i, j):
                    for m in range(-e, e + 1):
                        t = act(Mode(-m, Kind.PSISTAR, i, j, a), start)
                        if t:
                            add_scaled(res, act(Mode(m, Kind.E, i, j, a), t), ONE)
        # - sum psi*_ij^(a)[m] psi*_jh^(b)[q] psi_ih^(a+b)[-m-q]; each mode <= e
        for i, j, h, a, b in self._cubic:
            for s in range(-2 * e, e + 1):
                t1 = act(Mode(s, Kind.PSI, i, h, a + b), start)
                if not t1:
                    continue
                for q in range(-2 * e, e + 1):
                    m = -s - q
                    if not -2 * e <= m <= e:
                        continue
                    t2 = act(Mode(q, Kind.PSISTAR, j, h, b), t1)
                    if t2:
                        add_scaled(res, act(Mode(m, Kind.PSISTAR, i, j, a), t2), -ONE)
        self._dst_cache[mono] = res
        return res

    def d_st_dict(self, terms: dict) -> dict:
        out: dict = {}
        for mono, c in terms.items():
            add_scaled(out, self._d_st_mono(mono), c)
        return out

    def chi_dict(self, terms: dict) -> dict:
        p = self.p
        out: dict = {}
        for i in range(1, p.n):
            x = Mode(1, Kind.PSISTAR, i, i + 1, p.lam(i + 1) - 1)
            add_scaled(out, self.C.act_dict(x, terms), ONE)
        return out

    def d_dict(self, terms: dict) -> dict:
        out = dict(self.d_st_dict(terms))
        add_scaled(out, self.chi_dict(terms), ONE)
        return out

    def d_st(self, v: State) -> State:
        return State.wrap(self.d_st_dict(v.terms))

    def chi(self, v: State) -> State:
        return State.wrap(self.chi_dict(v.terms))

    def d(self, v: State) -> State:
        return State.wrap(self.d_dict(v.terms))

    @property
    def d_st_op(self) -> EndoOp:
        return EndoOp(self.d_st_dict, 1, "d_st")

    @property
    def chi_op(self) -> EndoOp:
        return EndoOp(self.chi_dict, 1, "chi")

    @property
    def d_op(self) -> EndoOp:
        return EndoOp(self.d_dict, 1, "d")

    # dressed fields ------------------------------------------------------------

    def dressed_admissible(self, i: int, j: int, r: int) -> bool:
        p = self.p
        if not (1 <= i <= p.n and 1 <= j <= p.n):
            return False
        if i < j:
            return r in p.psi_range(i, j)
        return r in p.elow_range(i, j)

    def _bilinear(self, out: dict, mono: tuple, e: int, m: int, c: Scalar,
                  psi: tuple, star: tuple) -> None:
        """Add ``c * :psi(z) psi*(z):[m]`` applied to ``mono``.

        ``psi``/``star`` are ``(i, j, r)``; the normal ordering only matters
        when both name the same pair of generators.
        """
        act = self.C.act_dict
        same = psi == star
        start = {mono: ONE}
        for q in range(m - e, e + 1):
            x = Mode(q, Kind.PSI, *psi)
            y = Mode(m - q, Kind.PSISTAR, *star)
            if same and q >= 0:
                t = act(x, start)
                if t:
                    add_scaled(out, act(y, t), -c)
            else:
                t = act(y, start)
                if t:
                    add_scaled(out, act(x, t), c)

    def _dressed_mono(self, i: int, j: int, r: int, m: int, mono: tuple) -> dict:
        key = (i, j, r, m, mono)
        res = self._dressed_cache.get(key)
        if res is not None:
            return res
        p = self.p
        e = energy(mono)
        res = {}
        if m <= e:
            x = Mode(m, Kind.E, i, j, r)
            add_scaled(res, self.C.act_dict(x, {mono: ONE}), ONE)
            for h in range(max(i, j) + 1, p.n + 1):
                for a in p.psi_range(i, h):
                    if a - r in p.psi_range(j, h):
                        self._bilinear(res, mono, e, m, ONE, (i, h, a), (j, h, a - r))
            for h in range(1, min(i, j)):
                for a in p.psi_range(h, j):
                    if a - r in p.psi_range(h, i):
                        self._bilinear(res, mono, e, m, -ONE, (h, j, a), (h, i, a - r))
        self._dressed_cache[key] = res
        return res

    def dressed_dict(self, i: int, j: int, r: int, m: int, terms: dict) -> dict:
        if not self.dressed_admissible(i, j, r):
            return {}
        out: dict = {}
        for mono, c in terms.items():
            add_scaled(out, self._dressed_mono(i, j, r, m, mono), c)
        return out

    def dressed_mode(self, g: GenIndex, m: int) -> EndoOp:
        """The ``m``-th Fourier coefficient of the dressed field ``e_ij^(r)(z)``."""
        i, j, r = g.i, g.j, g.r
        if not self.dressed_admissible(i, j, r):
            raise InadmissibleIndex(f"dressed field e[{i},{j},{r}] is not admissible")
        return EndoOp(lambda t: self.dressed_dict(i, j, r, m, t), 0, f"e[{i},{j},{r};{m}]")

    def e_op(self, i: int, j: int, r: int, m: int) -> EndoOp:
        """Like :meth:`dressed_mode` but out-of-range indices give zero."""
        if not self.dressed_admissible(i, j, r):
            return zero_op()
        return EndoOp(lambda t: self.dressed_dict(i, j, r, m, t), 0, f"e[{i},{j},{r};{m}]")

    # P and I fields ------------------------------------------------------------

    def P_terms(self, l: int, r: int) -> list[tuple[int, int, int]]:
        """Summands ``(i, j, s)`` of ``P_l^(r)``, dropping out-of-range ones."""
        p = self.p
        n = p.n
        if not (1 <= l <= n and 0 <= r < p.lam(n - l + 1)):
            raise InadmissibleIndex(f"P_{l}^({r}) is not defined for {p}")
        out = []
        s = r
        for t in range(n - l + 1):
            i, j = n - t, n - l + 1 - t
            if s in p.elow_range(i, j):
                out.append((i, j, s))
            if t < n - l:
                s += p.lam(n - t) - p.lam(n - l + 1 - t)
        return out

    def I_terms(self, i: int, j: int, r: int) -> list[tuple[int, int, int]]:
        p = self.p
        if not (1 <= i < j <= p.n and 0 <= r < p.lam(i)):
            raise InadmissibleIndex(f"I_{i}{j}^({r}) is not defined for {p}")
        out = []
        for h in range(1, i + 1):
            s = (r + sum(p.lam(c) for c in range(j - h + 1, j))
                 - sum(p.lam(c) for c in range(i - h + 2, i + 1)))
            a, b = j - h, i - h + 1
            if s in p.elow_range(a, b):
                out.append((a, b, s))
        return out

    def _sum_dressed(self, terms: list, m: int, name: str) -> EndoOp:
        def fn(t):
            out: dict = {}
            for a, b, s in terms:
                add_scaled(out, self.dressed_dict(a, b, s, m, t), ONE)
            return out
        return EndoOp(fn, 0, name)

    def P_field(self, l: int, r: int, m: int) -> EndoOp:
        return self._sum_dressed(self.P_terms(l, r), m, f"P_{l}^({r})[{m}]")

    def I_field(self, i: int, j: int, r: int, m: int) -> EndoOp:
        return self._sum_dressed(self.I_terms(i, j, r), m, f"I_{i}{j}^({r})[{m}]")

    # normal-ordered products used by the right-hand sides -------------------------

    def _no_e_psistar(self, e_idx: tuple, s_idx: tuple, m: int, t: dict) -> dict:
        """``:e(z) psi*(z):[m]`` with ``e`` dressed, coefficient of ``z^{-m-1}``."""
        out: dict = {}
        act = self.C.act_dict
        for mono, c in t.items():
            en = energy(mono)
            start = {mono: c}
            for q in range(m - en, en + 1):
                y = Mode(m - q, Kind.PSISTAR, *s_idx)
                if q < 0:
                    add_scaled(out, self.dressed_dict(*e_idx, q, act(y, start)), ONE)
                else:
                    add_scaled(out, act(y, self.dressed_dict(*e_idx, q, start)), ONE)
        return out

    def _no_psistar_e(self, s_idx: tuple, e_idx: tuple, m: int, t: dict) -> dict:
        """``:psi*(z) e(z):[m]``."""
        out: dict = {}
        act = self.C.act_dict
        for mono, c in t.items():
            en = energy(mono)
            start = {mono: c}
            for q in range(m - en, en + 1):
                y = Mode(q, Kind.PSISTAR, *s_idx)
                if q <= 0:
                    add_scaled(out, act(y, self.dressed_dict(*e_idx, m - q, start)), ONE)
                else:
                    add_scaled(out, self.dressed_dict(*e_idx, m - q, act(y, start)), ONE)
        return out

    def _psistar_pair(self, first: tuple, second: tuple, m: int, t: dict) -> dict:
        """``psi*(z) psi*(z)`` coefficient of ``z^{-m}``; distinct pairs anticommute."""
        out: dict = {}
        act = self.C.act_dict
        for mono, c in t.items():
            en = energy(mono)
            start = {mono: c}
            for q in range(m - en, en + 1):
                t1 = act(Mode(m - q, Kind.PSISTAR, *second), start)
                if t1:
                    add_scaled(out, act(Mode(q, Kind.PSISTAR, *first), t1), ONE)
        return out


# ----------------------------------------------------------------------------
# identity sweeps


@dataclass
class Report:
    lemma: str
    pyramid: str
    cap: int
    status: str = "pass"
    checks: int = 0
    counterexample: dict | None = None
    statement: str = ""
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"lemma": self.lemma, "pyramid": self.pyramid, "cap": self.cap,
               "status": self.status, "checks": self.checks, "statement": self.statement}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out


class _Sweep:
    def __init__(self, report: Report, states: list):
        self.report = report
        self.states = states

    def check(self, label: str, lhs: EndoOp, rhs: EndoOp) -> bool:
        rep = self.report
        if rep.counterexample is not None:
            return False
        for mono in self.states:
            t = {mono: ONE}
            a = lhs.fn(t)
            b = rhs.fn(t)
            rep.checks += 1
            if a != b:
                diff = dict(a)
                add_scaled(diff, b, -ONE)
                first = min(diff)
                rep.status = "fail"
                rep.counterexample = {
                    "identity": label,
                    "state": [[int(x.kind), x.i, x.j, x.r, x.m] for x in mono],
                    "monomial": [[int(x.kind), x.i, x.j, x.r, x.m] for x in first],
                    "difference": str(diff[first]),
                }
                return False
        return True


LEMMAS = ("nilpotent", "lower-brackets", "upper-brackets", "differential", "chi-fields")

STATEMENTS = {
    "nilpotent": "d_st^2 = chi^2 = [d_st, chi] = 0",
    "lower-brackets": "brackets of dressed e_ij (i>=j) with psi* and with each other; central term (k+N)<,>",
    "upper-brackets": "brackets of dressed e_ij (i<j) with psi and with each other",
    "differential": "[d_st, .] and [chi, .] on dressed fields, psi and psi*",
    "chi-fields": "[chi, P_l^(r)] = 0 and [chi, I_ij^(r)] = psi*_ij^(l_j-r-1)",
}


def sweep_states(b: Brst, cap: int, max_abs_charge: int = 2) -> list:
    """Spanning set for operator comparisons: energy <= cap, deg' <= cap."""
    return b.C.basis(cap, cap, max_abs_charge)


def verify_lemma(which: str, p: Pyramid, degree_cap: int, modes: range | None = None,
                 brst: Brst | None = None) -> Report:
    """Compare both sides of each identity on every state of the sweep set.

    Operators are compared by their action on the PBW basis states of energy
    and conformal degree at most ``degree_cap`` and charge in ``[-2, 2]``;
    mode indices run over ``modes`` (default ``-2..2``).
    """
    if which not in LEMMAS:
        raise ValueError(f"unknown identity family {which!r}; choose from {LEMMAS}")
    b = brst or Brst(p)
    modes = modes if modes is not None else range(-2, 3)
    rep = Report(which, str(p), degree_cap, statement=STATEMENTS[which])
    sw = _Sweep(rep, sweep_states(b, degree_cap))
    for label, lhs, rhs in _identities(which, b, modes):
        if not sw.check(label, lhs, rhs):
            break
    return rep


def _identities(which: str, b: Brst, modes: range) -> Iterator[tuple[str, EndoOp, EndoOp]]:
    p = b.p
    n = p.n
    dst, chi = b.d_st_op, b.chi_op
    lower = [(i, j, r) for i in range(1, n + 1) for j in range(1, i + 1)
             for r in p.elow_range(i, j)]
    upper = [(i, j, r) for i in range(1, n + 1) for j in range(i + 1, n + 1)
             for r in p.psi_range(i, j)]

    if which == "nilpotent":
        yield "d_st^2", dst @ dst, zero_op()
        yield "chi^2", chi @ chi, zero_op()
        yield "d_st chi + chi d_st", supercommutator(dst, chi), zero_op()
        return

    if which == "lower-brackets":
        kN = b.level + p.N
        for (i, j, r) in lower:
            for m in modes:
                e = b.e_op(i, j, r, m)
                for (h, l, s) in upper:
                    for q in modes:
                        rhs = zero_op(1)
                        if l == j:
                            rhs = rhs + b.psistar_op(h, i, s - r, m + q)
                        if h == i:
                            rhs = rhs - b.psistar_op(j, l, s - r, m + q)
                        yield (f"[e{i}{j}^{r}[{m}], psi*{h}{l}^{s}[{q}]]",
                               supercommutator(e, b.psistar_op(h, l, s, q)), rhs)
                for (h, l, s) in lower:
                    for q in modes:
                        rhs = zero_op()
                        if h == j:
                            rhs = rhs + b.e_op(i, l, r + s, m + q)
                        if i == l:
                            rhs = rhs - b.e_op(h, j, r + s, m + q)
                        if m + q == 0 and m:
                            f = form(p, GenIndex(Kind.ELOW, i, j, r), GenIndex(Kind.ELOW, h, l, s))
                            if f:
                                rhs = rhs + (kN * (m * f)) * identity_op()
                        yield (f"[e{i}{j}^{r}[{m}], e{h}{l}^{s}[{q}]]",
                               supercommutator(e, b.e_op(h, l, s, q)), rhs)
        return

    if which == "upper-brackets":
        for (i, j, r) in upper:
            for m in modes:
                e = b.e_op(i, j, r, m)
                for (h, l, s) in upper:
                    for q in modes:
                        rhs_psi = zero_op(1)
                        rhs_e = zero_op()
                        if h == j:
                            rhs_psi = rhs_psi + b.psi_op(i, l, r + s, m + q)
                            rhs_e = rhs_e + b.e_op(i, l, r + s, m + q)
                        if i == l:
                            rhs_psi = rhs_psi - b.psi_op(h, j, r + s, m + q)
                            rhs_e = rhs_e - b.e_op(h, j, r + s, m + q)
                        yield (f"[e{i}{j}^{r}[{m}], psi{h}{l}^{s}[{q}]]",
                               supercommutator(e, b.psi_op(h, l, s, q)), rhs_psi)
                        yield (f"[e{i}{j}^{r}[{m}], e{h}{l}^{s}[{q}]]",
                               supercommutator(e, b.e_op(h, l, s, q)), rhs_e)
        return

    if which == "differential":
        yield from _differential_identities(b, modes, lower, upper)
        return

    if which == "chi-fields":
        for l in range(1, n + 1):
            for r in range(p.lam(n - l + 1)):
                for m in modes:
                    yield (f"[chi, P_{l}^{r}[{m}]]",
                           supercommutator(chi, b.P_field(l, r, m)), zero_op(1))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for r in range(p.lam(i)):
                    for m in modes:
                        yield (f"[chi, I_{i}{j}^{r}[{m}]]",
                               supercommutator(chi, b.I_field(i, j, r, m)),
                               b.psistar_op(i, j, p.lam(j) - r - 1, m + 1))
        return


def differential_rhs_dst(b: Brst, i: int, j: int, r: int, m: int) -> EndoOp:
    """Right-hand side of ``[d_st, e_ij^(r)[m]]`` for ``i >= j``."""
    p = b.p
    parts: list = []
    for h in range(j, i):
        for a in p.psi_range(h, i):
            if b.dressed_admissible(h, j, a + r):
                parts.append(("ep", (h, j, a + r), (h, i, a)))
    for h in range(j + 1, i + 1):
        for a in p.psi_range(j, h):
            if b.dressed_admissible(i, h, a + r):
                parts.append(("pe", (j, h, a), (i, h, a + r)))
    tail = None
    if r == 0 and 0 in p.psi_range(j, i):
        tail = alpha(p, j) * (-m)

    def fn(t):
        out: dict = {}
        for kind, x, y in parts:
            if kind == "ep":
                add_scaled(out, b._no_e_psistar(x, y, m, t), ONE)
            else:
                add_scaled(out, b._no_psistar_e(x, y, m, t), -ONE)
        if tail is not None and tail:
            add_scaled(out, b.C.act_dict(Mode(m, Kind.PSISTAR, j, i, 0), t), tail)
        return out
    return EndoOp(fn, 1, f"rhs[d_st, e{i}{j}^{r}[{m}]]")


def _differential_identities(b: Brst, modes: range, lower: list, upper: list):
    p = b.p
    n = p.n
    dst, chi = b.d_st_op, b.chi_op
    for (i, j, r) in lower:
        for m in modes:
            e = b.e_op(i, j, r, m)
            yield (f"[d_st, e{i}{j}^{r}[{m}]]", supercommutator(dst, e),
                   differential_rhs_dst(b, i, j, r, m))
            rhs = zero_op(1)
            if i + 1 <= n:
                rhs = rhs + b.psistar_op(j, i + 1, p.lam(i + 1) - r - 1, m + 1)
            if j - 1 >= 1:
                rhs = rhs - b.psistar_op(j - 1, i, p.lam(j) - r - 1, m + 1)
            yield f"[chi, e{i}{j}^{r}[{m}]]", supercommutator(chi, e), rhs
    for (i, j, r) in upper:
        for m in modes:
            e = b.e_op(i, j, r, m)
            yield f"[d_st, e{i}{j}^{r}[{m}]]", supercommutator(dst, e), zero_op(1)
            yield f"[chi, e{i}{j}^{r}[{m}]]", supercommutator(chi, e), zero_op(1)
            psi = b.psi_op(i, j, r, m)
            yield f"[d_st, psi{i}{j}^{r}[{m}]]", supercommutator(dst, psi), e
            unit = (j == i + 1 and r == p.lam(j) - 1 and m == -1)
            yield (f"[chi, psi{i}{j}^{r}[{m}]]", supercommutator(chi, psi),
                   identity_op() if unit else zero_op())
            star = b.psistar_op(i, j, r, m)
            pairs = [(h, a) for h in range(i + 1, j) for a in p.psi_range(i, h)
                     if r - a in p.psi_range(h, j)]

            def rhs_fn(t, pairs=pairs, m=m):
                out: dict = {}
                for h, a in pairs:
                    add_scaled(out, b._psistar_pair((i, h, a), (h, j, r - a), m, t), -ONE)
                return out
            yield (f"[d_st, psi*{i}{j}^{r}[{m}]]", supercommutator(dst, star),
                   EndoOp(rhs_fn, 0, "rhs"))
            yield f"[chi, psi*{i}{j}^{r}[{m}]]", supercommutator(chi, star), zero_op()
