"""Induced-module state spaces and the PBW rewriting engine.

A state is a finite linear combination (coefficients in Q[k]) of ordered
monomials of creation modes applied to the vacuum.  Two realizations share
the engine:

* :class:`FullComplex` -- ``V^k(a) (x) F`` with modes ``E[m]``, ``psi[m]``,
  ``psi*[m]`` at level ``k``;
* :class:`ReducedAlgebra` -- the induced module over the superalgebra spanned
  by lower-triangular ``e[m]`` and abstract ``psi*[m]``, with ``K = k + N``.
  Its diagonal part is the Heisenberg vertex algebra ``V^{k+N}(h)``.

Field conventions: ``X(z) = sum X[m] z^{-m-1}`` for ``E``, ``psi`` and ``e``;
``psi*(z) = sum psi*[m] z^{-m}``.  The energy of a mode ``X[m]`` is ``-m`` for
every kind, so a state of energy ``E`` is killed by any mode with ``m > E``.
"""

from __future__ import annotations

from typing import Callable, Iterable, NamedTuple

from .pyramid import ODD_KINDS, GenIndex, Kind, Pyramid, kind_from_name, kind_name
from .scalar import K, ONE, ZERO, Scalar, form


class Mode(NamedTuple):
    """``X[m]`` for a generator ``X = (kind, i, j, r)``.

    Field order is the canonical PBW order: mode index first, then kind rank,
    then ``i, j, r``.
    """

    m: int
    kind: Kind
    i: int
    j: int
    r: int

    @property
    def gen(self) -> GenIndex:
        return GenIndex(self.kind, self.i, self.j, self.r)

    def __str__(self):
        return f"{kind_name(self.kind)}[{self.i},{self.j},{self.r};{self.m}]"


def mode(kind, i: int, j: int, r: int, m: int) -> Mode:
    if isinstance(kind, str):
        kind = kind_from_name(kind)
    return Mode(m, Kind(kind), i, j, r)


def is_odd(x: Mode) -> bool:
    return x.kind in ODD_KINDS


def creates(x: Mode) -> bool:
    if x.kind == Kind.PSISTAR:
        return x.m <= 0
    return x.m < 0


def mode_deg(x: Mode) -> int:
    if x.kind == Kind.PSISTAR:
        return -x.m + x.j - x.i
    return -x.m + x.i - x.j


def mode_charge(x: Mode) -> int:
    if x.kind == Kind.PSI:
        return -1
    if x.kind == Kind.PSISTAR:
        return 1
    return 0


def energy(mono: tuple) -> int:
    return -sum(x.m for x in mono)


def mono_parity(mono: tuple) -> int:
    return sum(1 for x in mono if x.kind in ODD_KINDS) & 1


def format_monomial(mono: tuple) -> str:
    if not mono:
        return "|0>"
    return " ".join(str(x) for x in mono) + " |0>"


# dict-level helpers -----------------------------------------------------------

def addto(acc: dict, key, c: Scalar) -> None:
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        s = old + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def add_scaled(acc: dict, src: dict, c: Scalar) -> None:
    if not c:
        return
    if c == ONE:
        for key, v in src.items():
            addto(acc, key, v)
    else:
        for key, v in src.items():
            addto(acc, key, v * c)


class State:
    """Immutable-by-convention sparse vector ``{monomial: Scalar}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {key: (c if isinstance(c, Scalar) else Scalar.const(c))
                          for key, c in terms.items() if c}

    @classmethod
    def wrap(cls, terms: dict) -> "State":
        s = object.__new__(cls)
        s.terms = terms
        return s

    @classmethod
    def vacuum(cls) -> "State":
        return cls.wrap({(): ONE})

    @classmethod
    def zero(cls) -> "State":
        return cls.wrap({})

    def __add__(self, other: "State") -> "State":
        out = dict(self.terms)
        add_scaled(out, other.terms, ONE)
        return State.wrap(out)

    def __sub__(self, other: "State") -> "State":
        out = dict(self.terms)
        add_scaled(out, other.terms, -ONE)
        return State.wrap(out)

    def __neg__(self) -> "State":
        return State.wrap({key: -c for key, c in self.terms.items()})

    def __rmul__(self, c) -> "State":
        if not isinstance(c, Scalar):
            c = Scalar.const(c)
        if not c:
            return State.zero()
        return State.wrap({key: v * c for key, v in self.terms.items() if v * c})

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, mono: tuple) -> Scalar:
        return self.terms.get(tuple(mono), ZERO)

    def evaluate(self, k) -> "State":
        out = {}
        for key, c in self.terms.items():
            v = c.substitute(k)
            if v:
                out[key] = v
        return State.wrap(out)

    def max_energy(self) -> int:
        return max((energy(key) for key in self.terms), default=0)

    def filter(self, pred: Callable[[tuple], bool]) -> "State":
        return State.wrap({key: c for key, c in self.terms.items() if pred(key)})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> list:
        return [{"coeff": c.to_json(),
                 "monomial": [[kind_name(x.kind), x.i, x.j, x.r, x.m] for x in key]}
                for key, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "State":
        terms = {}
        for item in data:
            key = tuple(mode(kd, i, j, r, m) for kd, i, j, r, m in item["monomial"])
            addto(terms, key, Scalar.from_json(item["coeff"]))
        return cls.wrap(terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {format_monomial(key)}" for key, c in self.sorted_terms())

    def __repr__(self):
        return f"State({self})"


class ModeAlgebra:
    """Shared PBW engine; subclasses supply the generators and brackets."""

    kinds: tuple[Kind, ...] = ()
    name = "abstract"

    def __init__(self, pyramid: Pyramid):
        self.p = pyramid
        self._act_cache: dict = {}
        self._bracket_cache: dict = {}
        self._T_cache: dict = {}

    # to be provided ------------------------------------------------------------

    def generators(self) -> list[GenIndex]:
        raise NotImplementedError

    def _bracket(self, x: Mode, y: Mode) -> dict:
        """Super bracket ``[x, y}`` as ``{Mode or None: Scalar}``; ``None`` is the unit."""
        raise NotImplementedError

    # structure ---------------------------------------------------------------

    def admissible(self, x: Mode) -> bool:
        return x.kind in self.kinds and self.p.admissible(x.gen)

    def bracket(self, x: Mode, y: Mode) -> dict:
        key = (x, y)
        out = self._bracket_cache.get(key)
        if out is None:
            out = self._bracket(x, y)
            self._bracket_cache[key] = out
        return out

    def _act_mono(self, x: Mode, mono: tuple) -> dict:
        key = (x, mono)
        res = self._act_cache.get(key)
        if res is not None:
            return res
        if not mono:
            res = {(x,): ONE} if creates(x) else {}
        else:
            a = mono[0]
            if creates(x) and x <= a:
                if x == a and x.kind in ODD_KINDS:
                    res = {}
                else:
                    res = {(x,) + mono: ONE}
            else:
                # x a rest = sign a (x rest) + [x, a} rest
                res = {}
                rest = mono[1:]
                sign = -ONE if (x.kind in ODD_KINDS and a.kind in ODD_KINDS) else ONE
                for m2, c2 in self._act_mono(x, rest).items():
                    add_scaled(res, self._act_mono(a, m2), c2 * sign)
                for y, c in self.bracket(x, a).items():
                    if y is None:
                        addto(res, rest, c)
                    else:
                        add_scaled(res, self._act_mono(y, rest), c)
        self._act_cache[key] = res
        return res

    def act_dict(self, x: Mode, terms: dict) -> dict:
        out: dict = {}
        for mono, c in terms.items():
            add_scaled(out, self._act_mono(x, mono), c)
        return out

    def apply_mode(self, x: Mode, v: State) -> State:
        """PBW normal form of ``x . v``."""
        if not self.admissible(x):
            return State.zero()
        return State.wrap(self.act_dict(x, v.terms))

    def word_dict(self, word: Iterable[Mode], terms: dict) -> dict:
        """Apply ``word[0] word[1] ... word[-1]`` (rightmost first)."""
        for x in reversed(list(word)):
            if not terms:
                break
            terms = self.act_dict(x, terms)
        return terms

    def apply_word(self, word: Iterable[Mode], v: State) -> State:
        word = list(word)
        if not all(self.admissible(x) for x in word):
            return State.zero()
        return State.wrap(self.word_dict(word, v.terms))

    def monomial_state(self, word: Iterable[Mode]) -> State:
        return self.apply_word(word, State.vacuum())

    # translation operator ------------------------------------------------------

    @staticmethod
    def t_shift(x: Mode) -> tuple[int, Mode]:
        """``[T, x] = c x'`` as ``(c, x')``."""
        c = -(x.m - 1) if x.kind == Kind.PSISTAR else -x.m
        return c, x._replace(m=x.m - 1)

    def _translate_mono(self, mono: tuple) -> dict:
        res = self._T_cache.get(mono)
        if res is not None:
            return res
        res = {}
        if mono:
            a, rest = mono[0], mono[1:]
            c, a1 = self.t_shift(a)
            if c:
                add_scaled(res, self._act_mono(a1, rest), Scalar.const(c))
            add_scaled(res, self.act_dict(a, self._translate_mono(rest)), ONE)
        self._T_cache[mono] = res
        return res

    def translate_dict(self, terms: dict) -> dict:
        out: dict = {}
        for mono, c in terms.items():
            add_scaled(out, self._translate_mono(mono), c)
        return out

    def translate(self, v: State) -> State:
        return State.wrap(self.translate_dict(v.terms))

    # gradings ------------------------------------------------------------------

    @staticmethod
    def bidegree(mono: tuple) -> tuple[int, int]:
        return sum(mode_deg(x) for x in mono), sum(mode_charge(x) for x in mono)

    def grade(self, v: State) -> dict[tuple[int, int], State]:
        out: dict = {}
        for mono, c in v.terms.items():
            out.setdefault(self.bidegree(mono), {})[mono] = c
        return {key: State.wrap(d) for key, d in out.items()}

    @staticmethod
    def annihilation_bound(v: State, g: GenIndex | None = None) -> int:
        """``M`` with ``g[m] v = 0`` for all ``m > M``; valid for every generator."""
        return v.max_energy()

    # bases ---------------------------------------------------------------------

    def creation_modes(self, max_energy: int) -> list[Mode]:
        out = []
        for g in self.generators():
            top = 0 if g.kind == Kind.PSISTAR else -1
            for m in range(top, -max_energy - 1, -1):
                out.append(Mode(m, g.kind, g.i, g.j, g.r))
        out.sort()
        return out

    def basis(self, max_energy: int, max_deg: int | None = None,
              max_abs_charge: int | None = None) -> list[tuple]:
        """Ordered creation monomials with energy <= ``max_energy``.

        Optional filters bound the conformal degree from above and the
        absolute charge.  Every admissible monomial of bounded energy is a
        basis vector, so this is a basis of the truncated space.
        """
        modes = self.creation_modes(max_energy)
        out: list[tuple] = []

        def rec(start: int, prefix: tuple, budget: int):
            out.append(prefix)
            for idx in range(start, len(modes)):
                x = modes[idx]
                e = -x.m
                if e > budget:
                    continue
                nxt = idx + 1 if x.kind in ODD_KINDS else idx
                rec(nxt, prefix + (x,), budget - e)

        rec(0, (), max_energy)
        res = []
        for mono in out:
            deg, ch = self.bidegree(mono)
            if max_deg is not None and deg > max_deg:
                continue
            if max_abs_charge is not None and abs(ch) > max_abs_charge:
                continue
            res.append(mono)
        return res

    def clear_caches(self) -> None:
        self._act_cache.clear()
        self._T_cache.clear()


class FullComplex(ModeAlgebra):
    """``C^k(a) = V^k(a) (x) F`` at symbolic level ``k``."""

    kinds = (Kind.E, Kind.PSI, Kind.PSISTAR)
    name = "full"

    def __init__(self, pyramid: Pyramid, level: Scalar = K):
        super().__init__(pyramid)
        self.level = level

    def generators(self) -> list[GenIndex]:
        p = self.p
        psis = p.basis_psi()
        return p.basis_E() + psis + [g._replace(kind=Kind.PSISTAR) for g in psis]

    def _bracket(self, x: Mode, y: Mode) -> dict:
        out: dict = {}
        if x.kind == Kind.E and y.kind == Kind.E:
            p = self.p
            m, i, j, r = x.m, x.i, x.j, x.r
            q, h, l, s = y.m, y.i, y.j, y.r
            if h == j and r + s < p.lam(l):
                addto(out, Mode(m + q, Kind.E, i, l, r + s), ONE)
            if i == l and r + s < p.lam(j):
                addto(out, Mode(m + q, Kind.E, h, j, r + s), -ONE)
            if m + q == 0 and m:
                f = form(p, x.gen, y.gen)
                if f:
                    addto(out, None, self.level * (m * f))
        elif {x.kind, y.kind} == {Kind.PSI, Kind.PSISTAR}:
            if (x.i, x.j, x.r) == (y.i, y.j, y.r) and x.m + y.m == 0:
                out[None] = ONE
        return out


class ReducedAlgebra(ModeAlgebra):
    """Induced module over ``(b[t,t^-1] + CK) + m[t,t^-1]`` with ``K = k + N``.

    ``psi*[m]`` stands for ``psi* t^{m-1}``; it is killed on the vacuum for
    ``m >= 1`` exactly as in the full complex.
    """

    kinds = (Kind.ELOW, Kind.PSISTAR)
    name = "reduced"

    def __init__(self, pyramid: Pyramid, level: Scalar = K):
        super().__init__(pyramid)
        self.level = level
        self.central = level + pyramid.N

    def generators(self) -> list[GenIndex]:
        p = self.p
        return p.basis_elow() + [g._replace(kind=Kind.PSISTAR) for g in p.basis_psi()]

    def _e_psistar(self, x: Mode, y: Mode, out: dict, c: Scalar) -> None:
        # [e_ij^(r)[m], psi*_hl^(s)[p]] = d_lj psi*_hi^(s-r) - d_hi psi*_jl^(s-r)
        p = self.p
        i, j, r = x.i, x.j, x.r
        h, l, s = y.i, y.j, y.r
        t = s - r
        mp = x.m + y.m
        if l == j and t in p.psi_range(h, i):
            addto(out, Mode(mp, Kind.PSISTAR, h, i, t), c)
        if h == i and t in p.psi_range(j, l):
            addto(out, Mode(mp, Kind.PSISTAR, j, l, t), -c)

    def _bracket(self, x: Mode, y: Mode) -> dict:
        out: dict = {}
        p = self.p
        if x.kind == Kind.ELOW and y.kind == Kind.ELOW:
            m, i, j, r = x.m, x.i, x.j, x.r
            q, h, l, s = y.m, y.i, y.j, y.r
            if h == j and r + s < p.lam(l):
                addto(out, Mode(m + q, Kind.ELOW, i, l, r + s), ONE)
            if i == l and r + s < p.lam(j):
                addto(out, Mode(m + q, Kind.ELOW, h, j, r + s), -ONE)
            if m + q == 0 and m:
                f = form(p, x.gen, y.gen)
                if f:
                    addto(out, None, self.central * (m * f))
        elif x.kind == Kind.ELOW and y.kind == Kind.PSISTAR:
            self._e_psistar(x, y, out, ONE)
        elif x.kind == Kind.PSISTAR and y.kind == Kind.ELOW:
            self._e_psistar(y, x, out, -ONE)
        return out

    def heisenberg_generators(self) -> list[GenIndex]:
        return [g for g in self.p.basis_elow() if g.i == g.j]


def is_heisenberg(mono: tuple) -> bool:
    return all(x.kind == Kind.ELOW and x.i == x.j for x in mono)


__all__ = [
    "Mode", "mode", "State", "ModeAlgebra", "FullComplex", "ReducedAlgebra",
    "creates", "is_odd", "mode_deg", "mode_charge", "energy", "format_monomial",
    "addto", "add_scaled", "is_heisenberg",
]
