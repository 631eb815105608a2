"""Pyramid combinatorics for the centralizer of a nilpotent matrix in gl_N.

A pyramid is a left-justified array of rows of lengths ``l_1 <= ... <= l_n``.
Everything downstream (generator index ranges, gradings, the bilinear form)
is indexed by it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from typing import NamedTuple


class ShapeError(ValueError):
    pass


class EmptyShape(ShapeError):
    pass


class NonMonotoneShape(ShapeError):
    pass


class OutOfRange(IndexError):
    pass


class InadmissibleIndex(ValueError):
    pass


class Kind(IntEnum):
    """Generator kinds. The integer value is the kind rank used by the PBW order."""

    E = 0
    PSI = 1
    PSISTAR = 2
    ELOW = 3


ODD_KINDS = frozenset((Kind.PSI, Kind.PSISTAR))

_KIND_NAMES = {Kind.E: "E", Kind.PSI: "psi", Kind.PSISTAR: "psi*", Kind.ELOW: "e"}
_NAME_KINDS = {v: k for k, v in _KIND_NAMES.items()}
_NAME_KINDS.update({"psiStar": Kind.PSISTAR, "eLow": Kind.ELOW})


def kind_name(kind: Kind) -> str:
    return _KIND_NAMES[kind]


def kind_from_name(name: str) -> Kind:
    try:
        return _NAME_KINDS[name]
    except KeyError:
        raise ValueError(f"unknown generator kind {name!r}") from None


class GenIndex(NamedTuple):
    kind: Kind
    i: int
    j: int
    r: int

    def __str__(self):
        return f"{kind_name(self.kind)}[{self.i},{self.j},{self.r}]"


@dataclass(frozen=True)
class Pyramid:
    lambdas: tuple[int, ...]
    q: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _rows: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lams = tuple(self.lambdas)
        if not lams:
            raise EmptyShape("a pyramid needs at least one row")
        if any(int(x) != x or x < 1 for x in lams):
            raise ShapeError(f"row lengths must be positive integers: {lams}")
        if any(a > b for a, b in zip(lams, lams[1:])):
            raise NonMonotoneShape(f"row lengths must be non-decreasing: {lams}")
        object.__setattr__(self, "lambdas", lams)
        q = tuple(sum(1 for x in lams if x >= c) for c in range(1, lams[-1] + 1))
        object.__setattr__(self, "q", q)
        # first entry of each row, 1-based, plus a sentinel
        starts = [1]
        for x in lams:
            starts.append(starts[-1] + x)
        object.__setattr__(self, "_rows", tuple(starts))

    @classmethod
    def build(cls, lambdas) -> "Pyramid":
        return cls(tuple(lambdas))

    @classmethod
    def parse(cls, text: str) -> "Pyramid":
        """Parse a comma-separated shape such as ``"2,3,4"``."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            lams = tuple(int(p) for p in parts)
        except ValueError:
            raise ShapeError(f"cannot parse pyramid {text!r}") from None
        return cls(lams)

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def N(self) -> int:
        return self._rows[-1] - 1

    def lam(self, i: int) -> int:
        """Row length ``l_i`` with 1-based ``i``."""
        if not 1 <= i <= self.n:
            raise OutOfRange(f"row {i} outside 1..{self.n}")
        return self.lambdas[i - 1]

    def row_col(self, a: int) -> tuple[int, int]:
        if not 1 <= a <= self.N:
            raise OutOfRange(f"entry {a} outside 1..{self.N}")
        for i in range(self.n):
            if a < self._rows[i + 1]:
                return i + 1, a - self._rows[i] + 1
        raise AssertionError("unreachable")

    def entry(self, row: int, col: int) -> int:
        """Inverse of :meth:`row_col`."""
        if not 1 <= col <= self.lam(row):
            raise OutOfRange(f"column {col} outside row {row}")
        return self._rows[row - 1] + col - 1

    def top_sum(self, l: int) -> int:
        """Sum of the ``l`` largest row lengths, ``l_{n-l+1} + ... + l_n``."""
        return sum(self.lambdas[self.n - l:]) if l > 0 else 0

    # admissible superscripts -------------------------------------------------

    def E_range(self, i: int, j: int) -> range:
        li, lj = self.lam(i), self.lam(j)
        return range(lj - min(li, lj), lj)

    def psi_range(self, i: int, j: int) -> range:
        if not (1 <= i < j <= self.n):
            return range(0)
        li, lj = self.lam(i), self.lam(j)
        return range(lj - li, lj)

    def elow_range(self, i: int, j: int) -> range:
        if not (1 <= j <= i <= self.n):
            return range(0)
        return range(0, self.lam(j))

    def admissible(self, g: GenIndex) -> bool:
        i, j = g.i, g.j
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            return False
        if g.kind == Kind.E:
            return g.r in self.E_range(i, j)
        if g.kind in ODD_KINDS:
            return g.r in self.psi_range(i, j)
        return g.r in self.elow_range(i, j)

    def check(self, g: GenIndex) -> GenIndex:
        if not self.admissible(g):
            raise InadmissibleIndex(f"{g} is not admissible for {self}")
        return g

    def basis_E(self) -> list[GenIndex]:
        return [GenIndex(Kind.E, i, j, r)
                for i in range(1, self.n + 1)
                for j in range(1, self.n + 1)
                for r in self.E_range(i, j)]

    def basis_psi(self) -> list[GenIndex]:
        return [GenIndex(Kind.PSI, i, j, r)
                for i in range(1, self.n + 1)
                for j in range(i + 1, self.n + 1)
                for r in self.psi_range(i, j)]

    def basis_elow(self) -> list[GenIndex]:
        return [GenIndex(Kind.ELOW, i, j, r)
                for i in range(1, self.n + 1)
                for j in range(1, i + 1)
                for r in self.elow_range(i, j)]

    def matrix_units(self, g: GenIndex) -> list[tuple[int, int]]:
        """Matrix units ``(a, b)`` with ``row(a)=i, row(b)=j, col(b)-col(a)=r``.

        This is the gl_N expansion of ``E_ij^(r)``; it is used as an oracle only.
        """
        out = []
        for ca in range(1, self.lam(g.i) + 1):
            cb = ca + g.r
            if 1 <= cb <= self.lam(g.j):
                out.append((self.entry(g.i, ca), self.entry(g.j, cb)))
        return out

    def lie_bracket(self, g1: GenIndex, g2: GenIndex) -> dict[GenIndex, int]:
        """``[E_ij^(r), E_hl^(s)] = d_hj E_il^(r+s) - d_il E_hj^(r+s)``, truncated."""
        (_, i, j, r), (_, h, l, s) = g1, g2
        out: dict[GenIndex, int] = {}
        if h == j and r + s < self.lam(l):
            key = GenIndex(Kind.E, i, l, r + s)
            out[key] = out.get(key, 0) + 1
        if i == l and r + s < self.lam(j):
            key = GenIndex(Kind.E, h, j, r + s)
            out[key] = out.get(key, 0) - 1
        return {key: c for key, c in out.items() if c}

    def to_json(self) -> dict:
        return {"lambdas": list(self.lambdas), "q": list(self.q), "N": self.N}

    def __str__(self):
        return ",".join(map(str, self.lambdas))


def deg_conformal(g: GenIndex, m: int) -> int:
    if g.kind == Kind.PSISTAR:
        return -m + g.j - g.i
    return -m + g.i - g.j


def charge(g: GenIndex) -> int:
    if g.kind == Kind.PSI:
        return -1
    if g.kind == Kind.PSISTAR:
        return 1
    return 0


def dumps(p: Pyramid) -> str:
    return json.dumps(p.to_json())
