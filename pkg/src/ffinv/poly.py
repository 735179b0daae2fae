"""Dense polynomials over the top field and the brute-force oracle.

Every closed-form inverse in this library is checked against the
evaluate-everywhere machinery here, so this module stays deliberately
simple: Horner evaluation, Newton interpolation, and lookup tables.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import (
    DeskScaleExceeded,
    DuplicateNode,
    NotBijectiveOnDomain,
    NotPermutation,
)
from .ff_core import FieldTower


class Poly:
    """Polynomial over F_{q^n} with ascending coefficient list of int codes.

    Canonical form has degree < q^n (exponents folded through x^{q^n} = x)
    and no trailing zeros; the zero polynomial has an empty list.
    """

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs, reduce: bool = True):
        self.tower = tower
        cs = [int(c) for c in coeffs]
        if reduce:
            cs = self._fold(tower, cs)
        self.coeffs = cs

    @staticmethod
    def _fold(tower: FieldTower, cs: list[int]) -> list[int]:
        N = tower.N
        if len(cs) > N:
            folded = [0] * N
            for e, c in enumerate(cs):
                if c == 0:
                    continue
                fe = e if e < N else ((e - 1) % (N - 1)) + 1
                folded[fe] = tower.add(folded[fe], c)
            cs = folded
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        return cs

    @classmethod
    def zero(cls, tower: FieldTower) -> "Poly":
        return cls(tower, [])

    @classmethod
    def constant(cls, tower: FieldTower, c: int) -> "Poly":
        return cls(tower, [c])

    @classmethod
    def x(cls, tower: FieldTower) -> "Poly":
        return cls(tower, [0, 1])

    @classmethod
    def monomial(cls, tower: FieldTower, e: int, c: int = 1) -> "Poly":
        return cls(tower, [0] * e + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, a: int) -> int:
        t = self.tower
        acc = 0
        for c in reversed(self.coeffs):
            acc = t.add(t.mul(acc, a), c)
        return acc

    def eval_all(self) -> np.ndarray:
        """Values at every field element, indexed by element code."""
        xs = np.arange(self.tower.N, dtype=np.int64)
        return kernels.eval_many(self.coeffs, xs, self.tower)

    def eval_many(self, xs) -> np.ndarray:
        return kernels.eval_many(self.coeffs, xs, self.tower)

    def __add__(self, other: "Poly") -> "Poly":
        t = self.tower
        t.check_same(other.tower)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = t.add(out[i], c)
        return Poly(t, out)

    def __neg__(self) -> "Poly":
        t = self.tower
        return Poly(t, [t.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        t = self.tower
        t.check_same(other.tower)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(t)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[i + j] = t.add(out[i + j], t.mul(a, b))
        return Poly(t, out)

    def scale(self, c: int) -> "Poly":
        t = self.tower
        return Poly(t, [t.mul(c, a) for a in self.coeffs])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.tower.same_as(other.tower)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self) -> str:
        return f"poly:[{','.join(map(str, self.coeffs))}]"


def _check_scale(tower: FieldTower) -> None:
    if tower.N > tower.desk_limit:
        raise DeskScaleExceeded(f"field size {tower.N} too large for the oracle")


def eval_poly(f: Poly, a: int) -> int:
    return f(a)


def compose_mod(f: Poly, g: Poly) -> Poly:
    """Canonical f(g(x)) via evaluate-everywhere and interpolation."""
    t = f.tower
    t.check_same(g.tower)
    _check_scale(t)
    xs = np.arange(t.N, dtype=np.int64)
    ys = f.eval_many(g.eval_many(xs))
    return Poly(t, kernels.newton_interpolate(xs, ys, t))


def is_permutation(f: Poly) -> bool:
    t = f.tower
    _check_scale(t)
    vals = f.eval_all()
    return len(np.unique(vals)) == t.N


def brute_inverse(f: Poly) -> Poly:
    """The unique inverse of degree < q^n, from the value table."""
    t = f.tower
    _check_scale(t)
    vals = f.eval_all()
    if len(np.unique(vals)) != t.N:
        raise NotPermutation("polynomial is not a permutation of the field")
    xs = vals
    ys = np.arange(t.N, dtype=np.int64)
    return Poly(t, kernels.newton_interpolate(xs, ys, t))


def interpolate(tower: FieldTower, points) -> Poly:
    """Unique polynomial of degree < len(points) through the given pairs."""
    xs = [a for a, _ in points]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("interpolation nodes must be pairwise distinct")
    ys = [b for _, b in points]
    return Poly(tower, kernels.newton_interpolate(xs, ys, tower))


def functions_equal(f: Poly, g: Poly) -> bool:
    f.tower.check_same(g.tower)
    _check_scale(f.tower)
    return bool(np.array_equal(f.eval_all(), g.eval_all()))


def restricted_inverse_table(f: Poly, domain, codomain) -> dict[int, int]:
    """Inverse lookup of f restricted to domain, verified to hit codomain
    bijectively. Keys cover all of codomain."""
    dom = list(domain)
    cod = set(codomain)
    table: dict[int, int] = {}
    for v in dom:
        w = f(v)
        if w not in cod or w in table:
            raise NotBijectiveOnDomain(
                f"f is not a bijection domain -> codomain (at element {v})")
        table[w] = v
    if len(table) != len(cod):
        raise NotBijectiveOnDomain("f does not cover the codomain")
    return table


def table_to_poly(tower: FieldTower, table: dict[int, int]) -> Poly:
    """Interpolate a partial value table into a Poly; unconstrained points
    get the value 0 to keep output deterministic."""
    xs = np.arange(tower.N, dtype=np.int64)
    ys = np.array([table.get(int(x), 0) for x in xs], dtype=np.int64)
    return Poly(tower, kernels.newton_interpolate(xs, ys, tower))
