"""Subfield-linear algebra inside the top field.

A SubspaceBasis holds an F_{p^s}-subspace of F_{q^n} as a canonical RREF
matrix of coordinate rows over F_{p^s}, in the fixed polynomial basis
{1, g, g^2, ...} of the top field (g the residue class of the modulus
variable). The usual case is s = m (F_q-subspaces, dimension n over F_q);
s = 1 gives F_p-subspaces of dimension m*n, used by the p-polynomial
machinery.
"""

from __future__ import annotations

import itertools

from . import _linalg
from .errors import SingularBasisSystem, TowerMismatch
from .ff_core import FieldTower


class SubspaceBasis:
    """Canonical basis of a subspace: RREF rows of coordinate vectors."""

    __slots__ = ("tower", "step", "rows")

    def __init__(self, tower: FieldTower, vectors, step: int | None = None):
        self.tower = tower
        self.step = step if step is not None else tower.m
        if tower.mn % self.step != 0:
            raise ValueError("step must divide m*n")
        rows, _ = _linalg.rref(tower, [list(v) for v in vectors])
        self.rows = tuple(tuple(r) for r in rows)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_elements(cls, tower: FieldTower, elems, step: int | None = None):
        s = step if step is not None else tower.m
        return cls(tower, [coords(tower, e, s) for e in elems], step=s)

    @classmethod
    def zero(cls, tower: FieldTower, step: int | None = None):
        return cls(tower, [], step=step)

    @classmethod
    def full(cls, tower: FieldTower, step: int | None = None):
        s = step if step is not None else tower.m
        return cls(tower, _linalg.identity(tower.mn // s), step=s)

    # -- basics ------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient_dim(self) -> int:
        return self.tower.mn // self.step

    @property
    def subfield_size(self) -> int:
        return self.tower.p ** self.step

    def size(self) -> int:
        return self.subfield_size ** self.dim

    def contains(self, e: int) -> bool:
        v = coords(self.tower, e, self.step)
        return self._reduces_to_zero(v)

    def _reduces_to_zero(self, v: list[int]) -> bool:
        t = self.tower
        v = list(v)
        for row in self.rows:
            pc = next(i for i, x in enumerate(row) if x != 0)
            if v[pc] != 0:
                f = v[pc]
                v = [t.sub(v[j], t.mul(f, row[j])) for j in range(len(v))]
        return all(x == 0 for x in v)

    def elements(self):
        """All element codes of the subspace (size q_s^dim)."""
        t = self.tower
        base = [from_coords(t, row, self.step) for row in self.rows]
        for combo in itertools.product(range(self.subfield_size), repeat=self.dim):
            acc = 0
            for c, b in zip(combo, base):
                acc = t.add(acc, t.mul(c, b))
            yield acc

    def basis_elements(self) -> list[int]:
        return [from_coords(self.tower, row, self.step) for row in self.rows]

    def refine(self, new_step: int) -> "SubspaceBasis":
        """Re-express over the smaller subfield F_{p^new_step}; the subspace
        of elements is unchanged."""
        if self.step % new_step != 0:
            raise ValueError("can only refine to a divisor step")
        if new_step == self.step:
            return self
        t = self.tower
        spanning = []
        for b in self.basis_elements():
            for j in range(0, self.step, new_step):
                spanning.append(t.mul(b, t.p ** j))
        return SubspaceBasis.from_elements(t, spanning, step=new_step)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubspaceBasis)
                and self.tower.same_as(other.tower)
                and self.step == other.step and self.rows == other.rows)

    def __hash__(self):
        return hash((self.step, self.rows))

    def __repr__(self) -> str:
        return render_span(self)


def coords(tower: FieldTower, e: int, step: int) -> list[int]:
    """Base-(p^step) digits of an element: its coordinates in the fixed basis."""
    r = tower.p ** step
    out = []
    for _ in range(tower.mn // step):
        out.append(e % r)
        e //= r
    return out


def from_coords(tower: FieldTower, v, step: int) -> int:
    r = tower.p ** step
    return sum(int(c) * r**i for i, c in enumerate(v))


def basis_element(tower: FieldTower, j: int, step: int) -> int:
    """The j-th polynomial-basis element g^j (code (p^step)^j)."""
    return (tower.p ** step) ** j


# -- linear maps ------------------------------------------------------------


def linmap_matrix(L) -> list[list[int]]:
    """Matrix of a linearized polynomial: column j = coords of L(g^j)."""
    t = L.tower
    s = L.step
    D = t.mn // s
    cols = [coords(t, L.eval(basis_element(t, j, s)), s) for j in range(D)]
    return _linalg.transpose(cols)


def matrix_to_linpoly(M, tower: FieldTower, step: int | None = None):
    """The linearized polynomial inducing the given matrix, by solving the
    Moore system of the polynomial basis over the top field."""
    from .linearized import LinPoly

    s = step if step is not None else tower.m
    D = tower.mn // s
    # row j: sum_i a_i * (g^j)^(r^i) = image of g^j
    A = [[tower.frob_p(basis_element(tower, j, s), s * i) for i in range(D)]
         for j in range(D)]
    b = [from_coords(tower, [M[i][j] for i in range(D)], s) for j in range(D)]
    sol = _linalg.solve_right(tower, A, b)
    if sol is None:
        raise SingularBasisSystem("Moore system of the polynomial basis is singular")
    return LinPoly(tower, sol, step=s)


def kernel_of_matrix(tower: FieldTower, M, step: int) -> SubspaceBasis:
    return SubspaceBasis(tower, _linalg.nullspace(tower, M), step=step)


def image_of_matrix(tower: FieldTower, M, step: int) -> SubspaceBasis:
    return SubspaceBasis(tower, _linalg.transpose(M), step=step)


def kernel(L) -> SubspaceBasis:
    return kernel_of_matrix(L.tower, linmap_matrix(L), L.step)


def image(L) -> SubspaceBasis:
    return image_of_matrix(L.tower, linmap_matrix(L), L.step)


def s_psi(psi) -> SubspaceBasis:
    """The subspace {x - psi(x)}: image of (identity - psi)."""
    t = psi.tower
    M = linmap_matrix(psi)
    D = len(M)
    I = _linalg.identity(D)
    diff = [[t.sub(I[i][j], M[i][j]) for j in range(D)] for i in range(D)]
    return image_of_matrix(t, diff, psi.step)


# -- subspace operations ----------------------------------------------------


def subspace_sum(A: SubspaceBasis, B: SubspaceBasis) -> SubspaceBasis:
    _check_pair(A, B)
    return SubspaceBasis(A.tower, list(A.rows) + list(B.rows), step=A.step)


def subspace_intersect(A: SubspaceBasis, B: SubspaceBasis) -> SubspaceBasis:
    _check_pair(A, B)
    t = A.tower
    stacked = list(A.rows) + list(B.rows)
    if not stacked:
        return SubspaceBasis.zero(t, step=A.step)
    # left-nullspace combos y with y[:k1]*A = -y[k1:]*B give the intersection
    combos = _linalg.nullspace(t, _linalg.transpose(stacked))
    vecs = []
    for y in combos:
        v = [0] * A.ambient_dim
        for ci, row in zip(y[:A.dim], A.rows):
            for j in range(len(v)):
                v[j] = t.add(v[j], t.mul(ci, row[j]))
        vecs.append(v)
    return SubspaceBasis(t, vecs, step=A.step)


def subspace_contains(A: SubspaceBasis, e: int) -> bool:
    return A.contains(e)


def subspace_equal(A: SubspaceBasis, B: SubspaceBasis) -> bool:
    _check_pair(A, B)
    return A.rows == B.rows


def _check_pair(A: SubspaceBasis, B: SubspaceBasis) -> None:
    A.tower.check_same(B.tower)
    if A.step != B.step:
        raise TowerMismatch("subspaces use different coordinate steps")


# -- projection idempotents --------------------------------------------------


def projection_idempotent(V: SubspaceBasis, image_contains: SubspaceBasis | None = None):
    """A linearized polynomial K with K o K = K and ker(K) = V.

    The basis of V is extended with standard basis vectors greedily in
    index order; K kills V and fixes the chosen complement. When
    image_contains is given, its vectors seed the complement so that the
    image of K contains that subspace (it must meet V trivially).
    """
    t = V.tower
    D = V.ambient_dim
    basis = [list(r) for r in V.rows]
    complement = []
    if image_contains is not None:
        if image_contains.step != V.step:
            image_contains = image_contains.refine(V.step)
        for row in image_contains.rows:
            trial, _ = _linalg.rref(t, basis + complement + [list(row)])
            if len(trial) <= len(basis) + len(complement):
                raise SingularBasisSystem(
                    "required image meets the kernel nontrivially")
            complement.append(list(row))
    for i in range(D):
        e = [0] * D
        e[i] = 1
        trial, _ = _linalg.rref(t, basis + complement + [e])
        if len(trial) > len(basis) + len(complement):
            complement.append(e)
        if len(basis) + len(complement) == D:
            break
    # columns of B: V basis then complement; P maps B*[v;c] -> B*[0;c]
    B = _linalg.transpose(basis + complement)
    Binv = _linalg.mat_inv(t, B)
    if Binv is None:
        raise SingularBasisSystem("basis extension failed")
    sel = [[0] * D for _ in range(D)]
    for j in range(len(basis), D):
        sel[j][j] = 1
    P = _linalg.mat_mul(t, B, _linalg.mat_mul(t, sel, Binv))
    return matrix_to_linpoly(P, t, step=V.step)


# -- literals ----------------------------------------------------------------


def render_span(A: SubspaceBasis) -> str:
    elems = [str(from_coords(A.tower, row, A.step)) for row in A.rows]
    return "span{" + ",".join(elems) + "}"


def parse_span(tower: FieldTower, text: str, step: int | None = None) -> SubspaceBasis:
    text = text.strip()
    if not text.startswith("span{") or not text.endswith("}"):
        raise ValueError(f"bad span literal {text!r}")
    inner = text[5:-1].strip()
    elems = [int(x) for x in inner.split(",")] if inner else []
    return SubspaceBasis.from_elements(tower, elems, step=step)
