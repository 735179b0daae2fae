"""Linearized polynomials and their associate (Dickson) matrices.

A LinPoly with step s over the tower denotes sum_i a_i x^(p^(s*i)) with
D = (m*n)/s coefficients. Step m gives the usual q-polynomials with n
coefficients; step 1 gives p-polynomials with m*n coefficients. All the
machinery (associate matrix, composition, cofactor inverse, restricted
inverses) is generic in the step.
"""

from __future__ import annotations

import itertools
import math

from . import _linalg
from .errors import (
    DeskScaleExceeded,
    NoSolution,
    NoSuitableRoot,
    NotBijectiveOnSubspace,
    SingularDickson,
    TraceZero,
    ZeroC,
)
from .ff_core import FieldTower, factorize, get_tower


class LinPoly:
    """sum_i coeffs[i] * x^(p^(step*i)); an F_{p^step}-linear map."""

    __slots__ = ("tower", "coeffs", "step")

    def __init__(self, tower: FieldTower, coeffs, step: int | None = None):
        self.tower = tower
        self.step = step if step is not None else tower.m
        if tower.mn % self.step != 0:
            raise ValueError("step must divide m*n")
        D = tower.mn // self.step
        cs = [int(c) for c in coeffs]
        if len(cs) > D:
            raise ValueError(f"too many coefficients for step {self.step}")
        cs += [0] * (D - len(cs))
        self.coeffs = cs

    @classmethod
    def identity(cls, tower: FieldTower, step: int | None = None) -> "LinPoly":
        return cls(tower, [1], step=step)

    @classmethod
    def zero(cls, tower: FieldTower, step: int | None = None) -> "LinPoly":
        return cls(tower, [], step=step)

    @classmethod
    def trace(cls, tower: FieldTower) -> "LinPoly":
        return cls(tower, [1] * tower.n, step=tower.m)

    @classmethod
    def trace_alpha(cls, tower: FieldTower, alpha: int) -> "LinPoly":
        """T_alpha(x) = T(alpha * x)."""
        return cls(tower, [tower.frobenius(alpha, i) for i in range(tower.n)],
                   step=tower.m)

    @classmethod
    def q_minus_x(cls, tower: FieldTower) -> "LinPoly":
        """Q(x) = x^q - x, whose image is ker(T)."""
        return cls(tower, [tower.neg(1), 1], step=tower.m)

    @property
    def D(self) -> int:
        return self.tower.mn // self.step

    def eval(self, x: int) -> int:
        t = self.tower
        out = 0
        for i, a in enumerate(self.coeffs):
            if a:
                out = t.add(out, t.mul(a, t.frob_p(x, self.step * i)))
        return out

    __call__ = eval

    def to_step(self, new_step: int) -> "LinPoly":
        """Re-express with a finer step (new_step must divide step)."""
        if self.step % new_step != 0:
            raise ValueError("can only refine to a divisor step")
        if new_step == self.step:
            return self
        D_new = self.tower.mn // new_step
        out = [0] * D_new
        for i, a in enumerate(self.coeffs):
            out[(self.step * i) // new_step] = a
        return LinPoly(self.tower, out, step=new_step)

    def to_poly(self):
        from .poly import Poly
        t = self.tower
        cs = [0] * (self.tower.p ** (self.step * (self.D - 1)) + 1)
        for i, a in enumerate(self.coeffs):
            cs[t.p ** (self.step * i)] = t.add(cs[t.p ** (self.step * i)], a)
        return Poly(t, cs)

    def add(self, other: "LinPoly") -> "LinPoly":
        a, b = _common_step(self, other)
        t = self.tower
        return LinPoly(t, [t.add(x, y) for x, y in zip(a.coeffs, b.coeffs)],
                       step=a.step)

    def sub(self, other: "LinPoly") -> "LinPoly":
        a, b = _common_step(self, other)
        t = self.tower
        return LinPoly(t, [t.sub(x, y) for x, y in zip(a.coeffs, b.coeffs)],
                       step=a.step)

    def scale(self, c: int) -> "LinPoly":
        t = self.tower
        return LinPoly(t, [t.mul(c, a) for a in self.coeffs], step=self.step)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinPoly) or not self.tower.same_as(other.tower):
            return False
        a, b = _common_step(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(tuple(self.to_step(1).coeffs))

    def __repr__(self) -> str:
        return f"lin:[{','.join(map(str, self.coeffs))}]"


def _common_step(a: LinPoly, b: LinPoly) -> tuple[LinPoly, LinPoly]:
    a.tower.check_same(b.tower)
    if a.step == b.step:
        return a, b
    s = math.gcd(a.step, b.step)
    return a.to_step(s), b.to_step(s)


def dickson_matrix(L: LinPoly) -> list[list[int]]:
    """Associate matrix: entry (i,k) = a_{(k-i) mod D} ^ (r^i), r = p^step."""
    t = L.tower
    D = L.D
    return [[t.frob_p(L.coeffs[(k - i) % D], L.step * i) for k in range(D)]
            for i in range(D)]


def lin_eval(L: LinPoly, a: int) -> int:
    return L.eval(a)


def lin_compose(phi: LinPoly, psi: LinPoly) -> LinPoly:
    """phi o psi, via the coefficient-vector times associate-matrix rule."""
    phi, psi = _common_step(phi, psi)
    v = _linalg.vec_mat(phi.tower, phi.coeffs, dickson_matrix(psi))
    return LinPoly(phi.tower, v, step=phi.step)


def dickson_det(L: LinPoly) -> int:
    return _linalg.det(L.tower, dickson_matrix(L))


def lin_inverse_full(L: LinPoly) -> LinPoly:
    """Full compositional inverse by first-column cofactors of the
    associate matrix; requires the matrix to be nonsingular."""
    t = L.tower
    D = L.D
    M = dickson_matrix(L)
    d = _linalg.det(t, M)
    if d == 0:
        raise SingularDickson("linearized polynomial is not a permutation")
    dinv = t.inv(d)
    coeffs = []
    for i in range(D):
        minor = [[M[r][c] for c in range(1, D)] for r in range(D) if r != i]
        cof = _linalg.det(t, minor) if D > 1 else 1
        if i % 2 == 1:
            cof = t.neg(cof)
        coeffs.append(t.mul(dinv, cof))
    return LinPoly(t, coeffs, step=L.step)


# -- bijection criteria ------------------------------------------------------


def check_lin_bijection_criteria(phi: LinPoly, psi: LinPoly, psibar: LinPoly,
                                 mode: str) -> bool:
    """Kernel-intersection criteria for phi permuting the field (full_field)
    or inducing a bijection S_psi -> S_psibar (s_psi). The verdict is
    cross-checked exhaustively; a mismatch raises OracleMismatch."""
    from . import subspace as sub
    from .errors import HypothesisViolated, OracleMismatch

    if mode not in ("full_field", "s_psi"):
        raise ValueError(f"unknown mode {mode!r}")
    if not lin_compose(phi, psi) == lin_compose(psibar, phi):
        raise HypothesisViolated("phi o psi == psibar o phi")
    im_psi, im_psibar = sub.image(psi), sub.image(psibar)
    if im_psi.size() != im_psibar.size():
        raise HypothesisViolated("|psi(F)| == |psibar(F)|")
    s_psi_ = sub.s_psi(psi)
    s_psibar = sub.s_psi(psibar)
    if mode == "s_psi" and s_psi_.size() != s_psibar.size():
        raise HypothesisViolated("|S_psi| == |S_psibar|")

    kphi = sub.kernel(phi)
    kpsi = sub.kernel(psi.to_step(kphi.step)) if psi.step != kphi.step \
        else sub.kernel(psi)
    cond1 = sub.subspace_intersect(kphi, kpsi).dim == 0
    if mode == "full_field":
        cond2 = sub.subspace_intersect(kphi, im_psi).dim == 0
        verdict = cond1 and cond2
        actual = len({phi.eval(x) for x in phi.tower.elements()}) == phi.tower.N
    else:
        psi_s = sub.SubspaceBasis.from_elements(
            phi.tower, [psi.eval(e) for e in s_psi_.elements()], step=kphi.step)
        cond2 = sub.subspace_intersect(kphi, psi_s).dim == 0
        verdict = cond1 and cond2
        vals = [phi.eval(x) for x in s_psi_.elements()]
        actual = (len(set(vals)) == s_psi_.size()
                  and all(s_psibar.contains(v) for v in vals))
    if verdict != actual:
        raise OracleMismatch(
            f"criterion verdict {verdict} disagrees with exhaustive check")
    return verdict


# -- subspace-restricted inverses -------------------------------------------


def _check_bijective_on(phi: LinPoly, V, Vbar) -> None:
    if V.step != Vbar.step or V.dim != Vbar.dim:
        raise NotBijectiveOnSubspace("V and Vbar must match in step and dimension")
    seen = set()
    for v in V.elements():
        w = phi.eval(v)
        if not Vbar.contains(w) or w in seen:
            raise NotBijectiveOnSubspace(
                f"phi does not biject V onto Vbar (at element {v})")
        seen.add(w)


def subspace_inverse(phi: LinPoly, V, Vbar) -> LinPoly:
    """R with R(phi(v)) = v for all v in V, by solving
    c * D_phi = v(id - K) with K a projection killing exactly V."""
    from . import subspace as sub

    t = phi.tower
    if phi.step != V.step:
        s = math.gcd(phi.step, V.step)
        phi = phi.to_step(s)
        V = V.refine(s)
        Vbar = Vbar.refine(s)
    _check_bijective_on(phi, V, Vbar)
    # the projection's image must contain ker(phi) so that id - K kills
    # ker(phi); otherwise the linear system can be inconsistent
    K = sub.projection_idempotent(V, image_contains=sub.kernel(phi))
    rhs = LinPoly.identity(t, step=V.step).sub(K).coeffs
    sol = _linalg.solve_left(t, dickson_matrix(phi), rhs)
    if sol is None:
        raise NoSolution("restricted inverse system is inconsistent")
    return LinPoly(t, sol, step=V.step)


def circulant_subspace_inverse(phi: LinPoly, V, Vbar) -> LinPoly:
    """Fast path for q-polynomials with F_q coefficients: diagonalize the
    circulant associate matrix with an n-th root of unity and divide
    pointwise. Requires p not dividing n and a root of unity inside the
    top field (n | q^n - 1); otherwise NoSuitableRoot."""
    from . import subspace as sub

    t = phi.tower
    n = t.n
    if phi.step != t.m or any(c >= t.q for c in phi.coeffs):
        raise NoSuitableRoot("fast path needs a q-polynomial with F_q coefficients")
    if n % t.p == 0:
        raise NoSuitableRoot("fast path needs p not dividing n")
    if (t.N - 1) % n != 0:
        raise NoSuitableRoot("no n-th root of unity in the top field")
    _check_bijective_on(phi, V, Vbar)
    # gen is primitive, so this omega has exact multiplicative order n
    omega = t.pow(int(t.gen), (t.N - 1) // n)

    K = sub.projection_idempotent(V)
    w = LinPoly.identity(t, step=t.m).sub(K).coeffs
    a = phi.coeffs

    def dft(vec, root):
        out = []
        for k in range(n):
            acc = 0
            for j, vj in enumerate(vec):
                acc = t.add(acc, t.mul(vj, t.pow(root, j * k)))
            out.append(acc)
        return out

    ahat = dft(a, omega)
    if any(x == 0 for x in ahat):
        # singular circulant: hand the system to Gaussian elimination
        return subspace_inverse(phi, V, Vbar)
    what = dft(w, omega)
    chat = [t.mul(wt, t.inv(at)) for wt, at in zip(what, ahat)]
    ninv = t.inv(t.scalar(n))
    omega_inv = t.inv(omega)
    c = [t.mul(ninv, x) for x in dft(chat, omega_inv)]
    return LinPoly(t, c, step=t.m)


# -- idempotent census -------------------------------------------------------


def is_idempotent(psi: LinPoly) -> bool:
    return lin_compose(psi, psi) == psi


def _gl_order(k: int, q: int) -> int:
    out = 1
    for i in range(k):
        out *= q**k - q**i
    return out


def count_idempotents(n: int, q: int) -> int:
    """Number of idempotent F_q-linear endomorphisms of F_{q^n}: one
    projection per (kernel, complement) pair, summed over ranks."""
    total = 0
    for k in range(n + 1):
        total += _gl_order(n, q) // (_gl_order(k, q) * _gl_order(n - k, q))
    return total


def enumerate_idempotents(n: int, q: int, limit: int = 1 << 22) -> list[LinPoly]:
    """All idempotent q-polynomials on F_{q^n}, by scanning every n x n
    matrix over F_q and lifting the projections."""
    from . import subspace as sub

    if q**(n * n) > limit:
        raise DeskScaleExceeded(f"{q**(n*n)} matrices is beyond enumeration scale")
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError("q must be a prime power")
    p, m = next(iter(fac.items()))
    t = get_tower(p, m, n)
    out = []
    for entries in itertools.product(range(q), repeat=n * n):
        M = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        if _linalg.mat_mul(t, M, M) == M:
            out.append(sub.matrix_to_linpoly(M, t, step=t.m))
    return out


# -- special kernel-of-trace families ---------------------------------------


def pc_polynomial(tower: FieldTower, c: int) -> LinPoly:
    """P_c(x) = x^p + c x as a p-polynomial."""
    return LinPoly(tower, [c, 1], step=1)


def pc_kernel_inverse(tower: FieldTower, c: int):
    """Classify c in F_q^* for P_c(x) = x^p + cx restricted to ker(T).

    Returns (tag, R): tag 'case1' with R inverting P_c on ker(T) when the
    absolute norm of c is (-1)^m and p does not divide n; tag 'case2' with
    the full-field inverse when c^(n(q-1)/(p-1)) != (-1)^(mn); otherwise
    ('none', None) - P_c does not permute ker(T).
    """
    if c == 0:
        raise ZeroC("c must be nonzero")
    if c >= tower.q:
        raise ValueError("c must lie in the embedded F_q")
    p, m, n, mn = tower.p, tower.m, tower.n, tower.mn

    norm_c = tower.norm_q_over_p(c)
    case1 = norm_c == tower.scalar((-1) ** m) and n % p != 0
    if case1:
        ninv = tower.inv(tower.scalar(n))
        coeffs = [0] * mn
        for j in range(m):
            aj = tower.mul(tower.scalar((-1) ** j),
                           tower.inv(tower.pow(c, (p ** (j + 1) - 1) // (p - 1))))
            for k in range(n):
                # delta = 0 canonical choice
                factor = tower.scalar(-k)
                coeffs[k * m + j] = tower.mul(ninv, tower.mul(aj, factor))
        return "case1", LinPoly(tower, coeffs, step=1)

    e = n * (tower.q - 1) // (p - 1)
    if tower.pow(c, e) != tower.scalar((-1) ** mn):
        det = tower.add(tower.pow(c, e), tower.scalar((-1) ** (mn - 1)))
        dinv = tower.inv(det)
        coeffs = []
        for i in range(mn):
            s_i = sum(p**j for j in range(i + 1, mn))
            coeffs.append(tower.mul(dinv, tower.mul(tower.scalar((-1) ** i),
                                                    tower.pow(c, s_i))))
        return "case2", LinPoly(tower, coeffs, step=1)

    return "none", None


def ker_trace_alpha_inverse(tower: FieldTower, alpha: int) -> LinPoly:
    """Inverse on ker(T) of x^q - x viewed as a bijection
    ker(T_alpha) -> ker(T); needs T(alpha) != 0."""
    t_alpha = tower.trace(alpha)
    if t_alpha == 0:
        raise TraceZero("x^q - x is not bijective ker(T_alpha) -> ker(T)")
    inv_t = tower.inv(t_alpha)
    coeffs = []
    partial = 0
    for k in range(tower.n):
        partial = tower.add(partial, tower.frobenius(alpha, k))
        coeffs.append(tower.mul(inv_t, partial))
    return LinPoly(tower, coeffs, step=tower.m)
