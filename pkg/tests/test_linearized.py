import random

import pytest

from ffinv.errors import (
    NoSuitableRoot,
    NotBijectiveOnSubspace,
    SingularDickson,
    TraceZero,
    ZeroC,
)
from ffinv.ff_core import get_tower
from ffinv.linearized import (
    LinPoly,
    check_lin_bijection_criteria,
    circulant_subspace_inverse,
    count_idempotents,
    dickson_det,
    dickson_matrix,
    enumerate_idempotents,
    is_idempotent,
    ker_trace_alpha_inverse,
    lin_compose,
    lin_inverse_full,
    pc_kernel_inverse,
    pc_polynomial,
    subspace_inverse,
)
from ffinv.poly import compose_mod, functions_equal
from ffinv.subspace import SubspaceBasis, kernel


def test_dickson_frozen_rows():
    t = get_tower(2, 1, 3)
    L = LinPoly(t, [1, 1, 0], step=1)  # x^2 + x as a p-polynomial
    assert dickson_matrix(L) == [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert dickson_det(L) == 0


def test_lin_compose_matches_poly_compose():
    t = get_tower(2, 1, 3)
    L = LinPoly(t, [1, 1, 0], step=1)
    assert lin_compose(L, L).coeffs == [1, 0, 1]
    rng = random.Random(0)
    for _ in range(30):
        A = LinPoly(t, [rng.randrange(8) for _ in range(3)])
        B = LinPoly(t, [rng.randrange(8) for _ in range(3)])
        assert functions_equal(lin_compose(A, B).to_poly(),
                               compose_mod(A.to_poly(), B.to_poly()))


def test_full_inverse():
    t = get_tower(3, 1, 2)
    L = LinPoly(t, [0, 1])  # frobenius x^q
    R = lin_inverse_full(L)
    assert lin_compose(R, L) == LinPoly.identity(t)
    with pytest.raises(SingularDickson):
        lin_inverse_full(LinPoly(t, [2, 1]))


def test_subspace_inverse_example():
    t = get_tower(2, 1, 3)
    phi = LinPoly(t, [1, 1, 0], step=1)  # x^2 + x
    kerT = kernel(LinPoly.trace(t))
    R = subspace_inverse(phi, kerT, kerT)
    witness = LinPoly(t, [1, 0, 1], step=1)  # x + x^4
    for v in kerT.elements():
        assert R.eval(phi.eval(v)) == v
        assert witness.eval(phi.eval(v)) == v


def test_subspace_inverse_rejects_non_bijection():
    t = get_tower(2, 1, 3)
    T = LinPoly.trace(t)
    kerT = kernel(T)
    with pytest.raises(NotBijectiveOnSubspace):
        subspace_inverse(T, kerT, kerT)


def test_circulant_guards_and_agreement():
    t = get_tower(2, 1, 3)
    kerT = kernel(LinPoly.trace(t))
    with pytest.raises(NoSuitableRoot):  # 3 does not divide 2^3 - 1
        circulant_subspace_inverse(LinPoly(t, [0, 1, 0]), kerT, kerT)
    t9 = get_tower(3, 1, 2)
    L = LinPoly(t9, [2, 1])
    V = kernel(LinPoly.trace(t9))
    vals = {L.eval(v) for v in V.elements()}
    Vbar = SubspaceBasis.from_elements(t9, list(vals))
    Rn = circulant_subspace_inverse(L, V, Vbar)
    Rg = subspace_inverse(L, V, Vbar)
    for v in V.elements():
        assert Rn.eval(L.eval(v)) == v
        assert Rg.eval(L.eval(v)) == v


def test_bijection_criteria():
    t = get_tower(3, 1, 2)
    ninv = t.inv(t.scalar(2))
    psi = LinPoly.trace(t).scale(ninv)
    phi = LinPoly(t, [0, 1])
    assert check_lin_bijection_criteria(phi, psi, psi, "full_field")
    assert check_lin_bijection_criteria(phi, psi, psi, "s_psi")


def test_idempotent_census():
    assert [count_idempotents(2, q) for q in (2, 3, 4, 5)] == [8, 14, 22, 32]
    found = enumerate_idempotents(2, 2)
    assert len(found) == 8
    assert all(is_idempotent(L) for L in found)


def test_pc_kernel_inverse_cases():
    t = get_tower(2, 1, 3)
    tag, R = pc_kernel_inverse(t, 1)
    assert tag == "case1" and R.coeffs == [0, 1, 0]
    kerT = kernel(LinPoly.trace(t)).refine(1)
    pc = pc_polynomial(t, 1)
    for v in kerT.elements():
        assert R.eval(pc.eval(v)) == v
    with pytest.raises(ZeroC):
        pc_kernel_inverse(t, 0)


def test_ker_trace_alpha_inverse():
    t = get_tower(2, 1, 3)
    R = ker_trace_alpha_inverse(t, 1)
    assert R.coeffs == [1, 0, 1]  # x + x^4
    Q = LinPoly.q_minus_x(t)
    kerT = kernel(LinPoly.trace(t))
    for v in kerT.elements():
        assert R.eval(Q.eval(v)) == v
    t4 = get_tower(2, 1, 2)
    zeros = [a for a in t4.elements() if t4.trace(a) == 0]
    with pytest.raises(TraceZero):
        ker_trace_alpha_inverse(t4, zeros[1])


def test_det_iff_permutation_random():
    rng = random.Random(2)
    for spec in ((2, 1, 3), (3, 1, 2)):
        t = get_tower(*spec)
        for _ in range(40):
            L = LinPoly(t, [rng.randrange(t.N) for _ in range(t.n)])
            perm = len({L.eval(x) for x in t.elements()}) == t.N
            assert (dickson_det(L) != 0) == perm
