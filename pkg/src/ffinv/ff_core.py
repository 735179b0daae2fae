"""Exact arithmetic in the tower F_p < F_q = F_{p^m} < F_{q^n}.

Elements are plain integers in [0, q^n) using the positional encoding
e = sum_i digit_i * q^i, where each F_q digit is itself sum_j d_j * p^j.
Equivalently e written in base p gives the m*n coordinates over F_p.
Arithmetic runs on exp/log tables built once per tower.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DeskScaleExceeded,
    DivisionByZero,
    DegreeMismatch,
    NotIrreducible,
    NotPrime,
    TowerMismatch,
)

DEFAULT_DESK_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Generic dense polynomial helpers over an abstract coefficient field.
# A "field ops" object is a triple of callables (add, mul, inv) on int codes,
# with 0 and 1 as the canonical zero and one. Used only during table
# construction and irreducibility checks.
# ---------------------------------------------------------------------------


class _Ops:
    def __init__(self, add, mul, inv, neg):
        self.add = add
        self.mul = mul
        self.inv = inv
        self.neg = neg


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], ops: _Ops) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            out[i + j] = ops.add(out[i + j], ops.mul(ai, bj))
    return _poly_trim(out)


def _poly_mod(a: list[int], mod: list[int], ops: _Ops) -> list[int]:
    """Remainder of a modulo a monic polynomial mod."""
    a = list(a)
    d = len(mod) - 1
    while len(a) > d:
        lead = a[-1]
        if lead != 0:
            shift = len(a) - 1 - d
            for i in range(d):
                a[shift + i] = ops.add(a[shift + i], ops.neg(ops.mul(lead, mod[i])))
        a.pop()
    return _poly_trim(a)


def _poly_divides(div: list[int], a: list[int], ops: _Ops) -> bool:
    """True iff monic div divides a exactly."""
    return not _poly_mod(a, div, ops)


def _is_irreducible(f: list[int], base: int, ops: _Ops) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if f[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for code in range(base**d):
            div = _decode_poly(code, base, d) + [1]
            if _poly_divides(div, f, ops):
                return False
    return True


def _decode_poly(code: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(code % base)
        code //= base
    return out


def _find_modulus(deg: int, base: int, ops: _Ops) -> list[int]:
    """Smallest monic irreducible of given degree, by integer code of the
    non-leading coefficients (low-degree digit is least significant)."""
    for code in range(base**deg):
        cand = _decode_poly(code, base, deg) + [1]
        if _is_irreducible(cand, base, ops):
            return cand
    raise NotIrreducible(f"no irreducible of degree {deg} found (base {base})")


def _poly_pow_mod(a: list[int], e: int, mod: list[int], ops: _Ops) -> list[int]:
    result = [1]
    base = _poly_mod(a, mod, ops)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, ops), mod, ops)
        base = _poly_mod(_poly_mul(base, base, ops), mod, ops)
        e >>= 1
    return result


class FieldTower:
    """Immutable arithmetic context for F_p < F_q = F_{p^m} < F_{q^n}.

    Use build_tower() rather than constructing directly; the factory
    validates inputs and fills in default moduli.
    """

    def __init__(self, p: int, m: int, n: int, mod_q: list[int], mod_qn: list[int],
                 desk_limit: int = DEFAULT_DESK_LIMIT):
        self.p = p
        self.m = m
        self.n = n
        self.q = p**m
        self.N = self.q**n
        self.order = self.N - 1
        self.mn = m * n
        self.mod_q = tuple(mod_q)
        self.mod_qn = tuple(mod_qn)
        self.desk_limit = desk_limit
        if self.N > desk_limit:
            raise DeskScaleExceeded(
                f"field size {self.N} exceeds desk limit {desk_limit}")
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _fp_ops(self) -> _Ops:
        p = self.p
        return _Ops(lambda a, b: (a + b) % p,
                    lambda a, b: (a * b) % p,
                    lambda a: pow(a, p - 2, p),
                    lambda a: (-a) % p)

    def _fq_ops(self) -> _Ops:
        """Scalar ops on F_q codes, built from mod_q over F_p."""
        p, m, q = self.p, self.m, self.q
        if m == 1:
            return self._fp_ops()
        fp = self._fp_ops()
        mod = list(self.mod_q)

        def decode(c):
            return _poly_trim(_decode_poly(c, p, m))

        def encode(digs):
            return sum(d * p**i for i, d in enumerate(digs))

        mul_cache: dict[tuple[int, int], int] = {}

        def q_mul(a, b):
            if a == 0 or b == 0:
                return 0
            key = (a, b) if a <= b else (b, a)
            got = mul_cache.get(key)
            if got is None:
                got = encode(_poly_mod(_poly_mul(decode(a), decode(b), fp), mod, fp))
                mul_cache[key] = got
            return got

        def q_add(a, b):
            out, mult = 0, 1
            for _ in range(m):
                out += ((a + b) % p) * mult
                a //= p
                b //= p
                mult *= p
            return out

        def q_neg(a):
            out, mult = 0, 1
            for _ in range(m):
                out += ((-a) % p) * mult
                a //= p
                mult *= p
            return out

        def q_inv(a):
            if a == 0:
                raise DivisionByZero("inverse of 0 in F_q")
            return pow_codes(a, q - 2)

        def pow_codes(a, e):
            r = 1
            while e:
                if e & 1:
                    r = q_mul(r, a)
                a = q_mul(a, a)
                e >>= 1
            return r

        return _Ops(q_add, q_mul, q_inv, q_neg)

    def _build_tables(self) -> None:
        p, q, n, N = self.p, self.q, self.n, self.N
        fq = self._fq_ops()
        mod = list(self.mod_qn)

        def decode(e):
            return _poly_trim(_decode_poly(e, q, n))

        def encode(digs):
            return sum(d * q**i for i, d in enumerate(digs))

        def t_mul(a_digs, b_digs):
            return _poly_mod(_poly_mul(a_digs, b_digs, fq), mod, fq)

        def t_pow(a_digs, e):
            r = [1]
            while e:
                if e & 1:
                    r = t_mul(r, a_digs)
                a_digs = t_mul(a_digs, a_digs)
                e >>= 1
            return r

        # deterministic generator: smallest code whose order is N-1
        primes = list(factorize(self.order)) if self.order > 1 else []
        gen = 1
        for cand in range(2, N):
            cd = decode(cand)
            if any(t_pow(cd, self.order // r) == [1] for r in primes):
                continue
            gen = cand
            break
        self.gen = gen

        exp = np.zeros(max(self.order, 1), dtype=np.int64)
        log = np.full(N, -1, dtype=np.int64)
        cur = [1]
        gd = decode(gen)
        for t in range(self.order):
            c = encode(cur)
            exp[t] = c
            log[c] = t
            cur = t_mul(cur, gd)
        self.exp = exp
        self.log = log

        # base-p digit table for vectorized addition
        codes = np.arange(N, dtype=np.int64)
        pdig = np.empty((N, self.mn), dtype=np.int64)
        for i in range(self.mn):
            pdig[:, i] = codes % p
            codes //= p
        self.pdig = pdig
        self.pows = np.array([p**i for i in range(self.mn)], dtype=np.int64)

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, mult = 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out, mult = 0, 1
        while a:
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("field inverse of 0")
        return int(self.exp[(-int(self.log[a])) % self.order])

    def safe_inv(self, a: int) -> int:
        """a^(q^n - 2): the true inverse for a != 0 and 0 for a = 0."""
        return 0 if a == 0 else self.inv(a)

    def div(self, a: int, b: int) -> int:
        """a * safe_inv(b); follows the 1/0 = 0 convention."""
        return self.mul(a, self.safe_inv(b))

    def pow(self, a: int, e: int) -> int:
        """a^e with the conventions 0^0 = 1 and 0^e = 0 for e > 0."""
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def frobenius(self, a: int, i: int) -> int:
        """a^(q^i), i reduced modulo n."""
        return self.pow(a, self.q ** (i % self.n))

    def frob_p(self, a: int, i: int) -> int:
        """a^(p^i), i reduced modulo m*n."""
        return self.pow(a, self.p ** (i % self.mn))

    def trace(self, a: int) -> int:
        out = 0
        for i in range(self.n):
            out = self.add(out, self.frobenius(a, i))
        return out

    def norm(self, a: int) -> int:
        return self.pow(a, (self.N - 1) // (self.q - 1))

    def norm_q_over_p(self, a: int) -> int:
        """Absolute norm of an embedded F_q element down to F_p."""
        return self.pow(a, (self.q - 1) // (self.p - 1))

    def scalar(self, k: int) -> int:
        """The image of the integer k in the prime field."""
        return k % self.p

    def elements(self):
        return range(self.N)

    # -- digit views -------------------------------------------------------

    def to_q_digits(self, e: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(e % self.q)
            e //= self.q
        return out

    def from_q_digits(self, digs) -> int:
        return sum(d * self.q**i for i, d in enumerate(digs))

    def to_p_digits(self, e: int) -> list[int]:
        out = []
        for _ in range(self.mn):
            out.append(e % self.p)
            e //= self.p
        return out

    def from_p_digits(self, digs) -> int:
        return sum(d * self.p**i for i, d in enumerate(digs))

    # -- bookkeeping -------------------------------------------------------

    def same_as(self, other: "FieldTower") -> bool:
        return (self.p, self.m, self.n, self.mod_q, self.mod_qn) == \
               (other.p, other.m, other.n, other.mod_q, other.mod_qn)

    def check_same(self, other: "FieldTower") -> None:
        if not self.same_as(other):
            raise TowerMismatch("operands belong to different towers")

    def check_elem(self, e: int) -> int:
        if not 0 <= e < self.N:
            raise ValueError(f"element code {e} out of range [0, {self.N})")
        return e

    def spec_string(self) -> str:
        return f"{self.p}:{self.m}:{self.n}"

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, m={self.m}, n={self.n})"


def build_tower(p: int, m: int, n: int, mod_q=None, mod_qn=None,
                desk_limit: int = DEFAULT_DESK_LIMIT) -> FieldTower:
    """Validated tower construction with deterministic default moduli."""
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if m < 1 or n < 1:
        raise ValueError("extension degrees must be >= 1")
    if p**(m * n) > desk_limit:
        raise DeskScaleExceeded(
            f"field size {p**(m*n)} exceeds desk limit {desk_limit}")

    fp = _Ops(lambda a, b: (a + b) % p,
              lambda a, b: (a * b) % p,
              lambda a: pow(a, p - 2, p),
              lambda a: (-a) % p)

    if mod_q is None:
        mod_q = _find_modulus(m, p, fp)
    else:
        mod_q = list(mod_q)
        if len(mod_q) != m + 1 or mod_q[-1] != 1:
            raise DegreeMismatch(f"mod_q must be monic of degree {m}")
        if any(not 0 <= c < p for c in mod_q):
            raise ValueError("mod_q coefficients out of range")
        if not _is_irreducible(mod_q, p, fp):
            raise NotIrreducible("mod_q is reducible over F_p")

    # a throwaway tower over F_q just for the F_q scalar ops
    probe = FieldTower.__new__(FieldTower)
    probe.p, probe.m, probe.q = p, m, p**m
    probe.mod_q = tuple(mod_q)
    fq = probe._fq_ops()

    if mod_qn is None:
        mod_qn = _find_modulus(n, p**m, fq)
    else:
        mod_qn = list(mod_qn)
        if len(mod_qn) != n + 1 or mod_qn[-1] != 1:
            raise DegreeMismatch(f"mod_qn must be monic of degree {n}")
        if any(not 0 <= c < p**m for c in mod_qn):
            raise ValueError("mod_qn coefficients out of range")
        if not _is_irreducible(mod_qn, p**m, fq):
            raise NotIrreducible("mod_qn is reducible over F_q")

    return FieldTower(p, m, n, mod_q, mod_qn, desk_limit=desk_limit)


_TOWER_CACHE: dict[tuple, FieldTower] = {}


def get_tower(p: int, m: int, n: int, mod_q=None, mod_qn=None) -> FieldTower:
    """Cached build_tower for repeated test/CLI use of the same tower."""
    key = (p, m, n,
           tuple(mod_q) if mod_q is not None else None,
           tuple(mod_qn) if mod_qn is not None else None)
    if key not in _TOWER_CACHE:
        _TOWER_CACHE[key] = build_tower(p, m, n, mod_q, mod_qn)
    return _TOWER_CACHE[key]


def parse_field_spec(spec: str) -> FieldTower:
    """Parse 'p:m:n[:modq=c0,c1,...][:modqn=e0,e1,...]'."""
    parts = spec.split(":")
    if len(parts) < 3:
        raise ValueError(f"bad field spec {spec!r}: need p:m:n")
    try:
        p, m, n = (int(x) for x in parts[:3])
    except ValueError:
        raise ValueError(f"bad field spec {spec!r}: p, m, n must be integers")
    mod_q = mod_qn = None
    for extra in parts[3:]:
        if extra.startswith("modq="):
            mod_q = [int(x) for x in extra[5:].split(",")]
        elif extra.startswith("modqn="):
            mod_qn = [int(x) for x in extra[6:].split(",")]
        else:
            raise ValueError(f"bad field spec component {extra!r}")
    return get_tower(p, m, n, mod_q, mod_qn)
