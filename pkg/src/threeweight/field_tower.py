"""Exact arithmetic in the tower GF(p) < GF(q) = GF(p^e) < GF(q^s) = GF(p^m).

Elements of GF(p^m) are plain ints in [0, p^m): the base-p digits of the int are
the polynomial-basis coordinates (digit i is the coefficient of X^i), so the
prime field GF(p) is exactly {0, ..., p-1}.  Multiplication goes through
discrete-log tables, addition through the digit table.  Every operation
accepts ints or integer numpy arrays of any shape.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from math import gcd

import numpy as np
from sympy import factorint

from .errors import DomainError, InternalInconsistency, InvalidParams
from .params import check_frame
from .poly_ring import PolyGFp

#: discrete-log tables are only built up to this field size
MAX_TABLE_SIZE = 2 ** 24


def _ret(x):
    return int(x) if np.ndim(x) == 0 else x


def _is_primitive(f: PolyGFp, n: int, prime_factors) -> bool:
    """X has multiplicative order exactly n modulo f."""
    if f.coeffs[0] == 0:
        return False
    p = f.p
    x = PolyGFp([0, 1], p)
    one = PolyGFp([1], p)

    def powmod(e):
        result, base = one, x
        while e:
            if e & 1:
                result = (result * base) % f
            base = (base * base) % f
            e >>= 1
        return result

    if powmod(n) != one:
        return False
    return all(powmod(n // r) != one for r in prime_factors)


def primitive_modulus(p: int, m: int) -> PolyGFp:
    """Lexicographically smallest monic primitive polynomial of degree m over GF(p).

    Order: coefficient vectors (c0, ..., c_{m-1}) compared low degree first.
    """
    n = p ** m - 1
    factors = list(factorint(n))
    for low in itertools.product(range(p), repeat=m):
        f = PolyGFp(list(low) + [1], p)
        if _is_primitive(f, n, factors):
            return f
    raise InternalInconsistency(f"no primitive polynomial of degree {m} over GF({p})")


class Subfield:
    """GF(q) sitting inside the tower, with q x q operation tables.

    Elements of the subfield are addressed by *index* into ``elems`` (the sorted
    field ints of GF(q)); for e = 1 index and value coincide.
    """

    def __init__(self, tower: "FieldTower"):
        t = tower
        q = t.q
        step = t.n // (q - 1)
        elems = np.sort(np.concatenate([[0], t.exp[np.arange(0, t.n, step)]]))
        self.q = q
        self.elems = elems
        self.index = np.full(t.N, -1, dtype=np.int64)
        self.index[elems] = np.arange(q)
        ii, jj = np.meshgrid(elems, elems, indexing="ij")
        self.ADD = self.index[t.add(ii, jj)]
        self.MUL = self.index[t.mul(ii, jj)]
        self.NEG = self.index[t.neg(elems)]
        self.SUB = self.ADD[np.arange(q)[:, None], self.NEG[None, :]]
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self.index[t.inv(elems[1:])]
        self.INV = inv
        eta = np.zeros(q, dtype=np.int64)
        eta[1:] = [t.quadratic_character(int(x), "q") for x in elems[1:]]
        self.ETA = eta
        for name in ("ADD", "MUL", "NEG", "SUB", "INV", "ETA"):
            getattr(self, name).setflags(write=False)


class FieldTower:
    """GF(p) < GF(p^e) < GF(p^m) with primitive element pi and nonsquare lambda."""

    def __init__(self, p: int, m: int, e: int):
        check_frame(p, m, e)
        N = p ** m
        if N > MAX_TABLE_SIZE:
            raise InvalidParams(f"p^m = {N} exceeds table limit {MAX_TABLE_SIZE}",
                                failed="table_size")
        self.p, self.m, self.e = p, m, e
        self.s = m // e
        self.q = p ** e
        self.N = N
        self.n = N - 1
        self.modulus = primitive_modulus(p, m)
        self.weights = p ** np.arange(m, dtype=np.int64)
        self.DIG = (np.arange(N, dtype=np.int64)[:, None] // self.weights) % p

        # powers of X reduced modulo the primitive modulus
        exp = np.empty(self.n, dtype=np.int64)
        low = [(-c) % p for c in self.modulus.coeffs[:m]]  # X^m = -(c0 + ... )
        cur = [1] + [0] * (m - 1)
        for i in range(self.n):
            exp[i] = sum(c * w for c, w in zip(cur, self.weights.tolist()))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(a + top * b) % p for a, b in zip(cur, low)]
        log = np.full(N, -1, dtype=np.int64)
        log[exp] = np.arange(self.n)
        if (log[1:] < 0).any():
            raise InternalInconsistency("modulus is not primitive")
        self.exp, self.log = exp, log
        for a in (self.DIG, exp, log):
            a.setflags(write=False)

        self.pi = p  # the class of X: digit 1 set
        self.gamma = int(exp[self.n // (self.q - 1)])
        self.lam = self.gamma

    def __repr__(self):
        return (f"FieldTower(p={self.p}, m={self.m}, e={self.e}, "
                f"modulus={self.modulus.pretty('X')!r})")

    # ----------------------------------------------------------- coordinates
    def coeffs(self, x: int) -> tuple:
        return tuple(int(c) for c in self.DIG[int(x)])

    def from_coeffs(self, coeffs) -> int:
        c = list(coeffs) + [0] * (self.m - len(coeffs))
        if len(c) != self.m or any(not 0 <= int(v) < self.p for v in c):
            raise DomainError(f"bad coordinate vector {coeffs!r}")
        return int(sum(int(v) * int(w) for v, w in zip(c, self.weights)))

    def in_prime_field(self, x) -> bool:
        return 0 <= int(x) < self.p

    def to_prime(self, x) -> int:
        if not self.in_prime_field(x):
            raise DomainError(f"{x} is not in GF({self.p})")
        return int(x)

    def elements(self) -> np.ndarray:
        return np.arange(self.N, dtype=np.int64)

    # ------------------------------------------------------------ arithmetic
    def add(self, x, y):
        return _ret(((self.DIG[x] + self.DIG[y]) % self.p) @ self.weights)

    def neg(self, x):
        return _ret(((-self.DIG[x]) % self.p) @ self.weights)

    def sub(self, x, y):
        return _ret(((self.DIG[x] - self.DIG[y]) % self.p) @ self.weights)

    def smul(self, c: int, x):
        """Multiply by the prime-field scalar c (c may be an array broadcasting with x)."""
        c = np.asarray(c)[..., None]
        return _ret(((c * self.DIG[x]) % self.p) @ self.weights)

    def mul(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        r = self.exp[(self.log[x] + self.log[y]) % self.n]
        return _ret(np.where((x == 0) | (y == 0), 0, r))

    def inv(self, x):
        x = np.asarray(x)
        if (x == 0).any():
            raise ZeroDivisionError("inverse of 0")
        return _ret(self.exp[(-self.log[x]) % self.n])

    def pow(self, x, k: int):
        x = np.asarray(x)
        if k == 0:
            return _ret(np.ones_like(x))
        if k < 0 and (x == 0).any():
            raise ZeroDivisionError("negative power of 0")
        r = self.exp[(self.log[x] * (k % self.n)) % self.n]
        return _ret(np.where(x == 0, 0, r))

    def frob(self, x, j: int = 1):
        """x^(p^j); negative j gives the inverse Frobenius x^(p^(m - |j| mod m))."""
        return self.pow(x, pow(self.p, j % self.m, self.n))

    def order(self, x: int) -> int:
        x = int(x)
        if x == 0:
            raise DomainError("0 has no multiplicative order")
        return self.n // gcd(int(self.log[x]), self.n)

    # ---------------------------------------------------------------- traces
    @cached_property
    def tr_p(self) -> np.ndarray:
        """Table of Tr_{p^m/p}: entry x is the trace of x, an int in [0, p)."""
        x = self.elements()
        acc = x.copy()
        for i in range(1, self.m):
            acc = self.add(acc, self.frob(x, i))
        if (acc >= self.p).any():
            raise InternalInconsistency("absolute trace left GF(p)")
        acc.setflags(write=False)
        return acc

    @cached_property
    def tr_q(self) -> np.ndarray:
        """Table of Tr_{q^s/q} as field ints lying in GF(q)."""
        x = self.elements()
        acc = x.copy()
        for i in range(1, self.s):
            acc = self.add(acc, self.frob(x, self.e * i))
        acc.setflags(write=False)
        return acc

    def in_subfield(self, x) -> bool:
        x = int(x)
        return x == 0 or int(self.log[x]) % (self.n // (self.q - 1)) == 0

    # ----------------------------------------------------------- characters
    def quadratic_character(self, x, subfield: str = "full") -> int:
        x = int(x)
        if subfield == "prime":
            if not self.in_prime_field(x):
                raise DomainError(f"{x} not in GF({self.p})")
            order = self.p
        elif subfield == "q":
            if not self.in_subfield(x):
                raise DomainError(f"{x} not in GF({self.q})")
            order = self.q
        elif subfield == "full":
            order = self.N
        else:
            raise ValueError(f"unknown subfield {subfield!r}")
        if x == 0:
            return 0
        v = self.pow(x, (order - 1) // 2)
        if v == 1:
            return 1
        if v == self.p - 1:
            return -1
        raise InternalInconsistency(f"x^((order-1)/2) = {v} is not +-1")

    # -------------------------------------------------------------- GF(q)
    @cached_property
    def gfq(self) -> Subfield:
        return Subfield(self)

    @cached_property
    def qbasis_poly(self) -> tuple:
        """Smallest monic irreducible of degree s over GF(q), as subfield indices."""
        return self._qbasis[0]

    @cached_property
    def beta(self) -> int:
        """Root of ``qbasis_poly``; {1, beta, ..., beta^(s-1)} is the GF(q)-basis."""
        return self._qbasis[1]

    @cached_property
    def _qbasis(self):
        sub = self.gfq
        s, q, e = self.s, self.q, self.e
        X = self.elements()
        proper = [d for d in range(1, s) if s % d == 0]
        for low in itertools.product(range(q), repeat=s):
            if low[0] == 0:
                continue
            val = np.ones(self.N, dtype=np.int64)
            for c in reversed(low):
                val = self.add(self.mul(val, X), sub.elems[c])
            for r in np.flatnonzero(val == 0):
                if all(self.frob(int(r), e * d) != r for d in proper):
                    return tuple(int(c) for c in low) + (1,), int(r)
        raise InternalInconsistency("no irreducible polynomial of degree s over GF(q)")

    @cached_property
    def qbasis(self) -> np.ndarray:
        return np.array([self.pow(self.beta, i) for i in range(self.s)], dtype=np.int64)

    @cached_property
    def coords(self) -> np.ndarray:
        """N x s table: GF(q)-coordinates (subfield indices) in the basis ``qbasis``."""
        q, s = self.q, self.s
        combos = np.indices((q,) * s).reshape(s, -1).T
        elem = np.zeros(len(combos), dtype=np.int64)
        for i in range(s):
            elem = self.add(elem, self.mul(self.gfq.elems[combos[:, i]], int(self.qbasis[i])))
        table = np.full((self.N, s), -1, dtype=np.int64)
        table[elem] = combos
        if (table < 0).any():
            raise InternalInconsistency("qbasis does not span GF(q^s)")
        table.setflags(write=False)
        return table


@lru_cache(maxsize=None)
def build_tower(p: int, m: int, e: int) -> FieldTower:
    return FieldTower(p, m, e)


def tower_for(spec) -> FieldTower:
    return build_tower(spec.p, spec.m, spec.e)


def trace_to_prime(t: FieldTower, x):
    """Tr_{p^m/p}(x) = sum of x^(p^i), i < m."""
    return _ret(t.tr_p[x])


def trace_to_subfield(t: FieldTower, x):
    """Tr_{q^s/q}(x) = sum of x^(q^i), i < s."""
    return _ret(t.tr_q[x])


def trace_q_to_p(t: FieldTower, x):
    """Tr_{q/p} of an element of GF(q): sum of x^(p^i), i < e."""
    acc = np.asarray(x)
    for i in range(1, t.e):
        acc = t.add(acc, t.frob(x, i))
    return _ret(acc)


def quadratic_character(t: FieldTower, x, subfield: str = "full") -> int:
    return t.quadratic_character(x, subfield)
