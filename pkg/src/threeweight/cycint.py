"""Exact elements of Z[zeta_p] stored as counting vectors.

``CycInt(p, c)`` stands for sum_j c[j] * zeta_p^j.  The only relation among the
powers of zeta_p is 1 + zeta + ... + zeta^(p-1) = 0, so subtracting the minimum
coordinate gives a unique canonical form.  The element is a rational integer
iff c[1] = ... = c[p-1], and then its value is c[0] - c[1] (a negative integer
-v canonicalizes to (0, v, ..., v)).
"""

from __future__ import annotations

import numpy as np

from .errors import NonIntegerSum


class CycInt:
    __slots__ = ("p", "c")

    def __init__(self, p: int, counts):
        c = np.asarray(counts, dtype=object)
        if c.shape != (p,):
            raise ValueError(f"need {p} counts, got shape {c.shape}")
        c = c - min(c)
        self.p = p
        self.c = tuple(int(v) for v in c)

    @classmethod
    def integer(cls, p: int, value: int) -> "CycInt":
        return cls(p, [value] + [0] * (p - 1))

    @classmethod
    def zeta(cls, p: int, j: int = 1) -> "CycInt":
        c = [0] * p
        c[j % p] = 1
        return cls(p, c)

    @classmethod
    def from_exponents(cls, p: int, exponents) -> "CycInt":
        """sum over the given exponents of zeta^j (exponents taken mod p)."""
        exps = np.asarray(exponents, dtype=np.int64).ravel() % p
        return cls(p, np.bincount(exps, minlength=p).tolist())

    @classmethod
    def quadratic_gauss_sum(cls, p: int) -> "CycInt":
        """g = sum_{j in GF(p)*} eta_0(j) zeta^j, with g^2 = eta_0(-1) p."""
        squares = {j * j % p for j in range(1, p)}
        return cls(p, [0] + [1 if j in squares else -1 for j in range(1, p)])

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError("mixing different p")
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(self.p, int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycInt(self.p, [a * int(other) for a in self.c])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = CycInt.integer(self.p, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycInt":
        """Complex conjugate: zeta^j -> zeta^(-j)."""
        return CycInt(self.p, [self.c[(-j) % self.p] for j in range(self.p)])

    def norm2(self) -> int:
        """|z|^2 = z * conj(z), always a rational integer here."""
        return (self * self.conj()).to_int()

    def is_integer(self) -> bool:
        return len(set(self.c[1:])) <= 1

    def to_int(self) -> int:
        if not self.is_integer():
            raise NonIntegerSum(f"{self!r} is not a rational integer")
        return self.c[0] - self.c[1]

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (CycInt, int, np.integer)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.p == o.p and self.c == o.c

    def __hash__(self):
        return hash((self.p, self.c))

    def to_complex(self) -> complex:
        """Numeric value under zeta = exp(2 pi i / p); for display only."""
        w = np.exp(2j * np.pi * np.arange(self.p) / self.p)
        return complex(np.dot(np.array(self.c, dtype=float), w))

    def __repr__(self):
        if self.is_integer():
            return f"CycInt({self.to_int()})"
        return f"CycInt(p={self.p}, {list(self.c)})"
