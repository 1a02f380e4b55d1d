"""Dense polynomials over GF(p) and the code polynomials built from them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import DomainError, InternalInconsistency

if TYPE_CHECKING:
    from .field_tower import FieldTower
    from .params import CodeSpec


def _trim(coeffs: Sequence[int], p: int) -> tuple:
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class PolyGFp:
    """Polynomial over GF(p), coefficients low degree first, no trailing zeros."""

    coeffs: tuple
    p: int

    def __init__(self, coeffs: Iterable[int], p: int):
        object.__setattr__(self, "coeffs", _trim(list(coeffs), p))
        object.__setattr__(self, "p", p)

    @classmethod
    def monomial(cls, deg: int, p: int, c: int = 1) -> "PolyGFp":
        return cls([0] * deg + [c], p)

    @classmethod
    def x_n_minus_1(cls, n: int, p: int) -> "PolyGFp":
        return cls([p - 1] + [0] * (n - 1) + [1], p)

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def _same(self, other: "PolyGFp"):
        if other.p != self.p:
            raise DomainError(f"characteristic mismatch {self.p} vs {other.p}")

    def __add__(self, other: "PolyGFp") -> "PolyGFp":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        L = max(len(a), len(b))
        return PolyGFp([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                        for i in range(L)], self.p)

    def __neg__(self) -> "PolyGFp":
        return PolyGFp([-c for c in self.coeffs], self.p)

    def __sub__(self, other: "PolyGFp") -> "PolyGFp":
        return self + (-other)

    def __mul__(self, other) -> "PolyGFp":
        if isinstance(other, int):
            return PolyGFp([c * other for c in self.coeffs], self.p)
        self._same(other)
        if self.is_zero() or other.is_zero():
            return PolyGFp([], self.p)
        prod = np.convolve(np.array(self.coeffs, dtype=np.int64),
                           np.array(other.coeffs, dtype=np.int64))
        return PolyGFp((prod % self.p).tolist(), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other: "PolyGFp"):
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        inv_lead = pow(d[-1], -1, p)
        qdeg = len(r) - 1 - dd
        if qdeg < 0:
            return PolyGFp([], p), self
        quo = [0] * (qdeg + 1)
        for i in range(qdeg, -1, -1):
            c = r[i + dd] * inv_lead % p
            quo[i] = c
            if c:
                for j in range(dd + 1):
                    r[i + j] = (r[i + j] - c * d[j]) % p
        return PolyGFp(quo, p), PolyGFp(r[:dd], p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def monic(self) -> "PolyGFp":
        if self.is_zero():
            return self
        return self * pow(self.lead, -1, self.p)

    def derivative(self) -> "PolyGFp":
        return PolyGFp([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def gcd(self, other: "PolyGFp") -> "PolyGFp":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def reciprocal(self) -> "PolyGFp":
        """x^deg * f(1/x), i.e. the coefficient vector reversed."""
        return PolyGFp(tuple(reversed(self.coeffs)), self.p)

    def to_string(self) -> str:
        """Report encoding ``c0,c1,...,cd``; "0" for the zero polynomial."""
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def from_string(cls, text: str, p: int) -> "PolyGFp":
        return cls([int(t) for t in text.split(",")], p)

    def pretty(self, var: str = "x") -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"PolyGFp({self.pretty()!r}, p={self.p})"


def min_poly(t: "FieldTower", x: int) -> PolyGFp:
    """Minimal polynomial over GF(p) of the field element ``x``.

    Built as the product of (X - c) over the distinct Frobenius conjugates c of x;
    the coefficients are checked to land in the prime field.
    """
    x = int(x)
    conj = []
    c = x
    while c not in conj:
        conj.append(c)
        c = t.frob(c, 1)
    # coefficients are field elements until the end
    poly = [1]
    for c in conj:
        nc = t.neg(c)
        nxt = [0] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i + 1] = t.add(nxt[i + 1], a)
            nxt[i] = t.add(nxt[i], t.mul(nc, a))
        poly = nxt
    if any(not t.in_prime_field(a) for a in poly):
        raise InternalInconsistency("minimal polynomial has coefficients outside GF(p)")
    return PolyGFp([t.to_prime(a) for a in poly], t.p)


def dual_generator(h: PolyGFp, n: int | None = None) -> PolyGFp:
    """Generator of the dual code: monic reciprocal h*(x) = x^deg h(1/x) / h(0).

    When ``n`` is given the precondition h | x^n - 1 is checked.
    """
    if n is not None and not (PolyGFp.x_n_minus_1(n, h.p) % h).is_zero():
        raise DomainError(f"h does not divide x^{n} - 1")
    if h.is_zero() or h.coeffs[0] == 0:
        raise DomainError("h(0) = 0: reciprocal is not defined")
    return h.reciprocal().monic()


@dataclass(frozen=True)
class CodePolynomials:
    h1: PolyGFp
    h2: PolyGFp
    h: PolyGFp
    g: PolyGFp

    @property
    def dual(self) -> PolyGFp:
        return dual_generator(self.h)

    def as_dict(self) -> dict:
        return {"h1": self.h1.to_string(), "h2": self.h2.to_string(),
                "h": self.h.to_string(), "g": self.g.to_string(),
                "dual_generator": self.dual.to_string()}


def code_polynomials(spec: "CodeSpec", t: "FieldTower", pi: int | None = None) -> CodePolynomials:
    """h1, h2, parity-check h = h1*h2 and generator g = (x^n - 1)/h.

    ``pi`` overrides the tower's primitive element (any primitive element works;
    the resulting codes are equivalent).
    """
    if (t.p, t.m) != (spec.p, spec.m):
        raise DomainError("tower does not match spec")
    pi = t.pi if pi is None else int(pi)
    if t.order(pi) != t.n:
        raise DomainError(f"{pi} is not a primitive element")
    h1 = min_poly(t, t.inv(t.neg(pi)))
    h2 = min_poly(t, t.inv(t.pow(pi, spec.u)))
    if h1 == h2:
        raise InternalInconsistency("h1 and h2 coincide")
    h = h1 * h2
    if h.degree != 2 * spec.m:
        raise InternalInconsistency(f"deg h = {h.degree}, expected {2 * spec.m}")
    g, rem = divmod(PolyGFp.x_n_minus_1(spec.n, spec.p), h)
    if not rem.is_zero():
        raise InternalInconsistency("h does not divide x^n - 1")
    return CodePolynomials(h1=h1, h2=h2, h=h, g=g)
