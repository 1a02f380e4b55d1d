"""The quadratic forms Q_{a,b}(x) = Tr_{q^s/q}(a x^2 + b x^(p^k+1)) and their sums.

Two independent routes are kept for every quantity:

* definition level: count field elements directly (radical by testing the
  polar form, Gauss sums and S/T by binning absolute traces);
* invariant level: rank and quadratic character of the discriminant, taken
  from the linearized kernel map or from a congruence diagonalization, fed
  into the exact closed form of a quadratic Gauss sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cycint import CycInt
from .errors import OracleMismatch, RegimeError
from .field_tower import FieldTower, tower_for
from .params import CodeSpec, Regime


@lru_cache(maxsize=None)
def monomial_tables(t: FieldTower, k: int):
    """(x^2, x^(p^k+1)) for every field element x, as read-only arrays."""
    x = t.elements()
    sq = t.pow(x, 2)
    qu = t.pow(x, t.p ** k + 1)
    sq.setflags(write=False)
    qu.setflags(write=False)
    return sq, qu


@dataclass(frozen=True, eq=False)
class QuadForm:
    """Q_{a,b} on GF(q^s), viewed as a quadratic form in s variables over GF(q)."""

    tower: FieldTower
    k: int
    a: int
    b: int

    def __call__(self, x):
        """Q(x) as field ints in GF(q)."""
        t = self.tower
        x = np.asarray(x)
        inner = t.add(t.mul(self.a, t.pow(x, 2)), t.mul(self.b, t.pow(x, t.p ** self.k + 1)))
        return t.tr_q[inner] if np.ndim(inner) else int(t.tr_q[inner])

    def absolute_traces(self) -> np.ndarray:
        """Tr_{q/p}(Q(x)) = Tr_{q^s/p}(a x^2 + b x^(p^k+1)) for all x."""
        t = self.tower
        sq, qu = monomial_tables(t, self.k)
        return t.tr_p[t.add(t.mul(self.a, sq), t.mul(self.b, qu))]

    def negated_a(self) -> "QuadForm":
        return QuadForm(self.tower, self.k, self.tower.neg(self.a), self.b)


def form(spec: CodeSpec, a: int, b: int, t: FieldTower | None = None) -> QuadForm:
    return QuadForm(t or tower_for(spec), spec.k, int(a), int(b))


# ------------------------------------------------------------------ GF(q) rank

def rank_gfq(M, sub) -> int:
    """Rank of a matrix of subfield indices, by Gaussian elimination over GF(q)."""
    A = [list(map(int, row)) for row in np.asarray(M)]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = int(sub.INV[A[r][c]])
        for i in range(rows):
            if i != r and A[i][c]:
                f = int(sub.MUL[A[i][c], inv])
                A[i] = [int(sub.SUB[x, sub.MUL[f, y]]) for x, y in zip(A[i], A[r])]
        r += 1
    return r


def linearized_map(f: QuadForm, x):
    """L(x) = b^(p^k) x^(p^2k) + 2 a^(p^k) x^(p^k) + b x; its kernel is the radical."""
    t, k = f.tower, f.k
    bk = t.frob(f.b, k)
    two_ak = t.smul(2, t.frob(f.a, k))
    return t.add(t.add(t.mul(bk, t.frob(x, 2 * k)), t.mul(two_ak, t.frob(x, k))),
                 t.mul(f.b, x))


def radical_rank(f: QuadForm) -> int:
    """Rank of Q_{a,b}: s minus the GF(q)-dimension of the kernel of L."""
    t = f.tower
    images = linearized_map(f, t.qbasis)
    M = t.coords[images].T  # column j = coordinates of L(beta_j)
    return rank_gfq(M, t.gfq)


def radical_size_by_definition(f: QuadForm, exhaustive: bool | None = None) -> int:
    """#{x : Q(x+z) - Q(x) - Q(z) = 0 for all z}.

    With ``exhaustive`` every z in the field is tested (O(p^2m)); otherwise z
    runs over a GF(p)-basis, which suffices because the polar form is
    GF(p)-bilinear.  Defaults to exhaustive for fields of size <= 3^5.
    """
    t = f.tower
    if exhaustive is None:
        exhaustive = t.N <= 243
    x = t.elements()
    zs = x if exhaustive else t.weights  # weights[i] is the element X^i
    Qx = f(x)
    ok = np.ones(t.N, dtype=bool)
    for z in np.asarray(zs).tolist():
        polar = t.sub(t.sub(f(t.add(x, z)), Qx), f(z))
        ok &= polar == 0
    return int(ok.sum())


def rank_from_radical_size(t: FieldTower, size: int) -> int:
    d = 0
    while t.q ** d < size:
        d += 1
    if t.q ** d != size:
        raise OracleMismatch(f"radical size {size} is not a power of q={t.q}")
    return t.s - d


# ---------------------------------------------------------- matrix & diagonal

def symmetric_matrix(f: QuadForm) -> np.ndarray:
    """s x s symmetric matrix (field ints of GF(q)) with Q(sum x_i beta_i) = X A X'."""
    t = f.tower
    B = [int(v) for v in t.qbasis]
    s = t.s
    half = t.inv(2)
    A = np.zeros((s, s), dtype=np.int64)
    Qb = [f(v) for v in B]
    for i in range(s):
        A[i, i] = Qb[i]
        for j in range(i + 1, s):
            polar = t.sub(t.sub(f(t.add(B[i], B[j])), Qb[i]), Qb[j])
            A[i, j] = A[j, i] = t.mul(polar, half)
    return A


def evaluate_matrix_form(t: FieldTower, A, X) -> int:
    """X A X' for a coordinate vector X of field ints in GF(q)."""
    acc = 0
    s = len(X)
    for i in range(s):
        for j in range(s):
            acc = t.add(acc, t.mul(t.mul(int(X[i]), int(A[i][j])), int(X[j])))
    return acc


def diagonalize(A, t: FieldTower, pivot: str = "first"):
    """Congruence diagonalization over GF(q) (odd characteristic).

    Returns ``(diag, r)``: the nonzero diagonal entries d_1..d_r (field ints) of
    T A T' and the rank r.  ``pivot`` picks the first or the last nonzero
    diagonal entry at each step; the discriminant class does not depend on it.
    """
    M = [[int(v) for v in row] for row in np.asarray(A)]
    s = len(M)
    diag = []
    for k in range(s):
        cand = [j for j in range(k, s) if M[j][j]]
        if not cand:
            off = next(((i, j) for i in range(k, s) for j in range(i + 1, s) if M[i][j]), None)
            if off is None:
                break
            i, j = off
            # row_i += row_j, col_i += col_j  ->  M[i][i] = 2 M[i][j] != 0
            M[i] = [t.add(x, y) for x, y in zip(M[i], M[j])]
            for row in M:
                row[i] = t.add(row[i], row[j])
            cand = [i]
        j = cand[0] if pivot == "first" else cand[-1]
        if j != k:
            M[k], M[j] = M[j], M[k]
            for row in M:
                row[k], row[j] = row[j], row[k]
        d = M[k][k]
        dinv = t.inv(d)
        for i in range(k + 1, s):
            if M[i][k]:
                fct = t.mul(M[i][k], dinv)
                M[i] = [t.sub(x, t.mul(fct, y)) for x, y in zip(M[i], M[k])]
        for i in range(k + 1, s):
            M[k][i] = 0
            M[i][k] = 0
        diag.append(d)
    return diag, len(diag)


def discriminant_character(t: FieldTower, diag) -> int:
    """eta_1(d_1 ... d_r), with the empty product equal to 1."""
    eta = 1
    for d in diag:
        eta *= t.quadratic_character(d, "q")
    return eta


def form_invariants(f: QuadForm, pivot: str = "first"):
    """(rank, eta_1(Delta)) of Q_{a,b} via its symmetric matrix."""
    diag, r = diagonalize(symmetric_matrix(f), f.tower, pivot)
    return r, discriminant_character(f.tower, diag)


# ---------------------------------------------------------------- Gauss sums

@lru_cache(maxsize=None)
def _gfq_gauss_sum(p: int, e: int) -> CycInt:
    """Quadratic Gauss sum of GF(p^e) under the canonical additive character.

    Davenport-Hasse lifting: (-1)^(e-1) g^e with g the Gauss sum of GF(p).
    """
    g = CycInt.quadratic_gauss_sum(p)
    return g ** e * (-1) ** (e - 1)


@lru_cache(maxsize=None)
def gauss_sum_closed(p: int, e: int, s: int, r: int, eta: int) -> CycInt:
    """sum_x zeta^Tr(f(x)) for a rank-r form in s variables over GF(p^e) with
    discriminant character eta: eta * q^(s-r) * G_q^r."""
    q = p ** e
    return _gfq_gauss_sum(p, e) ** r * (eta * q ** (s - r))


def complex_closed_form(p: int, e: int, s: int, r: int, eta: int):
    """Closed form written with sqrt(-1) as an explicit complex number.

    Under zeta = exp(2 pi i / p), q = 3 (mod 4) forces e odd and the quadratic
    Gauss sum of GF(q) is i^e sqrt(q), so sqrt(-1) has to be read as i^e (which
    is -i when e = 3 mod 4).  Only used to cross-check ``gauss_sum_closed``.
    """
    q = p ** e
    mag = eta * q ** (s - r / 2)
    return mag if q % 4 == 1 else mag * ((1j ** e) ** r)


def gauss_sum_direct(f: QuadForm) -> CycInt:
    return CycInt.from_exponents(f.tower.p, f.absolute_traces())


def gauss_sum(f: QuadForm) -> CycInt:
    """Gauss sum of Q_{a,b}, computed by direct counting and by the closed form.

    Raises OracleMismatch if the two routes disagree, or if the closed form does
    not have |G|^2 = q^(2s-r).
    """
    t = f.tower
    direct = gauss_sum_direct(f)
    r, eta = form_invariants(f)
    closed = gauss_sum_closed(t.p, t.e, t.s, r, eta)
    if direct != closed:
        raise OracleMismatch(f"Gauss sum mismatch: direct {direct!r}, closed {closed!r}",
                             rank=r, eta=eta)
    if closed.norm2() != t.q ** (2 * t.s - r):
        raise OracleMismatch("Gauss sum magnitude is not q^(s - r/2)")
    return direct


def scaled_character_total(t: FieldTower, r: int, c: int) -> int:
    """sum over y in GF(p)* of eta_1(y c)^r, the factor picked up by G(y c Q)."""
    ec = t.quadratic_character(c, "q")
    return sum((t.quadratic_character(y, "q") * ec) ** r for y in range(1, t.p))


def sum_from_invariants(t: FieldTower, terms) -> CycInt:
    """sum_term sum_{y in GF(p)*} G(y c Q) for terms (c, rank, eta) of forms c*Q."""
    total = CycInt.integer(t.p, 0)
    for c, r, eta in terms:
        coeff = scaled_character_total(t, r, c)
        if coeff:
            total = total + gauss_sum_closed(t.p, t.e, t.s, r, eta) * coeff
    return total


def sum_terms(spec: CodeSpec, t: FieldTower, inv_ab, inv_neg_ab):
    """The (scale, rank, eta) terms of S(a,b) or T(a,b) given form invariants.

    S(a,b) = sum_y [G(y Q_{a,b}) + G(y lam Q_{-a,b})],
    T(a,b) = sum_y [G(y Q_{a,b}) + G(-y lam Q_{a,b})].
    """
    if spec.regime is Regime.KE_EVEN_E_ODD:
        return [(1, *inv_ab), (t.lam, *inv_neg_ab)]
    if spec.regime is Regime.K_OVER_E_ODD:
        return [(1, *inv_ab), (t.neg(t.lam), *inv_ab)]
    raise RegimeError(f"no exponential-sum formula in regime {spec.regime.value}")


# --------------------------------------------------------------- S and T sums

def _second_term_coeffs(spec: CodeSpec, t: FieldTower, a: int, b: int):
    """Coefficients (a', b') of the second exponent: y(a' x^2 + b' x^(p^k+1))."""
    a2 = t.neg(t.mul(t.lam, a))
    b2 = t.mul(t.lam, b)
    if spec.regime is Regime.K_OVER_E_ODD:
        b2 = t.neg(b2)
    return a2, b2


def exponential_sum_direct(spec: CodeSpec, a: int, b: int, t: FieldTower | None = None) -> int:
    """S(a,b) or T(a,b) by binning every exponent over y in GF(p)*, x in GF(q^s)."""
    t = t or tower_for(spec)
    sq, qu = monomial_tables(t, spec.k)
    a2, b2 = _second_term_coeffs(spec, t, a, b)
    exps = []
    for y in range(1, t.p):
        for ca, cb in ((a, b), (a2, b2)):
            z = t.add(t.mul(t.smul(y, ca), sq), t.mul(t.smul(y, cb), qu))
            exps.append(t.tr_p[z])
    return CycInt.from_exponents(t.p, np.concatenate(exps)).to_int()


def exponential_sum_fast(spec: CodeSpec, a: int, b: int, t: FieldTower | None = None) -> int:
    """S(a,b) or T(a,b) from ranks and discriminant characters only."""
    t = t or tower_for(spec)
    f = QuadForm(t, spec.k, int(a), int(b))
    inv_ab = form_invariants(f)
    inv_neg = form_invariants(f.negated_a()) if spec.regime is Regime.KE_EVEN_E_ODD else None
    return sum_from_invariants(t, sum_terms(spec, t, inv_ab, inv_neg)).to_int()


def _exp_sum(spec, a, b, t, method, regime, name):
    if spec.regime is not regime:
        raise RegimeError(f"{name} is defined for regime {regime.value}, "
                          f"spec is {spec.regime.value}")
    t = t or tower_for(spec)
    if method == "direct":
        return exponential_sum_direct(spec, a, b, t)
    if method == "fast":
        return exponential_sum_fast(spec, a, b, t)
    if method == "both":
        d = exponential_sum_direct(spec, a, b, t)
        f = exponential_sum_fast(spec, a, b, t)
        if d != f:
            raise OracleMismatch(f"{name}({a},{b}): direct {d} != fast {f}")
        return d
    raise ValueError(f"unknown method {method!r}")


def s_sum(spec: CodeSpec, a: int, b: int, t: FieldTower | None = None,
          method: str = "direct") -> int:
    return _exp_sum(spec, a, b, t, method, Regime.KE_EVEN_E_ODD, "S")


def t_sum(spec: CodeSpec, a: int, b: int, t: FieldTower | None = None,
          method: str = "direct") -> int:
    return _exp_sum(spec, a, b, t, method, Regime.K_OVER_E_ODD, "T")


# --------------------------------------------------------- value distribution

@dataclass(frozen=True)
class ValueDistribution:
    kind: str                 # "S" or "T"
    counts: dict              # value -> number of pairs (a, b)
    first_moment: int
    second_moment: int

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "values": [{"value": v, "count": c} for v, c in sorted(self.counts.items())],
            "first_moment": self.first_moment,
            "second_moment": self.second_moment,
        }


def predicted_value_distribution(spec: CodeSpec) -> dict:
    """Closed-form value distribution of S (k even, e odd) or T (k/e odd)."""
    p, m, e = spec.p, spec.m, spec.e
    N = p ** m
    big = (p - 1) * p ** ((m + e) // 2)
    plus = (p ** (m - e) + p ** ((m - e) // 2)) * (N - 1)
    minus = (p ** (m - e) - p ** ((m - e) // 2)) * (N - 1)
    if spec.regime is Regime.KE_EVEN_E_ODD:
        return {2 * (p - 1) * N: 1, big: plus, -big: minus,
                0: (N - 2 * p ** (m - e) + 1) * (N - 1)}
    if spec.regime is Regime.K_OVER_E_ODD:
        return {2 * (p - 1) * N: 1, 2 * big: plus // 2, -2 * big: minus // 2,
                0: (N - p ** (m - e) + 1) * (N - 1)}
    raise RegimeError(f"no closed form in regime {spec.regime.value}")


def value_distribution(spec: CodeSpec, t: FieldTower | None = None) -> ValueDistribution:
    """Exact distribution of S or T over all p^2m pairs via the rank sweep."""
    from .sweep import pair_sweep

    counts, first, second = pair_sweep(spec, t).sum_counts()
    return ValueDistribution(kind=spec.sum_kind, counts=counts,
                             first_moment=first, second_moment=second)


# ----------------------------------------------------------- intersection sets

def _set_coefficients(spec: CodeSpec, t: FieldTower):
    """Per set: ((c1, c2), (d1, d2)) with c1 y1 x1^2 + c2 y2 x2^2 = 0 and
    d1 y1 x1^(p^k+1) + d2 y2 x2^(p^k+1) = 0."""
    lam = t.lam
    mlam = t.neg(lam)
    one, mone = 1, t.neg(1)
    if spec.regime is Regime.KE_EVEN_E_ODD:
        return [((one, mone), (one, mone)),
                ((one, lam), (one, mlam)),
                ((mlam, mone), (lam, mone)),
                ((mlam, lam), (lam, mlam))]
    if spec.regime is Regime.K_OVER_E_ODD:
        return [((one, mone), (one, mone)),
                ((one, lam), (one, lam)),
                ((mlam, mone), (mlam, mone)),
                ((mlam, lam), (mlam, lam))]
    raise RegimeError(f"no intersection sets in regime {spec.regime.value}")


def intersection_set_counts(spec: CodeSpec, t: FieldTower | None = None,
                            method: str = "keys") -> tuple:
    """Cardinalities of the four solution sets over GF(p)* x GF(p)* x GF(q^s)^2.

    ``keys`` matches the pair (c1 y1 x1^2, d1 y1 x1^(p^k+1)) against
    (-c2 y2 x2^2, -d2 y2 x2^(p^k+1)) through a histogram, O(p^m) per (y1, y2);
    ``brute`` tests every quadruple.
    """
    t = t or tower_for(spec)
    sq, qu = monomial_tables(t, spec.k)
    N = t.N
    counts = []
    for (c1, c2), (d1, d2) in _set_coefficients(spec, t):
        total = 0
        for y1 in range(1, t.p):
            L1 = t.mul(t.smul(y1, c1), sq)
            L2 = t.mul(t.smul(y1, d1), qu)
            for y2 in range(1, t.p):
                R1 = t.neg(t.mul(t.smul(y2, c2), sq))
                R2 = t.neg(t.mul(t.smul(y2, d2), qu))
                if method == "keys":
                    lk, lc = np.unique(L1 * N + L2, return_counts=True)
                    rk, rc = np.unique(R1 * N + R2, return_counts=True)
                    _, li, ri = np.intersect1d(lk, rk, assume_unique=True, return_indices=True)
                    total += int((lc[li] * rc[ri]).sum())
                elif method == "brute":
                    hit = (L1[:, None] == R1[None, :]) & (L2[:, None] == R2[None, :])
                    total += int(hit.sum())
                else:
                    raise ValueError(f"unknown method {method!r}")
        counts.append(total)
    return tuple(counts)


def predicted_set_counts(spec: CodeSpec) -> tuple:
    """Closed-form sizes of the four sets.

    Off (0,0) each set forces z = x1/x2 into GF(q) with z^2 = c for a c fixed by
    (y1, y2), so a pair (y1, y2) contributes 1 + (p^m - 1)(1 + eta_1(c)).  For odd
    e, eta_1 restricted to GF(p)* is eta_0 and the sets with T-coefficients all
    have (p-1)^2 p^m elements; for even e every element of GF(p)* is a square in
    GF(q) and the sizes split as below.  The total is 4(p-1)^2 p^m either way.
    """
    p, m, e = spec.p, spec.m, spec.e
    big, small = (p - 1) ** 2 * p ** m, (p - 1) ** 2
    if spec.regime is Regime.KE_EVEN_E_ODD:
        return (big, small, small, big)
    if spec.regime is Regime.K_OVER_E_ODD:
        if e % 2:
            return (big, big, big, big)
        double = (p - 1) ** 2 * (2 * p ** m - 1)
        return (double, small, small, double)
    raise RegimeError(f"no intersection sets in regime {spec.regime.value}")
