"""Slow reference computations that share no code path with the package.

Field elements are handled as coefficient lists multiplied modulo the tower's
modulus in plain Python; only the modulus itself and the int <-> coefficient
encoding (base-p digits) are taken from the tower.
"""

import cmath
import itertools

import numpy as np


# ------------------------------------------------------------ field via lists

def to_vec(t, x):
    return [(int(x) // t.p ** i) % t.p for i in range(t.m)]


def to_int(t, v):
    return sum(int(c) * t.p ** i for i, c in enumerate(v))


def vadd(t, u, v):
    return [(a + b) % t.p for a, b in zip(u, v)]


def vscale(t, c, v):
    return [(c * a) % t.p for a in v]


def vmul(t, u, v):
    p, m = t.p, t.m
    prod = [0] * (2 * m - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] += a * b
    mod = list(t.modulus.coeffs)          # monic, degree m
    for d in range(2 * m - 2, m - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(m + 1):
                prod[d - m + i] -= c * mod[i]
    return [c % p for c in prod[:m]]


def vpow(t, u, k):
    result = [1] + [0] * (t.m - 1)
    base = list(u)
    while k:
        if k & 1:
            result = vmul(t, result, base)
        base = vmul(t, base, base)
        k >>= 1
    return result


def fadd(t, x, y):
    return to_int(t, vadd(t, to_vec(t, x), to_vec(t, y)))


def fmul(t, x, y):
    return to_int(t, vmul(t, to_vec(t, x), to_vec(t, y)))


def fpow(t, x, k):
    return to_int(t, vpow(t, to_vec(t, x), k))


def fneg(t, x):
    return to_int(t, vscale(t, t.p - 1, to_vec(t, x)))


def ftrace(t, x, deg=1):
    """Tr from GF(p^m) down to GF(p^deg): sum of x^(p^(deg i))."""
    acc = [0] * t.m
    v = to_vec(t, x)
    for i in range(t.m // deg):
        acc = vadd(t, acc, vpow(t, v, t.p ** (deg * i)))
    return to_int(t, acc)


def prime_value(t, x):
    v = to_vec(t, x)
    assert all(c == 0 for c in v[1:]), "not in GF(p)"
    return v[0]


# ------------------------------------------------------------- code objects

def Q_value(t, k, a, b, x):
    """Tr_{q^s/q}(a x^2 + b x^(p^k+1)) as a field int."""
    inner = fadd(t, fmul(t, a, fpow(t, x, 2)), fmul(t, b, fpow(t, x, t.p ** k + 1)))
    return ftrace(t, inner, t.e)


def abs_trace(t, x):
    return prime_value(t, ftrace(t, x, 1))


def sub_trace(t, x):
    """Tr_{q/p} of an element of GF(q)."""
    acc = [0] * t.m
    v = to_vec(t, x)
    for i in range(t.e):
        acc = vadd(t, acc, vpow(t, v, t.p ** i))
    return prime_value(t, to_int(t, acc))


def exp_sum_float(spec, t, a, b):
    """S(a,b) or T(a,b) as a complex float sum over y in GF(p)*, x in GF(q^s)."""
    p, k = t.p, spec.k
    lam = t.lam
    z = 0j
    for y in range(1, p):
        for x in range(t.N):
            x2 = fpow(t, x, 2)
            xk = fpow(t, x, p ** k + 1)
            v1 = abs_trace(t, fadd(t, fmul(t, a, x2), fmul(t, b, xk)))
            la = fneg(t, fmul(t, lam, a))
            lb = fmul(t, lam, b)
            if spec.sum_kind == "T":
                lb = fneg(t, lb)
            v2 = abs_trace(t, fadd(t, fmul(t, la, x2), fmul(t, lb, xk)))
            z += cmath.exp(2j * cmath.pi * (y * v1 % p) / p)
            z += cmath.exp(2j * cmath.pi * (y * v2 % p) / p)
    return z


def gauss_float(t, k, a, b):
    z = 0j
    for x in range(t.N):
        v = sub_trace(t, Q_value(t, k, a, b, x))
        z += cmath.exp(2j * cmath.pi * v / t.p)
    return z


def rank_mod_p(rows, p):
    M = [list(r) for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [(v * inv) % p for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c] % p:
                f = M[i][c]
                M[i] = [(vi - f * vr) % p for vi, vr in zip(M[i], M[rank])]
        rank += 1
    return rank


def form_rank(t, k, a, b):
    """GF(q)-rank of Q_{a,b} from the GF(p)-rank of the traced polar form.

    The GF(p)-radical of Tr_{q/p} Q equals the GF(q)-radical of Q, so
    m - rank_p = e (s - r)."""
    basis = [t.p ** i for i in range(t.m)]

    def q(x):
        return sub_trace(t, Q_value(t, k, a, b, x))

    B = [[(q(fadd(t, u, v)) - q(u) - q(v)) % t.p for v in basis] for u in basis]
    rp = rank_mod_p(B, t.p)
    return t.s - (t.m - rp) // t.e


# ----------------------------------------------- code from its generator g(x)

def generator_distribution(g_coeffs, n, p):
    """Weight distribution of the cyclic code generated by g, by enumerating all
    messages m(x) of degree < n - deg g and forming m(x) g(x)."""
    deg = len(g_coeffs) - 1
    k = n - deg
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i:i + deg + 1] = g_coeffs
    counts = {}
    msgs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    for lo in range(0, len(msgs), 4096):
        words = (msgs[lo:lo + 4096] @ G) % p
        w, c = np.unique(np.count_nonzero(words, axis=1), return_counts=True)
        for wi, ci in zip(w.tolist(), c.tolist()):
            counts[wi] = counts.get(wi, 0) + ci
    return dict(sorted(counts.items()))


def poly_divides(divisor, coeffs, p):
    """True iff divisor(x) | coeffs(x) over GF(p) (both low degree first)."""
    r = [c % p for c in coeffs]
    d = list(divisor)
    inv = pow(d[-1], -1, p)
    for i in range(len(r) - len(d), -1, -1):
        c = r[i + len(d) - 1] * inv % p
        if c:
            for j, dj in enumerate(d):
                r[i + j] = (r[i + j] - c * dj) % p
    return not any(r)
