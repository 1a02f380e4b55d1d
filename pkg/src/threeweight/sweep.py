"""Vectorized sweeps over all pairs (a, b) in GF(q^s)^2.

The pair space is processed in chunks of consecutive ``a`` values against all
``b``; every chunk is independent and results are written into disjoint slices
of the output grids, so chunk order never changes a result.

Grids are indexed ``grid[a, b]`` with a and b the field ints of the tower.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InternalInconsistency, NonIntegerSum, RegimeError
from .field_tower import FieldTower, tower_for
from .params import CodeSpec, Regime
from .quad_forms import monomial_tables, sum_from_invariants, sum_terms, gauss_sum_closed

#: number of (a, b) pairs handled per vectorized chunk
CHUNK_PAIRS = 1 << 16


# ------------------------------------------------------------- batched kernels

def _permute(M, perm):
    B = M.shape[0]
    bi = np.arange(B)[:, None, None]
    return M[bi, perm[:, :, None], perm[:, None, :]]


def diagonalize_batch(M, sub):
    """Congruence-diagonalize a batch of symmetric matrices over GF(q).

    ``M`` has shape (B, s, s) and holds subfield indices.  Returns (rank, eta)
    arrays where eta is the quadratic character of the product of the nonzero
    diagonal entries (1 for rank 0).  Same pivot rule as the scalar routine:
    first nonzero diagonal entry, else the off-diagonal repair.
    """
    M = np.array(M, dtype=np.int64, copy=True)
    B, s, _ = M.shape
    rank = np.zeros(B, dtype=np.int64)
    eta = np.ones(B, dtype=np.int64)
    ADD, MUL, SUB, INV, ETA = sub.ADD, sub.MUL, sub.SUB, sub.INV, sub.ETA
    for k in range(s):
        rng = np.arange(k, s)
        dmask = M[:, rng, rng] != 0
        has_d = dmask.any(axis=1)
        blk = M[:, k:, k:]
        upper = np.triu(np.ones((s - k, s - k), dtype=bool), 1)
        off = (blk != 0) & upper
        repair = ~has_d & off.reshape(B, -1).any(axis=1)
        if repair.any():
            bi = np.flatnonzero(repair)
            flat = off[bi].reshape(len(bi), -1).argmax(axis=1)
            I = k + flat // (s - k)
            J = k + flat % (s - k)
            M[bi, I, :] = ADD[M[bi, I, :], M[bi, J, :]]
            M[bi, :, I] = ADD[M[bi, :, I], M[bi, :, J]]
            dmask[bi] = M[bi][:, rng, rng] != 0
        piv = k + dmask.argmax(axis=1)
        swap = piv != k
        if swap.any():
            bi = np.flatnonzero(swap)
            perm = np.tile(np.arange(s), (len(bi), 1))
            perm[np.arange(len(bi)), k] = piv[bi]
            perm[np.arange(len(bi)), piv[bi]] = k
            M[bi] = _permute(M[bi], perm)
        d = M[:, k, k]
        live = d != 0
        rank += live
        eta *= np.where(live, ETA[d], 1)
        if k + 1 < s:
            f = MUL[M[:, k + 1:, k], INV[d][:, None]]
            upd = MUL[f[:, :, None], M[:, None, k, k + 1:]]
            M[:, k + 1:, k + 1:] = SUB[M[:, k + 1:, k + 1:], upd]
    return rank, eta


def rank_batch(M, sub):
    """Row-reduction rank of a batch of (B, r, c) matrices of subfield indices."""
    M = np.array(M, dtype=np.int64, copy=True)
    B, rows, cols = M.shape
    rk = np.zeros(B, dtype=np.int64)
    bidx = np.arange(B)
    ridx = np.arange(rows)
    for c in range(cols):
        mask = (M[:, :, c] != 0) & (ridx[None, :] >= rk[:, None])
        has = mask.any(axis=1)
        piv = mask.argmax(axis=1)
        tgt = np.minimum(rk, rows - 1)
        sw = has & (piv != tgt)
        if sw.any():
            bi = bidx[sw]
            a, b = M[bi, tgt[sw]].copy(), M[bi, piv[sw]].copy()
            M[bi, tgt[sw]] = b
            M[bi, piv[sw]] = a
        prow = M[bidx, tgt]                      # (B, cols)
        pinv = np.where(has, sub.INV[prow[:, c]], 0)
        below = ridx[None, :] > tgt[:, None]
        f = np.where(below, sub.MUL[M[:, :, c], pinv[:, None]], 0)
        M = sub.SUB[M, sub.MUL[f[:, :, None], prow[:, None, :]]]
        rk += has
    return rk


# ------------------------------------------------------------------ the sweep

class PairSweep:
    """All per-pair quantities of one code, computed in vectorized chunks."""

    def __init__(self, spec: CodeSpec, t: FieldTower | None = None):
        self.spec = spec
        self.t = t = t or tower_for(spec)
        if (t.p, t.m, t.e) != (spec.p, spec.m, spec.e):
            raise InternalInconsistency("tower does not match spec")
        self.N = t.N
        self.sub = t.gfq
        s, k = t.s, spec.k
        x = t.elements()
        beta = [int(v) for v in t.qbasis]
        half = t.inv(2)
        idx = self.sub.index
        # symmetric matrix entries are GF(q)-linear in a and in b separately
        Aa = np.empty((s, s, t.N), dtype=np.int64)
        Ab = np.empty((s, s, t.N), dtype=np.int64)
        for i in range(s):
            for j in range(s):
                w = t.mul(beta[i], beta[j])
                v = t.mul(t.add(t.mul(beta[i], t.frob(beta[j], k)),
                                t.mul(t.frob(beta[i], k), beta[j])), half)
                Aa[i, j] = idx[t.tr_q[t.mul(x, w)]]
                Ab[i, j] = idx[t.tr_q[t.mul(x, v)]]
        self._Aa, self._Ab = Aa, Ab
        # columns of the linearized map L in the same basis
        fa = t.smul(2, t.frob(x, k))
        fb = t.frob(x, k)
        La = np.empty((s, t.N, s), dtype=np.int64)
        Lb = np.empty((s, t.N, s), dtype=np.int64)
        for j in range(s):
            La[j] = t.coords[t.mul(fa, t.frob(beta[j], k))]
            Lb[j] = t.coords[t.add(t.mul(fb, t.frob(beta[j], 2 * k)), t.mul(x, beta[j]))]
        self._La, self._Lb = La, Lb
        self._grid = None
        self._counts = None

    # ---------------------------------------------------------------- chunks
    def chunks(self, a_values=None):
        a_values = np.arange(self.N) if a_values is None else np.asarray(a_values)
        step = max(1, CHUNK_PAIRS // self.N)
        for lo in range(0, len(a_values), step):
            yield a_values[lo:lo + step]

    def matrices(self, a_chunk):
        """Symmetric matrices of Q_{a,b} for a in a_chunk, all b: (len, N, s, s)."""
        A = self._Aa[:, :, a_chunk]                       # (s, s, ca)
        Bm = self._Ab                                     # (s, s, N)
        M = self.sub.ADD[A[:, :, :, None], Bm[:, :, None, :]]  # (s, s, ca, N)
        return np.moveaxis(M, (0, 1), (2, 3))

    def kernel_maps(self, a_chunk):
        """Matrices of the linearized map L for a in a_chunk, all b: (len, N, s, s)."""
        A = self._La[:, a_chunk, :]                       # (s_col, ca, s_row)
        M = self.sub.ADD[A[:, :, None, :], self._Lb[:, None, :, :]]  # (col, ca, N, row)
        return np.moveaxis(M, (0, 3), (3, 2))             # (ca, N, row, col)

    # ------------------------------------------------------------- invariants
    def form_invariants(self, a_values=None):
        """(rank, eta) grids of shape (len(a_values), N) via batched diagonalization."""
        a_values = np.arange(self.N) if a_values is None else np.asarray(a_values)
        s = self.t.s
        R = np.empty((len(a_values), self.N), dtype=np.int8)
        H = np.empty_like(R)
        row = 0
        for ch in self.chunks(a_values):
            M = self.matrices(ch).reshape(-1, s, s)
            r, h = diagonalize_batch(M, self.sub)
            R[row:row + len(ch)] = r.reshape(len(ch), self.N)
            H[row:row + len(ch)] = h.reshape(len(ch), self.N)
            row += len(ch)
        return R, H

    def invariant_grid(self):
        """Full (N, N) rank and eta grids, computed once and cached."""
        if self._grid is None:
            self._grid = self.form_invariants()
        return self._grid

    def kernel_rank_grid(self, a_values=None):
        """Rank of the linearized kernel map for every pair (independent of the matrices)."""
        a_values = np.arange(self.N) if a_values is None else np.asarray(a_values)
        s = self.t.s
        out = np.empty((len(a_values), self.N), dtype=np.int8)
        row = 0
        for ch in self.chunks(a_values):
            r = rank_batch(self.kernel_maps(ch).reshape(-1, s, s), self.sub)
            out[row:row + len(ch)] = r.reshape(len(ch), self.N)
            row += len(ch)
        return out

    # ------------------------------------------------------------------ sums
    @lru_cache(maxsize=None)
    def _sum_value(self, key):
        spec, t = self.spec, self.t
        if spec.regime is Regime.KE_EVEN_E_ODD:
            r1, h1, r2, h2 = key
            terms = sum_terms(spec, t, (r1, h1), (r2, h2))
        else:
            r1, h1 = key
            terms = sum_terms(spec, t, (r1, h1), None)
        return sum_from_invariants(t, terms).to_int()

    def sum_grid(self, a_values=None):
        """S(a,b) (k even, e odd) or T(a,b) (k/e odd) from rank/eta invariants.

        Rows are computed chunk by chunk; the full invariant grid is reused when
        it has already been cached, otherwise only the needed rows are built.
        """
        spec, t = self.spec, self.t
        if not spec.supported:
            raise RegimeError("no exponential-sum formula outside the two regimes")
        a_values = np.arange(self.N) if a_values is None else np.asarray(a_values)
        out = np.empty((len(a_values), self.N), dtype=np.int64)
        row = 0
        for ch in self.chunks(a_values):
            out[row:row + len(ch)] = self._sum_rows(ch)
            row += len(ch)
        return out

    def _rows(self, a_values):
        if self._grid is not None:
            R, H = self._grid
            return R[a_values], H[a_values]
        return self.form_invariants(a_values)

    def _sum_rows(self, ch):
        spec, t = self.spec, self.t
        base = 3 * (t.s + 1)
        R, H = self._rows(ch)
        code = R.astype(np.int64) * 3 + (H + 1)
        if spec.regime is Regime.KE_EVEN_E_ODD:
            R2, H2 = self._rows(t.neg(ch))
            code = code * base + R2.astype(np.int64) * 3 + (H2 + 1)
        keys, inverse = np.unique(code, return_inverse=True)
        values = np.array([self._sum_value(self._decode(int(c))) for c in keys], dtype=np.int64)
        return values[inverse.reshape(code.shape)]

    def _decode(self, c):
        base = 3 * (self.t.s + 1)
        parts = [divmod(c % base, 3)] if self.spec.regime is Regime.K_OVER_E_ODD else \
            [divmod(c // base, 3), divmod(c % base, 3)]
        return tuple(v for r, h in parts for v in (r, h - 1))

    def sum_counts(self):
        """value -> number of pairs, plus first and second moments, streaming (cached)."""
        if self._counts is not None:
            return self._counts
        counts = {}
        for ch in self.chunks():
            vals, cnts = np.unique(self._sum_rows(ch), return_counts=True)
            for v, c in zip(vals.tolist(), cnts.tolist()):
                counts[v] = counts.get(v, 0) + c
        first = sum(v * c for v, c in counts.items())
        second = sum(v * v * c for v, c in counts.items())
        self._counts = (dict(counts), first, second)
        return self._counts

    def weights_from_sums(self, sums):
        """p^m - p^(m-1) - sum/(2p), checked to be an integer."""
        p, m = self.spec.p, self.spec.m
        num = 2 * p * (p ** m - p ** (m - 1)) - np.asarray(sums, dtype=np.int64)
        if (num % (2 * p)).any():
            raise NonIntegerSum("exponential sum not divisible by 2p")
        return num // (2 * p)

    # ---------------------------------------------------- definition level
    def _traces(self):
        t, spec = self.t, self.spec
        sq, qu = monomial_tables(t, spec.k)
        return sq, qu

    def direct_sum_grid(self, a_values=None):
        """S or T for every pair by binning Tr(y(...)) over y in GF(p)*, x in GF(q^s).

        The per-pair count vector over Z[zeta_p] is formed explicitly and reduced;
        integrality is asserted for every pair.
        """
        spec, t = self.spec, self.t
        if not spec.supported:
            raise RegimeError("no exponential-sum formula outside the two regimes")
        p, N = t.p, self.N
        a_values = np.arange(N) if a_values is None else np.asarray(a_values)
        sq, qu = self._traces()
        x = t.elements()
        lam = t.lam
        # Tr(b x^(p^k+1)) for all (b, x), and the lambda-twisted version
        TB1 = t.tr_p[t.mul(x[:, None], qu[None, :])]
        TB2 = t.tr_p[t.mul(t.mul(lam, x)[:, None], qu[None, :])]
        if spec.regime is Regime.K_OVER_E_ODD:
            TB2 = (-TB2) % p
        out = np.empty((len(a_values), N), dtype=np.int64)
        ys = np.arange(1, p)
        for row, a in enumerate(a_values.tolist()):
            TA1 = t.tr_p[t.mul(a, sq)]
            TA2 = t.tr_p[t.mul(t.neg(t.mul(lam, a)), sq)]
            counts = np.zeros((N, p), dtype=np.int64)
            for TA, TB in ((TA1, TB1), (TA2, TB2)):
                base = (TA[None, :] + TB) % p                      # (b, x)
                hist = np.stack([(base == j).sum(axis=1) for j in range(p)], axis=1)
                # y permutes residues: exponent y*j collects hist[j]
                for y in ys:
                    counts[:, (y * np.arange(p)) % p] += hist
            counts -= counts.min(axis=1, keepdims=True)
            if (counts[:, 1:] != counts[:, 1:2]).any():
                raise NonIntegerSum("direct exponential sum is not a rational integer")
            out[row] = counts[:, 0] - counts[:, 1]
        return out

    def gauss_direct_counts(self, a_values=None):
        """Histogram of Tr_{q/p}(Q_{a,b}(x)) over x, shape (len(a), N, p)."""
        t, p, N = self.t, self.t.p, self.N
        a_values = np.arange(N) if a_values is None else np.asarray(a_values)
        sq, qu = self._traces()
        TB = t.tr_p[t.mul(t.elements()[:, None], qu[None, :])]
        out = np.empty((len(a_values), N, p), dtype=np.int64)
        for row, a in enumerate(a_values.tolist()):
            base = (t.tr_p[t.mul(a, sq)][None, :] + TB) % p
            for j in range(p):
                out[row, :, j] = (base == j).sum(axis=1)
        return out

    def gauss_closed_counts(self, R, H):
        """Canonical Z[zeta_p] count vectors of the closed form, per pair."""
        t = self.t
        keys, inverse = np.unique(np.stack([R, H], axis=-1).reshape(-1, 2).astype(np.int64),
                                  axis=0, return_inverse=True)
        table = np.array([gauss_sum_closed(t.p, t.e, t.s, int(r), int(h)).c for r, h in keys],
                         dtype=np.int64)
        return table[inverse.ravel()].reshape(R.shape + (t.p,))

    def radical_count_grid(self, a_values=None):
        """#{x : Tr(polar(x, z)) = 0 for z in a GF(p)-basis} per pair, by counting x."""
        spec, t, N = self.spec, self.t, self.N
        k = spec.k
        a_values = np.arange(N) if a_values is None else np.asarray(a_values)
        x = t.elements()
        xk = t.frob(x, k)
        out = np.empty((len(a_values), N), dtype=np.int64)
        zs = t.weights.tolist()
        # polar(x, z) = 2a x z + b (x z^(p^k) + x^(p^k) z); trace to GF(p)
        TB = [t.tr_p[t.mul(x[:, None], t.add(t.mul(x, t.frob(z, k)),
                                               t.mul(xk, z))[None, :])] for z in zs]
        for row, a in enumerate(a_values.tolist()):
            ok = np.ones((N, N), dtype=bool)
            for z, tb in zip(zs, TB):
                ta = t.tr_p[t.mul(t.smul(2, t.mul(a, z)), x)]
                ok &= (ta[None, :] + tb) % t.p == 0
            out[row] = ok.sum(axis=1)
        return out

    def definition_weights(self, a_values=None, b_values=None):
        """Hamming weights of c_(a,b) by evaluating all n entries; grid (len(a), len(b))."""
        t, spec = self.t, self.spec
        p, n = t.p, t.n
        a_values = np.arange(self.N) if a_values is None else np.asarray(a_values)
        b_values = np.arange(self.N) if b_values is None else np.asarray(b_values)
        P1, P2 = codeword_points(spec, t)
        TB = t.tr_p[t.mul(b_values[:, None], P2[None, :])]       # (b, n)
        out = np.empty((len(a_values), len(b_values)), dtype=np.int64)
        for row, a in enumerate(a_values.tolist()):
            TA = t.tr_p[t.mul(a, P1)]
            out[row] = np.count_nonzero((TA[None, :] + TB) % p, axis=1)
        return out

    def pair_weights(self, a_values, b_values, chunk=256):
        """Entry-by-entry weights of c_(a_i, b_i) for paired arrays a, b."""
        t, spec = self.t, self.spec
        P1, P2 = codeword_points(spec, t)
        a_values, b_values = np.asarray(a_values), np.asarray(b_values)
        out = np.empty(len(a_values), dtype=np.int64)
        for lo in range(0, len(a_values), chunk):
            a = a_values[lo:lo + chunk, None]
            b = b_values[lo:lo + chunk, None]
            out[lo:lo + chunk] = np.count_nonzero(
                (t.tr_p[t.mul(a, P1[None, :])] + t.tr_p[t.mul(b, P2[None, :])]) % t.p, axis=1)
        return out


def codeword_points(spec: CodeSpec, t: FieldTower):
    """((-pi)^t, pi^(u t)) for t = 0..n-1, as field ints."""
    ts = np.arange(t.n, dtype=np.int64)
    neg_pi = t.neg(t.pi)
    P1 = t.exp[(int(t.log[neg_pi]) * ts) % t.n]
    P2 = t.exp[(spec.u * ts) % t.n]
    return P1, P2


@lru_cache(maxsize=8)
def _cached_sweep(spec: CodeSpec) -> PairSweep:
    return PairSweep(spec)


def pair_sweep(spec: CodeSpec, t: FieldTower | None = None) -> PairSweep:
    """Shared sweep for ``spec`` (cached: the invariant grid is computed once)."""
    if t is None or t is tower_for(spec):
        return _cached_sweep(spec)
    return PairSweep(spec, t)
