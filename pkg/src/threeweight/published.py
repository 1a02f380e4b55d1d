"""Published reference values for the worked parameter sets, and the anomaly notes
raised when they disagree with the closed forms or with each other."""

from __future__ import annotations

from math import gcd

from .params import CodeSpec, Regime
from .quad_forms import predicted_set_counts

# (p, m, k) -> published [n, dim, d] header of C
HEADERS = {
    (3, 3, 2): (26, 6, 15),
    (3, 5, 4): (242, 6, 153),
    (5, 3, 2): (124, 6, 90),
    (3, 6, 2): (728, 12, 432),
    (5, 3, 1): (124, 6, 80),
    (3, 9, 3): (19682, 18, 12879),
}

# (p, m, k) -> published weight enumerator of C (nonzero weights)
ENUMERATORS = {
    (3, 3, 2): {15: 312, 18: 260, 21: 156},
    (3, 5, 4): {153: 21780, 162: 19844, 171: 17424},
    (5, 3, 2): {90: 3720, 100: 9424, 110: 2480},
    (3, 6, 2): {432: 32760, 486: 472472, 540: 26208},
    (5, 3, 1): {80: 1860, 100: 12524, 120: 1240},
    (3, 9, 3): {12636: 7439796, 13122: 373072310, 13608: 6908382},
}

# (p, m, k) -> published [n, dim, d] of C-perp and its generator, low degree first
DUALS = {
    (3, 3, 2): ((26, 20, 4), "2,1,0,2,0,2,1"),
    (3, 5, 4): ((242, 10, 4), "2,0,2,0,0,0,1,1,1,2,1"),
    (3, 7, 6): ((2186, 14, 4), "2,0,0,0,0,1,1,0,0,0,2,1,0,2,1"),
}


def _fmt(triple):
    return "[" + ",".join(str(v) for v in triple) + "]"


def matching_pi_exponent(spec: CodeSpec, t, target: str):
    """Smallest j coprime to n such that pi^j as primitive element yields ``target``
    as dual generator; None if no primitive element does."""
    from .poly_ring import code_polynomials

    for j in range(1, t.n):
        if gcd(j, t.n) == 1:
            if code_polynomials(spec, t, pi=int(t.exp[j])).dual.to_string() == target:
                return j
    return None


def anomalies(spec: CodeSpec, predicted=None, dual_generator: str | None = None, t=None) -> list:
    """Notes where published values differ from what the closed forms give."""
    key = (spec.p, spec.m, spec.k)
    notes = []
    if spec.regime is Regime.UNSUPPORTED:
        notes.append("parameters lie outside both closed-form regimes; "
                     "distribution obtained by entrywise enumeration only")
    if spec.regime is Regime.K_OVER_E_ODD and spec.e % 2 == 0:
        size = (spec.p - 1) ** 2 * spec.p ** spec.m
        notes.append(f"published sizes {size} for each of the four T-sets hold only for odd e; "
                     f"with e = {spec.e} even they are {predicted_set_counts(spec)}, "
                     f"with the same total {4 * size}")
    if key in HEADERS:
        pub = HEADERS[key]
        if pub[1] != spec.dim:
            notes.append(f"published header {_fmt(pub)} gives dimension {pub[1]}; "
                         f"the code has dimension 2m = {spec.dim}")
        if predicted is not None and pub[2] != predicted.min_weight:
            notes.append(f"published header {_fmt(pub)} gives minimum weight {pub[2]}; "
                         f"the closed form gives {predicted.min_weight} "
                         f"(count {predicted.entries[predicted.min_weight]}), "
                         f"matching the published enumerator")
    if key in ENUMERATORS:
        enum = ENUMERATORS[key]
        w0 = min(enum)
        notes.append(f"published enumerator writes the leading term as {enum[w0]}^{w0}; "
                     f"read as {enum[w0]} x^{w0}")
        if predicted is not None and {w: c for w, c in predicted.entries.items() if w} != enum:
            notes.append("published enumerator differs from the closed-form distribution")
    if key in DUALS:
        (pn, pk, pd), gen = DUALS[key]
        if pk != spec.n - 2 * spec.m:
            notes.append(f"published dual parameters {_fmt((pn, pk, pd))} give dimension {pk}; "
                         f"the dual has dimension n - 2m = {spec.n - 2 * spec.m}")
        if dual_generator is not None and dual_generator != gen:
            j = matching_pi_exponent(spec, t, gen) if t is not None else None
            where = (f"; it is reproduced with pi^{j} as primitive element" if j
                     else "; no primitive element reproduces it")
            notes.append(f"published dual generator {gen} differs from ours ({dual_generator}): "
                         f"the generator depends on the choice of primitive element{where}")
    return notes
