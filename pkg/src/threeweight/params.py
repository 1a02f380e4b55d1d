"""Parameter validation: (p, m, k) -> CodeSpec."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from sympy import isprime

from .errors import InvalidParams, UnsupportedRegime


class Regime(str, enum.Enum):
    KE_EVEN_E_ODD = "KE_EVEN_E_ODD"   # k even, e odd: weights governed by S(a, b)
    K_OVER_E_ODD = "K_OVER_E_ODD"     # k/e odd: weights governed by T(a, b)
    UNSUPPORTED = "UNSUPPORTED"       # k/e even with e even; brute force only


@dataclass(frozen=True)
class CodeSpec:
    p: int
    m: int
    k: int
    e: int
    s: int
    q: int
    n: int
    dim: int
    u: int
    regime: Regime

    @property
    def N(self) -> int:
        """Field size p^m."""
        return self.p ** self.m

    @property
    def supported(self) -> bool:
        return self.regime is not Regime.UNSUPPORTED

    @property
    def sum_kind(self) -> str:
        return {Regime.KE_EVEN_E_ODD: "S", Regime.K_OVER_E_ODD: "T"}.get(self.regime, "")

    def as_dict(self) -> dict:
        return {
            "p": self.p, "m": self.m, "k": self.k, "e": self.e, "s": self.s,
            "q": self.q, "n": self.n, "dim": self.dim, "u": self.u,
            "regime": self.regime.value,
        }


def check_frame(p: int, m: int, e: int) -> None:
    """Raise InvalidParams unless p is an odd prime, e | m and m/e is odd and >= 3."""
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise InvalidParams(f"p={p} is not an odd prime", failed="p_odd_prime")
    if m < 1 or e < 1:
        raise InvalidParams("m and e must be positive", failed="positive")
    if m % e:
        raise InvalidParams(f"e={e} does not divide m={m}", failed="e_divides_m")
    s = m // e
    if s % 2 == 0:
        raise InvalidParams(f"s=m/e={s} is even", failed="s_odd")
    if s < 3:
        raise InvalidParams(f"s=m/e={s} < 3", failed="s_at_least_3")


def validate(p: int, m: int, k: int, allow_unsupported: bool = False) -> CodeSpec:
    if k < 1:
        raise InvalidParams(f"k={k} must be positive", failed="k_positive")
    e = gcd(m, k)
    check_frame(p, m, e)
    if (k // e) % 2 == 1:
        regime = Regime.K_OVER_E_ODD
    elif e % 2 == 1:
        regime = Regime.KE_EVEN_E_ODD
    else:
        if not allow_unsupported:
            raise UnsupportedRegime(
                f"k/e={k // e} even with e={e} even: no closed-form distribution",
                p=p, m=m, k=k, e=e)
        regime = Regime.UNSUPPORTED
    return CodeSpec(p=p, m=m, k=k, e=e, s=m // e, q=p ** e, n=p ** m - 1,
                    dim=2 * m, u=(p ** k + 1) // 2, regime=regime)
