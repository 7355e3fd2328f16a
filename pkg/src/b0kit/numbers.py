"""Integer helpers shared by several modules."""

from __future__ import annotations

from sympy import factorint

from .errors import NotPrimePower


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, p prime."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    fac = factorint(q)
    if len(fac) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    ((p, e),) = fac.items()
    return int(p), int(e)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def prime_factors(n: int) -> list[int]:
    return sorted(int(r) for r in factorint(n)) if n > 1 else []
