"""Integer utilities for certificate construction: q-adic splitting and unit powers."""
from __future__ import annotations

from math import gcd, lcm

from .errors import InvalidInput, NotCoprime
from .kernels import trial_factor

__all__ = ["factorize", "q_adic_certificate", "solve_unit_power", "multiplicative_order", "valuation"]


def factorize(n: int) -> dict[int, int]:
    try:
        return trial_factor(n)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise InvalidInput("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def q_adic_certificate(m: int, q: int) -> tuple[int, int, int]:
    """Return ``(amp, r, N)`` with ``amp*m == r*q**N`` and ``gcd(r, q) == 1``.

    With ``q = prod p_i**e_i`` and ``f_i`` the p_i-valuation of m, N is the
    least integer with ``N*e_i >= f_i`` for every i and
    ``amp = prod p_i**(N*e_i - f_i)``.
    """
    m, q = int(m), int(q)
    if m == 0:
        raise InvalidInput("m must be nonzero")
    if abs(q) < 2:
        raise InvalidInput("|q| must be at least 2")
    fac = factorize(q)
    vals = {p: valuation(m, p) for p in fac}
    N = max(-(-vals[p] // e) for p, e in fac.items())
    amp = 1
    for p, e in fac.items():
        amp *= p ** (N * e - vals[p])
    r, rem = divmod(amp * m, q ** N)
    assert rem == 0 and gcd(r, q) == 1
    return amp, r, N


def _carmichael(fac: dict[int, int]) -> int:
    out = 1
    for p, e in fac.items():
        if p == 2:
            lam = 1 if e == 1 else 2 if e == 2 else 2 ** (e - 2)
        else:
            lam = (p - 1) * p ** (e - 1)
        out = lcm(out, lam)
    return out


def multiplicative_order(q: int, n: int) -> int:
    """Order of q in ``(Z/nZ)^*`` for ``n >= 2`` and ``gcd(q, n) == 1``."""
    if n < 2:
        raise InvalidInput("modulus must be at least 2")
    if gcd(q, n) != 1:
        raise NotCoprime(f"{q} is not a unit modulo {n}")
    order = _carmichael(factorize(n))
    for p in factorize(order):
        while order % p == 0 and pow(q, order // p, n) == 1:
            order //= p
    return order


def solve_unit_power(r: int, q: int, min_N: int = 0) -> tuple[int, int]:
    """Return ``(s, N)`` with ``s*r + q**N == 1`` and ``N >= min_N``.

    N is the least multiple of the order of q modulo ``|r|`` not below
    ``min_N``; when ``|r| == 1`` it is ``min_N`` itself.
    """
    r, q, min_N = int(r), int(q), int(min_N)
    if r == 0:
        raise InvalidInput("r must be nonzero")
    if min_N < 0:
        raise InvalidInput("min_N must be nonnegative")
    if gcd(r, q) != 1:
        raise NotCoprime(f"gcd({r}, {q}) != 1", common_factor=gcd(r, q))
    if abs(r) == 1:
        N = min_N
    else:
        order = multiplicative_order(q % abs(r), abs(r))
        N = -(-min_N // order) * order
    s, rem = divmod(1 - q ** N, r)
    assert rem == 0
    return s, N
