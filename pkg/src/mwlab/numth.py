"""Exact integer arithmetic: primes, factoring, modular orders, CRT, discrete logs.

Everything here returns exact values on arbitrary-precision ints. The intended
input scale is "desk size": scan primes fit in 64 bits, factored quantities are
group orders (p-1 or a curve order), never cryptographic composites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

# Trial division handles cofactors up to this bound squared; Pollard rho
# takes over beyond it.
_TRIAL_BOUND = 10**6

# Witness set giving deterministic Miller-Rabin for all n < 3.3 * 10**24,
# well past 64 bits.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition: value == prod(p**e), primes strictly increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"factorization of non-positive value {self.value}")
        prev = 1
        acc = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("factor primes must be strictly increasing")
            if e < 1:
                raise ValueError("factor exponents must be >= 1")
            prev = p
            acc *= p**e
        if acc != self.value:
            raise ValueError(f"factors do not recompose to {self.value}")

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@dataclass(frozen=True)
class PrimeRange:
    """Closed prime scan window [lo, hi]; iterating yields the primes in it."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 2:
            raise ValueError(f"prime range must start at 2 or above, got {self.lo}")
        if self.hi < self.lo:
            raise ValueError(f"inverted prime range [{self.lo}, {self.hi}]")

    def __iter__(self):
        return iter(primes_in(self))


def _sieve(limit: int) -> bytearray:
    """Byte-per-number sieve of Eratosthenes up to limit inclusive."""
    if limit < 2:
        return bytearray(limit + 1)
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            start = p * p
            flags[start : limit + 1 : p] = b"\x00" * ((limit - start) // p + 1)
    return flags


def primes_in(window: PrimeRange) -> list[int]:
    """Exactly the primes p with lo <= p <= hi, ascending."""
    lo, hi = window.lo, window.hi
    if hi <= 4_000_000:
        flags = _sieve(hi)
        return [p for p in range(lo, hi + 1) if flags[p]]
    # Segmented sieve for windows with a large upper bound.
    base_flags = _sieve(math.isqrt(hi))
    base = [p for p in range(2, len(base_flags)) if base_flags[p]]
    size = hi - lo + 1
    flags = bytearray(b"\x01") * size
    for p in base:
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start > hi:
            continue
        flags[start - lo :: p] = b"\x00" * ((hi - start) // p + 1)
    return [lo + i for i in range(size) if flags[i] and lo + i >= 2]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (witness set valid far past 64 bits)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if n in small:
        return True
    if any(n % p == 0 for p in small):
        return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho_split(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n.

    Parameters advance deterministically so factorizations are reproducible.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m = 2, 128
        g = q = r = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable at desk scale


@lru_cache(maxsize=1 << 16)
def factor(n: int) -> Factorization:
    """Exact factorization: trial division to 10**6, Pollard rho beyond.

    Raises ValueError for n <= 0. factor(1) has no factors.
    """
    if n <= 0:
        raise ValueError(f"cannot factor non-positive {n}")
    value = n
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    d = 7
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            found[d] = found.get(d, 0) + 1
            n //= d
        d += 2
    # Remaining cofactor is 1, prime, or a product of primes > 10**6.
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        g = _rho_split(m)
        stack.append(g)
        stack.append(m // g)
    return Factorization(value, tuple(sorted(found.items())))


def multiplicative_order(a: int, p: int) -> int:
    """Least n >= 1 with a**n == 1 (mod p), via factoring p-1 and stripping."""
    a %= p
    if a == 0:
        raise ValueError(f"{p} divides the base; no multiplicative order")
    order = p - 1
    for q, _ in factor(p - 1).factors:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def exact_valuation(l: int, k: int, n: int) -> bool:
    """True iff l**k exactly divides n (for k=0: true iff l does not divide n)."""
    if n < 1:
        raise ValueError(f"valuation of non-positive {n}")
    if k == 0:
        return n % l != 0
    lk = l**k
    return n % lk == 0 and n % (lk * l) != 0


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y == g == gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def crt(congruences: list[tuple[int, int]]) -> tuple[int, int] | None:
    """Combine x = r (mod m) congruences; moduli need not be coprime.

    Returns (value, modulus) with modulus = lcm of inputs and
    0 <= value < modulus, or None when the congruences contradict.
    """
    r0, m0 = 0, 1
    for r, m in congruences:
        if m < 1:
            raise ValueError(f"modulus must be >= 1, got {m}")
        r %= m
        g, s, _ = xgcd(m0, m)
        if (r - r0) % g != 0:
            return None
        lcm = m0 // g * m
        r0 = (r0 + (r - r0) // g % (m // g) * s % (m // g) * m0) % lcm
        m0 = lcm
    return r0, m0


def bsgs_dlog(base: int, target: int, p: int, order_of_base: int) -> int | None:
    """Least e in [0, order_of_base) with base**e == target (mod p), else None.

    Baby-step giant-step, O(sqrt(order)) time and space. Requires the exact
    order of base mod p.
    """
    base %= p
    target %= p
    if base == 0 or target == 0:
        raise ValueError("baby-step giant-step needs arguments coprime to p")
    m = math.isqrt(order_of_base) + 1
    table: dict[int, int] = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * base % p
    giant = pow(pow(base, p - 2, p), m, p)
    gamma = target
    for i in range(m + 1):
        j = table.get(gamma)
        if j is not None:
            found = i * m + j
            if found < order_of_base:
                return found
        gamma = gamma * giant % p
    return None


def integer_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the integer kernel {c : M @ c == 0} of an integer matrix.

    Row-reduces the transpose augmented with the identity using exact xgcd
    elimination (a Hermite-form sweep); rows whose transpose part vanishes
    carry a lattice basis of the kernel in their identity part. The returned
    basis generates ALL integer kernel vectors, not just a finite-index
    sublattice.
    """
    nrows = len(rows)
    width = nrows + ncols
    # work[i] = (column i of M) + (i-th unit vector)
    work = [[rows[r][i] for r in range(nrows)] + [0] * ncols for i in range(ncols)]
    for i in range(ncols):
        work[i][nrows + i] = 1
    pivot_row = 0
    for col in range(nrows):
        piv = next((i for i in range(pivot_row, ncols) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[pivot_row], work[piv] = work[piv], work[pivot_row]
        for i in range(pivot_row + 1, ncols):
            if work[i][col] == 0:
                continue
            a, b = work[pivot_row][col], work[i][col]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            for j in range(width):
                rj, sj = work[pivot_row][j], work[i][j]
                work[pivot_row][j] = x * rj + y * sj
                work[i][j] = u * sj - v * rj
        pivot_row += 1
        if pivot_row == ncols:
            break
    basis = []
    for i in range(ncols):
        if all(work[i][c] == 0 for c in range(nrows)):
            vec = work[i][nrows:]
            if any(vec):
                basis.append(vec)
    return basis
