"""Searches for primes realizing prescribed l-adic valuation patterns on
point orders, and replays of the witness constructions those patterns feed.

Existence of such primes (for linearly independent points) is a theorem;
their location is not, so everything here is scan-and-verify: a window is
swept and every hit is certified by recomputation. An empty result is a
reported outcome, never an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import numth
from ._parallel import map_chunks, split_chunks
from .numth import PrimeRange
from .reports import Witness


@dataclass(frozen=True)
class ValuationPattern:
    """Prime l with target exponents: l^k exactly divides ord_v P_i (k > 0),
    or l does not divide ord_v P_i at all (k = 0)."""

    l: int
    ks: tuple[int, ...]

    def __post_init__(self):
        if not numth.is_prime(self.l):
            raise ValueError(f"pattern prime {self.l} is not prime")
        if not self.ks:
            raise ValueError("pattern needs at least one exponent")
        if any(k < 0 for k in self.ks):
            raise ValueError("pattern exponents must be nonnegative")


@dataclass(frozen=True)
class PatternHit:
    """A prime realizing the pattern, with recomputed orders."""

    v: int
    orders: tuple[int, ...]
    verified: bool


@dataclass(frozen=True)
class DensityReport:
    """Empirical frequency of pattern primes over a scan window."""

    l: int
    ks: tuple[int, ...]
    hits: int
    scanned_good_primes: int
    ratio: float
    inconclusive: bool


def _verified_order(backend, P, v: int, order: int) -> bool:
    """Certify an order by direct exponentiation, independently of how it
    was computed: order kills the reduction, order/q does not for q | order."""
    raw = backend.reduce_raw(P, v)
    if not backend.raw_is_identity(backend.raw_scale(order, raw, v), v):
        return False
    for q, _ in numth.factor(order).factors:
        if backend.raw_is_identity(backend.raw_scale(order // q, raw, v), v):
            return False
    return True


def _pattern_chunk(points, pattern, backend, max_hits, chunk):
    hits = []
    for v in chunk:
        if not backend.good_prime(points, v):
            continue
        orders = tuple(backend.order_mod(P, v) for P in points)
        if all(numth.exact_valuation(pattern.l, k, t) for k, t in zip(pattern.ks, orders)):
            verified = all(
                _verified_order(backend, P, v, t) for P, t in zip(points, orders)
            )
            hits.append(PatternHit(v=v, orders=orders, verified=verified))
            if len(hits) >= max_hits:
                break
    return {"hits": hits}


def find_pattern_primes(points, pattern: ValuationPattern, backend, scan: PrimeRange,
                        max_hits: int = 10, workers: int = 1) -> list[PatternHit]:
    """Up to max_hits good primes in the window realizing the exact pattern,
    ascending, each hit carrying exponentiation-certified orders.

    The points are taken to be linearly independent by assertion; dependent
    inputs may legitimately produce no hits.
    """
    points = list(points)
    if len(points) != len(pattern.ks):
        raise ValueError("one pattern exponent per point required")
    if max_hits < 1:
        raise ValueError("max_hits must be positive")
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(
        _pattern_chunk, [(points, pattern, backend, max_hits, c) for c in chunks], workers
    )
    hits: list[PatternHit] = []
    for res in results:
        for hit in res["hits"]:
            hits.append(hit)
            if len(hits) >= max_hits:
                return hits
    return hits


def _replay1_chunk(P, Qs, l, backend, chunk):
    for v in chunk:
        if not backend.good_prime([P] + list(Qs), v):
            continue
        q_orders = [backend.order_mod(Q, v) for Q in Qs]
        if any(t % l != 0 for t in q_orders):
            continue
        n = backend.order_mod(P, v)
        if all(n % t != 0 for t in q_orders):
            detail = (
                f"ord_v(P)={n} with ord_v(Q_i)={q_orders}; n={n} kills P mod {v} "
                f"and kills no Q_i ({l} divides every ord_v(Q_i))"
            )
            return {"witness": Witness(v=v, n=n, detail=detail), "bads": []}
    return {"witness": None, "bads": []}


def replay_step1(P, Qs, l: int, backend, scan: PrimeRange, workers: int = 1) -> Witness | None:
    """Hunt a prime where l divides every ord_v(Q_i) and n = ord_v(P) kills
    P mod v but no Q_i, refuting the one-sided vanishing-cover condition
    there. Returns the first such (v, n), or None when the window has none
    (in particular whenever the condition actually holds identically).
    """
    if not numth.is_prime(l):
        raise ValueError(f"{l} is not prime")
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(
        _replay1_chunk, [(P, tuple(Qs), l, backend, c) for c in chunks], workers
    )
    for res in results:
        if res["witness"] is not None:
            return res["witness"]
    return None


def replay_step2_lcm(orders, divisors) -> int:
    """lcm of the orders after dividing out prescribed exact powers.

    Mirrors the witness-exponent construction: given ord_v values and the
    power of l to strip from each, form lcm(ord_1/d_1, ..., ord_m/d_m).
    """
    orders = list(orders)
    divisors = list(divisors)
    if len(orders) != len(divisors) or not orders:
        raise ValueError("need one divisor per order")
    parts = []
    for t, d in zip(orders, divisors):
        if d < 1 or t % d != 0:
            raise ValueError(f"{d} does not divide the order {t}")
        parts.append(t // d)
    return math.lcm(*parts)


def _density_chunk(points, pattern, backend, chunk):
    hits, goods = 0, 0
    for v in chunk:
        if not backend.good_prime(points, v):
            continue
        goods += 1
        orders = [backend.order_mod(P, v) for P in points]
        if all(numth.exact_valuation(pattern.l, k, t) for k, t in zip(pattern.ks, orders)):
            hits += 1
    return {"hits": hits, "goods": goods}


def pattern_density(points, pattern: ValuationPattern, backend, scan: PrimeRange,
                    workers: int = 1) -> DensityReport:
    """Hit frequency of the pattern over all good primes in the window.

    A zero ratio on a finite window is flagged inconclusive: it says nothing
    about larger primes.
    """
    points = list(points)
    if len(points) != len(pattern.ks):
        raise ValueError("one pattern exponent per point required")
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(
        _density_chunk, [(points, pattern, backend, c) for c in chunks], workers
    )
    hits = sum(r["hits"] for r in results)
    goods = sum(r["goods"] for r in results)
    ratio = hits / goods if goods else 0.0
    return DensityReport(
        l=pattern.l,
        ks=pattern.ks,
        hits=hits,
        scanned_good_primes=goods,
        ratio=ratio,
        inconclusive=(hits == 0),
    )
