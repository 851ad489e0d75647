"""Hunting primes with prescribed valuation patterns on point orders.

For linearly independent points P_1, ..., P_m and a prime l with target
exponents (k_1, ..., k_m), there is a family of primes v where l^{k_i}
exactly divides ord_v P_i (or l misses the order entirely when k_i = 0).
No effective bound locates the first such prime, so we sweep a window and
certify every hit by direct exponentiation.
"""

try:
    import mwlab
except ImportError:
    import os
    import sys

    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
    import mwlab

from mwlab import (
    MulPoint,
    MultiplicativeGroup,
    PrimeRange,
    ValuationPattern,
    find_pattern_primes,
    pattern_density,
)

backend = MultiplicativeGroup()
points = [MulPoint(2), MulPoint(3)]

print("pattern: 5 || ord_v(2) and 5 does not divide ord_v(3)")
hits = find_pattern_primes(points, ValuationPattern(5, (1, 0)), backend,
                           PrimeRange(3, 2000), max_hits=6)
for h in hits:
    print(f"  v = {h.v:5d}: orders {h.orders}, certified = {h.verified}")

print()
print("how common are such primes? (empirical density over the window)")
for l, ks, label in (
    (2, (0,), "ord_v(2) odd"),
    (5, (1, 0), "5 || ord_v(2), 5 coprime to ord_v(3)"),
    (3, (2,), "9 || ord_v(2)"),
):
    pts = points[: len(ks)]
    report = pattern_density(pts, ValuationPattern(l, ks), backend, PrimeRange(3, 20_000))
    print(f"  {label}: {report.hits}/{report.scanned_good_primes} "
          f"= {report.ratio:.4f}{'  (inconclusive)' if report.inconclusive else ''}")

print()
print("an impossible pattern on a short window reports itself as inconclusive,")
print("never as a disproof:")
report = pattern_density([MulPoint(2)], ValuationPattern(2, (25,)), backend,
                         PrimeRange(3, 1000))
print(f"  hits = {report.hits}, inconclusive = {report.inconclusive}")
