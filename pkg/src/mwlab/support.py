"""Support sets and the support-style conditions, each reduced to an exact
per-prime order-divisibility test plus a prime-window scanning verifier.

The "for all n" quantifier in every condition collapses at a fixed prime:
p divides x^n - 1 exactly when ord_p(x) divides n, so set statements about
supports become finite divisibility statements about orders. Scans therefore
bound only the prime, never n.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import numth
from ._parallel import map_chunks, split_chunks
from .numth import PrimeRange
from .reports import (
    CONDITION_IDS,
    ConditionReport,
    RelationCertificate,
    Witness,
    merge_scan_results,
)


@dataclass(frozen=True)
class SupportSet:
    """Primes up to a bound dividing the target value."""

    modulus_bound: int
    primes: frozenset[int]


def support_of(m: int) -> set[int]:
    """The set of primes dividing m (empty for m = 1)."""
    if m <= 0:
        raise ValueError(f"support of non-positive {m}")
    return set(numth.factor(m).primes)


def support_union_at_n(xs, n: int, bound: int) -> SupportSet:
    """{p <= bound : p | x^n - 1 for some x}, without forming x^n - 1.

    p | x^n - 1 iff p does not divide x and ord_p(x) | n.
    """
    if any(x < 2 for x in xs):
        raise ValueError("support unions take natural numbers >= 2")
    hits = set()
    for p in numth.primes_in(PrimeRange(2, bound)):
        for x in xs:
            if x % p != 0 and n % numth.multiplicative_order(x, p) == 0:
                hits.add(p)
                break
    return SupportSet(bound, frozenset(hits))


def erdos_exact_at_prime(xs, ys, p: int) -> bool:
    """Exact test at p of: union supp(x^n - 1) = union supp(y^n - 1) for every n.

    With a_i = ord_p(x_i) and b_j = ord_p(y_j) the two n-sets agree iff every
    a_i is a multiple of some b_j and every b_j is a multiple of some a_i.
    """
    for val in list(xs) + list(ys):
        if val % p == 0:
            raise ValueError(f"{p} divides {val}; bad prime for this test")
    a = [numth.multiplicative_order(x, p) for x in xs]
    b = [numth.multiplicative_order(y, p) for y in ys]
    return all(any(ai % bj == 0 for bj in b) for ai in a) and all(
        any(bj % ai == 0 for ai in a) for bj in b
    )


def corrales_schoof_at_prime(x, y, p: int, backend) -> bool:
    """Exact test at p of: y^n = 1 (mod p) whenever x^n = 1 (mod p), all n.

    Equivalent to ord_p(y) | ord_p(x).
    """
    if not backend.good_prime([x, y], p):
        raise ValueError(f"{p} is a bad prime for these points")
    return backend.order_mod(x, p) % backend.order_mod(y, p) == 0


def divisibility_cover_at_prime(Ps, Qs, v: int, backend, mode: str) -> bool:
    """Order-divisibility reduction of the vanishing-cover conditions at v.

    one_sided (Ps = [P]): some ord_v(Q_i) divides ord_v(P), i.e. whenever
    n kills P mod v, n kills some Q_i. two_sided: every ord_v(P_i) is a
    multiple of some ord_v(Q_j) and vice versa.
    """
    if not backend.good_prime(list(Ps) + list(Qs), v):
        raise ValueError(f"{v} is a bad prime for these points")
    p_orders = [backend.order_mod(P, v) for P in Ps]
    q_orders = [backend.order_mod(Q, v) for Q in Qs]
    if mode == "one_sided":
        if len(p_orders) != 1:
            raise ValueError("one_sided mode takes a single point P")
        return any(p_orders[0] % t == 0 for t in q_orders)
    if mode == "two_sided":
        return all(any(a % b == 0 for b in q_orders) for a in p_orders) and all(
            any(b % a == 0 for a in p_orders) for b in q_orders
        )
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Scanning verifiers. Chunk workers are module level so worker processes can
# pickle them; each returns {"witness": Witness|None, "bads": [...], "goods": n}.


def _erdos_chunk(xs, ys, chunk):
    bads, goods = [], 0
    for p in chunk:
        if any(val % p == 0 for val in xs) or any(val % p == 0 for val in ys):
            bads.append(p)
            continue
        goods += 1
        a = [numth.multiplicative_order(x, p) for x in xs]
        b = [numth.multiplicative_order(y, p) for y in ys]
        unmatched_a = [ai for ai in a if not any(ai % bj == 0 for bj in b)]
        unmatched_b = [bj for bj in b if not any(bj % ai == 0 for ai in a)]
        if unmatched_a or unmatched_b:
            n = min(unmatched_a + unmatched_b)
            side = "xs" if n in unmatched_a else "ys"
            w = Witness(
                v=p,
                n=n,
                detail=(
                    f"orders xs={a} ys={b}; at n={n} the prime {p} lies in the "
                    f"{side}-side support union only"
                ),
            )
            return {"witness": w, "bads": bads, "goods": goods}
    return {"witness": None, "bads": bads, "goods": goods}


def _cs_chunk(x, y, backend, chunk):
    bads, goods = [], 0
    for p in chunk:
        if not backend.good_prime([x, y], p):
            bads.append(p)
            continue
        goods += 1
        tx = backend.order_mod(x, p)
        ty = backend.order_mod(y, p)
        if tx % ty != 0:
            w = Witness(
                v=p,
                n=tx,
                detail=f"ord_v(x)={tx}, ord_v(y)={ty}; n={tx} kills x but not y",
            )
            return {"witness": w, "bads": bads, "goods": goods}
    return {"witness": None, "bads": bads, "goods": goods}


def _thm2_chunk(P, Qs, backend, chunk):
    bads, goods = [], 0
    for v in chunk:
        if not backend.good_prime([P] + list(Qs), v):
            bads.append(v)
            continue
        goods += 1
        tp = backend.order_mod(P, v)
        tq = [backend.order_mod(Q, v) for Q in Qs]
        if not any(tp % t == 0 for t in tq):
            w = Witness(
                v=v,
                n=tp,
                detail=f"ord_v(P)={tp}, ord_v(Q_i)={tq}; n={tp} kills P but no Q_i",
            )
            return {"witness": w, "bads": bads, "goods": goods}
    return {"witness": None, "bads": bads, "goods": goods}


def _cor22_chunk(Ps, Qs, backend, chunk):
    bads, goods = [], 0
    for v in chunk:
        if not backend.good_prime(list(Ps) + list(Qs), v):
            bads.append(v)
            continue
        goods += 1
        a = [backend.order_mod(P, v) for P in Ps]
        b = [backend.order_mod(Q, v) for Q in Qs]
        unmatched_a = [ai for ai in a if not any(ai % bj == 0 for bj in b)]
        unmatched_b = [bj for bj in b if not any(bj % ai == 0 for ai in a)]
        if unmatched_a or unmatched_b:
            n = min(unmatched_a + unmatched_b)
            side = "P" if n in unmatched_a else "Q"
            w = Witness(
                v=v,
                n=n,
                detail=(
                    f"orders P={a} Q={b}; n={n} kills a point on the {side} side "
                    f"and none on the other"
                ),
            )
            return {"witness": w, "bads": bads, "goods": goods}
    return {"witness": None, "bads": bads, "goods": goods}


def scan_erdos_union(xs, ys, scan: PrimeRange, workers: int = 1) -> ConditionReport:
    """Scan the support-union condition for natural numbers xs, ys >= 2."""
    xs, ys = tuple(int(x) for x in xs), tuple(int(y) for y in ys)
    if any(v < 2 for v in xs + ys):
        raise ValueError("support-union condition takes natural numbers >= 2")
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(_erdos_chunk, [(xs, ys, c) for c in chunks], workers)
    return merge_scan_results("erdos_union", scan, results)


def scan_corrales_schoof(x, y, backend, scan: PrimeRange, workers: int = 1) -> ConditionReport:
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(_cs_chunk, [(x, y, backend, c) for c in chunks], workers)
    return merge_scan_results("corrales_schoof", scan, results)


def scan_thm2(P, Qs, backend, scan: PrimeRange, workers: int = 1) -> ConditionReport:
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(_thm2_chunk, [(P, tuple(Qs), backend, c) for c in chunks], workers)
    return merge_scan_results("thm2", scan, results)


def scan_cor22(Ps, Qs, backend, scan: PrimeRange, workers: int = 1) -> ConditionReport:
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(
        _cor22_chunk, [(tuple(Ps), tuple(Qs), backend, c) for c in chunks], workers
    )
    return merge_scan_results("cor22", scan, results)


def scan_condition(condition_id: str, inputs: dict, scan: PrimeRange, backend=None, workers: int = 1) -> ConditionReport:
    """Dispatch a condition scan by id; see the scan_* functions for inputs."""
    if condition_id == "erdos_union":
        return scan_erdos_union(inputs["xs"], inputs["ys"], scan, workers)
    if condition_id == "corrales_schoof":
        return scan_corrales_schoof(inputs["x"], inputs["y"], backend, scan, workers)
    if condition_id == "thm2":
        return scan_thm2(inputs["P"], inputs["Qs"], backend, scan, workers)
    if condition_id == "cor22":
        return scan_cor22(inputs["Ps"], inputs["Qs"], backend, scan, workers)
    if condition_id == "detect":
        raise ValueError("detect scans live in mwlab.dependence.detect_dependence")
    raise ValueError(f"unknown condition {condition_id!r}")


def verify_witness(condition_id: str, inputs: dict, v: int, n: int, backend=None) -> bool:
    """Recompute a reported violation at (v, n) literally, without order
    machinery: raise points to the n-th power (or n-th multiple) mod v and
    check the condition fails exactly as claimed.
    """
    if condition_id == "erdos_union":
        xs, ys = inputs["xs"], inputs["ys"]
        in_x = any(x % v != 0 and pow(x, n, v) == 1 for x in xs)
        in_y = any(y % v != 0 and pow(y, n, v) == 1 for y in ys)
        return in_x != in_y
    if backend is None:
        raise ValueError("point conditions need a backend to re-verify")

    def killed(P) -> bool:
        raw = backend.reduce_raw(P, v)
        return backend.raw_is_identity(backend.raw_scale(n, raw, v), v)

    if condition_id == "corrales_schoof":
        return killed(inputs["x"]) and not killed(inputs["y"])
    if condition_id == "thm2":
        return killed(inputs["P"]) and not any(killed(Q) for Q in inputs["Qs"])
    if condition_id == "cor22":
        ps = any(killed(P) for P in inputs["Ps"])
        qs = any(killed(Q) for Q in inputs["Qs"])
        return ps != qs
    if condition_id == "detect":
        return all(killed(L) for L in inputs["Ls"]) and not any(
            killed(P) for P in inputs["Ps"]
        )
    raise ValueError(f"unknown condition {condition_id!r}")


# ---------------------------------------------------------------------------
# Conclusion certification (the multiplicative backend has an exact oracle)


def verify_conclusion_match(xs, ys) -> RelationCertificate | None:
    """Match {x_i} with {delta_i * y_sigma(i)}, deltas in {-1, 1}; None if no
    perfect matching exists. Signs act by inversion: delta = -1 pairs x with
    1/y. Exact rational comparison throughout.
    """
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys):
        raise ValueError("conclusion match takes lists of equal length")
    t = len(xs)
    options: list[list[tuple[int, int]]] = []
    for x in xs:
        row = []
        for j, y in enumerate(ys):
            if x.value == y.value:
                row.append((j, 1))
            if x.value == 1 / y.value and x.value != y.value:
                row.append((j, -1))
        options.append(row)

    used = [False] * t
    sigma = [0] * t
    deltas = [0] * t

    def assign(i: int) -> bool:
        if i == t:
            return True
        for j, delta in options[i]:
            if used[j]:
                continue
            used[j] = True
            sigma[i], deltas[i] = j, delta
            if assign(i + 1):
                return True
            used[j] = False
        return False

    if not assign(0):
        return None
    return RelationCertificate(
        kind="match", coefficients=tuple(sigma) + tuple(deltas)
    )
