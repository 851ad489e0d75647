"""Mordell-Weil type groups over Q with reduction maps at good primes.

Two backends share one surface: the multiplicative group Q* (optionally with
an excluded prime set S, the S-unit view) and elliptic curves over Q in long
Weierstrass form. Both expose reduction at a prime, exact orders mod v,
torsion, and group arithmetic written additively (combine / invert / scale).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import numth
from ._parallel import map_chunks, split_chunks
from .numth import PrimeRange
from .reports import ConditionReport, Witness, merge_scan_results


# ---------------------------------------------------------------------------
# Points


class MulPoint:
    """Nonzero rational, kept in lowest terms with explicit sign."""

    __slots__ = ("value",)

    def __init__(self, value):
        f = Fraction(value)
        if f == 0:
            raise ValueError("0 is not a point of the multiplicative group")
        object.__setattr__(self, "value", f)

    @property
    def sign(self) -> int:
        return 1 if self.value > 0 else -1

    @property
    def numerator(self) -> int:
        return abs(self.value.numerator)

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def encode(self) -> str:
        n, d = self.value.numerator, self.value.denominator
        return f"{n}" if d == 1 else f"{n}/{d}"

    @classmethod
    def parse(cls, text: str) -> "MulPoint":
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad multiplicative point {text!r}") from exc

    def __mul__(self, other):
        return MulPoint(self.value * other.value)

    def __pow__(self, n: int):
        return MulPoint(self.value**n)

    def __eq__(self, other):
        return isinstance(other, MulPoint) and self.value == other.value

    def __hash__(self):
        return hash(("MulPoint", self.value))

    def __repr__(self):
        return f"MulPoint({self.encode()})"


@dataclass(frozen=True)
class EcPoint:
    """Affine rational point or the identity marker (x = y = None)."""

    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        # Coerce to exact rationals; int coordinates would otherwise leak
        # float division into the group law.
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates or neither")
        if self.x is not None and not isinstance(self.x, Fraction):
            object.__setattr__(self, "x", Fraction(self.x))
        if self.y is not None and not isinstance(self.y, Fraction):
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def encode(self) -> str:
        if self.is_identity:
            return "O"
        return f"({self.x},{self.y})"

    @classmethod
    def parse(cls, text: str) -> "EcPoint":
        t = text.strip()
        if t in ("O", "o", "0"):
            return EC_IDENTITY
        if not (t.startswith("(") and t.endswith(")")):
            raise ValueError(f"bad curve point {text!r}")
        parts = t[1:-1].split(",")
        if len(parts) != 2:
            raise ValueError(f"bad curve point {text!r}")
        try:
            return cls(Fraction(parts[0].strip()), Fraction(parts[1].strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad curve point {text!r}") from exc

    def __repr__(self):
        return f"EcPoint({self.encode()})"


EC_IDENTITY = EcPoint(None, None)


def _order_key(P: EcPoint):
    return (0,) if P.is_identity else (1, P.x, P.y)


# ---------------------------------------------------------------------------
# Curves


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 with integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular curve (discriminant 0)")

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, P: EcPoint) -> bool:
        if P.is_identity:
            return True
        x, y = P.x, P.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x**3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def point(self, x, y) -> EcPoint:
        P = EcPoint(Fraction(x), Fraction(y))
        if not self.contains(P):
            raise ValueError(f"({x},{y}) is not on {self.encode()}")
        return P

    def neg(self, P: EcPoint) -> EcPoint:
        if P.is_identity:
            return P
        return EcPoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: EcPoint, Q: EcPoint) -> EcPoint:
        """Chord-tangent group law in exact rational arithmetic."""
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        if x1 == x2 and y2 == -y1 - a1 * x1 - a3:
            return EC_IDENTITY
        if x1 == x2:
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (
                2 * y1 + a1 * x1 + a3
            )
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return EcPoint(x3, y3)

    def mul(self, n: int, P: EcPoint) -> EcPoint:
        """n*P by double-and-add; n may be negative or zero."""
        if n < 0:
            return self.mul(-n, self.neg(P))
        acc = EC_IDENTITY
        addend = P
        while n:
            if n & 1:
                acc = self.add(acc, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return acc

    def encode(self) -> str:
        return f"ec:{self.a1},{self.a2},{self.a3},{self.a4},{self.a6}"

    @classmethod
    def parse(cls, text: str) -> "WeierstrassCurve":
        t = text.strip()
        if not t.startswith("ec:"):
            raise ValueError(f"bad curve encoding {text!r}")
        parts = t[3:].split(",")
        if len(parts) != 5:
            raise ValueError(f"bad curve encoding {text!r} (need 5 coefficients)")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad curve encoding {text!r}") from exc


# Modular group law on raw points: None is the identity, otherwise (x, y) ints.


def _ec_add_mod(curve: WeierstrassCurve, P, Q, v: int):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    a1, a2, a3, a4 = curve.a1, curve.a2, curve.a3, curve.a4
    if x1 == x2 and (y1 + y2 + a1 * x1 + a3) % v == 0:
        return None
    if x1 == x2:
        num = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) % v
        den = (2 * y1 + a1 * x1 + a3) % v
    else:
        num = (y2 - y1) % v
        den = (x2 - x1) % v
    lam = num * pow(den, -1, v) % v
    nu = (y1 - lam * x1) % v
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % v
    y3 = (-(lam + a1) * x3 - nu - a3) % v
    return (x3, y3)


def _ec_neg_mod(curve: WeierstrassCurve, P, v: int):
    if P is None:
        return None
    x, y = P
    return (x, (-y - curve.a1 * x - curve.a3) % v)


def _ec_mul_mod(curve: WeierstrassCurve, n: int, P, v: int):
    if n < 0:
        return _ec_mul_mod(curve, -n, _ec_neg_mod(curve, P, v), v)
    acc = None
    addend = P
    while n:
        if n & 1:
            acc = _ec_add_mod(curve, acc, addend, v)
        addend = _ec_add_mod(curve, addend, addend, v)
        n >>= 1
    return acc


@lru_cache(maxsize=4096)
def _curve_order_mod(coeffs: tuple[int, int, int, int, int], v: int) -> int:
    """|E(F_v)| by direct enumeration (quadratic-residue table for odd v)."""
    a1, a2, a3, a4, a6 = coeffs
    if v == 2:
        count = 1
        for x in range(2):
            for y in range(2):
                lhs = (y * y + a1 * x * y + a3 * y) % 2
                rhs = (x**3 + a2 * x * x + a4 * x + a6) % 2
                if lhs == rhs:
                    count += 1
        return count
    squares = bytearray(v)
    for t in range((v + 1) // 2):
        squares[t * t % v] = 1
    count = 1
    for x in range(v):
        # Complete the square: (2y + a1 x + a3)^2 = 4*rhs + (a1 x + a3)^2.
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % v
        u = (a1 * x + a3) % v
        d = (4 * rhs + u * u) % v
        if d == 0:
            count += 1
        elif squares[d]:
            count += 2
    return count


# ---------------------------------------------------------------------------
# Reduction artifact


@dataclass(frozen=True)
class ReducedPoint:
    """Image of a point at a good prime: residue in F_v* or point over F_v."""

    v: int
    value: object  # int residue (multiplicative) | None or (x, y) ints (elliptic)


# ---------------------------------------------------------------------------
# Backends


class MultiplicativeGroup:
    """Q* written additively; S is a finite excluded prime set (the S-unit view)."""

    kind = "multiplicative"

    def __init__(self, excluded_primes=()):
        self.excluded = frozenset(int(p) for p in excluded_primes)

    def identity(self) -> MulPoint:
        return MulPoint(1)

    def is_identity(self, P: MulPoint) -> bool:
        return P.value == 1

    def combine(self, P: MulPoint, Q: MulPoint) -> MulPoint:
        return MulPoint(P.value * Q.value)

    def invert(self, P: MulPoint) -> MulPoint:
        return MulPoint(1 / P.value)

    def scale(self, n: int, P: MulPoint) -> MulPoint:
        return MulPoint(P.value**n)

    def torsion_elements(self) -> tuple[MulPoint, ...]:
        return (MulPoint(1), MulPoint(-1))

    def torsion_order(self, T: MulPoint) -> int:
        if T.value == 1:
            return 1
        if T.value == -1:
            return 2
        raise ValueError(f"{T!r} is not torsion in Q*")

    def good_prime(self, points, v: int) -> bool:
        if v in self.excluded:
            return False
        return all(
            P.numerator % v != 0 and P.denominator % v != 0 for P in points
        )

    def reduce_raw(self, P: MulPoint, v: int) -> int:
        num = P.value.numerator % v
        den = P.value.denominator % v
        if num == 0 or den == 0:
            raise ValueError(f"{v} is a bad prime for {P!r}")
        return num * pow(den, -1, v) % v

    def reduce(self, P: MulPoint, v: int) -> ReducedPoint:
        if not self.good_prime([P], v):
            raise ValueError(f"{v} is a bad prime for {P!r}")
        return ReducedPoint(v, self.reduce_raw(P, v))

    def group_order_mod(self, v: int) -> int:
        return v - 1

    def order_mod(self, P: MulPoint, v: int) -> int:
        if not self.good_prime([P], v):
            raise ValueError(f"{v} is a bad prime for {P!r}")
        return self._raw_order(self.reduce_raw(P, v), v)

    def _raw_order(self, raw: int, v: int) -> int:
        order = v - 1
        for q, _ in numth.factor(v - 1).factors:
            while order % q == 0 and pow(raw, order // q, v) == 1:
                order //= q
        return order

    def raw_identity(self, v: int):
        return 1

    def raw_is_identity(self, raw, v: int) -> bool:
        return raw == 1

    def raw_combine(self, a, b, v: int):
        return a * b % v

    def raw_scale(self, n: int, raw, v: int):
        if n < 0:
            return pow(pow(raw, -1, v), -n, v)
        return pow(raw, n, v)

    def dlog_mod(self, P: MulPoint, Q: MulPoint, v: int) -> int | None:
        """Least e >= 0 with e*P = Q (mod v), or None when Q is outside <P>."""
        t = self.order_mod(P, v)
        return numth.bsgs_dlog(self.reduce_raw(P, v), self.reduce_raw(Q, v), v, t)

    def encode(self) -> str:
        if not self.excluded:
            return "mul"
        return "S={" + ",".join(str(p) for p in sorted(self.excluded)) + "}"

    def parse_point(self, text: str) -> MulPoint:
        return MulPoint.parse(text)

    def __eq__(self, other):
        return isinstance(other, MultiplicativeGroup) and self.excluded == other.excluded

    def __hash__(self):
        return hash(("MultiplicativeGroup", self.excluded))

    def __repr__(self):
        return f"MultiplicativeGroup({sorted(self.excluded)})"


class EllipticGroup:
    """E(Q) for a fixed long Weierstrass curve with integer coefficients."""

    kind = "elliptic"

    def __init__(self, curve: WeierstrassCurve):
        self.curve = curve
        self._torsion: tuple[EcPoint, ...] | None = None

    def identity(self) -> EcPoint:
        return EC_IDENTITY

    def is_identity(self, P: EcPoint) -> bool:
        return P.is_identity

    def combine(self, P: EcPoint, Q: EcPoint) -> EcPoint:
        return self.curve.add(P, Q)

    def invert(self, P: EcPoint) -> EcPoint:
        return self.curve.neg(P)

    def scale(self, n: int, P: EcPoint) -> EcPoint:
        return self.curve.mul(n, P)

    def good_prime(self, points, v: int) -> bool:
        if self.curve.discriminant % v == 0:
            return False
        for P in points:
            if P.is_identity:
                continue
            if P.x.denominator % v == 0 or P.y.denominator % v == 0:
                return False
        return True

    def reduce_raw(self, P: EcPoint, v: int):
        if P.is_identity:
            return None
        x = P.x.numerator % v * pow(P.x.denominator % v, -1, v) % v
        y = P.y.numerator % v * pow(P.y.denominator % v, -1, v) % v
        return (x, y)

    def reduce(self, P: EcPoint, v: int) -> ReducedPoint:
        if not self.good_prime([P], v):
            raise ValueError(f"{v} is a bad prime for {P!r}")
        return ReducedPoint(v, self.reduce_raw(P, v))

    def group_order_mod(self, v: int) -> int:
        if self.curve.discriminant % v == 0:
            raise ValueError(f"{v} divides the discriminant")
        order = _curve_order_mod(
            (self.curve.a1, self.curve.a2, self.curve.a3, self.curve.a4, self.curve.a6),
            v,
        )
        if abs(order - (v + 1)) > math.isqrt(4 * v):
            raise ArithmeticError(f"point count {order} violates the Hasse bound at {v}")
        return order

    def order_mod(self, P: EcPoint, v: int) -> int:
        if not self.good_prime([P], v):
            raise ValueError(f"{v} is a bad prime for {P!r}")
        raw = self.reduce_raw(P, v)
        if raw is None:
            return 1
        order = self.group_order_mod(v)
        for q, _ in numth.factor(order).factors:
            while order % q == 0 and _ec_mul_mod(self.curve, order // q, raw, v) is None:
                order //= q
        return order

    def raw_identity(self, v: int):
        return None

    def raw_is_identity(self, raw, v: int) -> bool:
        return raw is None

    def raw_combine(self, a, b, v: int):
        return _ec_add_mod(self.curve, a, b, v)

    def raw_scale(self, n: int, raw, v: int):
        return _ec_mul_mod(self.curve, n, raw, v)

    def dlog_mod(self, P: EcPoint, Q: EcPoint, v: int) -> int | None:
        """Baby-step giant-step on E(F_v) inside the cyclic group <P mod v>."""
        t = self.order_mod(P, v)
        rawP = self.reduce_raw(P, v)
        rawQ = self.reduce_raw(Q, v)
        m = math.isqrt(t) + 1
        table: dict = {}
        e = None
        for j in range(m):
            table.setdefault(e, j)
            e = _ec_add_mod(self.curve, e, rawP, v)
        giant = _ec_mul_mod(self.curve, -m, rawP, v)
        gamma = rawQ
        for i in range(m + 1):
            if gamma in table:
                found = i * m + table[gamma]
                if found < t:
                    return found
            gamma = _ec_add_mod(self.curve, gamma, giant, v)
        return None

    # -- torsion ------------------------------------------------------------

    def torsion_elements(self) -> tuple[EcPoint, ...]:
        """All rational torsion points, by gcd bounding plus integral search.

        The torsion order divides gcd |E(F_v)| over the first 8 good primes;
        candidates come from integral points on the rescaled integral model
        Y^2 = X^3 - 27*c4*X - 54*c6 whose Y = 0 or Y^2 divides its
        discriminant, mapped back and confirmed by finite order.
        """
        if self._torsion is None:
            self._torsion = self._compute_torsion()
        return self._torsion

    def torsion_order(self, T: EcPoint) -> int:
        acc = T
        for k in range(1, 25):
            if acc.is_identity:
                return k
            acc = self.curve.add(acc, T)
        raise ValueError(f"{T!r} is not torsion (no order up to 24)")

    def _compute_torsion(self) -> tuple[EcPoint, ...]:
        disc = self.curve.discriminant
        good = []
        v = 2
        while len(good) < 8:
            if numth.is_prime(v) and disc % v != 0:
                good.append(v)
            v += 1
        bound = 0
        for v in good:
            bound = math.gcd(bound, self.group_order_mod(v))
        if bound == 1:
            return (EC_IDENTITY,)
        b2, _, _, _ = self.curve.b_invariants
        c4, c6 = self._c_invariants()
        A, B = -27 * c4, -54 * c6
        torsion = {EC_IDENTITY}
        for X, Y in self._integral_model_candidates(A, B):
            x = Fraction(X - 3 * b2, 36)
            y = Fraction(Fraction(Y, 108) - self.curve.a1 * x - self.curve.a3, 2)
            P = EcPoint(x, y)
            if not self.curve.contains(P):
                continue
            acc = P
            for _ in range(min(bound, 24)):
                if acc.is_identity:
                    torsion.add(P)
                    break
                acc = self.curve.add(acc, P)
        return tuple(sorted(torsion, key=_order_key))

    def _c_invariants(self) -> tuple[int, int]:
        b2, b4, b6, _ = self.curve.b_invariants
        c4 = b2 * b2 - 24 * b4
        c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
        return c4, c6

    @staticmethod
    def _integral_model_candidates(A: int, B: int):
        """Integral (X, Y) on Y^2 = X^3 + A*X + B with Y = 0 or Y^2 | disc."""
        d = 16 * abs(4 * A**3 + 27 * B * B)
        square_root_part = 1
        for p, e in numth.factor(d).factors:
            square_root_part *= p ** (e // 2)
        ys = {0}
        for y in _divisors(square_root_part):
            ys.add(y)
        out = []
        for y in sorted(ys):
            c = B - y * y
            for X in _integer_cubic_roots(A, c):
                out.append((X, y))
                if y:
                    out.append((X, -y))
        return out

    def encode(self) -> str:
        return self.curve.encode()

    def parse_point(self, text: str) -> EcPoint:
        P = EcPoint.parse(text)
        if not P.is_identity and not self.curve.contains(P):
            raise ValueError(f"{text!r} is not on {self.curve.encode()}")
        return P

    def __eq__(self, other):
        return isinstance(other, EllipticGroup) and self.curve == other.curve

    def __hash__(self):
        return hash(("EllipticGroup", self.curve))

    def __repr__(self):
        return f"EllipticGroup({self.curve.encode()!r})"

    def __getstate__(self):
        return self.curve

    def __setstate__(self, state):
        self.curve = state
        self._torsion = None


def _divisors(n: int) -> list[int]:
    if n == 1:
        return [1]
    out = [1]
    for p, e in numth.factor(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _integer_cubic_roots(A: int, C: int) -> list[int]:
    """Integer roots of x^3 + A*x + C (monic, so every root divides C)."""
    if C == 0:
        roots = {0}
        # Remaining factor x^2 + A: integer roots need -A to be a square.
        if A <= 0:
            r = math.isqrt(-A)
            if r * r == -A:
                roots.update((r, -r))
        return sorted(roots)
    roots = set()
    for d in _divisors(abs(C)):
        for r in (d, -d):
            if r**3 + A * r + C == 0:
                roots.add(r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# Module-level operation surface


def good_prime(backend, points, v: int) -> bool:
    """True when every point reduces into the finite group at v (and v avoids S / the discriminant)."""
    return backend.good_prime(points, v)


def reduce_point(backend, P, v: int) -> ReducedPoint:
    """Image of P under the reduction map at a good prime v."""
    return backend.reduce(P, v)


def curve_group_order(curve: WeierstrassCurve, v: int) -> int:
    """|E(F_v)| at a prime of good reduction, Hasse-checked."""
    return EllipticGroup(curve).group_order_mod(v)


def curve_arithmetic(curve: WeierstrassCurve, op: str, *args) -> EcPoint:
    """Dispatch form of the exact group law: add(P, Q), negate(P),
    scalar_mul(n, P). The curve methods are the primary surface; this exists
    for callers that carry the operation name as data.
    """
    if op == "add":
        return curve.add(*args)
    if op == "negate":
        return curve.neg(*args)
    if op == "scalar_mul":
        return curve.mul(*args)
    raise ValueError(f"unknown curve operation {op!r}")


def order_mod(backend, P, v: int) -> int:
    """Exact order of P (mod v), from the ambient group order by exponent stripping."""
    return backend.order_mod(P, v)


def torsion_elements(backend):
    return backend.torsion_elements()


def _torsion_stability_chunk(backend, T, expected: int, chunk: list[int]):
    bads, goods = [], 0
    for v in chunk:
        if not backend.good_prime([T], v):
            bads.append(v)
            continue
        goods += 1
        got = backend.order_mod(T, v)
        if got != expected:
            w = Witness(
                v=v,
                n=got,
                detail=f"ord_v T = {got} but ord T = {expected}",
            )
            return {"witness": w, "bads": bads, "goods": goods}
    return {"witness": None, "bads": bads, "goods": goods}


def torsion_order_stability(backend, T, scan: PrimeRange, workers: int = 1) -> ConditionReport:
    """Check ord_v T = ord T at every good prime in the window.

    Violations are expected only at finitely many small primes; any hit is
    reported as a witness with n = the divergent local order.
    """
    expected = backend.torsion_order(T)
    primes = numth.primes_in(scan)
    chunks = split_chunks(primes, workers)
    results = map_chunks(
        _torsion_stability_chunk, [(backend, T, expected, c) for c in chunks], workers
    )
    return merge_scan_results("torsion_stability", scan, results)


def exponent_vector(value: Fraction, primes: list[int]) -> list[int]:
    """Exponents of `primes` in a nonzero rational (negative for denominator primes)."""
    out = []
    num, den = abs(value.numerator), value.denominator
    for p in primes:
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        out.append(e)
    return out


def rational_support(value: Fraction) -> set[int]:
    """Primes dividing numerator or denominator."""
    out = set(numth.factor(abs(value.numerator)).primes)
    out.update(numth.factor(value.denominator).primes)
    return out


def multiplicative_independence(points) -> tuple[int, ...] | None:
    """None when the rationals are multiplicatively independent, else a
    nonzero integer vector (e_1, ..., e_t) with prod x_i**e_i == 1.

    Works on the exponent lattice over the union of prime supports; a kernel
    vector of the exponent matrix multiplies to +1 or -1, and the torsion
    coordinate {1, -1} is fixed exactly by combining or doubling.
    """
    values = [P.value if isinstance(P, MulPoint) else Fraction(P) for P in points]
    if any(val == 0 for val in values):
        raise ValueError("0 is not a point of the multiplicative group")
    primes = sorted(set().union(set(), *(rational_support(val) for val in values)))
    vectors = [exponent_vector(val, primes) for val in values]
    rows = [[vectors[j][i] for j in range(len(values))] for i in range(len(primes))]
    basis = numth.integer_kernel(rows, len(values))
    if not basis:
        return None

    def product_sign(vec) -> int:
        acc = Fraction(1)
        for val, e in zip(values, vec):
            acc *= val**e
        assert acc in (1, -1), "kernel vector does not multiply to a unit"
        return 1 if acc == 1 else -1

    positives = [b for b in basis if product_sign(b) == 1]
    if positives:
        rel = positives[0]
    elif len(basis) >= 2:
        rel = [a + b for a, b in zip(basis[0], basis[1])]
    else:
        rel = [2 * c for c in basis[0]]
    assert product_sign(rel) == 1
    first = next(c for c in rel if c)
    if first < 0:
        rel = [-c for c in rel]
    return tuple(rel)


def elliptic_independence_check(backend: EllipticGroup, points, bound: int = 10,
                                prime_count: int = 20) -> bool:
    """Probabilistic cross-check of an independence assertion.

    Independence of elliptic points is accepted as a user assertion (no
    height-pairing machinery here); this check hunts for small integer
    relations sum n_i * P_i = identity with |n_i| <= bound, exactly and then
    against reductions at `prime_count` good primes. True means no relation
    surfaced; False means the points are definitely or almost certainly
    dependent.
    """
    import itertools

    points = list(points)
    multiples = []
    for P in points:
        table = {0: backend.identity()}
        for n in range(1, bound + 1):
            table[n] = backend.combine(table[n - 1], P)
            table[-n] = backend.invert(table[n])
        multiples.append(table)
    vectors = [
        vec
        for vec in itertools.product(range(-bound, bound + 1), repeat=len(points))
        if any(vec)
    ]
    for vec in vectors:
        acc = backend.identity()
        for n, table in zip(vec, multiples):
            acc = backend.combine(acc, table[n])
        if backend.is_identity(acc):
            return False
    good = []
    v = 3
    while len(good) < prime_count:
        if numth.is_prime(v) and backend.good_prime(points, v):
            good.append(v)
        v += 2
    raws = {v: [backend.reduce_raw(P, v) for P in points] for v in good}
    for vec in vectors:
        if all(
            backend.raw_is_identity(
                _raw_combination(backend, vec, raws[v], v), v
            )
            for v in good
        ):
            return False  # vanishes at every sampled prime: dependent in practice
    return True


def _raw_combination(backend, coefficients, raw_points, v: int):
    acc = backend.raw_identity(v)
    for n, raw in zip(coefficients, raw_points):
        acc = backend.raw_combine(acc, backend.raw_scale(n, raw, v), v)
    return acc


def subgroup_closure_mod(backend: EllipticGroup, raw_gens, v: int) -> set:
    """All F_v-points of the subgroup generated by reduced generators.

    Built coset by coset; the result size always divides |E(F_v)|.
    """
    closure = {None}
    for g in raw_gens:
        if g in closure:
            continue
        # Smallest k >= 1 with k*g already inside the current closure.
        k = 1
        acc = g
        while acc not in closure:
            k += 1
            acc = backend.raw_combine(acc, g, v)
        cosets = set(closure)
        step = None
        for _ in range(1, k):
            step = backend.raw_combine(step, g, v)
            cosets.update(backend.raw_combine(h, step, v) for h in closure)
        closure = cosets
    return closure
