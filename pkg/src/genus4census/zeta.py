"""Weil polynomials from point counts, Newton polygons, stratum labels.

Conventions.  For a smooth projective curve C of genus g over F_q (q = 2^r)
the characteristic polynomial of Frobenius is P(t) = prod (t - alpha_i),
monic of degree 2g, and the L-polynomial is L(t) = t^{2g} P(1/t) with
coefficients a_0 = 1, ..., a_{2g} = q^g.  Point counts determine power sums
s_n = sum alpha_i^n = q^n + 1 - N_n, and Newton's identities convert between
power sums and the a_i exactly over the integers.  The Newton polygon is the
lower convex hull of {(i, val_2(a_i)/r)}; its slopes are exact rationals.

Everything in this module is exact; no floats anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gfarith import intpoly, intpoly_mul

GENUS = 4


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


@dataclass(frozen=True)
class PointCounts:
    """N_1..N_4 for a genus-4 curve over F_q, q a power of 2."""

    counts: tuple[int, int, int, int]
    q: int

    def __post_init__(self) -> None:
        if len(self.counts) != GENUS:
            raise ValueError("expected exactly 4 point counts (N_1..N_4)")
        if any(n < 0 or n != int(n) for n in self.counts):
            raise ValueError("point counts must be nonnegative integers")
        if not _is_power_of_two(self.q):
            raise ValueError(f"base field size {self.q} is not a power of 2 (>= 2)")


@dataclass(frozen=True)
class WeilPolynomial:
    """P(t) = prod (t - alpha_i), coefficients constant term first, monic.

    Degree 2g for g in 1..4; the genus-4 case is the primary one, smaller
    degrees exist so that products of factors can be formed.  The functional
    equation a_{2g-i} = q^{g-i} a_i is enforced; the root-circle condition
    |alpha_i| = sqrt(q) is implied by the Weil-bound checks on counts and is
    not re-verified here.
    """

    coeffs: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        deg = len(self.coeffs) - 1
        if deg not in (2, 4, 6, 8):
            raise ValueError(f"Weil polynomial degree {deg} not an even number in 2..8")
        if self.coeffs[-1] != 1:
            raise ValueError("Weil polynomial must be monic")
        if not _is_power_of_two(self.q):
            raise ValueError(f"base field size {self.q} is not a power of 2 (>= 2)")
        g = deg // 2
        a = self.l_coeffs
        for i in range(g + 1):
            if a[deg - i] != self.q ** (g - i) * a[i]:
                raise ValueError("functional equation fails: not a Weil polynomial")

    @property
    def g(self) -> int:
        return (len(self.coeffs) - 1) // 2

    @property
    def l_coeffs(self) -> tuple[int, ...]:
        """L(t) = t^{2g} P(1/t) coefficients, a_0 = 1 first."""
        return tuple(reversed(self.coeffs))

    @property
    def r(self) -> int:
        """q = 2^r."""
        return self.q.bit_length() - 1


@dataclass(frozen=True)
class NewtonPolygon:
    """2g slopes, ascending, exact rationals in [0, 1]."""

    slopes: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        s = self.slopes
        if any(not (0 <= x <= 1) for x in s) or list(s) != sorted(s):
            raise ValueError("Newton polygon slopes must ascend within [0, 1]")
        if sorted(1 - x for x in s) != list(s) or sum(s) * 2 != len(s):
            raise ValueError("asymmetric Newton polygon (invalid Weil polynomial)")

    @property
    def p_rank(self) -> int:
        return sum(1 for x in self.slopes if x == 0)

    def slope_strs(self) -> list[str]:
        return [str(x) for x in self.slopes]


@dataclass(frozen=True)
class StratumLabel:
    """One of Ordinary-or-other / V0-only / N14 / N13 / S4, with the p-rank."""

    name: str
    p_rank: int


def weil_from_counts(counts, q: int | None = None) -> WeilPolynomial:
    """Weil polynomial of a genus-4 curve from its counts over F_q..F_{q^4}.

    Accepts a PointCounts or a 4-sequence plus q.  Newton's identities give
    a_1..a_4 over exact integers; a_5..a_8 come from the functional equation.
    Rejects inputs that cannot come from a genus-4 curve (Weil-bound or
    integrality violations, or negative predicted counts N_5..N_8).
    """
    if not isinstance(counts, PointCounts):
        if q is None:
            raise TypeError("q is required when counts is a plain sequence")
        counts = PointCounts(tuple(counts), q)
    q = counts.q
    g = GENUS

    def bad(why: str) -> ValueError:
        return ValueError(f"not a genus-4 curve count sequence: {why}")

    s = [0] * (2 * g + 1)  # power sums, s[n] for n >= 1
    for n in range(1, g + 1):
        s[n] = q**n + 1 - counts.counts[n - 1]
        if s[n] * s[n] > 4 * g * g * q**n:
            raise bad(f"Weil bound violated at n={n}")
    a = [0] * (2 * g + 1)
    a[0] = 1
    for k in range(1, g + 1):
        total = s[k] + sum(a[i] * s[k - i] for i in range(1, k))
        if total % k:
            raise bad(f"Newton identity gives a non-integer coefficient at k={k}")
        a[k] = -total // k
    for k in range(g + 1, 2 * g + 1):
        a[k] = q ** (k - g) * a[2 * g - k]
    # extend the power sums and re-check plausibility out to n = 2g
    for n in range(g + 1, 2 * g + 1):
        s[n] = -(n * a[n] + sum(a[i] * s[n - i] for i in range(1, n)))
        if s[n] * s[n] > 4 * g * g * q**n:
            raise bad(f"Weil bound violated at n={n}")
        if q**n + 1 - s[n] < 0:
            raise bad(f"negative predicted point count at n={n}")
    return WeilPolynomial(tuple(reversed(a)), q)


def predicted_counts(w: WeilPolynomial, upto: int = 8) -> tuple[int, ...]:
    """N_1..N_upto implied by w, via the power-sum recurrence."""
    deg = len(w.coeffs) - 1
    a = w.l_coeffs
    s = [0] * (upto + 1)
    for n in range(1, upto + 1):
        acc = sum(a[i] * s[n - i] for i in range(1, min(n, deg) + 1))
        if n <= deg:
            acc += n * a[n]
        s[n] = -acc
    return tuple(w.q**n + 1 - s[n] for n in range(1, upto + 1))


def _val2(n: int) -> int:
    return (n & -n).bit_length() - 1


def newton_polygon(w: WeilPolynomial) -> NewtonPolygon:
    """Lower convex hull of {(i, val_2(a_i))}, slopes divided by r."""
    pts = [(i, _val2(c)) for i, c in enumerate(w.l_coeffs) if c != 0]
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            # pop a if it is not strictly below the chord o->p
            if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    slopes: list[Fraction] = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        slopes.extend([Fraction(y1 - y0, (x1 - x0) * w.r)] * (x1 - x0))
    return NewtonPolygon(tuple(slopes))


_N13 = tuple([Fraction(1, 3)] * 3 + [Fraction(1, 2)] * 2 + [Fraction(2, 3)] * 3)
_N14 = tuple([Fraction(1, 4)] * 4 + [Fraction(3, 4)] * 4)
_S4 = tuple([Fraction(1, 2)] * 8)


def classify_stratum(np_: NewtonPolygon) -> StratumLabel:
    """Stratum label for a genus-4 Newton polygon."""
    if len(np_.slopes) != 2 * GENUS:
        raise ValueError("stratum classification requires genus 4 (8 slopes)")
    p_rank = np_.p_rank
    if np_.slopes == _S4:
        return StratumLabel("S4", 0)
    if np_.slopes == _N13:
        return StratumLabel("N13", 0)
    if np_.slopes == _N14:
        return StratumLabel("N14", 0)
    if p_rank == 0:
        return StratumLabel("V0-only", 0)
    return StratumLabel("Ordinary-or-other", p_rank)


def _rational_resultant(a: list[Fraction], b: list[Fraction]) -> Fraction:
    """Signed resultant of two rational polynomials (constant term first)."""

    def trim(p: list[Fraction]) -> list[Fraction]:
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    if not a or not b:
        raise ValueError("resultant with a zero polynomial")
    res = Fraction(1)
    while len(b) > 1:
        da, db = len(a) - 1, len(b) - 1
        # a mod b
        r = list(a)
        inv_lc = 1 / b[-1]
        for shift in range(da - db, -1, -1):
            c = r[shift + db] * inv_lc
            if c:
                for i, bc in enumerate(b):
                    r[shift + i] -= bc * c
        r = trim(r)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res *= b[-1] ** (da - dr)
        a, b = b, r
    return res * b[0] ** (len(a) - 1)


def base_extend(w: WeilPolynomial, n: int) -> WeilPolynomial:
    """prod (t - alpha_i^n), exactly: Res_x(P(x), t - x^n) by evaluation
    and interpolation, sign fixed so the output is monic; q becomes q^n."""
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if n == 1:
        return w
    deg = len(w.coeffs) - 1
    p = [Fraction(c) for c in w.coeffs]
    ts = list(range(deg + 1))
    values = []
    for t0 in ts:
        g = [Fraction(0)] * (n + 1)
        g[0] = Fraction(t0)
        g[n] = Fraction(-1)
        values.append(_rational_resultant(p, g))
    # Lagrange interpolation at 0..deg
    out = [Fraction(0)] * (deg + 1)
    for i, t0 in enumerate(ts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, t1 in enumerate(ts):
            if j == i:
                continue
            denom *= t0 - t1
            basis = [
                (basis[m - 1] if m else 0) - t1 * (basis[m] if m < len(basis) else 0)
                for m in range(len(basis) + 1)
            ]
        scale = values[i] / denom
        for m, c in enumerate(basis):
            out[m] += c * scale
    if out[-1] == -1:
        out = [-c for c in out]
    if out[-1] != 1 or any(c.denominator != 1 for c in out):
        raise AssertionError("base extension did not produce a monic integer polynomial")
    return WeilPolynomial(tuple(int(c) for c in out), w.q**n)


def weil_product(ws: Sequence[WeilPolynomial]) -> WeilPolynomial:
    """Weil polynomial of the product abelian variety (degrees must sum to 8)."""
    if not ws:
        raise ValueError("empty Weil product")
    q = ws[0].q
    if any(w.q != q for w in ws):
        raise ValueError("mixed base fields in weil_product")
    if sum(len(w.coeffs) - 1 for w in ws) != 2 * GENUS:
        raise ValueError("factor degrees must sum to 8")
    prod = intpoly([1])
    for w in ws:
        prod = intpoly_mul(prod, w.coeffs)
    return WeilPolynomial(prod, q)


def is_supersingular(w: WeilPolynomial) -> bool:
    """True iff every Newton slope is 1/2."""
    half = Fraction(1, 2)
    return all(x == half for x in newton_polygon(w).slopes)
