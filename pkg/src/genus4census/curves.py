"""Genus-4 curve models over binary fields.

Two families of models:

* quadric-cubic ("ns" and "cone"): the canonical model of a non-hyperelliptic
  genus-4 curve is the intersection of a quadric surface and a cubic surface
  in P^3.  In characteristic 2 the quadric can be put into one of two shapes,

      ns:    X*Y + Z*T         (smooth quadric)
      cone:  X*Y + T^2         (rank-3 quadric, vertex at (0:0:1:0))

  and the cubic is stored as 20 coefficients in a fixed degree-3 monomial
  order.  The four monomials divisible by Z*T (ns) or T^2 (cone) are folded
  into X*Y-multiples modulo the quadric at construction time, so exactly 16
  coefficients are free; over F_2 they pack into a 16-bit mask.

* hyperelliptic: y^2 + h(x) y = f(x) with deg h <= 5, deg f <= 10,
  max(2 deg h, deg f) in {9, 10}, h != 0.  The smooth model lives in the
  weighted projective plane P(1, 5, 1); the chart at infinity is
  x = 1/u, y = w/u^5.

All coefficient arithmetic is exact, through gfarith.FieldSpec.  Points over
extension fields of composite degree beyond F_{2^16} are out of range for
concrete coordinates, but smoothness decisions never need them: the chart
analysis works with residue fields symbolically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import elimination as el
from .gfarith import (
    F2,
    FieldSpec,
    PolyQuotientField,
    embedding,
    field,
    gf2x_degree,
    gf2x_factor,
    poly_add,
    poly_degree,
    poly_deriv,
    poly_eval,
    poly_factor,
    poly_from_coeffs,
    poly_gcd,
    poly_mod,
    poly_mul,
    poly_roots,
    poly_scale,
)

__all__ = [
    "MONOMIALS3",
    "MONOMIALS2",
    "QUADRIC_KINDS",
    "kept_monomials",
    "reduction_table",
    "quadric_coeffs",
    "reduce_cubic",
    "QuadricCubicCurve",
    "quadric_curve",
    "quadric_curve_from_mask",
    "HyperellipticCurve",
    "hyperelliptic_curve",
    "hyperelliptic_from_masks",
    "parse_curve_id",
    "monomial_str",
    "eval_quadric",
    "eval_cubic",
    "cubic_partials",
    "quadric_gradient",
    "affine_model_ns",
    "ProjectiveTransform",
    "transform_type1",
    "transform_type2",
    "transform_type3",
    "type3_group",
    "apply_transform",
    "normalize_cubic",
    "count_points",
    "SmoothnessResult",
    "is_smooth",
    "hyperelliptic_transformed",
    "gl2_f2",
    "quadric_stabilizer_f2",
    "aut_order_f2",
    "jacobian_aut_order",
]

VARIABLES = ("X", "Y", "Z", "T")


def _graded_monomials(degree: int) -> tuple[tuple[int, int, int, int], ...]:
    out = []
    for exps in itertools.product(range(degree, -1, -1), repeat=4):
        if sum(exps) == degree:
            out.append(exps)
    return tuple(out)


#: The 20 degree-3 monomials in X, Y, Z, T, exponent-lexicographic descending:
#: X^3, X^2 Y, X^2 Z, X^2 T, X Y^2, X Y Z, X Y T, X Z^2, X Z T, X T^2,
#: Y^3, Y^2 Z, Y^2 T, Y Z^2, Y Z T, Y T^2, Z^3, Z^2 T, Z T^2, T^3.
MONOMIALS3 = _graded_monomials(3)
MONOMIALS2 = _graded_monomials(2)
_INDEX3 = {e: i for i, e in enumerate(MONOMIALS3)}
_INDEX2 = {e: i for i, e in enumerate(MONOMIALS2)}

QUADRIC_KINDS = ("ns", "cone")

# the quadric as a 10-vector in MONOMIALS2 order, and what its last term is
_QUADRIC_EXTRA = {"ns": (0, 0, 1, 1), "cone": (0, 0, 0, 2)}  # Z*T, T^2


def quadric_coeffs(kind: str) -> tuple[int, ...]:
    """X*Y + Z*T or X*Y + T^2 as a coefficient vector (valid over any field)."""
    out = [0] * len(MONOMIALS2)
    out[_INDEX2[(1, 1, 0, 0)]] = 1
    out[_INDEX2[_QUADRIC_EXTRA[kind]]] = 1
    return tuple(out)


def _build_reduction(kind: str) -> dict[int, int]:
    """src -> dst: monomial src is congruent to monomial dst modulo the
    quadric (Z*T = X*Y on ns, T^2 = X*Y on the cone)."""
    rem = _QUADRIC_EXTRA[kind]
    table = {}
    for idx, e in enumerate(MONOMIALS3):
        if all(e[i] >= rem[i] for i in range(4)):
            partner = tuple(e[i] - rem[i] + (1 if i < 2 else 0) for i in range(4))
            table[idx] = _INDEX3[partner]
    return table


_REDUCTION = {kind: _build_reduction(kind) for kind in QUADRIC_KINDS}
_KEPT = {
    kind: tuple(i for i in range(len(MONOMIALS3)) if i not in _REDUCTION[kind])
    for kind in QUADRIC_KINDS
}
# replacement targets are never themselves reducible, so one pass suffices
assert all(dst not in _REDUCTION[k] for k in QUADRIC_KINDS for dst in _REDUCTION[k].values())
assert all(len(_KEPT[k]) == 16 for k in QUADRIC_KINDS)


def reduction_table(kind: str) -> dict[int, int]:
    return dict(_REDUCTION[kind])


def kept_monomials(kind: str) -> tuple[int, ...]:
    return _KEPT[kind]


def monomial_str(exps: tuple[int, int, int, int]) -> str:
    parts = []
    for v, e in zip(VARIABLES, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def reduce_cubic(kind: str, spec: FieldSpec, coeffs) -> tuple[int, ...]:
    """Fold the four quadric-divisible monomials into their X*Y partners."""
    out = list(coeffs)
    for src, dst in _REDUCTION[kind].items():
        if out[src]:
            out[dst] = spec.add(out[dst], out[src])
            out[src] = 0
    return tuple(out)


# ---------------------------------------------------------------------------
# the curve types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadricCubicCurve:
    """A cubic section of one of the two quadric normal forms.

    coeffs has one entry per MONOMIALS3 slot and is stored reduced: the
    entries at reducible slots are zero.  Use quadric_curve to build one
    from an arbitrary coefficient vector.
    """

    kind: str
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in QUADRIC_KINDS:
            raise ValueError(f"unknown quadric kind {self.kind!r}")
        if len(self.coeffs) != len(MONOMIALS3):
            raise ValueError("a cubic needs one coefficient per degree-3 monomial")
        for c in self.coeffs:
            self.spec.check(c)
        for src in _REDUCTION[self.kind]:
            if self.coeffs[src]:
                raise ValueError("coefficients are not reduced modulo the quadric")

    @property
    def mask(self) -> int:
        if self.spec.k != 1:
            raise ValueError("bitmask encoding is defined over F_2 only")
        m = 0
        for bit, idx in enumerate(_KEPT[self.kind]):
            if self.coeffs[idx]:
                m |= 1 << bit
        return m

    @property
    def curve_id(self) -> str:
        return f"{self.kind};c=0x{self.mask:04x}"


def quadric_curve(kind: str, spec: FieldSpec, coeffs) -> QuadricCubicCurve:
    return QuadricCubicCurve(kind, spec, reduce_cubic(kind, spec, coeffs))


def quadric_curve_from_mask(kind: str, mask: int) -> QuadricCubicCurve:
    if not 0 <= mask < 1 << 16:
        raise ValueError("cubic masks have 16 bits")
    coeffs = [0] * len(MONOMIALS3)
    for bit, idx in enumerate(_KEPT[kind]):
        coeffs[idx] = (mask >> bit) & 1
    return QuadricCubicCurve(kind, F2, tuple(coeffs))


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 + h(x) y = f(x), the standard genus-4 hyperelliptic shape."""

    spec: FieldSpec
    h: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self):
        for c in self.h + self.f:
            self.spec.check(c)
        if (self.h and not self.h[-1]) or (self.f and not self.f[-1]):
            raise ValueError("polynomials must be normalized (no trailing zeros)")
        if not self.h:
            raise ValueError("h must be nonzero: y^2 = f(x) is inseparable in char 2")
        dh, df = poly_degree(self.h), poly_degree(self.f)
        if dh > 5 or df > 10:
            raise ValueError("degree bounds: deg h <= 5, deg f <= 10")
        if max(2 * dh, df) not in (9, 10):
            raise ValueError("genus-4 shape needs max(2 deg h, deg f) in {9, 10}")

    @property
    def masks(self) -> tuple[int, int]:
        if self.spec.k != 1:
            raise ValueError("bitmask encoding is defined over F_2 only")
        hm = sum(c << i for i, c in enumerate(self.h))
        fm = sum(c << i for i, c in enumerate(self.f))
        return hm, fm

    @property
    def curve_id(self) -> str:
        hm, fm = self.masks
        return f"hyp;h=0x{hm:02x};f=0x{fm:03x}"


def hyperelliptic_curve(spec: FieldSpec, h, f) -> HyperellipticCurve:
    return HyperellipticCurve(spec, poly_from_coeffs(spec, h), poly_from_coeffs(spec, f))


def hyperelliptic_from_masks(h_mask: int, f_mask: int) -> HyperellipticCurve:
    h = tuple((h_mask >> i) & 1 for i in range(h_mask.bit_length()))
    f = tuple((f_mask >> i) & 1 for i in range(f_mask.bit_length()))
    return HyperellipticCurve(F2, h, f)


def parse_curve_id(s: str):
    """Inverse of the curve_id properties (census encodings, base field F_2)."""
    parts = s.strip().split(";")
    try:
        if parts[0] in QUADRIC_KINDS and len(parts) == 2 and parts[1].startswith("c="):
            return quadric_curve_from_mask(parts[0], int(parts[1][2:], 16))
        if parts[0] == "hyp" and len(parts) == 3 and parts[1].startswith("h=") and parts[2].startswith("f="):
            return hyperelliptic_from_masks(int(parts[1][2:], 16), int(parts[2][2:], 16))
    except ValueError as exc:
        raise ValueError(f"bad curve id {s!r}: {exc}") from None
    raise ValueError(f"bad curve id {s!r}")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _powers(spec, c, n: int) -> list:
    out = [spec.one]
    for _ in range(n):
        out.append(spec.mul(out[-1], c))
    return out


def eval_cubic(spec, coeffs, point):
    """Value of the cubic at a point; spec may also be a quotient field."""
    pw = [_powers(spec, c, 3) for c in point]
    acc = spec.zero
    for c, e in zip(coeffs, MONOMIALS3):
        if c:
            m = spec.mul(spec.mul(pw[0][e[0]], pw[1][e[1]]), spec.mul(pw[2][e[2]], pw[3][e[3]]))
            acc = spec.add(acc, spec.mul(c, m))
    return acc


def eval_quadric(kind: str, spec, point):
    x, y, z, t = point
    if kind == "ns":
        return spec.add(spec.mul(x, y), spec.mul(z, t))
    return spec.add(spec.mul(x, y), spec.mul(t, t))


def cubic_partials(spec, coeffs, point) -> tuple:
    """The four partial derivatives at a point; char 2 keeps odd exponents."""
    pw = [_powers(spec, c, 3) for c in point]
    out = []
    for v in range(4):
        acc = spec.zero
        for c, e in zip(coeffs, MONOMIALS3):
            if not c or e[v] % 2 == 0:
                continue
            m = pw[v][e[v] - 1]
            for w in range(4):
                if w != v:
                    m = spec.mul(m, pw[w][e[w]])
            acc = spec.add(acc, spec.mul(c, m))
        out.append(acc)
    return tuple(out)


def quadric_gradient(kind: str, spec, point) -> tuple:
    x, y, z, t = point
    if kind == "ns":
        return (y, x, t, z)
    return (y, x, spec.zero, spec.zero)  # d(T^2)/dT = 2T = 0


# the affine bidegree-(3,3) picture of an ns cubic: the smooth quadric is
# P^1 x P^1 via (X, Y, Z, T) = (x z, y t, y z, x t), and each kept monomial
# X^a Y^b Z^g T^d lands on a distinct grid cell (a+g, b+g)
_GRID_CELL = {}
for _i in _KEPT["ns"]:
    _a, _b, _g, _d = MONOMIALS3[_i]
    _GRID_CELL[_i] = (_a + _g, _b + _g)
assert sorted(_GRID_CELL.values()) == sorted(itertools.product(range(4), repeat=2))


def affine_model_ns(curve: QuadricCubicCurve) -> tuple[tuple[int, ...], ...]:
    """The 4x4 coefficient grid a_{ij} of the bidegree model on P^1 x P^1."""
    if curve.kind != "ns":
        raise ValueError("the bidegree grid lives on the smooth quadric; wrong chart")
    g = [[0] * 4 for _ in range(4)]
    for idx, cell in _GRID_CELL.items():
        g[cell[0]][cell[1]] = curve.coeffs[idx]
    return tuple(tuple(row) for row in g)


# ---------------------------------------------------------------------------
# projective substitutions
# ---------------------------------------------------------------------------


def _mat_inverse(spec: FieldSpec, rows):
    n = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = spec.inv(aug[col][col])
        aug[col] = [spec.mul(inv, c) for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [spec.add(a, spec.mul(factor, b)) for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class ProjectiveTransform:
    """An invertible linear substitution: row i is the form replacing
    variable i, so applying s then t composes as the matrix product s*t."""

    spec: FieldSpec
    rows: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        if len(self.rows) != 4 or any(len(r) != 4 for r in self.rows):
            raise ValueError("a projective substitution needs a 4x4 matrix")
        for r in self.rows:
            for c in r:
                self.spec.check(c)
        if _mat_inverse(self.spec, self.rows) is None:
            raise ValueError("substitution matrix is singular")

    def compose(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        if other.spec != self.spec:
            raise ValueError("cannot compose substitutions over different fields")
        F = self.spec
        rows = tuple(
            tuple(
                _xor_sum(F, (F.mul(self.rows[i][k], other.rows[k][j]) for k in range(4)))
                for j in range(4)
            )
            for i in range(4)
        )
        return ProjectiveTransform(F, rows)

    def inverse(self) -> "ProjectiveTransform":
        inv = _mat_inverse(self.spec, self.rows)
        assert inv is not None
        return ProjectiveTransform(self.spec, inv)


def _xor_sum(spec: FieldSpec, items) -> int:
    acc = 0
    for x in items:
        acc = spec.add(acc, x)
    return acc


def _identity_rows(spec: FieldSpec):
    return tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))


def transform_type1(spec: FieldSpec, variant: str, a: int) -> ProjectiveTransform:
    """Unipotent quadric-preserving substitutions, one parameter each:

    a: (X + a Z, Y, Z, T + a Y)      b: (X, Y + a T, Z + a X, T)
    c: (X + a T, Y, Z + a Y, T)      d: (X, Y + a Z, Z, T + a X)
    """
    spec.check(a)
    rows = [list(r) for r in _identity_rows(spec)]
    pairs = {"a": ((0, 2), (3, 1)), "b": ((1, 3), (2, 0)), "c": ((0, 3), (2, 1)), "d": ((1, 2), (3, 0))}
    if variant not in pairs:
        raise ValueError(f"unknown type-1 variant {variant!r}")
    for i, j in pairs[variant]:
        rows[i][j] = spec.add(rows[i][j], a)
    return ProjectiveTransform(spec, tuple(tuple(r) for r in rows))


def transform_type2(spec: FieldSpec, variant: str, a: int) -> ProjectiveTransform:
    """Diagonal rescalings fixing the quadric up to the scalar a:

    a: (X, aY, aZ, T)   b: (aX, Y, Z, aT)   c: (aX, Y, aZ, T)   d: (X, aY, Z, aT)
    """
    spec.check(a)
    if not a:
        raise ValueError("type-2 substitutions need a nonzero scalar")
    scaled = {"a": (1, 2), "b": (0, 3), "c": (0, 2), "d": (1, 3)}
    if variant not in scaled:
        raise ValueError(f"unknown type-2 variant {variant!r}")
    rows = [list(r) for r in _identity_rows(spec)]
    for i in scaled[variant]:
        rows[i][i] = a
    return ProjectiveTransform(spec, tuple(tuple(r) for r in rows))


def transform_type3(spec: FieldSpec, variant: str) -> ProjectiveTransform:
    """Coordinate permutations preserving the pairing {X,Y} | {Z,T}:

    a: (X, Y, T, Z)   b: (Z, T, X, Y)   c: (T, Z, X, Y)
    """
    perms = {"a": (0, 1, 3, 2), "b": (2, 3, 0, 1), "c": (3, 2, 0, 1)}
    if variant not in perms:
        raise ValueError(f"unknown type-3 variant {variant!r}")
    rows = tuple(tuple(1 if j == perms[variant][i] else 0 for j in range(4)) for i in range(4))
    return ProjectiveTransform(spec, rows)


def type3_group(spec: FieldSpec) -> tuple[ProjectiveTransform, ...]:
    """The closure of the three permutation substitutions under composition,
    in a deterministic order (sorted by matrix)."""
    gens = [transform_type3(spec, v) for v in "abc"]
    seen = {_identity_rows(spec): ProjectiveTransform(spec, _identity_rows(spec))}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                u = t.compose(g)
                if u.rows not in seen:
                    seen[u.rows] = u
                    nxt.append(u)
        frontier = nxt
    return tuple(seen[r] for r in sorted(seen))


def _expand_linear_product(spec: FieldSpec, forms) -> dict[tuple, int]:
    """Multiply out a product of linear forms into a monomial dict."""
    acc = {(0, 0, 0, 0): 1}
    for form in forms:
        nxt: dict[tuple, int] = {}
        for e, c in acc.items():
            if not c:
                continue
            for v in range(4):
                cv = form[v]
                if not cv:
                    continue
                e2 = tuple(e[w] + (1 if w == v else 0) for w in range(4))
                nxt[e2] = spec.add(nxt.get(e2, 0), spec.mul(c, cv))
        acc = nxt
    return acc


def substitute_quadric(spec: FieldSpec, q10, rows) -> tuple[int, ...]:
    out = [0] * len(MONOMIALS2)
    for c, e in zip(q10, MONOMIALS2):
        if not c:
            continue
        forms = []
        for v in range(4):
            forms.extend([rows[v]] * e[v])
        for e2, c2 in _expand_linear_product(spec, forms).items():
            out[_INDEX2[e2]] = spec.add(out[_INDEX2[e2]], spec.mul(c, c2))
    return tuple(out)


def substitute_cubic(spec: FieldSpec, c20, rows) -> tuple[int, ...]:
    out = [0] * len(MONOMIALS3)
    for c, e in zip(c20, MONOMIALS3):
        if not c:
            continue
        forms = []
        for v in range(4):
            forms.extend([rows[v]] * e[v])
        for e2, c2 in _expand_linear_product(spec, forms).items():
            out[_INDEX3[e2]] = spec.add(out[_INDEX3[e2]], spec.mul(c, c2))
    return tuple(out)


def apply_transform(curve: QuadricCubicCurve, t: ProjectiveTransform) -> QuadricCubicCurve:
    """Transport the curve along a substitution that preserves its quadric
    (up to a nonzero scalar); the cubic is re-reduced afterwards."""
    if t.spec != curve.spec:
        raise ValueError("substitution and curve live over different fields")
    spec = curve.spec
    q = quadric_coeffs(curve.kind)
    qt = substitute_quadric(spec, q, t.rows)
    lam = None
    for qc, qtc in zip(q, qt):
        if qc:
            lam = qtc
            break
    if not lam or any(qtc != spec.mul(lam, qc) for qc, qtc in zip(q, qt)):
        raise ValueError("substitution does not preserve the quadric")
    return quadric_curve(curve.kind, spec, substitute_cubic(spec, curve.coeffs, t.rows))


# ---------------------------------------------------------------------------
# normal form of the cubic on the smooth quadric
# ---------------------------------------------------------------------------

_CUBE_IDX = {v: _INDEX3[tuple(3 if w == v else 0 for w in range(4))] for v in range(4)}


def _embed_curve(curve: QuadricCubicCurve, sup: FieldSpec) -> QuadricCubicCurve:
    e = embedding(curve.spec, sup)
    return QuadricCubicCurve(curve.kind, sup, tuple(e(c) for c in curve.coeffs))


def _extension_root(curve, coeffs):
    """Smallest root of the given polynomial, extending the base field when
    necessary; returns the (possibly embedded) curve and the root."""
    spec = curve.spec
    p = poly_from_coeffs(spec, coeffs)
    while True:
        roots = poly_roots(spec, p)
        if roots:
            return curve, min(roots)
        d = min(poly_degree(g) for g, _ in poly_factor(spec, p))
        if spec.k * d > 16:
            raise ValueError("normalization needs a field extension beyond F_{2^16}")
        sup = field(spec.k * d)
        e = embedding(spec, sup)
        p = tuple(e(c) for c in p)
        curve = _embed_curve(curve, sup)
        spec = sup


# stage 0: creating a nonzero cube coefficient with a single type-1 move.
# Each entry is (variant, cube index created, quadratic source, linear source):
# variant "a" with parameter s makes c(Z^3) = s^2 c(X^2 Z) + s c(X Z^2), etc.
_CUBE_SOURCES = (
    ("a", _INDEX3[(0, 0, 3, 0)], _INDEX3[(2, 0, 1, 0)], _INDEX3[(1, 0, 2, 0)]),
    ("c", _INDEX3[(0, 0, 0, 3)], _INDEX3[(2, 0, 0, 1)], _INDEX3[(1, 0, 0, 2)]),
    ("d", _INDEX3[(0, 0, 3, 0)], _INDEX3[(0, 2, 1, 0)], _INDEX3[(0, 1, 2, 0)]),
    ("b", _INDEX3[(0, 0, 0, 3)], _INDEX3[(0, 2, 0, 1)], _INDEX3[(0, 1, 0, 2)]),
)


def normalize_cubic(curve: QuadricCubicCurve) -> tuple[QuadricCubicCurve, str]:
    """Normal form of a cubic on the smooth quadric, possibly after a base
    extension: form "a" has X^3 and Y^3 coefficients 1, form "b" has X^3
    coefficient 1 and no other cube.  Z^3 and T^3 vanish in both forms.

    Raises ValueError when every quadric-preserving substitution leaves all
    four cube coefficients zero (the cubic is degenerate along the quadric;
    this cannot happen for a smooth curve) or when a required root would
    live beyond F_{2^16}.
    """
    if curve.kind != "ns":
        raise ValueError("the cubic normal form is defined on the smooth quadric")
    cur = curve

    def cube(c, v):
        return c.coeffs[_CUBE_IDX[v]]

    # stage 0: some cube must be nonzero; a type-1 move can always arrange
    # that unless the relevant sources all vanish identically
    if all(not cube(cur, v) for v in range(4)):
        if all(not cur.coeffs[qi] and not cur.coeffs[li] for _, _, qi, li in _CUBE_SOURCES):
            # every remaining monomial is X*Y times a linear form, so the
            # section is reducible and has no normal form
            raise ValueError("the cubic is a multiple of X*Y modulo the quadric; reducible section")
        while True:
            done = False
            for variant, _, qi, li in _CUBE_SOURCES:
                for s in cur.spec.elements():
                    if not s:
                        continue
                    val = cur.spec.add(
                        cur.spec.mul(cur.spec.mul(s, s), cur.coeffs[qi]),
                        cur.spec.mul(s, cur.coeffs[li]),
                    )
                    if val:
                        cur = apply_transform(cur, transform_type1(cur.spec, variant, s))
                        done = True
                        break
                if done:
                    break
            if done:
                break
            if cur.spec.k * 2 > 16:
                raise ValueError("normalization needs a field extension beyond F_{2^16}")
            cur = _embed_curve(cur, field(cur.spec.k * 2))

    # stage 1: move a nonzero cube onto X^3 with a coordinate permutation
    if not cube(cur, 0):
        for g in type3_group(cur.spec):
            cand = apply_transform(cur, g)
            if cube(cand, 0):
                cur = cand
                break
        else:
            raise AssertionError("a nonzero cube exists but no permutation reaches X^3")

    # stage 2: rescale the equation itself so c(X^3) = 1 (not a substitution)
    inv = cur.spec.inv(cube(cur, 0))
    cur = QuadricCubicCurve(cur.kind, cur.spec, tuple(cur.spec.mul(inv, c) for c in cur.coeffs))

    # stage 3: kill Z^3 with variant "a"; the new coefficient is
    # s^3 + c(X^2 Z) s^2 + c(X Z^2) s + c(Z^3), and X^3, T^3 are untouched
    if cube(cur, 2):
        co = cur.coeffs
        cur, s = _extension_root(
            cur, [co[_INDEX3[(0, 0, 3, 0)]], co[_INDEX3[(1, 0, 2, 0)]], co[_INDEX3[(2, 0, 1, 0)]], 1]
        )
        cur = apply_transform(cur, transform_type1(cur.spec, "a", s))
        assert not cube(cur, 2)

    # stage 4: kill T^3 with variant "c"; this preserves c(X^3) and c(Z^3)
    if cube(cur, 3):
        co = cur.coeffs
        cur, s = _extension_root(
            cur, [co[_INDEX3[(0, 0, 0, 3)]], co[_INDEX3[(1, 0, 0, 2)]], co[_INDEX3[(2, 0, 0, 1)]], 1]
        )
        cur = apply_transform(cur, transform_type1(cur.spec, "c", s))
        assert not cube(cur, 3)

    # stage 5: scale Y so c(Y^3) becomes 1, via the cube root of its inverse
    form = "b"
    if cube(cur, 1):
        cur, s = _extension_root(cur, [cur.spec.inv(cube(cur, 1)), 0, 0, 1])
        cur = apply_transform(cur, transform_type2(cur.spec, "a", s))
        form = "a"

    assert cube(cur, 0) == 1 and not cube(cur, 2) and not cube(cur, 3)
    assert cube(cur, 1) == (1 if form == "a" else 0)
    return cur, form


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------


def _extension_for(curve, n: int):
    kk = curve.spec.k * n
    if kk > 16:
        raise ValueError(f"point counts over F_2^{kk} are out of range (max 2^16)")
    sup = field(kk)
    return sup, embedding(curve.spec, sup)


def _projective_line(spec: FieldSpec):
    for a in spec.elements():
        yield (1, a)
    yield (0, 1)


def _count_quadric_points(curve: QuadricCubicCurve, n: int) -> int:
    sup, emb = _extension_for(curve, n)
    co = tuple(emb(c) for c in curve.coeffs)
    total = 0
    if curve.kind == "ns":
        # the smooth quadric is P^1 x P^1: (X,Y,Z,T) = (x z, y t, y z, x t)
        for x, y in _projective_line(sup):
            for z, t in _projective_line(sup):
                pt = (sup.mul(x, z), sup.mul(y, t), sup.mul(y, z), sup.mul(x, t))
                if not eval_cubic(sup, co, pt):
                    total += 1
        return total
    # the cone: (1 : u^2 : v : u), then (0 : 1 : v : 0), then the vertex
    for u in sup.elements():
        uu = sup.mul(u, u)
        for v in sup.elements():
            if not eval_cubic(sup, co, (1, uu, v, u)):
                total += 1
    for v in sup.elements():
        if not eval_cubic(sup, co, (0, 1, v, 0)):
            total += 1
    if not co[_INDEX3[(0, 0, 3, 0)]]:  # the vertex lies on the cubic iff c(Z^3) = 0
        total += 1
    return total


def _count_hyperelliptic_points(curve: HyperellipticCurve, n: int) -> int:
    sup, emb = _extension_for(curve, n)
    h = tuple(emb(c) for c in curve.h)
    f = tuple(emb(c) for c in curve.f)
    total = 0
    for x in sup.elements():
        hx = poly_eval(sup, h, x)
        if hx:
            # y^2 + hx y = fx has 2 or 0 roots, by the Artin-Schreier trace
            fx = poly_eval(sup, f, x)
            w = sup.mul(fx, sup.inv(sup.mul(hx, hx)))
            total += 2 if sup.trace(w) == 0 else 0
        else:
            total += 1
    h5 = h[5] if len(h) > 5 else 0
    f10 = f[10] if len(f) > 10 else 0
    if h5:
        w = sup.mul(f10, sup.inv(sup.mul(h5, h5)))
        total += 2 if sup.trace(w) == 0 else 0
    else:
        total += 1
    return total


def count_points(curve, n: int = 1, raw: bool = False) -> int:
    """Rational points over the degree-n extension of the base field.

    raw=True skips the smoothness requirement and counts points of the
    possibly singular model (solutions of the defining equations in the
    same charts).
    """
    if n < 1:
        raise ValueError("extension degree must be positive")
    if not raw:
        res = is_smooth(curve)
        if not res.smooth:
            raise ValueError(f"curve is singular ({res.note}); pass raw=True to count anyway")
    if isinstance(curve, QuadricCubicCurve):
        return _count_quadric_points(curve, n)
    if isinstance(curve, HyperellipticCurve):
        return _count_hyperelliptic_points(curve, n)
    raise TypeError(f"not a curve: {curve!r}")


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessResult:
    smooth: bool
    witness: tuple | None = None  # (field degree over F_2, coordinates)
    note: str = ""

    def __bool__(self) -> bool:
        return self.smooth


def _rank_le_one(spec, v, w) -> bool:
    """All 2x2 minors of the two gradient rows vanish."""
    for i in range(4):
        for j in range(i + 1, 4):
            if spec.add(spec.mul(v[i], w[j]), spec.mul(v[j], w[i])):
                return False
    return True


def _singular_at(curve: QuadricCubicCurve, spec, coeffs, point) -> bool:
    """Jacobian criterion at a point already known to lie on both surfaces."""
    grad_c = cubic_partials(spec, coeffs, point)
    grad_q = quadric_gradient(curve.kind, spec, point)
    return _rank_le_one(spec, grad_c, grad_q)


# the parts of each quadric not covered by its affine chart are lines; on
# them the cubic restricts to a binary form with these coefficient slots
# (ascending in the line parameter s, point = base + s * direction)
_NS_LINES = (
    # {Y = Z = 0}: points (1 : 0 : 0 : s); s -> infinity is (0:0:0:1)
    ((1, 0, 0, 0), (0, 0, 0, 1), ((3, 0, 0, 0), (2, 0, 0, 1), (1, 0, 0, 2), (0, 0, 0, 3))),
    # {Y = T = 0}: points (1 : 0 : s : 0); s -> infinity is (0:0:1:0)
    ((1, 0, 0, 0), (0, 0, 1, 0), ((3, 0, 0, 0), (2, 0, 1, 0), (1, 0, 2, 0), (0, 0, 3, 0))),
)
_CONE_LINES = (
    # {X = T = 0}: points (0 : 1 : s : 0); s -> infinity is the vertex
    ((0, 1, 0, 0), (0, 0, 1, 0), ((0, 3, 0, 0), (0, 2, 1, 0), (0, 1, 2, 0), (0, 0, 3, 0))),
)


def _line_point(base, direction, spec, s):
    return tuple(spec.add(b, spec.mul(s, d)) for b, d in zip(base, direction))


def _check_line(curve: QuadricCubicCurve, line) -> SmoothnessResult | None:
    """Scan the singular locus along one of the boundary lines (the point at
    s = infinity is handled separately by the distinguished-point checks)."""
    spec = curve.spec
    base, direction, slots = line
    form = poly_from_coeffs(spec, [curve.coeffs[_INDEX3[e]] for e in slots])
    if not form:
        # the cubic vanishes on the whole line, which then is a component of
        # the intersection; the residual degree-5 part meets it somewhere
        return SmoothnessResult(False, None, "a boundary line lies on the cubic")
    for g, _ in poly_factor(spec, form):
        if poly_degree(g) == 1:
            s = g[0]  # monic s + c has root c in char 2
            pt = _line_point(base, direction, spec, s)
            if _singular_at(curve, spec, curve.coeffs, pt):
                return SmoothnessResult(False, (spec.k, pt), "singular on a boundary line")
        else:
            K = PolyQuotientField(spec, g)
            s = poly_mod(spec, (0, 1), g)
            lifted = tuple(K.lift(c) for c in curve.coeffs)
            pt = tuple(K.add(K.lift(b), K.mul(s, K.lift(d))) for b, d in zip(base, direction))
            if _singular_at(curve, K, lifted, pt):
                return SmoothnessResult(
                    False, None, f"singular on a boundary line over a degree-{poly_degree(g)} extension"
                )
    return None


def _chart_polys_generic(curve: QuadricCubicCurve):
    """The cubic pulled back to the affine chart of its quadric.

    ns:   (X,Y,Z,T) = (u v, 1, v, u) parametrizes {Y != 0}
    cone: (X,Y,Z,T) = (1, u^2, v, u) parametrizes {X != 0}
    """
    spec = curve.spec
    if curve.kind == "ns":
        rows = [[0] * 4 for _ in range(4)]
        for idx, c in enumerate(curve.coeffs):
            if c:
                a, b, g, d = MONOMIALS3[idx]
                rows[a + g][a + d] = spec.add(rows[a + g][a + d], c)
    else:
        rows = [[0] * 7 for _ in range(4)]
        for idx, c in enumerate(curve.coeffs):
            if c:
                a, b, g, d = MONOMIALS3[idx]
                rows[g][2 * b + d] = spec.add(rows[g][2 * b + d], c)
    return el.biv_from_rows(spec, rows)


def _distinguished_checks(curve: QuadricCubicCurve) -> SmoothnessResult | None:
    spec = curve.spec
    co = curve.coeffs
    if curve.kind == "ns":
        # (0:0:0:1) is singular iff c(T^3) = c(XT^2) = c(YT^2) = 0
        if not co[_INDEX3[(0, 0, 0, 3)]] and not co[_INDEX3[(1, 0, 0, 2)]] and not co[_INDEX3[(0, 1, 0, 2)]]:
            return SmoothnessResult(False, (spec.k, (0, 0, 0, 1)), "singular at (0:0:0:1)")
        # (0:0:1:0) is singular iff c(Z^3) = c(XZ^2) = c(YZ^2) = 0
        if not co[_INDEX3[(0, 0, 3, 0)]] and not co[_INDEX3[(1, 0, 2, 0)]] and not co[_INDEX3[(0, 1, 2, 0)]]:
            return SmoothnessResult(False, (spec.k, (0, 0, 1, 0)), "singular at (0:0:1:0)")
    else:
        # the cone vertex: if the cubic passes through it the intersection is
        # singular there, because the quadric gradient vanishes at the vertex
        if not co[_INDEX3[(0, 0, 3, 0)]]:
            return SmoothnessResult(False, (spec.k, (0, 0, 1, 0)), "the cubic meets the cone vertex")
    return None


def _quadric_smooth_generic(curve: QuadricCubicCurve) -> SmoothnessResult:
    res = _distinguished_checks(curve)
    if res is not None:
        return res
    for line in _NS_LINES if curve.kind == "ns" else _CONE_LINES:
        res = _check_line(curve, line)
        if res is not None:
            return res
    f = _chart_polys_generic(curve)
    spec = curve.spec
    system = [f, el.biv_deriv_u(spec, f), el.biv_deriv_v(spec, f)]
    if el.exists_common_zero(spec, system):
        return SmoothnessResult(False, None, "singular point inside the affine chart")
    return SmoothnessResult(True)


# F_2 fast path: same logic with packed integers.  Precompute, per kind, the
# chart cell of every kept monomial and the bit slots of the boundary forms.


def _f2_tables(kind: str):
    cells = []
    for idx in _KEPT[kind]:
        a, b, g, d = MONOMIALS3[idx]
        cells.append((a + g, a + d) if kind == "ns" else (g, 2 * b + d))
    lines = []
    for base, direction, slots in (_NS_LINES if kind == "ns" else _CONE_LINES):
        bits = []
        for e in slots:
            idx = _INDEX3[e]
            bits.append(_KEPT[kind].index(idx))
        lines.append((base, direction, tuple(bits)))
    return tuple(cells), tuple(lines)


_F2_TABLES = {kind: _f2_tables(kind) for kind in QUADRIC_KINDS}
_F2_DISTINGUISHED = {
    "ns": (
        ((0, 0, 0, 1), tuple(_KEPT["ns"].index(_INDEX3[e]) for e in ((0, 0, 0, 3), (1, 0, 0, 2), (0, 1, 0, 2)))),
        ((0, 0, 1, 0), tuple(_KEPT["ns"].index(_INDEX3[e]) for e in ((0, 0, 3, 0), (1, 0, 2, 0), (0, 1, 2, 0)))),
    ),
    "cone": (((0, 0, 1, 0), (_KEPT["cone"].index(_INDEX3[(0, 0, 3, 0)]),)),),
}


def _quadric_smooth_f2(curve: QuadricCubicCurve) -> SmoothnessResult:
    mask = curve.mask
    for point, bits in _F2_DISTINGUISHED[curve.kind]:
        if all(not (mask >> b) & 1 for b in bits):
            if curve.kind == "cone":
                note = "the cubic meets the cone vertex"
            else:
                note = "singular at (0:0:0:1)" if point == (0, 0, 0, 1) else "singular at (0:0:1:0)"
            return SmoothnessResult(False, (1, point), note)
    cells, lines = _F2_TABLES[curve.kind]
    for base, direction, bits in lines:
        form = 0
        for j, b in enumerate(bits):
            if (mask >> b) & 1:
                form |= 1 << j
        if form == 0:
            return SmoothnessResult(False, None, "a boundary line lies on the cubic")
        for g, _ in gf2x_factor(form):
            d = gf2x_degree(g)
            if d == 0:
                continue
            sub = field(d)
            # realize a root of g inside F_{2^d} (d <= 3 here); the 0/1 curve
            # coefficients are valid elements of any binary field as-is
            rt = min(r for r in sub.elements() if _gf2x_eval_in_field(sub, g, r) == 0)
            pt = _line_point(base, direction, sub, rt)
            if _singular_at(curve, sub, curve.coeffs, pt):
                return SmoothnessResult(False, (d, pt), "singular on a boundary line")
    # the affine chart; cells give (v-degree, u-degree) per mask bit
    grid = [0] * 4
    for bit, (v_e, u_e) in enumerate(cells):
        if (mask >> bit) & 1:
            grid[v_e] ^= 1 << u_e
    f = tuple(grid)
    system = [f, el.f2_biv_deriv_u(f), el.f2_biv_deriv_v(f)]
    if el.exists_common_zero_f2(system):
        return SmoothnessResult(False, None, "singular point inside the affine chart")
    return SmoothnessResult(True)


def _gf2x_eval_in_field(spec: FieldSpec, p: int, x: int) -> int:
    acc = 0
    for i in range(gf2x_degree(p), -1, -1):
        acc = spec.mul(acc, x)
        if (p >> i) & 1:
            acc = spec.add(acc, 1)
    return acc


def _hyperelliptic_smooth(curve: HyperellipticCurve) -> SmoothnessResult:
    F = curve.spec
    h, f = curve.h, curve.f
    dh = poly_deriv(F, h)
    df = poly_deriv(F, f)
    # affine singular point: h(x) = 0 and f'(x)^2 + f(x) h'(x)^2 = 0
    crit = poly_add(F, poly_mul(F, df, df), poly_mul(F, f, poly_mul(F, dh, dh)))
    g = poly_gcd(F, h, crit)
    if poly_degree(g) >= 1:
        roots = poly_roots(F, g)
        if roots:
            x0 = roots[0]
            y0 = F.sqrt(poly_eval(F, f, x0))
            return SmoothnessResult(False, (F.k, (x0, y0)), "singular affine point")
        return SmoothnessResult(False, None, "singular affine point over an extension")
    h5 = h[5] if len(h) > 5 else 0
    h4 = h[4] if len(h) > 4 else 0
    f9 = f[9] if len(f) > 9 else 0
    f10 = f[10] if len(f) > 10 else 0
    if not h5 and not F.add(F.mul(f9, f9), F.mul(f10, F.mul(h4, h4))):
        return SmoothnessResult(False, None, "singular at infinity")
    return SmoothnessResult(True)


@lru_cache(maxsize=1 << 16)
def is_smooth(curve) -> SmoothnessResult:
    """Exact smoothness of the projective model, over the algebraic closure."""
    if isinstance(curve, HyperellipticCurve):
        return _hyperelliptic_smooth(curve)
    if isinstance(curve, QuadricCubicCurve):
        if curve.spec.k == 1:
            return _quadric_smooth_f2(curve)
        return _quadric_smooth_generic(curve)
    raise TypeError(f"not a curve: {curve!r}")


# ---------------------------------------------------------------------------
# automorphisms over F_2
# ---------------------------------------------------------------------------


def _f2_apply_mat(rows4: tuple[int, ...], v: int) -> int:
    out = 0
    for i, r in enumerate(rows4):
        b = r & v
        b ^= b >> 2
        b ^= b >> 1
        out |= (b & 1) << i
    return out


def _f2_rows_invertible(rows4) -> bool:
    rows = list(rows4)
    rank = 0
    for bit in range(4):
        piv = next((i for i in range(rank, 4) if (rows[i] >> bit) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(4):
            if i != rank and (rows[i] >> bit) & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank == 4


def _quadric_value_f2(kind: str, v: int) -> int:
    x, y, z, t = v & 1, (v >> 1) & 1, (v >> 2) & 1, (v >> 3) & 1
    if kind == "ns":
        return (x & y) ^ (z & t)
    return (x & y) ^ t


@lru_cache(maxsize=None)
def quadric_stabilizer_f2(kind: str) -> tuple[ProjectiveTransform, ...]:
    """All of GL_4(F_2) preserving the quadric form (as a function on F_2^4,
    which pins the form itself).  Computed once by scanning the 2^16 matrices."""
    values = tuple(_quadric_value_f2(kind, v) for v in range(16))
    found = []
    for m in range(1 << 16):
        rows4 = ((m >> 0) & 15, (m >> 4) & 15, (m >> 8) & 15, (m >> 12) & 15)
        if not _f2_rows_invertible(rows4):
            continue
        if all(values[_f2_apply_mat(rows4, v)] == values[v] for v in range(16)):
            rows = tuple(tuple((r >> j) & 1 for j in range(4)) for r in rows4)
            found.append(ProjectiveTransform(F2, rows))
    return tuple(found)


def gl2_f2() -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    out = []
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        if (a & d) ^ (b & c):
            out.append(((a, b), (c, d)))
    return tuple(out)


def hyperelliptic_transformed(curve: HyperellipticCurve, mat, t) -> HyperellipticCurve:
    """Transport along x -> (a x + b)/(c x + d), y -> (y + t(x))/(c x + d)^5.

    Smooth models stay inside the genus-4 shape family: if the image dropped
    to max(2 deg h, deg f) <= 8 it would have h5 = f9 = f10 = 0, which the
    infinity criterion rejects as singular.  Transporting a singular model
    can therefore raise ValueError when its image leaves the family.
    """
    F = curve.spec
    (a, b), (c, d) = mat
    num = poly_from_coeffs(F, (b, a))
    den = poly_from_coeffs(F, (d, c))
    num_pow = [(1,)]
    den_pow = [(1,)]
    for _ in range(10):
        num_pow.append(poly_mul(F, num_pow[-1], num))
        den_pow.append(poly_mul(F, den_pow[-1], den))
    hh: tuple = ()
    for i, ci in enumerate(curve.h):
        if ci:
            hh = poly_add(F, hh, poly_scale(F, poly_mul(F, num_pow[i], den_pow[5 - i]), ci))
    ff: tuple = ()
    for i, ci in enumerate(curve.f):
        if ci:
            ff = poly_add(F, ff, poly_scale(F, poly_mul(F, num_pow[i], den_pow[10 - i]), ci))
    t = poly_from_coeffs(F, t)
    ff = poly_add(F, ff, poly_add(F, poly_mul(F, t, t), poly_mul(F, hh, t)))
    return HyperellipticCurve(F, hh, ff)


def aut_order_f2(curve) -> int:
    """Order of the automorphism group of the model over F_2 (the stabilizer
    inside the relevant substitution group)."""
    if curve.spec.k != 1:
        raise ValueError("unsupported base field: automorphism counts are for F_2 models")
    if isinstance(curve, QuadricCubicCurve):
        count = 0
        for t in quadric_stabilizer_f2(curve.kind):
            if apply_transform(curve, t).coeffs == curve.coeffs:
                count += 1
        return count
    if isinstance(curve, HyperellipticCurve):
        count = 0
        for mat in gl2_f2():
            for tm in range(64):
                t = tuple((tm >> i) & 1 for i in range(6))
                cand = hyperelliptic_transformed(curve, mat, t)
                if cand.h == curve.h and cand.f == curve.f:
                    count += 1
        return count
    raise TypeError(f"not a curve: {curve!r}")


def jacobian_aut_order(curve, aut: int | None = None) -> int:
    """|Aut(Jacobian, principal polarization)| = |Aut(C)| for hyperelliptic C
    and 2 |Aut(C)| otherwise, by the Torelli theorem."""
    if aut is None:
        aut = aut_order_f2(curve)
    if isinstance(curve, HyperellipticCurve):
        return aut
    return 2 * aut
