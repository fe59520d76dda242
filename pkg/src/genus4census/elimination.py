"""Deciding whether bivariate polynomial systems have a common zero.

Polynomials live in F[u, v] with F one of the binary fields from gfarith.
The question answered is geometric: do all the polynomials vanish at some
point (u0, v0) with coordinates in an algebraic closure of F?  The closure
is never constructed; instead:

* eliminate v with a Sylvester resultant.  Res_v(f, g) is an F[u]-linear
  combination A f + B g, so any common zero (u0, v0) of f and g forces the
  resultant to vanish at u0, even when leading coefficients degenerate;
* factor the resultant over F and inspect each fiber u = u0 by passing to
  the residue field F[u]/(pi).  There the system is univariate in v and a
  gcd computation decides root existence.  Conjugate fibers are equivalent,
  so one check per irreducible factor suffices;
* when the resultant vanishes identically, the two polynomials share a
  factor d of positive v-degree (primitive-part Euclid over F[u]).  Split
  into "a zero on d" versus "a zero on the deflated system" and recurse;
  the total v-degree strictly decreases.

A bivariate polynomial is a tuple indexed by the v-exponent whose entries
are univariate polynomials in u (gfarith tuple convention), with no trailing
zero entries; the zero polynomial is the empty tuple.  The companion fast
path at the bottom of the module works over F_2 only and stores the inner
u-polynomials as packed integers.

Everything is exact and deterministic.
"""

from __future__ import annotations

from .gfarith import (
    PolyQuotientField,
    gf2x_degree,
    gf2x_deriv,
    gf2x_divmod,
    gf2x_factor,
    gf2x_gcd,
    gf2x_invmod,
    gf2x_mod,
    gf2x_mul,
    poly_add,
    poly_degree,
    poly_deriv,
    poly_divmod,
    poly_factor,
    poly_from_coeffs,
    poly_gcd,
    poly_mod,
    poly_monic,
    poly_mul,
    poly_scale,
)

__all__ = [
    "biv_from_rows",
    "biv_eval",
    "biv_deriv_u",
    "biv_deriv_v",
    "biv_mul",
    "biv_add",
    "resultant_v",
    "exists_common_zero",
    "f2_biv_deriv_u",
    "f2_biv_deriv_v",
    "f2_resultant_v",
    "exists_common_zero_f2",
]


# ---------------------------------------------------------------------------
# bivariate basics
# ---------------------------------------------------------------------------


def _strip(rows) -> tuple:
    rows = list(rows)
    while rows and not rows[-1]:
        rows.pop()
    return tuple(rows)


def biv_from_rows(F, rows) -> tuple:
    """Build a bivariate polynomial from per-v-degree coefficient sequences."""
    return _strip(poly_from_coeffs(F, r) for r in rows)


def biv_eval(F, f: tuple, u0, v0):
    acc = F.zero
    for p in reversed(f):
        s = F.zero
        for c in reversed(p):
            s = F.add(F.mul(s, u0), c)
        acc = F.add(F.mul(acc, v0), s)
    return acc


def biv_deriv_u(F, f: tuple) -> tuple:
    return _strip(poly_deriv(F, p) for p in f)


def biv_deriv_v(F, f: tuple) -> tuple:
    """d/dv in characteristic 2: only odd v-exponents survive."""
    return _strip(f[j] if j % 2 == 1 else () for j in range(1, len(f)))


def biv_add(F, f: tuple, g: tuple) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for j, p in enumerate(g):
        out[j] = poly_add(F, out[j], p)
    return _strip(out)


def biv_mul(F, f: tuple, g: tuple) -> tuple:
    if not f or not g:
        return ()
    out = [() for _ in range(len(f) + len(g) - 1)]
    for i, p in enumerate(f):
        if not p:
            continue
        for j, q in enumerate(g):
            if q:
                out[i + j] = poly_add(F, out[i + j], poly_mul(F, p, q))
    return _strip(out)


# ---------------------------------------------------------------------------
# resultant in v (matrix entries are u-polynomials; char 2 kills all signs)
# ---------------------------------------------------------------------------


def _det_poly(F, mat: list) -> tuple:
    """Determinant over F[u] by expansion along rows, memoized on the set of
    still-available columns (which determines the row index)."""
    n = len(mat)
    memo: dict[int, tuple] = {}

    def minor(r: int, cols: int) -> tuple:
        if r == n:
            return (F.one,)
        got = memo.get(cols)
        if got is not None:
            return got
        acc: tuple = ()
        rest = cols
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            e = mat[r][j]
            if e:
                acc = poly_add(F, acc, poly_mul(F, e, minor(r + 1, cols ^ low)))
            rest ^= low
        memo[cols] = acc
        return acc

    return minor(0, (1 << n) - 1)


def resultant_v(F, f: tuple, g: tuple) -> tuple:
    """Sylvester resultant eliminating v; a polynomial in u.

    Lies in the ideal (f, g) of F[u][v], so it vanishes at the u-coordinate
    of every common zero.  Res of two v-constant polynomials is 1.
    """
    f, g = _strip(f), _strip(g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial is not defined here")
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return (F.one,)
    fd = list(reversed(f))
    gd = list(reversed(g))
    rows = []
    for i in range(n):
        rows.append([fd[j - i] if i <= j <= i + m else () for j in range(size)])
    for i in range(m):
        rows.append([gd[j - i] if i <= j <= i + n else () for j in range(size)])
    return _det_poly(F, rows)


# ---------------------------------------------------------------------------
# primitive-part Euclid in F[u][v]
# ---------------------------------------------------------------------------


def _content(F, f: tuple) -> tuple:
    c: tuple = ()
    for p in f:
        if p:
            c = poly_gcd(F, c, p) if c else poly_monic(F, p)
            if poly_degree(c) == 0:
                break
    return c


def _primitive(F, f: tuple) -> tuple:
    c = _content(F, f)
    if poly_degree(c) == 0:
        return f
    return tuple(poly_divmod(F, p, c)[0] if p else () for p in f)


def _pseudo_rem_v(F, f: tuple, g: tuple) -> tuple:
    dg = len(g) - 1
    lg = g[-1]
    cur = list(f)
    while cur and len(cur) - 1 >= dg:
        df = len(cur) - 1
        lf = cur[-1]
        nxt = [poly_mul(F, lg, c) for c in cur]
        for j, c in enumerate(g):
            nxt[df - dg + j] = poly_add(F, nxt[df - dg + j], poly_mul(F, lf, c))
        assert not nxt[-1], "pseudo-division failed to cancel the top term"
        nxt.pop()
        while nxt and not nxt[-1]:
            nxt.pop()
        cur = nxt
    return tuple(cur)


def _biv_gcd_v(F, f: tuple, g: tuple) -> tuple:
    """Gcd of the primitive parts (a gcd in F(u)[v], kept in F[u][v])."""
    a = _primitive(F, _strip(f))
    b = _primitive(F, _strip(g))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem_v(F, a, b)
        a, b = b, (_primitive(F, r) if r else ())
    lc = a[-1][-1]
    if lc != F.one:
        inv = F.inv(lc)
        a = tuple(poly_scale(F, p, inv) for p in a)
    return a


def _biv_exact_div_v(F, f: tuple, d: tuple) -> tuple:
    f = list(_strip(f))
    d = _strip(d)
    dd = len(d) - 1
    lc = d[-1]
    q: list[tuple] = [() for _ in range(len(f) - dd)]
    for shift in range(len(f) - 1 - dd, -1, -1):
        top = f[shift + dd]
        if not top:
            continue
        qc, rem = poly_divmod(F, top, lc)
        assert not rem, "division by a non-factor"
        q[shift] = qc
        for j, c in enumerate(d):
            f[shift + j] = poly_add(F, f[shift + j], poly_mul(F, qc, c))
    assert all(not c for c in f), "division by a non-factor"
    return _strip(q)


# ---------------------------------------------------------------------------
# the decision procedure
# ---------------------------------------------------------------------------


def _fiber_has_zero(F, pi: tuple, polys: list) -> bool:
    """Does the system vanish somewhere on the fiber u = (a root of pi)?"""
    K = PolyQuotientField(F, pi)
    reduced = []
    for p in polys:
        sp = poly_from_coeffs(K, [poly_mod(F, c, pi) for c in p])
        if sp:
            if poly_degree(sp) == 0:
                return False
            reduced.append(sp)
    if not reduced:
        return True
    g = reduced[0]
    for sp in reduced[1:]:
        g = poly_gcd(K, g, sp)
        if poly_degree(g) == 0:
            return False
    return True


def exists_common_zero(F, polys) -> bool:
    """True iff the bivariate system has a common zero over the closure of F."""
    nz = [p for p in (_strip(q) for q in polys) if p]
    if not nz:
        return True
    consts = [p[0] for p in nz if len(p) == 1]
    if consts:
        r = consts[0]
        for c in consts[1:]:
            r = poly_gcd(F, r, c)
        if poly_degree(r) < 1:
            return False
        others = [p for p in nz if len(p) > 1]
        return any(_fiber_has_zero(F, pi, others) for pi, _ in poly_factor(F, r))
    if len(nz) == 1:
        # a single curve of positive v-degree always has points over the closure
        return True
    nz.sort(key=len)
    f, g = nz[0], nz[1]
    res = resultant_v(F, f, g)
    if res:
        if poly_degree(res) < 1:
            return False
        return any(_fiber_has_zero(F, pi, nz) for pi, _ in poly_factor(F, res))
    d = _biv_gcd_v(F, f, g)
    rest = nz[2:]
    if exists_common_zero(F, [d] + rest):
        return True
    deflated = [_biv_exact_div_v(F, f, d), _biv_exact_div_v(F, g, d)]
    return exists_common_zero(F, deflated + rest)


# ---------------------------------------------------------------------------
# fast path over F_2: u-polynomials as packed integers
# ---------------------------------------------------------------------------
# Same algorithm as above, specialized so the census hot loop stays cheap.
# A bivariate polynomial is a tuple of ints (v-exponent -> packed u-poly).


def _f2_strip(rows) -> tuple:
    rows = list(rows)
    while rows and not rows[-1]:
        rows.pop()
    return tuple(rows)


def f2_biv_deriv_u(f: tuple) -> tuple:
    return _f2_strip(gf2x_deriv(p) for p in f)


def f2_biv_deriv_v(f: tuple) -> tuple:
    return _f2_strip(f[j] if j % 2 == 1 else 0 for j in range(1, len(f)))


def _f2_det(mat: list) -> int:
    n = len(mat)
    memo: dict[int, int] = {}

    def minor(r: int, cols: int) -> int:
        if r == n:
            return 1
        got = memo.get(cols)
        if got is not None:
            return got
        acc = 0
        rest = cols
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            e = mat[r][j]
            if e:
                acc ^= gf2x_mul(e, minor(r + 1, cols ^ low))
            rest ^= low
        memo[cols] = acc
        return acc

    return minor(0, (1 << n) - 1)


def f2_resultant_v(f: tuple, g: tuple) -> int:
    f, g = _f2_strip(f), _f2_strip(g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial is not defined here")
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return 1
    fd = list(reversed(f))
    gd = list(reversed(g))
    rows = []
    for i in range(n):
        rows.append([fd[j - i] if i <= j <= i + m else 0 for j in range(size)])
    for i in range(m):
        rows.append([gd[j - i] if i <= j <= i + n else 0 for j in range(size)])
    return _f2_det(rows)


def _f2_content(f: tuple) -> int:
    c = 0
    for p in f:
        c = gf2x_gcd(c, p)
        if c == 1:
            break
    return c


def _f2_primitive(f: tuple) -> tuple:
    c = _f2_content(f)
    if c == 1:
        return f
    return tuple(gf2x_divmod(p, c)[0] if p else 0 for p in f)


def _f2_pseudo_rem_v(f: tuple, g: tuple) -> tuple:
    dg = len(g) - 1
    lg = g[-1]
    cur = list(f)
    while cur and len(cur) - 1 >= dg:
        df = len(cur) - 1
        lf = cur[-1]
        nxt = [gf2x_mul(lg, c) for c in cur]
        for j, c in enumerate(g):
            nxt[df - dg + j] ^= gf2x_mul(lf, c)
        assert nxt[-1] == 0
        nxt.pop()
        while nxt and not nxt[-1]:
            nxt.pop()
        cur = nxt
    return tuple(cur)


def _f2_biv_gcd_v(f: tuple, g: tuple) -> tuple:
    a = _f2_primitive(_f2_strip(f))
    b = _f2_primitive(_f2_strip(g))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _f2_pseudo_rem_v(a, b)
        a, b = b, (_f2_primitive(r) if r else ())
    return a


def _f2_biv_exact_div_v(f: tuple, d: tuple) -> tuple:
    f = list(_f2_strip(f))
    d = _f2_strip(d)
    dd = len(d) - 1
    lc = d[-1]
    q = [0] * (len(f) - dd)
    for shift in range(len(f) - 1 - dd, -1, -1):
        top = f[shift + dd]
        if not top:
            continue
        qc, rem = gf2x_divmod(top, lc)
        assert rem == 0, "division by a non-factor"
        q[shift] = qc
        for j, c in enumerate(d):
            f[shift + j] ^= gf2x_mul(qc, c)
    assert all(c == 0 for c in f), "division by a non-factor"
    return _f2_strip(q)


def _f2_kpoly_gcd(a: list, b: list, pi: int) -> list:
    """Gcd of v-polynomials with coefficients in F_2[u]/(pi), pi irreducible."""

    def kmul(x: int, y: int) -> int:
        return gf2x_mod(gf2x_mul(x, y), pi)

    while b:
        inv = gf2x_invmod(b[-1], pi)
        # reduce a modulo b
        r = list(a)
        while r and len(r) >= len(b):
            lf = r[-1]
            if lf:
                c = kmul(lf, inv)
                off = len(r) - len(b)
                for j, bc in enumerate(b):
                    r[off + j] ^= kmul(c, bc)
            assert r[-1] == 0
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return a


def _f2_fiber_has_zero(pi: int, polys: list) -> bool:
    reduced = []
    for p in polys:
        sp = [gf2x_mod(c, pi) for c in p]
        while sp and sp[-1] == 0:
            sp.pop()
        if sp:
            if len(sp) == 1:
                return False
            reduced.append(sp)
    if not reduced:
        return True
    g = reduced[0]
    for sp in reduced[1:]:
        g = _f2_kpoly_gcd(g, sp, pi)
        if len(g) == 1:
            return False
    return True


def exists_common_zero_f2(polys) -> bool:
    """Packed-integer twin of exists_common_zero over F = F_2."""
    nz = [p for p in (_f2_strip(q) for q in polys) if p]
    if not nz:
        return True
    consts = [p[0] for p in nz if len(p) == 1]
    if consts:
        r = consts[0]
        for c in consts[1:]:
            r = gf2x_gcd(r, c)
        if gf2x_degree(r) < 1:
            return False
        others = [p for p in nz if len(p) > 1]
        return any(_f2_fiber_has_zero(pi, others) for pi, _ in gf2x_factor(r))
    if len(nz) == 1:
        return True
    nz.sort(key=len)
    f, g = nz[0], nz[1]
    res = f2_resultant_v(f, g)
    if res:
        if gf2x_degree(res) < 1:
            return False
        return any(_f2_fiber_has_zero(pi, nz) for pi, _ in gf2x_factor(res))
    d = _f2_biv_gcd_v(f, g)
    rest = nz[2:]
    if exists_common_zero_f2([d] + rest):
        return True
    deflated = [_f2_biv_exact_div_v(f, d), _f2_biv_exact_div_v(g, d)]
    return exists_common_zero_f2(deflated + rest)
