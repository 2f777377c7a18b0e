"""Arbitrary-precision scalars, dense polynomials, rational functions and
matrices over the rational-function field C(z).

Scalars are mpmath ``mpc`` values; every container carries the Context that
fixes the working precision.  Polynomials are dense ascending coefficient
vectors.  Rational functions keep a monic denominator and cancel common
roots only on request (root clustering is a numerical operation and is not
free).  Matrices provide the determinant machinery used by the q-Wronskian
route: exact cofactor expansion at small size, evaluation-interpolation
beyond that.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import mpmath
from mpmath import mpc, mpf

from .context import Context, DEFAULT_CONTEXT
from .errors import InputError, PoleSamplingError, ShapeError

Scalar = mpc


# ---------------------------------------------------------------------------
# scalar helpers


def to_scalar(x, ctx: Context) -> Scalar:
    """Convert int/float/str/complex/mpc to an mpc at context precision."""
    with ctx.workprec():
        if isinstance(x, mpc):
            return mpc(x)
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return mpc(mpf(x[0]), mpf(x[1]))
        if isinstance(x, complex):
            return mpc(x.real, x.imag)
        if isinstance(x, str):
            return mpc(mpmath.mpmathify(x))
        return mpc(x)


def scalar_close(a, b, tol) -> bool:
    return abs(a - b) <= tol * max(1, abs(a), abs(b))


def scalar_to_json(x: Scalar, ctx: Context) -> dict:
    dps = int(ctx.precision_bits * 0.30103) + 8
    with ctx.workprec():
        return {
            "re": mpmath.nstr(mpmath.re(x), dps, strip_zeros=True),
            "im": mpmath.nstr(mpmath.im(x), dps, strip_zeros=True),
        }


def scalar_from_json(obj, ctx: Context) -> Scalar:
    if not isinstance(obj, dict) or set(obj) - {"re", "im"}:
        raise InputError(f"scalar must be {{'re','im'}}, got {obj!r}")
    with ctx.workprec():
        return mpc(mpf(obj["re"]), mpf(obj.get("im", "0")))


def random_scalar(rng, ctx: Context, radius=1.0, center=0.0) -> Scalar:
    """Uniform draw from a disk; deterministic given the rng state."""
    import math

    r = radius * math.sqrt(rng.random())
    th = 2 * math.pi * rng.random()
    with ctx.workprec():
        return mpc(center) + mpc(r * math.cos(th), r * math.sin(th))


def random_unit_scalar(rng, ctx: Context, lo=0.5, hi=2.0) -> Scalar:
    """Random nonzero scalar with modulus in [lo, hi], away from 0."""
    import math

    r = lo + (hi - lo) * rng.random()
    th = 2 * math.pi * rng.random()
    with ctx.workprec():
        return mpc(r * math.cos(th), r * math.sin(th))


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial in z, ascending coefficients."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Iterable, ctx: Context, trim: bool = True):
        self.ctx = ctx
        cs = [to_scalar(c, ctx) for c in coeffs]
        if not cs:
            cs = [to_scalar(0, ctx)]
        if trim:
            cs = self._trim(cs, ctx)
        self.coeffs = tuple(cs)

    @staticmethod
    def _trim(cs, ctx: Context):
        with ctx.workprec():
            mx = max(abs(c) for c in cs)
            if mx == 0:
                return [mpc(0)]
            thr = ctx.trim_tol * mx
            last = 0
            for k, c in enumerate(cs):
                if abs(c) > thr:
                    last = k
            return [c if abs(c) > thr else mpc(0) for c in cs[: last + 1]]

    # -- constructors

    @classmethod
    def zero(cls, ctx: Context) -> "Poly":
        return cls([0], ctx)

    @classmethod
    def one(cls, ctx: Context) -> "Poly":
        return cls([1], ctx)

    @classmethod
    def constant(cls, c, ctx: Context) -> "Poly":
        return cls([c], ctx)

    @classmethod
    def z(cls, ctx: Context) -> "Poly":
        return cls([0, 1], ctx)

    @classmethod
    def from_roots(cls, roots: Sequence, leading, ctx: Context) -> "Poly":
        """Monic-from-roots times ``leading``; exact expansion of the product."""
        lead = to_scalar(leading, ctx)
        with ctx.workprec():
            if lead == 0:
                raise InputError("leading coefficient must be nonzero")
            cs = [mpc(1)]
            for r in roots:
                r = to_scalar(r, ctx)
                nxt = [mpc(0)] * (len(cs) + 1)
                for k, c in enumerate(cs):
                    nxt[k + 1] += c
                    nxt[k] -= r * c
                cs = nxt
            return cls([lead * c for c in cs], ctx, trim=False)

    # -- basic queries

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def leading(self) -> Scalar:
        return self.coeffs[-1]

    def coeff_scale(self):
        with self.ctx.workprec():
            return max(abs(c) for c in self.coeffs)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0 and len(self.coeffs) > 1:
                continue
            terms.append(f"({mpmath.nstr(c, 8)})z^{k}" if k else f"({mpmath.nstr(c, 8)})")
        return " + ".join(terms) if terms else "0"

    # -- arithmetic

    def _like(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], self.ctx)

    def __add__(self, other):
        other = self._like(other)
        with self.ctx.workprec():
            n = max(len(self.coeffs), len(other.coeffs))
            cs = [mpc(0)] * n
            for k, c in enumerate(self.coeffs):
                cs[k] += c
            for k, c in enumerate(other.coeffs):
                cs[k] += c
            return Poly(cs, self.ctx)

    def __neg__(self):
        with self.ctx.workprec():
            return Poly([-c for c in self.coeffs], self.ctx, trim=False)

    def __sub__(self, other):
        return self + (-self._like(other))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            with self.ctx.workprec():
                c = to_scalar(other, self.ctx)
                return Poly([c * a for a in self.coeffs], self.ctx)
        with self.ctx.workprec():
            if self.is_zero() or other.is_zero():
                return Poly.zero(self.ctx)
            cs = [mpc(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    cs[i + j] += a * b
            return Poly(cs, self.ctx)

    __rmul__ = __mul__

    def __call__(self, z):
        """Horner evaluation."""
        with self.ctx.workprec():
            z = to_scalar(z, self.ctx)
            acc = mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc

    def q_shift(self, a) -> "Poly":
        """Substitution z -> a*z; degree preserved for a != 0."""
        a = to_scalar(a, self.ctx)
        with self.ctx.workprec():
            if a == 0:
                raise InputError("q_shift with a = 0 is degenerate")
            out, pw = [], mpc(1)
            for c in self.coeffs:
                out.append(c * pw)
                pw *= a
            return Poly(out, self.ctx, trim=False)

    def monic(self) -> "Poly":
        with self.ctx.workprec():
            if self.is_zero():
                raise InputError("zero polynomial has no monic form")
            lead = self.leading()
            return Poly([c / lead for c in self.coeffs], self.ctx, trim=False)

    def scaled(self, c) -> "Poly":
        return self * c

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Long division; remainder coefficients are not tolerance-trimmed away."""
        if other.is_zero():
            raise InputError("division by zero polynomial")
        with self.ctx.workprec():
            rem = list(self.coeffs)
            dlead = other.leading()
            dd = other.degree
            if self.degree < dd:
                return Poly.zero(self.ctx), Poly(rem, self.ctx)
            qd = self.degree - dd
            quo = [mpc(0)] * (qd + 1)
            for k in range(qd, -1, -1):
                c = rem[dd + k] / dlead
                quo[k] = c
                if c != 0:
                    for j, b in enumerate(other.coeffs):
                        rem[j + k] -= c * b
            return Poly(quo, self.ctx), Poly(rem[:dd] if dd else [0], self.ctx)

    def exact_div(self, other: "Poly", rtol=None) -> "Poly":
        """Division that must be exact up to tolerance; raises otherwise."""
        quo, rem = self.divmod(other)
        with self.ctx.workprec():
            tol = self.ctx.tol if rtol is None else rtol
            scale = max(self.coeff_scale(), mpf(1))
            if rem.coeff_scale() > tol * scale:
                raise InputError("polynomial division leaves a remainder")
        return quo

    def derivative(self) -> "Poly":
        with self.ctx.workprec():
            if self.degree == 0:
                return Poly.zero(self.ctx)
            return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.ctx)

    def roots(self) -> list[Scalar]:
        """All roots with multiplicity (mpmath polyroots)."""
        if self.is_zero():
            raise InputError("zero polynomial has every root")
        if self.degree == 0:
            return []
        with mpmath.workprec(2 * self.ctx.precision_bits):
            cs = list(reversed(self.coeffs))
            rts = mpmath.polyroots(cs, maxsteps=400, extraprec=2 * self.ctx.precision_bits)
        with self.ctx.workprec():
            rts = [mpc(r) for r in rts]
            rts.sort(key=lambda w: (mpmath.re(w), mpmath.im(w)))
            return rts

    def close_to(self, other: "Poly", tol=None) -> bool:
        with self.ctx.workprec():
            tol = self.ctx.tol if tol is None else tol
            diff = self - other
            scale = max(self.coeff_scale(), other.coeff_scale(), mpf(1))
            return diff.coeff_scale() <= tol * scale

    def to_json(self) -> list:
        return [scalar_to_json(c, self.ctx) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj, ctx: Context) -> "Poly":
        if not isinstance(obj, list):
            raise InputError("polynomial must be a coefficient array")
        return cls([scalar_from_json(c, ctx) for c in obj], ctx)


def poly_from_roots(roots: Sequence, leading, ctx: Context = DEFAULT_CONTEXT) -> Poly:
    return Poly.from_roots(roots, leading, ctx)


def q_shift(f, a):
    """z -> a*z substitution for Poly or RatFunc."""
    return f.q_shift(a)


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Quotient num/den with monic den; reduction is explicit, not automatic."""

    __slots__ = ("num", "den", "ctx")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = False):
        self.ctx = num.ctx
        if den is None:
            den = Poly.one(self.ctx)
        if den.is_zero():
            raise InputError("zero denominator")
        with self.ctx.workprec():
            lead = den.leading()
            if lead != 1:
                den = den.monic()
                num = num * (1 / lead)
        self.num = num
        self.den = den
        if reduce:
            red = rat_reduce(self.num, self.den, self.ctx)
            self.num, self.den = red.num, red.den

    # -- constructors

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p)

    @classmethod
    def constant(cls, c, ctx: Context) -> "RatFunc":
        return cls(Poly.constant(c, ctx))

    @classmethod
    def zero(cls, ctx: Context) -> "RatFunc":
        return cls(Poly.zero(ctx))

    @classmethod
    def one(cls, ctx: Context) -> "RatFunc":
        return cls(Poly.one(ctx))

    def __repr__(self):
        if self.den.is_constant():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    # -- arithmetic (no automatic cancellation; degrees stay modest at desk scale)

    def _like(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc.constant(other, self.ctx)

    def __add__(self, other):
        o = self._like(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._like(other))

    def __rsub__(self, other):
        return self._like(other) + (-self)

    def __mul__(self, other):
        o = self._like(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._like(other)
        if o.num.is_zero():
            raise InputError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._like(other) / self

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise InputError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __call__(self, z):
        with self.ctx.workprec():
            return self.num(z) / self.den(z)

    def q_shift(self, a) -> "RatFunc":
        return RatFunc(self.num.q_shift(a), self.den.q_shift(a))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reduced(self) -> "RatFunc":
        return rat_reduce(self.num, self.den, self.ctx)

    def is_polynomial(self, tol=None) -> bool:
        """True iff equal to a polynomial after root-clustering reduction."""
        if self.den.is_constant():
            return True
        red = self.reduced()
        if red.den.is_constant():
            return True
        # reduction may keep a stray near-cancelled factor; try long division
        quo, rem = red.num.divmod(red.den)
        with self.ctx.workprec():
            t = self.ctx.tol if tol is None else tol
            scale = max(red.num.coeff_scale(), mpf(1))
            return rem.coeff_scale() <= t * scale

    def as_poly(self) -> Poly:
        if self.den.is_constant():
            return self.num
        red = self.reduced()
        if red.den.is_constant():
            return red.num
        return red.num.exact_div(red.den)

    def close_to(self, other, n_points: int = 0) -> bool:
        other = self._like(other)
        rep = identity_test(self, other, self.ctx, n_points or None)
        return rep["pass"]

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj, ctx: Context) -> "RatFunc":
        if not isinstance(obj, dict) or set(obj) - {"num", "den"}:
            raise InputError("rational function must be {'num','den'}")
        return cls(Poly.from_json(obj["num"], ctx), Poly.from_json(obj["den"], ctx))


def rat_reduce(num: Poly, den: Poly, ctx: Context | None = None) -> RatFunc:
    """Cancel common roots of num and den within cluster_tol; monic den.

    The paper's cancellations are exact; numerically two roots closer than
    cluster_tol are identified and removed from both sides.
    """
    ctx = ctx or num.ctx
    if den.is_zero():
        raise InputError("zero denominator")
    with ctx.workprec():
        if num.is_zero():
            return RatFunc(Poly.zero(ctx), Poly.one(ctx))
        if den.is_constant():
            return RatFunc(num * (1 / den.coeffs[0]), Poly.one(ctx))
        # fast path: exact long division
        quo, rem = num.divmod(den)
        if rem.coeff_scale() <= ctx.trim_tol * max(num.coeff_scale(), mpf(1)) * 16:
            return RatFunc(quo, Poly.one(ctx))
        nr = num.roots()
        dr = den.roots()
        keep_d = []
        for rd in dr:
            hit = None
            for k, rn in enumerate(nr):
                if abs(rn - rd) <= ctx.cluster_tol * max(1, abs(rd)):
                    hit = k
                    break
            if hit is None:
                keep_d.append(rd)
            else:
                nr.pop(hit)
        new_num = Poly.from_roots(nr, num.leading(), ctx)
        new_den = Poly.from_roots(keep_d, 1, ctx)
        return RatFunc(new_num, new_den)


# ---------------------------------------------------------------------------
# matrices over C(z)


class RFMatrix:
    """Rectangular matrix of RatFunc entries, row major."""

    __slots__ = ("rows", "cols", "entries", "ctx")

    def __init__(self, entries: Sequence[Sequence], ctx: Context):
        self.ctx = ctx
        grid = []
        for row in entries:
            grid.append([self._coerce(e, ctx) for e in row])
        if not grid or not grid[0]:
            raise InputError("matrix must be nonempty")
        w = len(grid[0])
        if any(len(r) != w for r in grid):
            raise ShapeError("ragged rows")
        self.rows = len(grid)
        self.cols = w
        self.entries = grid

    @staticmethod
    def _coerce(e, ctx) -> RatFunc:
        if isinstance(e, RatFunc):
            return e
        if isinstance(e, Poly):
            return RatFunc(e)
        return RatFunc.constant(e, ctx)

    @classmethod
    def identity(cls, n: int, ctx: Context) -> "RFMatrix":
        return cls(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], ctx
        )

    @classmethod
    def zeros(cls, rows: int, cols: int, ctx: Context) -> "RFMatrix":
        return cls([[0] * cols for _ in range(rows)], ctx)

    def __getitem__(self, ij) -> RatFunc:
        i, j = ij
        return self.entries[i][j]

    def copy_entries(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"RFMatrix({self.rows}x{self.cols})"

    def __matmul__(self, other: "RFMatrix") -> "RFMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RatFunc.zero(self.ctx)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RFMatrix(out, self.ctx)

    def __add__(self, other: "RFMatrix") -> "RFMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in add")
        return RFMatrix(
            [[self.entries[i][j] + other.entries[i][j] for j in range(self.cols)] for i in range(self.rows)],
            self.ctx,
        )

    def __sub__(self, other: "RFMatrix") -> "RFMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in sub")
        return RFMatrix(
            [[self.entries[i][j] - other.entries[i][j] for j in range(self.cols)] for i in range(self.rows)],
            self.ctx,
        )

    def scaled(self, c) -> "RFMatrix":
        return RFMatrix([[e * c for e in row] for row in self.entries], self.ctx)

    def q_shift(self, a) -> "RFMatrix":
        return RFMatrix([[e.q_shift(a) for e in row] for row in self.entries], self.ctx)

    def submatrix(self, keep_rows, keep_cols) -> "RFMatrix":
        return RFMatrix(
            [[self.entries[i][j] for j in keep_cols] for i in keep_rows], self.ctx
        )

    def eval_at(self, z) -> list[list[Scalar]]:
        with self.ctx.workprec():
            return [[e(z) for e in row] for row in self.entries]

    def det(self) -> RatFunc:
        if self.rows != self.cols:
            raise ShapeError("determinant of non-square matrix")
        if self.rows <= 6:
            return self._det_cofactor(self.entries)
        return self._det_interp()

    def _det_cofactor(self, grid) -> RatFunc:
        n = len(grid)
        if n == 1:
            return grid[0][0]
        if n == 2:
            return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
        # expand along the row with most zeros
        best, zn = 0, -1
        for i, row in enumerate(grid):
            z = sum(1 for e in row if e.is_zero())
            if z > zn:
                best, zn = i, z
        acc = RatFunc.zero(self.ctx)
        for j, e in enumerate(grid[best]):
            if e.is_zero():
                continue
            minor = [
                [row[jj] for jj in range(n) if jj != j]
                for ii, row in enumerate(grid)
                if ii != best
            ]
            term = e * self._det_cofactor(minor)
            acc = acc + term if (best + j) % 2 == 0 else acc - term
        return acc

    def _det_interp(self) -> RatFunc:
        """Clear denominators per row, interpolate the polynomial determinant."""
        ctx = self.ctx
        with ctx.workprec():
            cleared = []
            row_dens = []
            for row in self.entries:
                dprod = Poly.one(ctx)
                for e in row:
                    dprod = dprod * e.den
                row_dens.append(dprod)
                prow = []
                for j, e in enumerate(row):
                    other = Poly.one(ctx)
                    for jj, e2 in enumerate(row):
                        if jj != j:
                            other = other * e2.den
                    prow.append(e.num * other)
                cleared.append(prow)
            deg_bound = sum(max(p.degree for p in row) for row in cleared)
            pts, vals = [], []
            rng = ctx.rng(salt=0xD37)
            k = 0
            while len(pts) < deg_bound + 1:
                z = random_unit_scalar(rng, ctx, 0.6, 1.7)
                if any(scalar_close(z, p, ctx.cluster_tol) for p in pts):
                    continue
                m = [[p(z) for p in row] for row in cleared]
                vals.append(_numeric_det(m, ctx))
                pts.append(z)
                k += 1
                if k > 8 * (deg_bound + 2):
                    raise PoleSamplingError("interpolation points exhausted")
            poly = _interpolate(pts, vals, ctx)
            den = Poly.one(ctx)
            for d in row_dens:
                den = den * d
            return RatFunc(poly, den)

    def minor(self, rows_removed, cols_removed) -> RatFunc:
        """Paper convention M^a_b: 1-based lists of removed rows/columns."""
        rr = {r - 1 for r in rows_removed}
        cc = {c - 1 for c in cols_removed}
        keep_r = [i for i in range(self.rows) if i not in rr]
        keep_c = [j for j in range(self.cols) if j not in cc]
        if len(keep_r) != len(keep_c):
            raise ShapeError("minor is not square")
        if not keep_r:
            return RatFunc.one(self.ctx)
        return self.submatrix(keep_r, keep_c).det()


def rf_matmul(a: RFMatrix, b: RFMatrix) -> RFMatrix:
    return a @ b


def rf_det(a: RFMatrix) -> RatFunc:
    return a.det()


def rf_minor(a: RFMatrix, rows_removed, cols_removed) -> RatFunc:
    return a.minor(rows_removed, cols_removed)


def _numeric_det(m: list[list[Scalar]], ctx: Context) -> Scalar:
    """LU determinant with partial pivoting on an mpc grid."""
    n = len(m)
    a = [row[:] for row in m]
    with ctx.workprec():
        det = mpc(1)
        for col in range(n):
            piv, pv = col, abs(a[col][col])
            for r in range(col + 1, n):
                if abs(a[r][col]) > pv:
                    piv, pv = r, abs(a[r][col])
            if pv == 0:
                return mpc(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det *= a[col][col]
            inv = 1 / a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] * inv
                if f == 0:
                    continue
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
        return det


def _interpolate(pts, vals, ctx: Context) -> Poly:
    """Newton divided differences -> ascending coefficients."""
    n = len(pts)
    with ctx.workprec():
        coef = list(vals)
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                coef[i] = (coef[i] - coef[i - 1]) / (pts[i] - pts[i - j])
        poly = Poly.zero(ctx)
        basis = Poly.one(ctx)
        for k in range(n):
            poly = poly + basis * coef[k]
            basis = basis * Poly([-pts[k], 1], ctx)
        return poly


# ---------------------------------------------------------------------------
# probabilistic identity testing


def _pole_moduli(f: RatFunc, ctx: Context) -> list:
    if f.den.is_constant():
        return []
    if f.den.degree > 24:
        return []  # fall back to magnitude rejection
    with ctx.workprec():
        return [abs(r) for r in f.den.roots()]


def identity_test(lhs, rhs, ctx: Context | None = None, n_points: int | None = None, tol=None) -> dict:
    """Compare two rational functions at pseudo-random circle points.

    Points live on |z| = R with R chosen so that no pole modulus is within
    pole_margin*R; each individual point additionally keeps a pole_margin
    distance from every pole.  Returns {'pass': bool, 'max_residual': mpf,
    'points': int}.
    """
    if isinstance(lhs, Poly):
        lhs = RatFunc(lhs)
    if isinstance(rhs, Poly):
        rhs = RatFunc(rhs)
    ctx = ctx or lhs.ctx
    import math

    with ctx.workprec():
        deg = max(
            lhs.num.degree + rhs.den.degree,
            rhs.num.degree + lhs.den.degree,
            lhs.den.degree + rhs.den.degree,
        )
        need = deg + 1
        if n_points is None:
            n_points = max(8, need)
        elif n_points < need:
            raise InputError(f"identity_test needs at least {need} points for these degrees")
        tol = ctx.tol if tol is None else tol
        margin = mpf(ctx.pole_margin)
        moduli = _pole_moduli(lhs, ctx) + _pole_moduli(rhs, ctx)
        rng = ctx.rng(salt=0x1D)
        radius = None
        for _ in range(64):
            cand = mpf(1) + mpf(rng.random())
            if all(abs(m - cand) > margin * cand for m in moduli):
                radius = cand
                break
        if radius is None:
            raise PoleSamplingError("no circle radius clears the poles")
        pole_pts = None
        if (not lhs.den.is_constant() and lhs.den.degree <= 24) or (
            not rhs.den.is_constant() and rhs.den.degree <= 24
        ):
            pole_pts = []
            for f in (lhs, rhs):
                if not f.den.is_constant() and f.den.degree <= 24:
                    pole_pts.extend(f.den.roots())
        max_res = mpf(0)
        got = 0
        attempts = 0
        while got < n_points:
            attempts += 1
            if attempts > 60 * n_points:
                raise PoleSamplingError("evaluation points within pole_margin of a pole; resample exhausted")
            th = 2 * math.pi * rng.random()
            z = radius * mpc(math.cos(th), math.sin(th))
            if pole_pts is not None and any(abs(z - p) < margin * radius for p in pole_pts):
                continue
            dl, dr = lhs.den(z), rhs.den(z)
            if abs(dl) < margin ** 2 or abs(dr) < margin ** 2:
                continue
            vl = lhs.num(z) / dl
            vr = rhs.num(z) / dr
            res = abs(vl - vr) / max(1, abs(vl), abs(vr))
            if res > max_res:
                max_res = res
            got += 1
        return {"pass": bool(max_res <= tol), "max_residual": max_res, "points": got}


def residual_max(lhs, rhs, ctx: Context, n_points: int | None = None):
    return identity_test(lhs, rhs, ctx, n_points)["max_residual"]
