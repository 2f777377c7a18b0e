"""Small dense linear solvers over mpc, plus the polynomial q-difference solve
used throughout the QQ-system machinery.

The central primitive: given twists (xi_a, xi_b), a polynomial B and a right
hand side R, find the minimal-degree polynomial X with

    xi_a * B(qz) * X(z) - xi_b * B(z) * X(qz) = R(z).

Coefficient matching turns this into a rectangular linear system; the system
is singular exactly when xi_a/xi_b sits on the q-power lattice (resonance).
"""

from __future__ import annotations

import mpmath
from mpmath import mpc, mpf

from .context import Context
from .errors import ConvergenceError, InputError, ResonanceError
from .ratfield import Poly, to_scalar


def solve_square(a: list[list], b: list, ctx: Context) -> list:
    """Gaussian elimination with partial pivoting; raises on singular."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    with ctx.workprec():
        scale = max((abs(x) for row in a for x in row), default=mpf(1))
        if scale == 0:
            scale = mpf(1)
        for col in range(n):
            piv, pv = col, abs(m[col][col])
            for r in range(col + 1, n):
                if abs(m[r][col]) > pv:
                    piv, pv = r, abs(m[r][col])
            if pv <= scale * mpf(2) ** (-ctx.precision_bits + 16):
                raise InputError("singular linear system")
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                f = m[r][col] * inv
                if f == 0:
                    continue
                for c in range(col, n + 1):
                    m[r][c] -= f * m[col][c]
        x = [mpc(0)] * n
        for r in range(n - 1, -1, -1):
            acc = m[r][n]
            for c in range(r + 1, n):
                acc -= m[r][c] * x[c]
            x[r] = acc / m[r][r]
        return x


def lstsq(a: list[list], b: list, ctx: Context) -> tuple[list, mpf]:
    """Least squares via normal equations (fine at 192-bit precision).

    Returns (x, residual_norm / rhs_scale).
    """
    rows = len(a)
    cols = len(a[0])
    with ctx.workprec():
        ah_a = [[mpc(0)] * cols for _ in range(cols)]
        ah_b = [mpc(0)] * cols
        for i in range(rows):
            for j in range(cols):
                aij = a[i][j]
                if aij == 0:
                    continue
                cj = mpmath.conj(aij)
                ah_b[j] += cj * b[i]
                for k in range(cols):
                    ah_a[j][k] += cj * a[i][k]
        x = solve_square(ah_a, ah_b, ctx)
        res = mpf(0)
        scale = max(max((abs(v) for v in b), default=mpf(0)), mpf(1))
        for i in range(rows):
            acc = -b[i]
            for j in range(cols):
                acc += a[i][j] * x[j]
            res = max(res, abs(acc))
        return x, res / scale


def is_resonant(xi_a, xi_b, q, ctx: Context, window: int | None = None) -> bool:
    """True iff xi_a/xi_b equals q^n for |n| <= window, within tol."""
    window = ctx.root_of_unity_window if window is None else window
    with ctx.workprec():
        ratio = to_scalar(xi_a, ctx) / to_scalar(xi_b, ctx)
        q = to_scalar(q, ctx)
        pw = mpc(1)
        for n in range(window + 1):
            if abs(ratio - pw) <= ctx.tol * max(1, abs(pw)):
                return True
            if n and abs(ratio * pw - 1) <= ctx.tol * max(1, abs(pw)):
                return True
            pw *= q
        return False


def solve_q_difference(xi_a, xi_b, B: Poly, rhs: Poly, q, ctx: Context,
                       max_degree: int | None = None) -> Poly:
    """Minimal-degree polynomial X with xi_a B(qz) X(z) - xi_b B(z) X(qz) = rhs.

    Raises ResonanceError when the twist ratio is on the q-lattice (the
    homogeneous equation then has polynomial solutions c z^n B(z) and the
    coefficient system drops rank).
    """
    with ctx.workprec():
        xi_a = to_scalar(xi_a, ctx)
        xi_b = to_scalar(xi_b, ctx)
        q = to_scalar(q, ctx)
        if is_resonant(xi_a, xi_b, q, ctx):
            raise ResonanceError("resonant twist: xi ratio in q^Z window")
        if rhs.is_zero():
            return Poly.zero(ctx)
        bq = B.q_shift(q)
        m = B.degree
        d0 = max(0, rhs.degree - m)
        cap = rhs.degree + m + 8 if max_degree is None else max_degree
        rhs_len = None
        for d in range(d0, cap + 1):
            nrows = m + d + 1
            if rhs.degree + 1 > nrows:
                continue
            cols = []
            qpow = mpc(1)
            for k in range(d + 1):
                gen = bq * xi_a - B * (xi_b * qpow)  # z^k * gen contributes at offset k
                col = [mpc(0)] * nrows
                for j, c in enumerate(gen.coeffs):
                    if j + k < nrows:
                        col[j + k] = c
                cols.append(col)
                qpow *= q
            a = [[cols[k][i] for k in range(d + 1)] for i in range(nrows)]
            b = [rhs.coeffs[i] if i <= rhs.degree else mpc(0) for i in range(nrows)]
            x, res = lstsq(a, b, ctx)
            if res <= ctx.tol:
                return Poly(x, ctx)
            rhs_len = res
        raise ConvergenceError(
            f"no polynomial solution up to degree {cap} (best residual {mpmath.nstr(rhs_len, 5)})"
        )
