"""Ordinary polynomials over GF(q^ell); coefficient lists run low degree to high."""

from __future__ import annotations

import numpy as np

from .field import FieldCtx

__all__ = [
    "horner",
    "veval",
    "multipoint_eval",
    "synthetic_division",
    "polymul",
    "polyadd",
    "trim",
    "interpolate",
    "lagrange_at",
]

BSGS_MIN_DEGREE = 32


def trim(coeffs) -> list[int]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def horner(ctx: FieldCtx, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def veval(ctx: FieldCtx, coeffs, xs) -> np.ndarray:
    """Horner evaluation at every entry of xs (numpy)."""
    xs = np.asarray(xs, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in reversed(coeffs):
        acc = ctx.vadd(ctx.vmul(acc, xs), c)
    return acc


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def multipoint_eval(ctx: FieldCtx, coeffs, xs) -> np.ndarray:
    """Evaluate at many points with a baby-step/giant-step split.

    Writes f(x) = sum_{i<B} x^i P_i(x^B).  When B divides q^ell - 1 the map
    x -> x^B has few distinct values on the multiplicative group, so the inner
    polynomials P_i are only evaluated on that small set.
    """
    xs = np.asarray(xs, dtype=np.int64)
    coeffs = trim(coeffs)
    deg = len(coeffs) - 1
    if deg < BSGS_MIN_DEGREE or xs.size < BSGS_MIN_DEGREE or not ctx.has_tables:
        return veval(ctx, coeffs, xs)
    n1 = ctx.order - 1
    target = (deg * n1 / xs.size) ** 0.5
    B = min(_divisors(n1), key=lambda d: abs(d - target))
    B = max(B, 2)
    rows = -(-len(coeffs) // B)
    mat = np.zeros(rows * B, dtype=np.int64)
    mat[: len(coeffs)] = coeffs
    mat = mat.reshape(rows, B)  # mat[j, i] multiplies x^(jB + i)
    ys = ctx.vpow(xs, B)
    uniq, inverse = np.unique(ys, return_inverse=True)
    inner = np.zeros((B, uniq.size), dtype=np.int64)
    for j in range(rows - 1, -1, -1):
        inner = ctx.vadd(ctx.vmul(inner, uniq[None, :]), mat[j][:, None])
    acc = np.zeros_like(xs)
    for i in range(B - 1, -1, -1):
        acc = ctx.vadd(ctx.vmul(acc, xs), inner[i][inverse])
    return acc


def synthetic_division(ctx: FieldCtx, coeffs, root: int) -> tuple[list[int], int]:
    """Divide by (x - root); returns (quotient, remainder)."""
    n = len(coeffs)
    if n == 0:
        return [], 0
    q = [0] * (n - 1)
    acc = 0
    for i in range(n - 1, 0, -1):
        acc = ctx.add(ctx.mul(acc, root), coeffs[i])
        q[i - 1] = acc
    rem = ctx.add(ctx.mul(acc, root), coeffs[0])
    return q, rem


def polymul(ctx: FieldCtx, a, b) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return out


def polyadd(ctx: FieldCtx, a, b) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [ctx.add(x, y) for x, y in zip(a, b)]


def interpolate(ctx: FieldCtx, xs, ys) -> list[int]:
    """Coefficients of the unique polynomial of degree < len(xs) through the points."""
    xs = [int(x) for x in xs]
    ys = [int(y) for y in ys]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must be distinct")
    # master polynomial M(x) = prod (x - x_i)
    master = [1]
    for x in xs:
        master = polymul(ctx, master, [ctx.neg(x), 1])
    out = [0] * len(xs)
    for xj, yj in zip(xs, ys):
        if yj == 0:
            continue
        basis, _ = synthetic_division(ctx, master, xj)
        denom = horner(ctx, basis, xj)
        scale = ctx.div(yj, denom)
        for i, c in enumerate(basis):
            out[i] = ctx.add(out[i], ctx.mul(scale, c))
    return out


def lagrange_at(ctx: FieldCtx, xs, ys, x: int) -> int:
    """Value at x of the interpolating polynomial through (xs, ys)."""
    xs = [int(v) for v in xs]
    acc = 0
    for j, (xj, yj) in enumerate(zip(xs, ys)):
        if yj == 0:
            continue
        num, den = 1, 1
        for i, xi in enumerate(xs):
            if i != j:
                num = ctx.mul(num, ctx.sub(x, xi))
                den = ctx.mul(den, ctx.sub(xj, xi))
        acc = ctx.add(acc, ctx.mul(int(yj), ctx.div(num, den)))
    return acc
