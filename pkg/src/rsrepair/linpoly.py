"""Linearized polynomials sum_i a_i x^(q^i) over GF(q^ell) and subspace polynomials.

A linearized polynomial acts GF(q)-linearly on GF(q^ell).  Composition is
the product in the (non-commutative) ring of such polynomials; on GF(q^ell)
it may be reduced modulo x^(q^ell) - x, i.e. q-exponents taken mod ell.
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx, FieldError, Subspace
from .linalg import invert_matrix, kernel_of_map

__all__ = [
    "LinearizedPoly",
    "subspace_poly",
    "tau",
    "trace_poly",
    "check_P1",
    "check_P2",
    "check_P3",
    "check_P4",
    "chain_depths",
    "CROSSCHECK_LIMIT",
]

CROSSCHECK_LIMIT = 4096


class LinearizedPoly:
    """sum coeffs[i] * x^(q^i)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs or [0]

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "LinearizedPoly":
        return cls(ctx, [1])

    @property
    def q_degree(self) -> int:
        """Largest i with a nonzero coefficient (-1 for the zero polynomial)."""
        if self.coeffs == [0]:
            return -1
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return (
            isinstance(other, LinearizedPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, tuple(self.coeffs)))

    def __repr__(self):
        return f"LinearizedPoly({self.pretty()})"

    def pretty(self, var: str = "x") -> str:
        q = self.ctx.q
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = var if i == 0 else f"{var}^({q}^{i})"
            terms.append(mono if c == 1 else f"{c:#x}*{mono}")
        return " + ".join(terms) or "0"

    # -- evaluation -----------------------------------------------------------

    def __call__(self, a: int) -> int:
        return self.eval(a)

    def eval(self, a: int) -> int:
        ctx = self.ctx
        acc = 0
        x = a
        for c in self.coeffs:
            if c:
                acc = ctx.add(acc, ctx.mul(c, x))
            x = ctx.pow(x, ctx.q)
        return acc

    def veval(self, xs) -> np.ndarray:
        ctx = self.ctx
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        x = xs
        last = len(self.coeffs) - 1
        for i, c in enumerate(self.coeffs):
            if c:
                acc = ctx.vadd(acc, ctx.vmul(c, x))
            if i < last:
                x = ctx.vpow(x, ctx.q)
        return acc

    # -- algebra -----------------------------------------------------------

    def reduced(self) -> "LinearizedPoly":
        """Equivalent map with q-degree < ell (x^(q^ell) acts as x)."""
        ctx = self.ctx
        if len(self.coeffs) <= ctx.ell:
            return self
        out = [0] * ctx.ell
        for i, c in enumerate(self.coeffs):
            out[i % ctx.ell] = ctx.add(out[i % ctx.ell], c)
        return LinearizedPoly(ctx, out)

    def compose(self, other: "LinearizedPoly", reduce: bool = True) -> "LinearizedPoly":
        """self(other(x))."""
        ctx = self.ctx
        if other.ctx != ctx:
            raise FieldError("composing polynomials from different fields")
        size = len(self.coeffs) + len(other.coeffs) - 1
        out = [0] * size
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            qi = ctx.q ** i
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(a, ctx.pow(b, qi)))
        res = LinearizedPoly(ctx, out)
        return res.reduced() if reduce else res

    def power(self, s: int, reduce: bool = True) -> "LinearizedPoly":
        """s-fold self-composition; power(0) is the identity x."""
        if s < 0:
            raise ValueError("negative symbolic power")
        out = LinearizedPoly.identity(self.ctx)
        base = self
        while s:
            if s & 1:
                out = out.compose(base, reduce)
            s >>= 1
            if s:
                base = base.compose(base, reduce)
        return out

    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        ctx = self.ctx
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return LinearizedPoly(ctx, [ctx.add(x, y) for x, y in zip(a, b)])

    def associate(self) -> list[int]:
        """Coefficients of the ordinary polynomial sum a_i x^i; requires a_i in GF(q)."""
        ctx = self.ctx
        for c in self.coeffs:
            if c and not ctx.in_subfield(c, 1):
                raise FieldError("q-associate needs coefficients in GF(q)")
        return list(self.coeffs)

    # -- linear-map views -------------------------------------------------

    def images_of_basis(self) -> list[int]:
        return [self.eval(b) for b in self.ctx.fq_basis]

    def matrix(self) -> list[list[int]]:
        """ell x ell matrix over GF(q): column i holds the coordinates of L(basis_i)."""
        cols = [self.ctx.coords(y) for y in self.images_of_basis()]
        ell = self.ctx.ell
        return [[cols[i][j] for i in range(ell)] for j in range(ell)]

    @classmethod
    def from_matrix(cls, ctx: FieldCtx, mat) -> "LinearizedPoly":
        """The unique reduced polynomial realising a GF(q)-linear map.

        Solves the Moore system sum_j a_j b_i^(q^j) = y_i for a.
        """
        ell = ctx.ell
        basis = ctx.fq_basis
        ys = [ctx.from_coords([mat[j][i] for j in range(ell)]) for i in range(ell)]
        moore = [[ctx.pow(b, ctx.q ** j) for j in range(ell)] for b in basis]
        inv = invert_matrix(ctx, moore)
        coeffs = []
        for j in range(ell):
            acc = 0
            for i in range(ell):
                acc = ctx.add(acc, ctx.mul(inv[j][i], ys[i]))
            coeffs.append(acc)
        return cls(ctx, coeffs)

    def kernel(self) -> Subspace:
        ctx = self.ctx
        return Subspace(ctx, kernel_of_map(ctx, ctx.fq_basis, self.images_of_basis()), check=False)

    def image(self) -> Subspace:
        return Subspace.span(self.ctx, self.images_of_basis())

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> list[str]:
        return [hex(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "LinearizedPoly":
        return cls(ctx, [int(c, 16) for c in data])


def trace_poly(ctx: FieldCtx, t: int, over: int | None = None) -> LinearizedPoly:
    """Tr from GF(q^over) onto GF(q^t) as a linearized polynomial (over defaults to ell)."""
    over = ctx.ell if over is None else over
    if t < 1 or over % t:
        raise FieldError(f"{t} does not divide {over}")
    coeffs = [0] * (over - t + 1)
    for i in range(0, over, t):
        coeffs[i] = 1
    return LinearizedPoly(ctx, coeffs)


def _expanded_product(ctx: FieldCtx, W: Subspace) -> np.ndarray:
    """prod_{w in W} (x - w) as an ordinary coefficient array, low to high."""
    elems = W.elements()
    poly = np.zeros(len(elems) + 1, dtype=np.int64)
    poly[0] = 1
    deg = 0
    for w in elems:
        shifted = np.zeros_like(poly)
        shifted[1 : deg + 2] = poly[: deg + 1]
        poly = ctx.vadd(shifted, ctx.vmul(ctx.vneg(np.int64(w)), poly))
        deg += 1
    return poly


def subspace_poly(ctx: FieldCtx, W: Subspace, crosscheck: bool | None = None) -> LinearizedPoly:
    """The monic linearized polynomial whose roots are exactly W.

    Built by basis extension: L_{B+b} = L_B^q - L_B(b)^(q-1) L_B.  For small W the
    result is compared with the expanded product of (x - w).
    """
    if W.ctx != ctx:
        raise FieldError("subspace belongs to a different field")
    q = ctx.q
    coeffs = [1]
    for b in W.basis:
        L = LinearizedPoly(ctx, coeffs)
        v = L.eval(b)
        if v == 0:
            raise FieldError("subspace basis is dependent")
        scale = ctx.neg(ctx.pow(v, q - 1))
        new = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] = ctx.add(new[i + 1], ctx.pow(c, q))
            new[i] = ctx.add(new[i], ctx.mul(scale, c))
        coeffs = new
    L = LinearizedPoly(ctx, coeffs)
    if crosscheck is None:
        crosscheck = ctx.has_tables and q ** W.dim <= CROSSCHECK_LIMIT
    if crosscheck:
        expanded = _expanded_product(ctx, W)
        want = np.zeros_like(expanded)
        for i, c in enumerate(coeffs):
            want[q ** i] = c
        if not np.array_equal(expanded, want):
            raise FieldError("subspace polynomial disagrees with the expanded product")
    return L


def tau(ctx: FieldCtx, W: Subspace, L: LinearizedPoly | None = None, crosscheck: bool | None = None) -> int:
    """Product of the nonzero elements of W, read off as the x-coefficient of L_W."""
    if W.dim < 1:
        raise FieldError("tau needs a nonzero subspace")
    L = subspace_poly(ctx, W) if L is None else L
    t = L.coeffs[0]
    if crosscheck is None:
        crosscheck = ctx.q ** W.dim <= CROSSCHECK_LIMIT
    if crosscheck:
        # (-1)^(q^m - 1) is 1 in every characteristic, so no sign appears
        if W.product_of_nonzero() != t:
            raise FieldError("tau disagrees with the product of nonzero elements")
    return t


def chain_depths(ell: int, m: int) -> tuple[int, int, int]:
    """(ceil((ell-m)/m), floor((ell-m)/m), ell mod m)."""
    return -(-(ell - m) // m), (ell - m) // m, ell % m


def check_P1(ctx: FieldCtx, W: Subspace, L: LinearizedPoly | None = None) -> bool:
    """tau_W lies in GF(q)."""
    L = subspace_poly(ctx, W) if L is None else L
    return ctx.in_subfield(L.coeffs[0], 1)


def check_P2(ctx: FieldCtx, W: Subspace, L: LinearizedPoly | None = None) -> bool:
    """im(L_W) is contained in W, i.e. L_W composed with itself vanishes."""
    L = subspace_poly(ctx, W) if L is None else L
    return all(L.eval(b) in W for b in ctx.fq_basis)


def check_P3(ctx: FieldCtx, W: Subspace, L: LinearizedPoly | None = None) -> bool:
    """dim(im(L_W^ceil((ell-m)/m)) ∩ W) >= ell mod m."""
    L = subspace_poly(ctx, W) if L is None else L
    up, _, t = chain_depths(ctx.ell, W.dim)
    if t == 0:
        return True
    img = L.power(up).image()
    return img.intersection(W).dim >= t


def check_P4(ctx: FieldCtx, W: Subspace, L: LinearizedPoly | None = None) -> bool:
    """W is contained in im(L_W^floor((ell-m)/m))."""
    L = subspace_poly(ctx, W) if L is None else L
    _, down, _ = chain_depths(ctx.ell, W.dim)
    img = L.power(down).image()
    return W.issubset(img)
