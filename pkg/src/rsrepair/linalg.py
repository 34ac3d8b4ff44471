"""Linear algebra over GF(q) for elements of GF(q^ell) viewed as vectors.

The workhorse is :class:`Echelon`, an incremental row-echelon form that
remembers how each stored row was built from the inserted elements.  Rank,
membership, coordinates, kernels, preimages and intersections all fall out of
the dependency relations it reports.
"""

from __future__ import annotations

from .field import FieldCtx

__all__ = ["Echelon", "invert_matrix", "intersect", "kernel_of_map", "preimage_of_map", "solve_in_span"]


class Echelon:
    """Incremental echelon form of GF(q)-vectors with combination tracking.

    Elements are inserted one at a time.  Independent ones become basis
    vectors, numbered 0, 1, ... in insertion order; for a dependent element
    :meth:`add` returns its coordinates on those basis vectors.
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.basis: list[int] = []
        self._binary = ctx.binary
        # binary: pivot bit -> (vector, combo bitmask)
        self._rows2: dict[int, tuple[int, int]] = {}
        # generic: (pivot index, coord list, combo dict) in insertion order, pivot coord == 1
        self._rows: list[tuple[int, list[int], dict[int, int]]] = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    # -- binary fast path ----------------------------------------------------

    def _reduce2(self, a: int) -> tuple[int, int]:
        combo = 0
        rows = self._rows2
        while a:
            top = a.bit_length() - 1
            row = rows.get(top)
            if row is None:
                break
            a ^= row[0]
            combo ^= row[1]
        return a, combo

    # -- generic path -------------------------------------------------------

    def _reduce(self, a: int):
        ctx = self.ctx
        v = list(ctx.coords(a))
        combo: dict[int, int] = {}
        for piv, row, rc in self._rows:
            c = v[piv]
            if c:
                for j in range(piv, len(v)):
                    if row[j]:
                        v[j] = ctx.sub(v[j], ctx.mul(c, row[j]))
                for idx, w in rc.items():
                    combo[idx] = ctx.sub(combo.get(idx, 0), ctx.mul(c, w))
        return v, {i: w for i, w in combo.items() if w}

    # -- public interface ---------------------------------------------------

    def add(self, a: int):
        """Insert a.  Returns (True, None) if independent, else (False, coords)
        where coords maps basis index -> coefficient with a = sum coef * basis[idx]."""
        ctx = self.ctx
        if self._binary:
            r, combo = self._reduce2(a)
            if r == 0:
                return False, _mask_to_dict(combo)
            idx = len(self.basis)
            self.basis.append(a)
            self._rows2[r.bit_length() - 1] = (r, combo ^ (1 << idx))
            return True, None
        v, combo = self._reduce(a)
        piv = next((j for j, c in enumerate(v) if c), None)
        if piv is None:
            # v = a - sum(-combo) ... reduced to zero means a = -sum(combo)
            return False, {i: ctx.neg(w) for i, w in combo.items()}
        idx = len(self.basis)
        self.basis.append(a)
        inv = ctx.inv(v[piv])
        row = [ctx.mul(inv, c) for c in v]
        rc = {i: ctx.mul(inv, w) for i, w in combo.items()}
        rc[idx] = ctx.add(rc.get(idx, 0), inv)
        # insertion order matters: each row is already clear of earlier pivots
        self._rows.append((piv, row, rc))
        return True, None

    def express(self, a: int):
        """Coordinates of a on the current basis, or None if a is outside the span."""
        ctx = self.ctx
        if self._binary:
            r, combo = self._reduce2(a)
            return _mask_to_dict(combo) if r == 0 else None
        v, combo = self._reduce(a)
        if any(v):
            return None
        return {i: ctx.neg(w) for i, w in combo.items()}

    def contains(self, a: int) -> bool:
        if self._binary:
            return self._reduce2(a)[0] == 0
        return not any(self._reduce(a)[0])

    def combine(self, coords: dict[int, int]) -> int:
        ctx = self.ctx
        acc = 0
        for i, c in coords.items():
            acc = ctx.add(acc, ctx.mul(c, self.basis[i]))
        return acc


def _mask_to_dict(mask: int) -> dict[int, int]:
    out = {}
    i = 0
    while mask:
        if mask & 1:
            out[i] = 1
        mask >>= 1
        i += 1
    return out


def _combine(ctx: FieldCtx, coeffs: dict[int, int], elts) -> int:
    acc = 0
    for i, c in coeffs.items():
        acc = ctx.add(acc, ctx.mul(c, elts[i]))
    return acc


def kernel_of_map(ctx: FieldCtx, domain_basis, images) -> list[int]:
    """Basis of the kernel of the GF(q)-linear map sending domain_basis[i] to images[i]."""
    ech = Echelon(ctx)
    kept: list[int] = []
    out = []
    for j, y in enumerate(images):
        indep, rel = ech.add(y)
        if indep:
            kept.append(j)
        else:
            # e_j - sum c_i e_{kept[i]} maps to zero
            coeffs = {kept[i]: ctx.neg(c) for i, c in rel.items()}
            coeffs[j] = 1
            out.append(_combine(ctx, coeffs, domain_basis))
    return out


def preimage_of_map(ctx: FieldCtx, domain_basis, images, target: int):
    """One x with map(x) = target, or None when target is outside the image."""
    ech = Echelon(ctx)
    kept: list[int] = []
    for j, y in enumerate(images):
        if ech.add(y)[0]:
            kept.append(j)
    rel = ech.express(target)
    if rel is None:
        return None
    return _combine(ctx, {kept[i]: c for i, c in rel.items()}, domain_basis)


def intersect(ctx: FieldCtx, basis_a, basis_b) -> list[int]:
    """Basis of span(basis_a) ∩ span(basis_b); both inputs must be independent."""
    ech = Echelon(ctx)
    for a in basis_a:
        ech.add(a)
    na = ech.rank
    out = []
    for b in basis_b:
        indep, rel = ech.add(b)
        if not indep:
            # b - (B-part) = A-part, which lies in both spans
            out.append(_combine(ctx, {i: c for i, c in rel.items() if i < na}, ech.basis))
    return out


def solve_in_span(ctx: FieldCtx, elts, target: int):
    """Coefficients c (list, one per elt) with sum c_i elts_i = target, or None."""
    ech = Echelon(ctx)
    kept = [i for i, a in enumerate(elts) if ech.add(a)[0]]
    rel = ech.express(target)
    if rel is None:
        return None
    coeffs = [0] * len(elts)
    for i, c in rel.items():
        coeffs[kept[i]] = c
    return coeffs


def invert_matrix(ctx: FieldCtx, mat):
    """Inverse of a square matrix whose entries lie in GF(q); Gauss-Jordan.

    Raises ZeroDivisionError if singular.
    """
    n = len(mat)
    a = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = ctx.inv(a[col][col])
        a[col] = [ctx.mul(inv, x) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
