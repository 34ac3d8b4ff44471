"""Reference implementations of the column-basis kernels (numpy, no compilation).

For each row j of ``values`` (one row per evaluation point, R entries per
row) the kernels pick the first independent entries in index order as a basis
of their GF(q)-span and express every entry on that basis.

Outputs, for n rows and R entries:
  rank[n]            span dimension
  basis_idx[n, R]    entry indices of the chosen basis, -1 padded
  coef               binary: coefmask[n, R] (bit k = coefficient on basis k)
                     generic: coef[n, R, R] as indices into the GF(q) table
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "python"


def _top_bit(v: np.ndarray) -> np.ndarray:
    # exact for values < 2^53
    return np.frexp(v.astype(np.float64))[1].astype(np.int64) - 1


def gf2_column_bases(values: np.ndarray):
    values = np.ascontiguousarray(values, dtype=np.int64)
    n, R = values.shape
    if R > 63:
        raise ValueError("at most 63 entries per row")
    rows_vec = np.zeros((n, R), dtype=np.int64)
    rows_combo = np.zeros((n, R), dtype=np.int64)
    rows_piv = np.zeros((n, R), dtype=np.int64)
    rank = np.zeros(n, dtype=np.int64)
    basis_idx = np.full((n, R), -1, dtype=np.int64)
    coefmask = np.zeros((n, R), dtype=np.int64)
    ar = np.arange(n)
    for i in range(R):
        v = values[:, i].copy()
        combo = np.zeros(n, dtype=np.int64)
        for k in range(min(i, R)):
            active = k < rank
            hit = active & (((v >> rows_piv[:, k]) & 1) == 1)
            v = np.where(hit, v ^ rows_vec[:, k], v)
            combo = np.where(hit, combo ^ rows_combo[:, k], combo)
        indep = v != 0
        slot = rank
        bit = np.left_shift(np.int64(1), slot)
        sel = ar[indep]
        s = slot[indep]
        rows_vec[sel, s] = v[indep]
        rows_combo[sel, s] = combo[indep] ^ bit[indep]
        rows_piv[sel, s] = _top_bit(v[indep])
        basis_idx[sel, s] = i
        coefmask[:, i] = np.where(indep, bit, combo)
        rank = rank + indep
    return rank.astype(np.int64), basis_idx, coefmask


def fq_column_bases(coords: np.ndarray, add_t, mul_t, inv_t, neg_t):
    """Generic GF(q) version; coords[n, R, L] holds element indices (0 = zero, 1 = one)."""
    coords = np.asarray(coords, dtype=np.int64)
    add_t = np.asarray(add_t)
    mul_t = np.asarray(mul_t)
    inv_t = np.asarray(inv_t)
    neg_t = np.asarray(neg_t)
    n, R, L = coords.shape
    rank = np.zeros(n, dtype=np.int64)
    basis_idx = np.full((n, R), -1, dtype=np.int64)
    coef = np.zeros((n, R, R), dtype=np.int64)
    for j in range(n):
        rows = []  # (pivot, vec, combo) with vec[pivot] == one
        for i in range(R):
            v = [int(x) for x in coords[j, i]]
            combo = [0] * R
            for piv, row, rc in rows:
                c = v[piv]
                if c:
                    nc = int(neg_t[c])
                    v = [int(add_t[a, mul_t[nc, b]]) for a, b in zip(v, row)]
                    combo = [int(add_t[a, mul_t[nc, b]]) for a, b in zip(combo, rc)]
            piv = next((p for p, x in enumerate(v) if x), None)
            if piv is None:
                # v_orig + combo . basis = 0  =>  v_orig = -combo . basis
                coef[j, i] = [int(neg_t[c]) for c in combo]
                continue
            slot = len(rows)
            basis_idx[j, slot] = i
            inv = int(inv_t[v[piv]])
            row = [int(mul_t[inv, x]) for x in v]
            combo[slot] = int(add_t[combo[slot], 1])
            rc = [int(mul_t[inv, x]) for x in combo]
            rows.append((piv, row, rc))
            coef[j, i, slot] = 1
        rank[j] = len(rows)
    return rank, basis_idx, coef
