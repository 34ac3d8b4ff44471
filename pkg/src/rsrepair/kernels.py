"""Kernel selection: the compiled extension when it imports, numpy otherwise.

Set RSREPAIR_PURE_PYTHON=1 to force the numpy implementation.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_impl = _pykernels
if not os.environ.get("RSREPAIR_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

IMPLEMENTATION: str = _impl.IMPLEMENTATION

__all__ = ["IMPLEMENTATION", "column_bases", "fq_tables", "get_impl"]


def get_impl(name: str | None = None):
    """The kernel module by name ('cython' or 'python'); default is the selected one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel implementation {name!r}")


def fq_tables(ctx):
    """Addition, multiplication, inverse and negation tables of GF(q) by element index."""
    els = ctx.fq_elements
    idx = ctx.fq_index
    q = len(els)
    add = np.array([[idx[ctx.add(a, b)] for b in els] for a in els], dtype=np.int64)
    mul = np.array([[idx[ctx.mul(a, b)] for b in els] for a in els], dtype=np.int64)
    inv = np.array([0] + [idx[ctx.inv(a)] for a in els[1:]], dtype=np.int64)
    neg = np.array([idx[ctx.neg(a)] for a in els], dtype=np.int64)
    assert q == ctx.q
    return add, mul, inv, neg


def column_bases(ctx, values, impl=None):
    """Greedy GF(q)-basis of each row of values[n, R] (field elements).

    Binary fields return coefficient bitmasks; others return coefficient
    arrays of GF(q) element indices.  See _pykernels for the layout.
    """
    mod = get_impl(impl)
    values = np.asarray(values, dtype=np.int64)
    if ctx.binary:
        return mod.gf2_column_bases(values)
    coords = ctx.vcoords(values)
    if ctx.s > 1:
        index = np.zeros(ctx.order, dtype=np.int64)
        for i, a in enumerate(ctx.fq_elements):
            index[a] = i
        coords = index[coords]
    return mod.fq_column_bases(coords, *fq_tables(ctx))
