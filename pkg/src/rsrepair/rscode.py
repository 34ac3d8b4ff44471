"""Reed-Solomon codes RS(A, k) over GF(q^ell): encoding, dual multipliers, erasures,
and the whole-symbol repair baseline."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FieldCtx, FieldError
from .poly import interpolate, lagrange_at, multipoint_eval

__all__ = [
    "CodeSpec",
    "Codeword",
    "ErasedCodeword",
    "ErasedSymbolAccess",
    "NotACodeword",
    "full_length_points",
    "encode",
    "random_codeword",
    "dual_multipliers",
    "is_codeword",
    "naive_repair",
    "NaiveRepair",
]

ERASED = -1


class NotACodeword(ValueError):
    """The symbol vector fails the dual-code parity checks."""


class ErasedSymbolAccess(RuntimeError):
    """Something tried to read an erased position."""


def full_length_points(ctx: FieldCtx) -> np.ndarray:
    """All field elements in the order 0, 1, xi, xi^2, ..., xi^(q^ell - 2)."""
    n1 = ctx.order - 1
    if ctx.has_tables:
        pts = np.empty(ctx.order, dtype=np.int64)
        pts[0] = 0
        pts[1:] = ctx._exp_np[:n1]
        return pts
    return np.array([0] + [ctx.exp(i) for i in range(n1)], dtype=np.int64)


class CodeSpec:
    """RS(A, k): evaluations of polynomials of degree < k at the points A."""

    def __init__(self, ctx: FieldCtx, points, k: int):
        pts = np.asarray(points, dtype=np.int64)
        n = int(pts.size)
        if not 1 <= k < n:
            raise FieldError(f"need 1 <= k < n, got k={k}, n={n}")
        if n > ctx.order:
            raise FieldError(f"n={n} exceeds the field size {ctx.order}")
        if np.unique(pts).size != n:
            raise FieldError("evaluation points must be distinct")
        if pts.min() < 0 or pts.max() >= ctx.order:
            raise FieldError("evaluation point outside the field")
        self.ctx = ctx
        self.points = pts
        self.points.setflags(write=False)
        self.k = k
        self.n = n
        self.r = n - k
        self.full_length = n == ctx.order
        self._index = {int(a): j for j, a in enumerate(pts)}
        self._lambda = None

    @classmethod
    def full(cls, ctx: FieldCtx, k: int | None = None, r: int | None = None) -> "CodeSpec":
        if (k is None) == (r is None):
            raise FieldError("give exactly one of k or r")
        k = ctx.order - r if k is None else k
        return cls(ctx, full_length_points(ctx), k)

    def index_of(self, alpha: int) -> int:
        try:
            return self._index[int(alpha)]
        except KeyError:
            raise FieldError(f"{alpha:#x} is not an evaluation point") from None

    def __repr__(self):
        return f"CodeSpec([{self.n},{self.k}] over {self.ctx!r})"

    def __eq__(self, other):
        return (
            isinstance(other, CodeSpec)
            and self.ctx == other.ctx
            and self.k == other.k
            and np.array_equal(self.points, other.points)
        )

    def __hash__(self):
        return hash((self.ctx, self.k, self.n))

    @property
    def lambdas(self) -> np.ndarray:
        if self._lambda is None:
            self._lambda = dual_multipliers(self)
        return self._lambda

    def to_json(self):
        pts = "full" if self.full_length and np.array_equal(self.points, full_length_points(self.ctx)) else [
            hex(int(a)) for a in self.points
        ]
        return {"field": self.ctx.spec, "base": self.ctx.base_spec, "points": pts, "k": self.k}

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "CodeSpec":
        if data["points"] == "full":
            return cls.full(ctx, k=int(data["k"]))
        return cls(ctx, [int(a, 16) for a in data["points"]], int(data["k"]))


@dataclass
class Codeword:
    spec: CodeSpec
    symbols: np.ndarray
    message: list[int] | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        self.symbols = np.asarray(self.symbols, dtype=np.int64)
        if self.symbols.shape != (self.spec.n,):
            raise FieldError(f"codeword length {self.symbols.size} != n={self.spec.n}")

    def erase(self, *indices: int) -> "ErasedCodeword":
        return ErasedCodeword(self.spec, self.symbols, frozenset(indices))

    def to_json(self):
        return [hex(int(c)) for c in self.symbols]


class ErasedCodeword:
    """Dense symbol vector with some positions erased.

    Erased positions hold a sentinel; :meth:`symbol` and :meth:`helper_symbols`
    refuse to hand them out.  ``reads`` counts every symbol access so tests can
    confirm that nothing touched an erased position.
    """

    def __init__(self, spec: CodeSpec, symbols, erased):
        self.spec = spec
        self.erased = frozenset(int(j) for j in erased)
        if any(not 0 <= j < spec.n for j in self.erased):
            raise FieldError("erased index out of range")
        syms = np.array(symbols, dtype=np.int64)
        syms[list(self.erased)] = ERASED
        self._symbols = syms
        self._symbols.setflags(write=False)
        self.reads = 0

    def symbol(self, j: int) -> int:
        if j in self.erased:
            raise ErasedSymbolAccess(f"read of erased position {j}")
        self.reads += 1
        return int(self._symbols[j])

    def helper_symbols(self, indices) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        if self.erased.intersection(idx.tolist()):
            raise ErasedSymbolAccess("helper set contains an erased position")
        self.reads += idx.size
        return self._symbols[idx]

    def intact(self) -> np.ndarray:
        mask = np.ones(self.spec.n, dtype=bool)
        mask[list(self.erased)] = False
        return np.nonzero(mask)[0]


def encode(spec: CodeSpec, message) -> Codeword:
    """Evaluate the message polynomial sum message[i] x^i at every point."""
    msg = [int(m) for m in message]
    if len(msg) != spec.k:
        raise FieldError(f"message length {len(msg)} != k={spec.k}")
    syms = multipoint_eval(spec.ctx, msg, spec.points)
    return Codeword(spec, syms, msg)


def random_codeword(spec: CodeSpec, rng: np.random.Generator) -> Codeword:
    msg = rng.integers(0, spec.ctx.order, size=spec.k).tolist()
    return encode(spec, msg)


def dual_multipliers(spec: CodeSpec) -> np.ndarray:
    """lambda_j = 1 / prod_{i != j} (a_j - a_i), rescaled so that lambda_0 = 1.

    Any nonzero common multiple spans the same dual code; with the normalisation
    a full-length code gets lambda = 1 everywhere.
    """
    ctx = spec.ctx
    if spec.full_length:
        return np.ones(spec.n, dtype=np.int64)
    pts = [int(a) for a in spec.points]
    raw = []
    for j, aj in enumerate(pts):
        prod = 1
        for i, ai in enumerate(pts):
            if i != j:
                prod = ctx.mul(prod, ctx.sub(aj, ai))
        raw.append(ctx.inv(prod))
    scale = ctx.inv(raw[0])
    return np.array([ctx.mul(scale, x) for x in raw], dtype=np.int64)


def is_codeword(spec: CodeSpec, symbols) -> bool:
    """Parity check: sum_j lambda_j a_j^d c_j = 0 for every d < r."""
    ctx = spec.ctx
    c = np.asarray(symbols, dtype=np.int64)
    if c.shape != (spec.n,) or c.min() < 0 or c.max() >= ctx.order:
        return False
    v = ctx.vmul(spec.lambdas, c)
    pts = spec.points
    for _ in range(spec.r):
        if int(ctx.vsum(v)) != 0:
            return False
        v = ctx.vmul(v, pts)
    return True


def check_dual_orthogonal(spec: CodeSpec, g_coeffs, symbols) -> bool:
    """sum_j lambda_j g(a_j) c_j == 0."""
    ctx = spec.ctx
    vals = multipoint_eval(ctx, g_coeffs, spec.points)
    return int(ctx.vsum(ctx.vmul(ctx.vmul(spec.lambdas, vals), symbols))) == 0


@dataclass
class NaiveRepair:
    recovered: dict[int, int]
    bandwidth_subsymbols: int
    helpers: list[int]

    def bits(self, ctx: FieldCtx) -> float:
        return self.bandwidth_subsymbols * ctx.s * np.log2(ctx.p)


def naive_repair(spec: CodeSpec, word: ErasedCodeword, erased=None) -> NaiveRepair:
    """Whole-symbol repair: download k intact symbols and interpolate.

    Reported bandwidth is k * ell subsymbols, the cost of rebuilding any one
    erased position this way.
    """
    erased = sorted(word.erased if erased is None else erased)
    if len(erased) > spec.r:
        raise FieldError(f"{len(erased)} erasures exceed r={spec.r}")
    intact = [int(j) for j in word.intact()]
    if len(intact) < spec.k:
        raise FieldError("fewer than k intact symbols")
    helpers = intact[: spec.k]
    xs = [int(spec.points[j]) for j in helpers]
    ys = [int(v) for v in word.helper_symbols(helpers)]
    ctx = spec.ctx
    recovered = {j: lagrange_at(ctx, xs, ys, int(spec.points[j])) for j in erased}
    return NaiveRepair(recovered, spec.k * ctx.ell, helpers)


def interpolate_message(spec: CodeSpec, indices, values) -> list[int]:
    """Recover the message polynomial from any k symbols."""
    if len(indices) != spec.k:
        raise FieldError("need exactly k symbols")
    xs = [int(spec.points[j]) for j in indices]
    return interpolate(spec.ctx, xs, values)


__all__ += ["interpolate_message", "check_dual_orthogonal"]
