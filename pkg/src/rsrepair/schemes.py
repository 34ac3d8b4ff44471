"""Repair schemes from subspace polynomials.

Single erasure (construction I): for a target point a* and a basis {b_i},

    g_i(x) = L_W(b_i (x - a*)) / (x - a*),

a polynomial of degree q^m - 1 with g_i(a*) = tau_W b_i.  At any other point
the values g_i(a) span im(L_W)/(a - a*), so each helper sends ell - m traces.

Two erasures (constructions II and III) pair this with the mirror family
h_i(x) = L_W(b_i (x - a_bar)) / (x - a_bar) for the second replacement node,
where b_i = gamma_i / (a_bar - a*) for a basis {gamma_i} chosen so that the
cross values g_i(a_bar), h_i(a*) are cheap to hand over between the two
replacement nodes.  Construction II needs tau_W in GF(q) and im(L_W) inside W;
construction III needs a chain gamma_j = L_W(gamma_{j+m}).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from math import gcd

import numpy as np

from .field import FieldCtx, Subspace, dual_basis, parse_field_spec
from .kernels import column_bases
from .linalg import Echelon, kernel_of_map, preimage_of_map, solve_in_span
from .linpoly import (
    LinearizedPoly,
    chain_depths,
    check_P1,
    check_P2,
    check_P3,
    check_P4,
    subspace_poly,
    trace_poly,
)
from .poly import horner, multipoint_eval, synthetic_division
from .rscode import CodeSpec

__all__ = [
    "SchemeError",
    "VerificationError",
    "SingleScheme",
    "PairScheme",
    "PairFamily",
    "construction_I",
    "construction_II",
    "construction_III",
    "prepare_pair_family",
    "subspace_with_unit_tau",
    "reduction_lemma_W",
    "corollary5_W",
    "corollary6_W",
    "default_W",
    "scheme_from_json",
    "verify_scheme",
]

SPOT_CHECKS = 4


class SchemeError(ValueError):
    """Parameters do not admit the requested scheme; ``predicate`` names the failing condition."""

    def __init__(self, message: str, predicate: str | None = None):
        super().__init__(message)
        self.predicate = predicate


class VerificationError(RuntimeError):
    """A built or loaded scheme violates one of its defining identities."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise VerificationError(what)


# ---------------------------------------------------------------------------
# check polynomials
# ---------------------------------------------------------------------------

def _check_coeffs(ctx: FieldCtx, L: LinearizedPoly, beta: int, root: int) -> list[int]:
    """Coefficients of L(beta (x - root)) / (x - root).

    In characteristic p, (x - root)^(q^j) = x^(q^j) - root^(q^j), so the
    numerator is sum_j c_j beta^(q^j) (x^(q^j) - root^(q^j)).
    """
    q = ctx.q
    num = [0] * (q ** (len(L.coeffs) - 1) + 1)
    for j, c in enumerate(L.coeffs):
        if not c:
            continue
        qj = q ** j
        a = ctx.mul(c, ctx.pow(beta, qj))
        num[qj] = ctx.add(num[qj], a)
        num[0] = ctx.sub(num[0], ctx.mul(a, ctx.pow(root, qj)))
    quo, rem = synthetic_division(ctx, num, root)
    _require(rem == 0, "division by (x - root) left a remainder")
    return quo


def _check_values(ctx: FieldCtx, L: LinearizedPoly, betas, root: int, points: np.ndarray, tau_w: int) -> np.ndarray:
    """values[j, i] = g_i(points[j]) via the closed form, shape (n, ell)."""
    diff = ctx.vsub(points, root)
    at_root = diff == 0
    safe = np.where(at_root, 1, diff)
    args = ctx.vmul(np.asarray(betas, dtype=np.int64)[None, :], safe[:, None])
    num = L.veval(args)
    vals = ctx.vmul(num, ctx.vpow(safe, -1)[:, None])
    if at_root.any():
        vals[at_root] = np.array([ctx.mul(tau_w, b) for b in betas], dtype=np.int64)
    return vals


class ColumnData:
    """Per-point greedy basis of span{g_i(a)} and the coordinates of every g_i(a) on it."""

    __slots__ = ("rank", "basis_idx", "coef", "binary")

    def __init__(self, ctx: FieldCtx, values: np.ndarray):
        self.rank, self.basis_idx, self.coef = column_bases(ctx, values)
        self.binary = ctx.binary


def _spot_points(code: CodeSpec, fixed) -> list[int]:
    n = code.n
    picks = {int(code.points[(i * 7919 + 1) % n]) for i in range(SPOT_CHECKS)}
    return sorted(picks | {int(a) for a in fixed})


# ---------------------------------------------------------------------------
# single erasure
# ---------------------------------------------------------------------------

@dataclass
class SingleScheme:
    code: CodeSpec
    W: Subspace
    L: LinearizedPoly
    tau: int
    target: int
    basis: list[int]
    checks: list[list[int]]
    values: np.ndarray = dc_field(repr=False)
    columns: ColumnData = dc_field(repr=False)

    kind = "I"

    @property
    def ctx(self) -> FieldCtx:
        return self.code.ctx

    @property
    def m(self) -> int:
        return self.W.dim

    @property
    def target_index(self) -> int:
        return self.code.index_of(self.target)

    @property
    def column_dims(self) -> np.ndarray:
        return self.columns.rank

    @property
    def predicted_bandwidth(self) -> int:
        j = self.target_index
        return int(self.column_dims.sum() - self.column_dims[j])

    def table(self, symbol: str = "ξ") -> str:
        """Rows = check polynomials, columns = nodes, last row = column dims."""
        return _render_table(self.ctx, [("g", self.values)], self.column_dims, symbol)

    def to_json(self) -> dict:
        return {
            "kind": "I",
            "code": self.code.to_json(),
            "W": self.W.to_json(),
            "L_W": self.L.to_json(),
            "tau": hex(self.tau),
            "targets": [hex(self.target)],
            "basis": [hex(b) for b in self.basis],
            "checks": [[hex(c) for c in g] for g in self.checks],
            "column_dims": [int(d) for d in self.column_dims],
        }


def default_W(ctx: FieldCtx, m: int) -> Subspace:
    """span{basis_0, ..., basis_(m-1)} of the fixed GF(q)-basis; {0, 1} when m = 1."""
    if not 0 <= m <= ctx.ell:
        raise SchemeError(f"m={m} outside [0, {ctx.ell}]")
    return Subspace(ctx, ctx.fq_basis[:m], check=False)


def _default_code(ctx: FieldCtx, m: int) -> CodeSpec:
    return CodeSpec.full(ctx, r=max(ctx.q ** m, 1))


def construction_I(ctx: FieldCtx, W: Subspace, alpha_star: int, beta=None, code: CodeSpec | None = None) -> SingleScheme:
    """Single-erasure scheme for the symbol at alpha_star."""
    m = W.dim
    code = _default_code(ctx, m) if code is None else code
    if code.ctx != ctx or W.ctx != ctx:
        raise SchemeError("field mismatch between code, subspace and context")
    if ctx.q ** m > code.r:
        raise SchemeError(f"q^m = {ctx.q ** m} exceeds r = {code.r}", "q^m <= r")
    beta = list(ctx.fq_basis) if beta is None else [int(b) for b in beta]
    if len(beta) != ctx.ell or _rank(ctx, beta) != ctx.ell:
        raise SchemeError("beta is not a GF(q)-basis", "basis")
    j_star = code.index_of(alpha_star)
    L = subspace_poly(ctx, W)
    tau_w = L.coeffs[0]
    checks = [_check_coeffs(ctx, L, b, alpha_star) for b in beta]
    values = _check_values(ctx, L, beta, alpha_star, code.points, tau_w)
    scheme = SingleScheme(code, W, L, tau_w, int(alpha_star), beta, checks, values, ColumnData(ctx, values))
    _verify_single(scheme, full=False)
    assert j_star == scheme.target_index
    return scheme


def _rank(ctx: FieldCtx, elts) -> int:
    """GF(q)-rank of a list of elements."""
    ech = Echelon(ctx)
    for a in elts:
        ech.add(a)
    return ech.rank


def _verify_checks(ctx, code, L, checks, betas, root, values, tau_w, full: bool):
    m = len(L.coeffs) - 1
    for g in checks:
        _require(len(g) - 1 == ctx.q ** m - 1 and g[-1] != 0, "check polynomial has the wrong degree")
        _require(len(g) - 1 <= code.r - 1, "check polynomial degree exceeds r - 1")
    if full:
        for i, g in enumerate(checks):
            _require(np.array_equal(multipoint_eval(ctx, g, code.points), values[:, i]), "stored values disagree with the check coefficients")
    else:
        for a in _spot_points(code, [root]):
            j = code.index_of(a)
            for i, g in enumerate(checks):
                _require(horner(ctx, g, a) == int(values[j, i]), "closed-form values disagree with the check coefficients")
    for i, b in enumerate(betas):
        _require(horner(ctx, checks[i], root) == ctx.mul(tau_w, b), "g_i(target) != tau_W * beta_i")


def _verify_single(s: SingleScheme, full: bool) -> None:
    ctx = s.ctx
    _verify_checks(ctx, s.code, s.L, s.checks, s.basis, s.target, s.values, s.tau, full)
    dims = s.column_dims
    j = s.target_index
    _require(int(dims[j]) == ctx.ell, "column space at the target is not the whole field")
    others = np.delete(dims, j)
    _require(bool(np.all(others <= ctx.ell - s.m)), "a helper column space exceeds ell - m")


# ---------------------------------------------------------------------------
# subspaces with good tau (unit tau, half-field reduction, subfield and trace kernel)
# ---------------------------------------------------------------------------

def _ext_gcd_solve(a: int, rhs: int, mod: int):
    """Some y with a*y = rhs (mod mod), or None."""
    g = gcd(a, mod)
    if rhs % g:
        return None
    a, rhs, mod = a // g, rhs // g, mod // g
    if mod == 1:
        return 0
    return (rhs * pow(a, -1, mod)) % mod


def subspace_with_unit_tau(ctx: FieldCtx, m: int, ambient_degree: int | None = None) -> Subspace:
    """An m-dimensional GF(q)-subspace U of GF(q^d) (d = ambient_degree) with tau_U = +-1.

    U_0 is the GF(q^s)-span of 1, eta, ..., eta^(m/s - 1), s = gcd(m, d), for a
    generator eta of GF(q^d).  Then tau_{c U_0} = c^(q^m - 1) tau_{U_0}, and
    since gcd(q^m - 1, q^d - 1) = q^s - 1 divides log(tau_{U_0}) a scalar c = zeta^y
    normalises tau to +-1.
    """
    d = ctx.ell if ambient_degree is None else ambient_degree
    if d < 1 or ctx.ell % d:
        raise SchemeError(f"ambient degree {d} does not divide ell={ctx.ell}")
    if not 1 <= m <= d:
        raise SchemeError(f"need 1 <= m <= {d}, got m={m}")
    q = ctx.q
    s = gcd(m, d)
    z = ctx.subfield_generator(s)
    eta = ctx.subfield_generator(d)
    basis = [ctx.mul(ctx.pow(z, a), ctx.pow(eta, b)) for b in range(m // s) for a in range(s)]
    U0 = Subspace(ctx, basis)
    L0 = subspace_poly(ctx, U0)
    tau0 = L0.coeffs[0]
    n_amb = q ** d - 1
    stride = (ctx.order - 1) // n_amb
    log0 = ctx.log(tau0)
    _require(log0 % stride == 0, "tau of U_0 is outside the ambient subfield")
    log0 //= stride
    targets = [0] if ctx.p == 2 else [0, n_amb // 2]
    for tgt in targets:
        y = _ext_gcd_solve(q ** m - 1, (tgt - log0) % n_amb, n_amb)
        if y is not None:
            break
    else:
        raise VerificationError("no scalar normalises tau (internal error)")
    U = U0.scaled(ctx.pow(eta, y))
    t = subspace_poly(ctx, U).coeffs[0]
    _require(t in (1, ctx.neg(1)), "normalised tau is not +-1")
    return U


def reduction_lemma_W(ctx: FieldCtx, m: int) -> Subspace:
    """W of dimension m with tau_W in GF(q) and im(L_W) inside W (q even, ell even, m >= ell/2).

    W = GF(q^(ell/2)) + V where V lifts a unit-tau subspace U of GF(q^(ell/2))
    through sigma = Tr_{GF(q^ell)/GF(q^(ell/2))}; then L_W = L_U(sigma(x)).
    """
    ell = ctx.ell
    if ctx.p != 2:
        raise SchemeError("the reduction needs characteristic 2", "q even")
    if ell % 2:
        raise SchemeError("the reduction needs ell even", "ell even")
    h = ell // 2
    if not h <= m <= ell:
        raise SchemeError(f"P2 requires m >= ell/2 (m={m}, ell={ell})", "P2")
    half = Subspace.subfield(ctx, h)
    if m == h:
        W = half
    else:
        U = subspace_with_unit_tau(ctx, m - h, ambient_degree=h)
        sigma = trace_poly(ctx, h)
        images = [sigma.eval(b) for b in ctx.fq_basis]
        vs = []
        for u in U.basis:
            v = preimage_of_map(ctx, ctx.fq_basis, images, u)
            _require(v is not None, "trace onto the half field is not onto")
            vs.append(v)
        W = Subspace(ctx, list(half.basis) + vs)
    L = subspace_poly(ctx, W)
    _require(W.dim == m, "lifted subspace has the wrong dimension")
    _require(check_P1(ctx, W, L), "reduction produced W failing P1")
    _require(check_P2(ctx, W, L), "reduction produced W failing P2")
    return W


def _is_power_of(x: int, base: int) -> bool:
    if x < 1:
        return False
    while x % base == 0:
        x //= base
    return x == 1


def corollary5_W(ctx: FieldCtx, m: int) -> Subspace:
    """W = GF(q^m) when m divides ell and ell/m is a power of q; L_W = x^(q^m) - x."""
    ell = ctx.ell
    if m < 1 or ell % m or not _is_power_of(ell // m, ctx.q):
        raise SchemeError(f"need m | ell with ell/m a power of q (ell={ell}, m={m}, q={ctx.q})", "ell/m power of q")
    W = Subspace.subfield(ctx, m)
    L = subspace_poly(ctx, W)
    want = [ctx.neg(1)] + [0] * (m - 1) + [1]
    _require(L.coeffs == want, "L_W is not x^(q^m) - x")
    for name, pred in (("P1", check_P1), ("P3", check_P3), ("P4", check_P4)):
        _require(pred(ctx, W, L), f"subfield W fails {name}")
    return W


def corollary6_W(ctx: FieldCtx, a: int, b: int) -> Subspace:
    """W = kernel of Tr_{GF(q^(m+1))/GF(q)} inside GF(q^(m+1)), for ell = q^a, m = q^b - 1 > 1."""
    q, ell = ctx.q, ctx.ell
    m = q ** b - 1
    if not (a >= b >= 1 and ell == q ** a and m > 1):
        raise SchemeError(f"need ell = q^a, m = q^b - 1 > 1, a >= b >= 1 (q={q}, ell={ell}, a={a}, b={b})", "ell=q^a, m=q^b-1>1")
    tr = LinearizedPoly(ctx, [1] * (m + 1))
    dom = ctx.subfield_basis(m + 1)
    W = Subspace(ctx, kernel_of_map(ctx, dom, [tr.eval(x) for x in dom]))
    _require(W.dim == m, "trace kernel has the wrong dimension")
    L = subspace_poly(ctx, W)
    _require(L == tr, "L_W is not the trace polynomial")
    for name, pred in (("P1", check_P1), ("P3", check_P3), ("P4", check_P4)):
        _require(pred(ctx, W, L), f"trace-kernel W fails {name}")
    return W


# ---------------------------------------------------------------------------
# two erasures
# ---------------------------------------------------------------------------

@dataclass
class PairFamily:
    """Everything about a two-erasure scheme that does not depend on the erased pair."""

    ctx: FieldCtx
    W: Subspace
    L: LinearizedPoly
    tau: int
    mode: str
    gamma: list[int]
    gamma_dual: list[int]

    @property
    def m(self) -> int:
        return self.W.dim

    @property
    def rounds(self) -> int:
        if self.m == self.ctx.ell:
            return 0
        return 1 if self.mode == "one_round" else chain_depths(self.ctx.ell, self.m)[0]


def _gamma_one_round(ctx: FieldCtx, W: Subspace) -> list[int]:
    ech = Echelon(ctx)
    out = []
    for w in list(W.basis) + list(ctx.fq_basis):
        if len(out) == ctx.ell:
            break
        if ech.add(w)[0]:
            out.append(w)
    return out


def _gamma_chain(ctx: FieldCtx, W: Subspace, L: LinearizedPoly) -> list[int]:
    """gamma_1..gamma_ell with gamma_1..gamma_m a basis of W and L(gamma_i) = gamma_{i-m}."""
    ell, m = ctx.ell, W.dim
    up, down, t = chain_depths(ell, m)
    top = L.power(up).image().intersection(W)
    if top.dim < t:
        raise SchemeError("P3 fails: im(L^ceil) ∩ W is too small", "P3")
    ech = Echelon(ctx)
    gamma = []
    for w in list(top.basis[:t]) + list(W.basis):
        if len(gamma) == m:
            break
        if ech.add(w)[0]:
            gamma.append(w)
    gamma += [0] * (ell - m)
    images_by_depth = {}
    for j in range(1, m + 1):
        depth = (ell - j) // m
        if depth == 0:
            continue
        if depth not in images_by_depth:
            images_by_depth[depth] = L.power(depth).images_of_basis()
        delta = preimage_of_map(ctx, ctx.fq_basis, images_by_depth[depth], gamma[j - 1])
        if delta is None:
            raise SchemeError(f"gamma_{j} has no preimage under L^{depth}; P3/P4 violated", "P4")
        for k in range(depth, 0, -1):
            gamma[j + k * m - 1] = delta
            delta = L.eval(delta)
        _require(delta == gamma[j - 1], "chain does not return to its start")
    return gamma


def prepare_pair_family(ctx: FieldCtx, W: Subspace, mode: str) -> PairFamily:
    """Check the predicates for the mode and fix the W-side basis {gamma_i}."""
    L = subspace_poly(ctx, W)
    m = W.dim
    if not check_P1(ctx, W, L):
        raise SchemeError("P1 fails: tau_W is not in GF(q)", "P1")
    if mode == "one_round":
        if 2 * m < ctx.ell:
            raise SchemeError(f"P2 requires m >= ell/2 (m={m}, ell={ctx.ell})", "P2")
        if not check_P2(ctx, W, L):
            raise SchemeError("P2 fails: im(L_W) is not inside W", "P2")
        gamma = _gamma_one_round(ctx, W)
    elif mode == "multi_round":
        if not check_P3(ctx, W, L):
            raise SchemeError("P3 fails", "P3")
        if not check_P4(ctx, W, L):
            raise SchemeError("P4 fails", "P4")
        gamma = _gamma_chain(ctx, W, L)
    else:
        raise SchemeError(f"unknown mode {mode!r}")
    _require(_rank(ctx, gamma) == ctx.ell, "gamma is not a basis")
    return PairFamily(ctx, W, L, L.coeffs[0], mode, gamma, dual_basis(ctx, gamma))


@dataclass
class PairScheme:
    code: CodeSpec
    family: PairFamily
    targets: tuple[int, int]
    basis: list[int]
    basis_dual: list[int]
    g_checks: list[list[int]]
    h_checks: list[list[int]]
    g_values: np.ndarray = dc_field(repr=False)
    h_values: np.ndarray = dc_field(repr=False)
    g_columns: ColumnData = dc_field(repr=False)
    h_columns: ColumnData = dc_field(repr=False)

    @property
    def kind(self) -> str:
        return "II" if self.mode == "one_round" else "III"

    @property
    def ctx(self) -> FieldCtx:
        return self.code.ctx

    @property
    def W(self) -> Subspace:
        return self.family.W

    @property
    def L(self) -> LinearizedPoly:
        return self.family.L

    @property
    def tau(self) -> int:
        return self.family.tau

    @property
    def mode(self) -> str:
        return self.family.mode

    @property
    def m(self) -> int:
        return self.family.m

    @property
    def rounds(self) -> int:
        return self.family.rounds

    @property
    def chain(self) -> list[int] | None:
        return self.family.gamma if self.mode == "multi_round" else None

    @property
    def target_indices(self) -> tuple[int, int]:
        return self.code.index_of(self.targets[0]), self.code.index_of(self.targets[1])

    def side(self, which: int):
        """(checks, values, columns) for replacement node 0 (alpha*) or 1 (alpha_bar)."""
        if which == 0:
            return self.g_checks, self.g_values, self.g_columns
        return self.h_checks, self.h_values, self.h_columns

    def predicted_bandwidth(self) -> tuple[int, int]:
        js, jb = self.target_indices
        out = []
        for cols in (self.g_columns, self.h_columns):
            d = cols.rank
            out.append(int(d.sum() - d[js] - d[jb]) + self.ctx.ell - self.m)
        return out[0], out[1]

    def table(self, symbol: str = "ξ") -> str:
        return _render_table(self.ctx, [("g", self.g_values), ("h", self.h_values)], None, symbol)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "mode": self.mode,
            "code": self.code.to_json(),
            "W": self.W.to_json(),
            "L_W": self.L.to_json(),
            "tau": hex(self.tau),
            "targets": [hex(a) for a in self.targets],
            "gamma": [hex(g) for g in self.family.gamma],
            "basis": [hex(b) for b in self.basis],
            "g_checks": [[hex(c) for c in g] for g in self.g_checks],
            "h_checks": [[hex(c) for c in g] for g in self.h_checks],
            "column_dims": {
                "g": [int(d) for d in self.g_columns.rank],
                "h": [int(d) for d in self.h_columns.rank],
            },
            "rounds": self.rounds,
        }


def _construct_pair(ctx, W, alpha_star, alpha_bar, code, mode, family) -> PairScheme:
    m = W.dim
    code = _default_code(ctx, m) if code is None else code
    if code.ctx != ctx or W.ctx != ctx:
        raise SchemeError("field mismatch between code, subspace and context")
    if alpha_star == alpha_bar:
        raise SchemeError("the two erased points must differ")
    if ctx.q ** m > code.r:
        raise SchemeError(f"q^m = {ctx.q ** m} exceeds r = {code.r}", "q^m <= r")
    code.index_of(alpha_star)
    code.index_of(alpha_bar)
    if family is None:
        family = prepare_pair_family(ctx, W, mode)
    elif family.mode != mode or family.W != W:
        raise SchemeError("family does not match the requested subspace/mode")
    d = ctx.sub(alpha_bar, alpha_star)
    d_inv = ctx.inv(d)
    basis = [ctx.mul(g, d_inv) for g in family.gamma]
    basis_dual = [ctx.mul(g, d) for g in family.gamma_dual]
    L, tau_w = family.L, family.tau
    g_checks = [_check_coeffs(ctx, L, b, alpha_star) for b in basis]
    h_checks = [_check_coeffs(ctx, L, b, alpha_bar) for b in basis]
    g_values = _check_values(ctx, L, basis, alpha_star, code.points, tau_w)
    h_values = _check_values(ctx, L, basis, alpha_bar, code.points, tau_w)
    scheme = PairScheme(
        code,
        family,
        (int(alpha_star), int(alpha_bar)),
        basis,
        basis_dual,
        g_checks,
        h_checks,
        g_values,
        h_values,
        ColumnData(ctx, g_values),
        ColumnData(ctx, h_values),
    )
    _verify_pair(scheme, full=False)
    return scheme


def construction_II(ctx: FieldCtx, W: Subspace, alpha_star: int, alpha_bar: int, code: CodeSpec | None = None, family: PairFamily | None = None) -> PairScheme:
    """One-round two-erasure scheme; W must satisfy P1 and P2."""
    return _construct_pair(ctx, W, int(alpha_star), int(alpha_bar), code, "one_round", family)


def construction_III(ctx: FieldCtx, W: Subspace, alpha_star: int, alpha_bar: int, code: CodeSpec | None = None, family: PairFamily | None = None) -> PairScheme:
    """Multi-round two-erasure scheme; W must satisfy P1, P3 and P4."""
    return _construct_pair(ctx, W, int(alpha_star), int(alpha_bar), code, "multi_round", family)


def _verify_pair(s: PairScheme, full: bool) -> None:
    ctx = s.ctx
    ell, m = ctx.ell, s.m
    a_star, a_bar = s.targets
    tau_w = s.tau
    _require(ctx.in_subfield(tau_w, 1), "tau_W is not in GF(q)")
    _verify_checks(ctx, s.code, s.L, s.g_checks, s.basis, a_star, s.g_values, tau_w, full)
    _verify_checks(ctx, s.code, s.L, s.h_checks, s.basis, a_bar, s.h_values, tau_w, full)
    scaled = [ctx.mul(tau_w, b) for b in s.basis]
    g_cross = [horner(ctx, g, a_bar) for g in s.g_checks]
    h_cross = [horner(ctx, h, a_star) for h in s.h_checks]
    js, jb = s.target_indices
    _require(g_cross == [int(v) for v in s.g_values[jb]], "g values at alpha_bar disagree")
    _require(h_cross == [int(v) for v in s.h_values[js]], "h values at alpha* disagree")
    for i in range(m):
        _require(g_cross[i] == 0 and h_cross[i] == 0, f"check {i + 1} does not vanish at the other erasure")
    if s.mode == "one_round":
        head = scaled[:m]
        for i in range(m, ell):
            _require(solve_in_span(ctx, head, g_cross[i]) is not None, f"g_{i + 1}(alpha_bar) leaves span(tau beta_1..m)")
            _require(solve_in_span(ctx, head, h_cross[i]) is not None, f"h_{i + 1}(alpha*) leaves span(tau beta_1..m)")
    else:
        gamma = s.family.gamma
        for i in range(m, ell):
            _require(s.L.eval(gamma[i]) == gamma[i - m], f"chain property fails at gamma_{i + 1}")
            _require(g_cross[i] == s.basis[i - m] and h_cross[i] == s.basis[i - m], f"cross value {i + 1} != beta_{i + 1 - m}")
    for b, bd in zip(s.basis, s.basis_dual):
        _require(ctx.trace(ctx.mul(b, bd)) == 1, "basis_dual is not dual")
    for cols, j in ((s.g_columns, js), (s.h_columns, jb)):
        _require(int(cols.rank[j]) == ell, "column space at a target is not the whole field")
        others = np.delete(cols.rank, [js, jb])
        _require(bool(np.all(others <= ell - m)), "a helper column space exceeds ell - m")


# ---------------------------------------------------------------------------
# serialisation and re-verification
# ---------------------------------------------------------------------------

def _hexes(xs) -> list[int]:
    return [int(x, 16) for x in xs]


def scheme_from_json(data) -> SingleScheme | PairScheme:
    """Rebuild a scheme object from its JSON form without re-running the construction."""
    if isinstance(data, str):
        data = json.loads(data)
    code_d = data["code"]
    ctx = parse_field_spec(code_d["field"], code_d.get("base"))
    code = CodeSpec.from_json(ctx, code_d)
    W = Subspace.from_json(ctx, data["W"])
    L = LinearizedPoly.from_json(ctx, data["L_W"])
    tau_w = int(data["tau"], 16)
    basis = _hexes(data["basis"])
    if data["kind"] == "I":
        target = _hexes(data["targets"])[0]
        checks = [_hexes(g) for g in data["checks"]]
        values = np.stack([multipoint_eval(ctx, g, code.points) for g in checks], axis=1)
        s = SingleScheme(code, W, L, tau_w, target, basis, checks, values, ColumnData(ctx, values))
        if [int(d) for d in s.column_dims] != list(data["column_dims"]):
            raise VerificationError("stored column dims disagree with the checks")
        return s
    mode = data["mode"]
    gamma = _hexes(data["gamma"])
    family = PairFamily(ctx, W, L, tau_w, mode, gamma, dual_basis(ctx, gamma))
    a_star, a_bar = _hexes(data["targets"])
    d = ctx.sub(a_bar, a_star)
    g_checks = [_hexes(g) for g in data["g_checks"]]
    h_checks = [_hexes(g) for g in data["h_checks"]]
    g_values = np.stack([multipoint_eval(ctx, g, code.points) for g in g_checks], axis=1)
    h_values = np.stack([multipoint_eval(ctx, g, code.points) for g in h_checks], axis=1)
    s = PairScheme(
        code,
        family,
        (a_star, a_bar),
        basis,
        [ctx.mul(g, d) for g in family.gamma_dual],
        g_checks,
        h_checks,
        g_values,
        h_values,
        ColumnData(ctx, g_values),
        ColumnData(ctx, h_values),
    )
    dims = data["column_dims"]
    if [int(x) for x in s.g_columns.rank] != list(dims["g"]) or [int(x) for x in s.h_columns.rank] != list(dims["h"]):
        raise VerificationError("stored column dims disagree with the checks")
    return s


def verify_scheme(s: SingleScheme | PairScheme) -> None:
    """Re-check every defining identity from the stored data; raises VerificationError."""
    ctx = s.ctx
    L = subspace_poly(ctx, s.W)
    _require(L == s.L, "stored L_W is not the subspace polynomial of W")
    _require(L.coeffs[0] == s.tau, "stored tau is not the x-coefficient of L_W")
    if isinstance(s, SingleScheme):
        _verify_single(s, full=True)
        return
    d = ctx.sub(s.targets[1], s.targets[0])
    _require(all(ctx.mul(b, d) == g for b, g in zip(s.basis, s.family.gamma)), "basis is not gamma / (alpha_bar - alpha*)")
    if s.mode == "one_round":
        _require(check_P2(ctx, s.W, L), "W fails P2")
    else:
        _require(check_P3(ctx, s.W, L) and check_P4(ctx, s.W, L), "W fails P3/P4")
    _require(Subspace.span(ctx, s.family.gamma[: s.m]) == s.W, "gamma_1..m do not span W")
    _verify_pair(s, full=True)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_table(ctx: FieldCtx, blocks, dims, symbol: str) -> str:
    def cell(v: int) -> str:
        return "·" if v == 0 else ctx.power_str(int(v), symbol)

    first_vals = blocks[0][1]
    n = first_vals.shape[0]
    header = [""] + [f"j={j + 1}" for j in range(n)]
    rows = [header]
    for name, vals in blocks:
        for i in range(vals.shape[1]):
            rows.append([f"{name}{i + 1}"] + [cell(v) for v in vals[:, i]])
    if dims is not None:
        rows.append(["dim"] + [str(int(d)) for d in dims])
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    return "\n".join(" ".join(x.rjust(w) for x, w in zip(r, widths)) for r in rows)
