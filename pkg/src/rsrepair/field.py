"""Exact arithmetic in GF(p^e) viewed as an extension GF(q^ell) of GF(q), q = p^s.

Elements are plain integers packing the polynomial-basis coordinates over
GF(p): for p = 2 the bits are the coefficients, for odd p the base-p digits
are.  Subfields are not separate objects; GF(q^t) inside GF(q^ell) is the set
of elements fixed by a -> a^(q^t).

Log/antilog tables are built when p^e <= 2^16, which covers every field the
repair constructions are exercised on.  Larger fields (up to 2^32) fall back to
schoolbook multiplication.
"""

from __future__ import annotations

import re
from functools import cached_property

import numpy as np

__all__ = [
    "FieldCtx",
    "FieldError",
    "Subspace",
    "create_field",
    "parse_field_spec",
    "parse_base_spec",
    "trace_to",
    "dual_basis",
    "rank_over_subfield",
]

TABLE_LIMIT = 1 << 16
MAX_ORDER = 1 << 32

# Pinned moduli, keyed by (p, e).  Encoded as integers in the packed
# coordinate encoding, leading coefficient included.
DEFAULT_MODULI: dict[tuple[int, int], int] = {
    (2, 1): 0b10,
    (2, 2): 0b111,
    (2, 3): 0b1011,
    (2, 4): 0b10011,
    (2, 5): 0b100101,
    (2, 6): 0b1000011,
    (2, 7): 0b10001001,
    (2, 8): 0x11D,
    (2, 9): 0x211,
    (2, 10): 0x409,
    (2, 11): 0x805,
    (2, 12): 0x1053,
    (2, 13): 0x201B,
    (2, 14): 0x4443,
    (2, 15): 0x8003,
    (2, 16): 0x1100B,
}


class FieldError(ValueError):
    """Invalid field parameters or a failed field-level precondition."""


# ---------------------------------------------------------------------------
# small integer helpers
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(a: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


# ---------------------------------------------------------------------------
# polynomials over GF(p) for irreducibility checks and slow multiplication
# ---------------------------------------------------------------------------

def _clmul_mod(a: int, b: int, modulus: int, e: int) -> int:
    r = 0
    top = 1 << e
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return r


def _gf2_polymod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _fp_polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by monic m, coefficient lists low-to-high."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def _is_irreducible(modulus: int, p: int, e: int) -> bool:
    if e == 1:
        return True
    if p == 2:
        if not modulus & 1:
            return False
        for d in range(1, e // 2 + 1):
            for g in range(1 << d, 1 << (d + 1)):
                if _gf2_polymod(modulus, g) == 0:
                    return False
        return True
    m = _digits(modulus, p, e + 1)
    if m[0] == 0:
        return False
    for d in range(1, e // 2 + 1):
        for low in range(p ** d):
            g = _digits(low, p, d) + [1]
            if not any(_fp_polymod(m, g, p)):
                return False
    return True


# ---------------------------------------------------------------------------
# the field context
# ---------------------------------------------------------------------------

class FieldCtx:
    """GF(q^ell) with q = p^s, stored over the prime field GF(p).

    Immutable after construction; every method is a pure function of its
    arguments, so a context can be shared freely.
    """

    def __init__(self, p: int, s: int, ell: int, modulus: int | None = None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if s < 1 or ell < 1:
            raise FieldError("s and ell must be >= 1")
        e = s * ell
        order = p ** e
        if order > MAX_ORDER:
            raise FieldError(f"field order {p}^{e} exceeds 2^32")
        self.p = p
        self.s = s
        self.ell = ell
        self.e = e
        self.q = p ** s
        self.order = order
        if modulus is None:
            modulus = DEFAULT_MODULI.get((p, e)) or _search_primitive_modulus(p, e)
        if not (p ** e <= modulus < 2 * p ** e if p == 2 else p ** e <= modulus < p ** (e + 1)):
            raise FieldError(f"modulus {modulus:#x} does not have degree {e}")
        if modulus // p ** e != 1:
            raise FieldError("modulus must be monic")
        if not _is_irreducible(modulus, p, e):
            raise FieldError(f"modulus {modulus:#x} is reducible over GF({p})")
        self.modulus = modulus
        self._mod_digits = _digits(modulus, p, e + 1)

        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self.primitive_elt = self._find_primitive()
        if order <= TABLE_LIMIT:
            self._build_tables()

    # -- construction ----------------------------------------------------

    def _find_primitive(self) -> int:
        n1 = self.order - 1
        if n1 == 1:
            return 1
        factors = _prime_factors(n1)
        candidates = [self.p] if self.e > 1 else []
        candidates += [c for c in range(2, self.order) if c != self.p]
        for g in candidates:
            if all(self._pow_slow(g, n1 // f) != 1 for f in factors):
                return g
        raise FieldError("no primitive element found (internal error)")

    def _build_tables(self) -> None:
        n1 = self.order - 1
        exp = [0] * (2 * n1)
        log = [0] * self.order
        g = self.primitive_elt
        x = 1
        for i in range(n1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        if x != 1:
            raise FieldError("primitive element has wrong order (internal error)")
        exp[n1:] = exp[:n1]
        self._exp = exp
        self._log = log
        # numpy tables: log[0] points past the live region so a zero operand
        # always lands on a zero entry.
        sentinel = 2 * n1
        self._exp_np = np.zeros(4 * n1 + 1, dtype=np.int64)
        self._exp_np[: 2 * n1] = np.asarray(exp, dtype=np.int64)
        self._log_np = np.asarray(log, dtype=np.int64)
        self._log_np[0] = sentinel

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.p, self.s, self.ell, self.modulus)

    def __repr__(self):
        return f"FieldCtx(GF({self.q}^{self.ell}), modulus={self.modulus:#x})"

    @property
    def spec(self) -> str:
        return f"gf({self.p}^{self.e})/{self.modulus:#x}"

    @property
    def base_spec(self) -> str:
        return f"gf({self.p}^{self.s})"

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    @property
    def binary(self) -> bool:
        """True when coordinates over the base field are the packed bits."""
        return self.p == 2 and self.s == 1

    def dtype(self):
        return np.int64

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, self.e), _digits(b, p, self.e))], p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        return _undigits([(-x) % p for x in _digits(a, p, self.e)], p)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        return _undigits([(x - y) % p for x, y in zip(_digits(a, p, self.e), _digits(b, p, self.e))], p)

    def smul(self, c: int, a: int) -> int:
        """Multiply by an integer scalar (an element of the prime field)."""
        c %= self.p
        if c == 0:
            return 0
        if c == 1:
            return a
        p = self.p
        return _undigits([(c * x) % p for x in _digits(a, p, self.e)], p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            return _clmul_mod(a, b, self.modulus, self.e)
        p, e = self.p, self.e
        da = _digits(a, p, e)
        db = _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        prod = [c % p for c in prod]
        return _undigits(_fp_polymod(prod, self._mod_digits, p) if len(prod) > e else prod, p)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._pow_slow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        if k < 0:
            a, k = self.inv(a), -k
        return self._pow_slow(a, k)

    def _pow_slow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            k >>= 1
        return r

    def frob(self, a: int, k: int = 1) -> int:
        """a^(q^k)."""
        return self.pow(a, self.q ** (k % self.ell) if self.ell else 1)

    def log(self, a: int) -> int:
        """Discrete logarithm to the base primitive_elt."""
        if a == 0:
            raise FieldError("log of zero")
        if self._log is not None:
            return self._log[a]
        g, x = self.primitive_elt, 1
        for i in range(self.order - 1):
            if x == a:
                return i
            x = self._mul_slow(x, g)
        raise FieldError("log not found (internal error)")

    def exp(self, k: int) -> int:
        return self.pow(self.primitive_elt, k)

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    # -- traces and subfields ----------------------------------------------

    def trace(self, a: int) -> int:
        """Tr from GF(q^ell) down to GF(q)."""
        if self._trace_table is not None:
            return int(self._trace_table[a])
        return trace_to(self, a, 1)

    @cached_property
    def _trace_table(self):
        if not self.has_tables:
            return None
        return self._vtrace_to(np.arange(self.order, dtype=np.int64), 1)

    def in_subfield(self, a: int, t: int = 1) -> bool:
        """Whether a lies in GF(q^t); t must divide ell."""
        if self.ell % t:
            raise FieldError(f"{t} does not divide ell={self.ell}")
        return self.pow(a, self.q ** t) == a

    def subfield_generator(self, t: int) -> int:
        """A primitive element of GF(q^t)."""
        if self.ell % t:
            raise FieldError(f"{t} does not divide ell={self.ell}")
        return self.pow(self.primitive_elt, (self.order - 1) // (self.q ** t - 1))

    def subfield_basis(self, t: int) -> list[int]:
        """GF(q)-basis {z^0, ..., z^(t-1)} of GF(q^t), z = subfield_generator(t)."""
        z = self.subfield_generator(t)
        return [self.pow(z, i) for i in range(t)]

    def subfield_elements(self, t: int) -> list[int]:
        z = self.subfield_generator(t)
        return [0] + [self.pow(z, i) for i in range(self.q ** t - 1)]

    @cached_property
    def prime_field_gen(self) -> int:
        return 1

    # -- coordinates over GF(q) ---------------------------------------------

    @cached_property
    def fq_basis(self) -> tuple[int, ...]:
        """The fixed GF(q)-basis used for coordinates.

        For s = 1 this is the polynomial basis, so coordinates are the packed
        digits.  Otherwise it is {xi^0, ..., xi^(ell-1)} for the primitive xi.
        """
        if self.s == 1:
            return tuple(self.p ** i for i in range(self.e))
        return tuple(self.pow(self.primitive_elt, i) for i in range(self.ell))

    @cached_property
    def fq_dual_basis(self) -> tuple[int, ...]:
        return tuple(dual_basis(self, list(self.fq_basis)))

    def coords(self, a: int) -> tuple[int, ...]:
        """Coordinates of a over GF(q) in fq_basis (entries are field elements in GF(q))."""
        if self.s == 1:
            return tuple(_digits(a, self.p, self.e))
        return tuple(self.trace(self.mul(d, a)) for d in self.fq_dual_basis)

    def from_coords(self, v) -> int:
        if self.s == 1:
            return _undigits(list(v), self.p)
        acc = 0
        for c, b in zip(v, self.fq_basis):
            acc = self.add(acc, self.mul(c, b))
        return acc

    @cached_property
    def fq_elements(self) -> tuple[int, ...]:
        """GF(q) as a sorted tuple of field elements."""
        if self.s == 1:
            return tuple(range(self.p))
        return tuple(sorted(self.subfield_elements(1)))

    @cached_property
    def fq_index(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.fq_elements)}

    # -- vectorised arithmetic (numpy int64 arrays) -------------------------

    def asarray(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64)

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.has_tables:
            return self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.vectorize(self.mul, otypes=[np.int64])(a, b)

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return self._vdigitwise(a, b, 1)

    def vsub(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return self._vdigitwise(a, b, -1)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return self._vdigitwise(np.zeros_like(a), a, -1)

    def _vdigitwise(self, a, b, sign):
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.e):
            da = (a // place) % p
            db = (b // place) % p
            out += ((da + sign * db) % p) * place
            place *= p
        return out

    def vsum(self, a, axis=None) -> np.ndarray:
        """Field sum along an axis."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis) if a.size else np.zeros((), np.int64)
        p = self.p
        out = None
        place = 1
        for _ in range(self.e):
            d = ((a // place) % p).sum(axis=axis) % p
            out = d * place if out is None else out + d * place
            place *= p
        return np.asarray(out, dtype=np.int64)

    def vpow(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        if self.has_tables:
            n1 = self.order - 1
            res = self._exp_np[(self._log_np[a] % n1) * (k % n1) % n1]
            if k > 0:
                res = np.where(a == 0, 0, res)
            return res
        return np.vectorize(lambda x: self.pow(x, k), otypes=[np.int64])(a)

    def vtrace(self, a) -> np.ndarray:
        """Tr to GF(q), elementwise."""
        a = np.asarray(a, dtype=np.int64)
        if self._trace_table is not None:
            return self._trace_table[a]
        return self._vtrace_to(a, 1)

    def _vtrace_to(self, a, t):
        acc = np.zeros_like(a)
        step = self.q ** t
        x = a
        for _ in range(self.ell // t):
            acc = self.vadd(acc, x)
            x = self.vpow(x, step)
        return acc

    def vcoords(self, a) -> np.ndarray:
        """Coordinates over GF(q); shape a.shape + (ell,)."""
        a = np.asarray(a, dtype=np.int64)
        if self.s == 1:
            if self.p == 2:
                shifts = np.arange(self.e, dtype=np.int64)
                return (a[..., None] >> shifts) & 1
            p = self.p
            places = p ** np.arange(self.e, dtype=np.int64)
            return (a[..., None] // places) % p
        cols = [self.vtrace(self.vmul(d, a)) for d in self.fq_dual_basis]
        return np.stack(cols, axis=-1)

    # -- formatting ----------------------------------------------------------

    def hex(self, a: int) -> str:
        return f"{a:#x}"

    def power_str(self, a: int, symbol: str = "ξ") -> str:
        if a == 0:
            return "0"
        k = self.log(a)
        if k == 0:
            return "1"
        if k == 1:
            return symbol
        return f"{symbol}^{k}"


def _search_primitive_modulus(p: int, e: int) -> int:
    if e == 1:
        return p
    for low in range(1, p ** e):
        modulus = p ** e + low
        if not _is_irreducible(modulus, p, e):
            continue
        try:
            ctx = FieldCtx(p, 1, e, modulus)
        except FieldError:
            continue
        if ctx.primitive_elt == p:
            return modulus
    raise FieldError(f"no primitive modulus found for GF({p}^{e})")


def create_field(p: int, s: int, ell: int, modulus: int | None = None) -> FieldCtx:
    """Build GF((p^s)^ell) with a verified-irreducible modulus and primitive element."""
    return FieldCtx(p, s, ell, modulus)


_SPEC_RE = re.compile(r"^\s*gf\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)\s*(?:/\s*(0x[0-9a-fA-F]+|\d+))?\s*$")


def _parse_gf(text: str):
    m = _SPEC_RE.match(text)
    if not m:
        col = _first_bad_col(text)
        raise FieldError(f"cannot parse field spec {text!r} at col {col}: expected 'gf(p^e)' or 'gf(p^e)/0xMOD'")
    base = int(m.group(1))
    exp = int(m.group(2)) if m.group(2) else 1
    if not _is_prime(base):
        # allow gf(256) style prime-power shorthand
        fs = _prime_factors(base)
        if len(fs) != 1 or m.group(2):
            raise FieldError(f"{base} is not a prime (in {text!r})")
        p = fs[0]
        k = 0
        n = base
        while n > 1:
            n //= p
            k += 1
        base, exp = p, k
    mod = int(m.group(3), 0) if m.group(3) else None
    return base, exp, mod


def _first_bad_col(text: str) -> int:
    t = text.strip()
    if not t.lower().startswith("gf("):
        return 1
    i = 3
    while i < len(t) and t[i].isdigit():
        i += 1
    if i < len(t) and t[i] == "^":
        i += 1
        while i < len(t) and t[i].isdigit():
            i += 1
    if i < len(t) and t[i] == ")":
        i += 1
        if i < len(t) and t[i] == "/":
            i += 1
            while i < len(t) and (t[i].isalnum()):
                i += 1
    return i + 1


def parse_field_spec(text: str, base: str | None = None) -> FieldCtx:
    """Parse 'gf(p^e)/0xMOD' (modulus optional) with an optional base 'gf(p^s)'."""
    p, e, mod = _parse_gf(text)
    s = 1
    if base is not None:
        bp, bs, bmod = _parse_gf(base)
        if bp != p:
            raise FieldError(f"base field {base!r} has characteristic {bp}, coding field has {p}")
        if bmod is not None:
            raise FieldError("base field spec takes no modulus")
        if e % bs:
            raise FieldError(f"base field degree {bs} does not divide {e}")
        s = bs
    return FieldCtx(p, s, e // s, mod)


def parse_base_spec(text: str) -> tuple[int, int]:
    p, s, _ = _parse_gf(text)
    return p, s


# ---------------------------------------------------------------------------
# traces, dual bases, ranks
# ---------------------------------------------------------------------------

def trace_to(ctx: FieldCtx, a: int, target_degree: int) -> int:
    """Tr from GF(q^ell) onto GF(q^t): sum of a^((q^t)^i), i < ell/t."""
    t = target_degree
    if t < 1 or ctx.ell % t:
        raise FieldError(f"target degree {t} does not divide ell={ctx.ell}")
    step = ctx.q ** t
    acc = 0
    x = a
    for _ in range(ctx.ell // t):
        acc = ctx.add(acc, x)
        x = ctx.pow(x, step)
    return acc


def dual_basis(ctx: FieldCtx, basis: list[int]) -> list[int]:
    """Trace-dual basis: Tr(b_i * d_j) = [i == j].

    Inverts the Gram matrix G_ij = Tr(b_i b_j) over GF(q); the dual is G^-1 b.
    """
    from .linalg import invert_matrix

    n = len(basis)
    if n != ctx.ell:
        raise FieldError(f"need {ctx.ell} elements for a basis, got {n}")
    gram = [[ctx.trace(ctx.mul(bi, bj)) for bj in basis] for bi in basis]
    try:
        inv = invert_matrix(ctx, gram)
    except ZeroDivisionError:
        raise FieldError("elements do not form a basis (singular trace Gram matrix)") from None
    out = []
    for row in inv:
        acc = 0
        for c, b in zip(row, basis):
            acc = ctx.add(acc, ctx.mul(c, b))
        out.append(acc)
    return out


def rank_over_subfield(ctx: FieldCtx, elts, sub_degree: int = 1) -> int:
    """Rank of elts as vectors over GF(q^sub_degree); only sub_degree = 1 is supported."""
    if sub_degree != 1:
        raise FieldError("only ranks over GF(q) are supported")
    from .linalg import Echelon

    ech = Echelon(ctx)
    for a in elts:
        ech.add(a)
    return ech.rank


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

ENUM_LIMIT = 20


class Subspace:
    """A GF(q)-subspace of GF(q^ell) held as an independent basis."""

    def __init__(self, ctx: FieldCtx, basis, *, check: bool = True):
        self.ctx = ctx
        basis = tuple(int(b) for b in basis)
        if check:
            from .linalg import Echelon

            ech = Echelon(ctx)
            for b in basis:
                indep, _ = ech.add(b)
                if not indep:
                    raise FieldError("subspace basis is linearly dependent over GF(q)")
        self.basis = basis
        self._ech = None

    @classmethod
    def span(cls, ctx: FieldCtx, elts) -> "Subspace":
        """Subspace spanned by arbitrary elements (dependent ones dropped)."""
        from .linalg import Echelon

        ech = Echelon(ctx)
        kept = [a for a in elts if ech.add(a)[0]]
        return cls(ctx, kept, check=False)

    @classmethod
    def subfield(cls, ctx: FieldCtx, t: int) -> "Subspace":
        return cls(ctx, ctx.subfield_basis(t), check=False)

    @classmethod
    def whole(cls, ctx: FieldCtx) -> "Subspace":
        return cls(ctx, ctx.fq_basis, check=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.ctx.q ** self.dim

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={[hex(b) for b in self.basis]})"

    def _echelon(self):
        if self._ech is None:
            from .linalg import Echelon

            ech = Echelon(self.ctx)
            for b in self.basis:
                ech.add(b)
            self._ech = ech
        return self._ech

    def __contains__(self, a: int) -> bool:
        return self._echelon().contains(int(a))

    def coordinates(self, a: int) -> list[int]:
        """Coefficients of a on self.basis (raises if a is not in the subspace)."""
        combo = self._echelon().express(int(a))
        if combo is None:
            raise FieldError(f"{a:#x} is not in the subspace")
        return [combo.get(i, 0) for i in range(self.dim)]

    def enumerate(self):
        """Yield all q^dim elements (dim <= 20)."""
        if self.dim > ENUM_LIMIT:
            raise FieldError(f"subspace of dimension {self.dim} is too large to enumerate")
        ctx = self.ctx
        if ctx.p == 2 and ctx.s == 1:
            # Gray-code walk over the bit basis
            x = 0
            yield 0
            for i in range(1, 1 << self.dim):
                x ^= self.basis[(i & -i).bit_length() - 1]
                yield x
            return
        elems = [0]
        for b in self.basis:
            multiples = [ctx.mul(c, b) for c in ctx.fq_elements]
            elems = [ctx.add(x, m) for m in multiples for x in elems]
        yield from elems

    def elements(self) -> list[int]:
        return list(self.enumerate())

    def issubset(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ctx == other.ctx
            and self.dim == other.dim
            and self.issubset(other)
        )

    def __hash__(self):
        return hash((self.ctx, self.dim))

    def intersection(self, other: "Subspace") -> "Subspace":
        from .linalg import intersect

        return Subspace(self.ctx, intersect(self.ctx, self.basis, other.basis), check=False)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ctx, self.basis + other.basis)

    def scaled(self, c: int) -> "Subspace":
        """c * self, for c != 0."""
        if c == 0:
            raise FieldError("scaling a subspace by zero")
        return Subspace(self.ctx, [self.ctx.mul(c, b) for b in self.basis], check=False)

    def extend_to_basis(self, pool=None) -> list[int]:
        """This basis followed by greedily chosen pool elements up to a full basis."""
        from .linalg import Echelon

        ech = Echelon(self.ctx)
        out = []
        for b in self.basis:
            ech.add(b)
            out.append(b)
        for c in pool if pool is not None else self.ctx.fq_basis:
            if len(out) == self.ctx.ell:
                break
            if ech.add(c)[0]:
                out.append(c)
        if len(out) != self.ctx.ell:
            raise FieldError("pool does not complete the basis")
        return out

    def product_of_nonzero(self) -> int:
        acc = 1
        ctx = self.ctx
        for w in self.enumerate():
            if w:
                acc = ctx.mul(acc, w)
        return acc

    def to_json(self):
        return [hex(b) for b in self.basis]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "Subspace":
        return cls(ctx, [int(x, 16) for x in data])


