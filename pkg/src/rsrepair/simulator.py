"""Message-level execution of the trace-repair protocols with exact bandwidth accounting.

A replacement node (RN) never sees a symbol value.  It holds the public scheme,
the traces it has received, and the target traces it has solved for; asking it
for anything else raises :class:`CheatingDetected`.  Helpers read only their
own symbol through :class:`~rsrepair.rscode.ErasedCodeword`, which refuses
reads of erased positions.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FieldCtx, Subspace
from .rscode import CodeSpec, Codeword, ErasedCodeword, ErasedSymbolAccess, random_codeword
from .schemes import (
    PairFamily,
    PairScheme,
    SingleScheme,
    VerificationError,
    construction_I,
    construction_II,
    construction_III,
    prepare_pair_family,
)

__all__ = [
    "CheatingDetected",
    "SchemeMismatch",
    "Message",
    "DownloadRecord",
    "RepairTranscript",
    "simulate_single",
    "simulate_pair_one_round",
    "simulate_pair_multi_round",
    "simulate_pair",
    "sweep_single",
    "sweep_pairs",
    "SweepSummary",
    "EXHAUSTIVE_LIMIT",
    "SAMPLE_SIZE",
]

EXHAUSTIVE_LIMIT = 100_000
SAMPLE_SIZE = 10_000


class CheatingDetected(VerificationError):
    """An RN used information it was never sent."""


class NoCheatingMonitor:
    """Counts protocol violations; every violation also raises."""

    def __init__(self):
        self.erased_reads = 0
        self.unreceived_uses = 0
        self.runs = 0

    @property
    def violations(self) -> int:
        return self.erased_reads + self.unreceived_uses

    def reset(self) -> None:
        self.__init__()


monitor = NoCheatingMonitor()


class SchemeMismatch(ValueError):
    """The scheme does not belong to the codeword or erasure pattern."""


# ---------------------------------------------------------------------------
# transcript
# ---------------------------------------------------------------------------

@dataclass
class Message:
    src: int
    dst: int
    phase: str
    round: int
    traces: list[int]

    @property
    def subsymbols(self) -> int:
        return len(self.traces)


@dataclass
class DownloadRecord:
    """All helper-to-RN traffic for one RN, kept as arrays."""

    dst: int
    helpers: np.ndarray
    counts: np.ndarray
    traces: np.ndarray  # (len(helpers), ell), entries past counts[h] unused

    @property
    def subsymbols(self) -> int:
        return int(self.counts.sum())

    def messages(self):
        for h, c, row in zip(self.helpers, self.counts, self.traces):
            yield Message(int(h), self.dst, "download", 0, [int(x) for x in row[:c]])


@dataclass
class RepairTranscript:
    erased: tuple[int, ...]
    bits_per_subsymbol: float
    downloads: dict[int, DownloadRecord] = dc_field(default_factory=dict)
    rounds: list[list[Message]] = dc_field(default_factory=list)
    recovered_batches: dict[int, list[list[int]]] = dc_field(default_factory=dict)
    recovered: dict[int, int] = dc_field(default_factory=dict)
    recovered_ok: bool = False
    helper_reads: int = 0

    def download_subsymbols(self, rn: int) -> int:
        rec = self.downloads.get(rn)
        return rec.subsymbols if rec else 0

    def collaboration_subsymbols(self, rn: int) -> int:
        return sum(msg.subsymbols for rnd in self.rounds for msg in rnd if msg.dst == rn)

    def round_subsymbols(self, rn: int) -> list[int]:
        return [sum(m.subsymbols for m in rnd if m.dst == rn) for rnd in self.rounds]

    def subsymbols(self, rn: int) -> int:
        """Total subsymbols delivered to one RN (its repair bandwidth)."""
        return self.download_subsymbols(rn) + self.collaboration_subsymbols(rn)

    def bits(self, rn: int) -> float:
        return self.subsymbols(rn) * self.bits_per_subsymbol

    @property
    def total_subsymbols(self) -> int:
        return sum(self.subsymbols(rn) for rn in self.erased)

    @property
    def total_bits(self) -> float:
        return self.total_subsymbols * self.bits_per_subsymbol

    @property
    def n_rounds(self) -> int:
        return len(self.rounds)

    def batch_sizes(self, rn: int) -> list[int]:
        """Target traces recovered per collaboration round (download batch excluded)."""
        return [len(b) for b in self.recovered_batches.get(rn, [])[1:]]

    def size_signature(self):
        """Everything about the transcript that must not depend on the data."""
        return (
            self.erased,
            tuple((rn, tuple(rec.helpers.tolist()), tuple(rec.counts.tolist())) for rn, rec in sorted(self.downloads.items())),
            tuple(tuple((m.src, m.dst, m.subsymbols) for m in rnd) for rnd in self.rounds),
            tuple((rn, tuple(map(tuple, b))) for rn, b in sorted(self.recovered_batches.items())),
        )

    def to_json(self) -> dict:
        phases = []
        for rn in sorted(self.downloads):
            for msg in self.downloads[rn].messages():
                phases.append(_msg_json(msg))
        for rnd in self.rounds:
            phases.extend(_msg_json(m) for m in rnd)
        return {
            "erased": list(self.erased),
            "phases": phases,
            "per_erasure": {
                str(rn): {
                    "download": self.download_subsymbols(rn),
                    "collaboration": self.round_subsymbols(rn),
                    "subsymbols": self.subsymbols(rn),
                    "bits": self.bits(rn),
                }
                for rn in self.erased
            },
            "totals": {"subsymbols": self.total_subsymbols, "bits": self.total_bits},
            "recovered": {str(rn): hex(v) for rn, v in self.recovered.items()},
            "recovered_ok": self.recovered_ok,
        }


def _msg_json(m: Message) -> dict:
    return {
        "from": m.src,
        "to": m.dst,
        "phase": m.phase,
        "round": m.round,
        "subsymbols": m.subsymbols,
        "traces_hex": [hex(t) for t in m.traces],
    }


# ---------------------------------------------------------------------------
# helpers and replacement nodes
# ---------------------------------------------------------------------------

def _parity(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> 32)
    x = x ^ (x >> 16)
    x = x ^ (x >> 8)
    x = x ^ (x >> 4)
    x = x ^ (x >> 2)
    x = x ^ (x >> 1)
    return x & 1


def _helper_traces(ctx: FieldCtx, values, columns, lambdas, word: ErasedCodeword, helpers: np.ndarray):
    """What each helper sends: Tr(lambda_h * v * c_h) for v in its column basis."""
    try:
        c = word.helper_symbols(helpers)
    except ErasedSymbolAccess:
        monitor.erased_reads += 1
        raise
    counts = columns.rank[helpers]
    bidx = columns.basis_idx[helpers]
    vals = np.take_along_axis(values[helpers], np.maximum(bidx, 0), axis=1)
    vals = np.where(bidx >= 0, vals, 0)
    scaled = ctx.vmul(vals, ctx.vmul(lambdas[helpers], c)[:, None])
    return counts, ctx.vtrace(scaled)


class ReplacementNode:
    """Solves for the traces Tr(lambda tau beta_i c) of its erased symbol.

    Public knowledge: the scheme side (check values and column data), the dual
    basis and the multipliers.  Private knowledge: received traces only.
    """

    def __init__(self, ctx: FieldCtx, index: int, values, columns, lam: int, tau_w: int, basis_dual):
        self.ctx = ctx
        self.index = index
        self.values = values
        self.columns = columns
        self.lam = lam
        scale = ctx.inv(ctx.mul(lam, tau_w))
        self.target_dual = [ctx.mul(scale, d) for d in basis_dual]
        self.known: dict[int, int] = {}
        self.helper_sums: np.ndarray | None = None
        self.batches: list[list[int]] = []

    def receive_download(self, rec: DownloadRecord) -> None:
        """Rebuild every helper's full set of repair traces and sum them per check."""
        ctx = self.ctx
        cols = self.columns
        h = rec.helpers
        T = rec.traces
        ell = T.shape[1]
        if cols.binary:
            tmask = np.zeros(len(h), dtype=np.int64)
            for k in range(ell):
                tmask |= T[:, k].astype(np.int64) << k
            full = _parity(cols.coef[h] & tmask[:, None])
        else:
            fq = np.asarray(ctx.fq_elements, dtype=np.int64)
            coefs = fq[cols.coef[h]]  # (H, ell, ell)
            full = ctx.vsum(ctx.vmul(coefs, T[:, None, :]), axis=2)
        self.helper_sums = ctx.vsum(full, axis=0).reshape(-1)

    def solve(self, i: int, partner_trace: int = 0) -> None:
        """Target trace i from the check equation, with the partner's term if any."""
        if self.helper_sums is None:
            monitor.unreceived_uses += 1
            raise CheatingDetected("solving before the download phase")
        ctx = self.ctx
        self.known[i] = ctx.neg(ctx.add(int(self.helper_sums[i]), partner_trace))

    def repair_trace(self, coeff_row) -> int:
        """Tr(lambda v c) for v = sum_j coeff_row[j] tau beta_j, from known target traces only."""
        ctx = self.ctx
        acc = 0
        for j, cj in enumerate(coeff_row):
            if cj:
                if j not in self.known:
                    monitor.unreceived_uses += 1
                    raise CheatingDetected(f"RN {self.index} used unknown target trace {j}")
                acc = ctx.add(acc, ctx.mul(cj, self.known[j]))
        return acc

    def reconstruct(self) -> int:
        ctx = self.ctx
        if len(self.known) != len(self.target_dual):
            monitor.unreceived_uses += 1
            raise CheatingDetected(f"RN {self.index} reconstructs with {len(self.known)} of {len(self.target_dual)} traces")
        acc = 0
        for i, d in enumerate(self.target_dual):
            acc = ctx.add(acc, ctx.mul(self.known[i], d))
        return acc


def _as_word(codeword, erased) -> tuple[ErasedCodeword, np.ndarray | None]:
    if isinstance(codeword, Codeword):
        return codeword.erase(*erased), codeword.symbols
    if isinstance(codeword, ErasedCodeword):
        if set(codeword.erased) != set(erased):
            raise SchemeMismatch("erasure pattern of the word differs from the requested one")
        return codeword, None
    raise TypeError("expected a Codeword or ErasedCodeword")


def _download(ctx, code, rn_index, values, columns, word, exclude) -> DownloadRecord:
    helpers = np.setdiff1d(np.arange(code.n), np.asarray(exclude))
    counts, traces = _helper_traces(ctx, values, columns, code.lambdas, word, helpers)
    return DownloadRecord(rn_index, helpers, counts, traces)


# ---------------------------------------------------------------------------
# single erasure
# ---------------------------------------------------------------------------

def simulate_single(scheme: SingleScheme, codeword, erased_index: int):
    """Repair one erased symbol with a construction-I scheme.

    Returns (recovered symbol, transcript).  When a full Codeword is given the
    result is compared with the original symbol.
    """
    ctx = scheme.ctx
    code = scheme.code
    j = int(erased_index)
    if scheme.target_index != j:
        raise SchemeMismatch(f"scheme repairs position {scheme.target_index}, not {j}")
    if getattr(codeword, "spec", code) != code:
        raise SchemeMismatch("codeword belongs to a different code")
    word, original = _as_word(codeword, [j])
    monitor.runs += 1
    tr = RepairTranscript((j,), ctx.s * math.log2(ctx.p))
    rn = ReplacementNode(ctx, j, scheme.values, scheme.columns, int(code.lambdas[j]), scheme.tau, _dual(scheme))
    rec = _download(ctx, code, j, scheme.values, scheme.columns, word, [j])
    tr.downloads[j] = rec
    rn.receive_download(rec)
    for i in range(ctx.ell):
        rn.solve(i)
    rn.batches.append(list(range(ctx.ell)))
    value = rn.reconstruct()
    tr.recovered[j] = value
    tr.recovered_batches[j] = rn.batches
    tr.helper_reads = word.reads
    tr.recovered_ok = original is None or value == int(original[j])
    if not tr.recovered_ok:
        raise VerificationError(f"repair of position {j} returned a wrong symbol")
    return value, tr


def _dual(scheme: SingleScheme) -> list[int]:
    cached = getattr(scheme, "_dual_cache", None)
    if cached is None:
        from .field import dual_basis

        cached = dual_basis(scheme.ctx, scheme.basis)
        scheme._dual_cache = cached
    return cached


# ---------------------------------------------------------------------------
# two erasures
# ---------------------------------------------------------------------------

def _cross_coefficients(ctx: FieldCtx, scheme: PairScheme, side: int) -> list[list[int]]:
    """Row i: coordinates of (side's check i at the other point) on {tau beta_j}.

    The other RN can hand over the matching repair trace exactly when the row
    is supported on target traces it already knows.
    """
    _, values, _ = scheme.side(side)
    other = scheme.target_indices[1 - side]
    tau_inv = ctx.inv(scheme.tau)
    duals = [ctx.mul(tau_inv, d) for d in scheme.basis_dual]
    rows = []
    for i in range(ctx.ell):
        v = int(values[other, i])
        rows.append([ctx.trace(ctx.mul(v, d)) for d in duals])
    return rows


def simulate_pair(scheme: PairScheme, codeword, erased=None):
    """Run the download and collaboration phases for both RNs.

    Each collaboration round, every RN sends all still-needed repair traces
    it can already compute; both directions of a round count as simultaneous.
    """
    ctx = scheme.ctx
    code = scheme.code
    ell, m = ctx.ell, scheme.m
    js, jb = scheme.target_indices
    if erased is not None and tuple(int(x) for x in erased) != (js, jb):
        raise SchemeMismatch(f"scheme repairs positions {(js, jb)}, not {tuple(erased)}")
    if getattr(codeword, "spec", code) != code:
        raise SchemeMismatch("codeword belongs to a different code")
    word, original = _as_word(codeword, [js, jb])
    monitor.runs += 1
    tr = RepairTranscript((js, jb), ctx.s * math.log2(ctx.p))
    lam = code.lambdas
    nodes = []
    for side, j in ((0, js), (1, jb)):
        _, values, columns = scheme.side(side)
        rn = ReplacementNode(ctx, j, values, columns, int(lam[j]), scheme.tau, scheme.basis_dual)
        rec = _download(ctx, code, j, values, columns, word, [js, jb])
        tr.downloads[j] = rec
        rn.receive_download(rec)
        for i in range(m):
            rn.solve(i)
        rn.batches.append(list(range(m)))
        nodes.append(rn)
    cross = [_cross_coefficients(ctx, scheme, 0), _cross_coefficients(ctx, scheme, 1)]
    pending = [list(range(m, ell)), list(range(m, ell))]
    rnd = 0
    while pending[0] or pending[1]:
        rnd += 1
        outgoing = []
        for side in (0, 1):
            sender = nodes[1 - side]
            ready = [i for i in pending[side] if all(j in sender.known for j, c in enumerate(cross[side][i]) if c)]
            traces = [sender.repair_trace(cross[side][i]) for i in ready]
            outgoing.append((side, ready, Message(sender.index, nodes[side].index, "collaboration", rnd, traces)))
        if not any(ready for _, ready, _ in outgoing):
            raise VerificationError("collaboration stalled: no repair trace is computable")
        msgs = []
        for side, ready, msg in outgoing:
            for i, t in zip(ready, msg.traces):
                nodes[side].solve(i, t)
            nodes[side].batches.append(ready)
            pending[side] = [i for i in pending[side] if i not in ready]
            msgs.append(msg)
        tr.rounds.append(msgs)
    ok = True
    for rn in nodes:
        v = rn.reconstruct()
        tr.recovered[rn.index] = v
        tr.recovered_batches[rn.index] = rn.batches
        if original is not None and v != int(original[rn.index]):
            ok = False
    tr.helper_reads = word.reads
    tr.recovered_ok = ok
    if not ok:
        raise VerificationError(f"pair repair of {(js, jb)} returned a wrong symbol")
    return (tr.recovered[js], tr.recovered[jb]), tr


def simulate_pair_one_round(scheme: PairScheme, codeword, erased=None):
    if scheme.mode != "one_round":
        raise SchemeMismatch("scheme is not a one-round (construction II) scheme")
    res, tr = simulate_pair(scheme, codeword, erased)
    if tr.n_rounds > 1:
        raise VerificationError("one-round scheme needed more than one collaboration round")
    return res, tr


def simulate_pair_multi_round(scheme: PairScheme, codeword, erased=None):
    if scheme.mode != "multi_round":
        raise SchemeMismatch("scheme is not a multi-round (construction III) scheme")
    res, tr = simulate_pair(scheme, codeword, erased)
    ell, m = scheme.ctx.ell, scheme.m
    expected = [m] * ((ell - m) // m) + ([ell % m] if ell % m else [])
    for rn in tr.erased:
        if tr.batch_sizes(rn) != expected:
            raise VerificationError(f"batch sizes {tr.batch_sizes(rn)} differ from {expected}")
    return res, tr


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

@dataclass
class SweepSummary:
    kind: str
    n: int
    erasures_tested: int
    exhaustive: bool
    codewords: int
    min_subsymbols: int
    max_subsymbols: int
    mean_subsymbols: float
    bits_per_subsymbol: float
    all_ok: bool
    samples: int = 0
    rounds: dict[int, int] = dc_field(default_factory=dict)
    batch_shapes: dict[tuple, int] = dc_field(default_factory=dict)
    rows: list[dict] = dc_field(default_factory=list)

    @property
    def max_bits(self) -> float:
        return self.max_subsymbols * self.bits_per_subsymbol

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "erasures_tested": self.erasures_tested,
            "exhaustive": self.exhaustive,
            "codewords": self.codewords,
            "subsymbols_per_erasure": {"min": self.min_subsymbols, "max": self.max_subsymbols, "mean": self.mean_subsymbols},
            "max_bits_per_erasure": self.max_bits,
            "all_ok": self.all_ok,
            "rounds": {str(k): v for k, v in sorted(self.rounds.items())},
            "batch_shapes": {",".join(map(str, k)): v for k, v in sorted(self.batch_shapes.items())},
        }


def _summary(kind, code, tested, exhaustive, ncw, per_erasure, ok, rounds=None, shapes=None, rows=None):
    ctx = code.ctx
    arr = np.asarray(per_erasure) if per_erasure else np.zeros(1, dtype=np.int64)
    return SweepSummary(
        kind,
        code.n,
        tested,
        exhaustive,
        ncw,
        int(arr.min()),
        int(arr.max()),
        float(arr.mean()),
        ctx.s * math.log2(ctx.p),
        ok,
        len(per_erasure),
        rounds or {},
        shapes or {},
        rows or [],
    )


def sweep_single(ctx: FieldCtx, W: Subspace, code: CodeSpec, codewords, positions=None, beta=None, keep_rows=True, on_scheme=None) -> SweepSummary:
    """Repair every position (or the given ones) of every codeword with construction I.

    on_scheme, if given, is called with each scheme before it is used.
    """
    positions = range(code.n) if positions is None else positions
    per, rows = [], []
    ok = True
    tested = 0
    for j in positions:
        scheme = construction_I(ctx, W, int(code.points[j]), beta, code)
        if on_scheme is not None:
            on_scheme(scheme)
        sig = None
        for cw in codewords:
            _, tr = simulate_single(scheme, cw, j)
            ok &= tr.recovered_ok
            s = tr.size_signature()
            if sig is None:
                sig = s
            elif s != sig:
                raise VerificationError("transcript size depends on the codeword")
            per.append(tr.subsymbols(j))
        tested += 1
        if keep_rows:
            rows.append({"erased": j, "subsymbols": per[-1], "bits": per[-1] * tr.bits_per_subsymbol, "ok": ok})
    return _summary("I", code, tested, True, len(codewords), per, ok, rows=rows)


def _pair_list(n: int, rng: np.random.Generator | None, limit: int, sample: int):
    total = n * (n - 1) // 2
    if total <= limit:
        return list(itertools.combinations(range(n), 2)), True
    if rng is None:
        raise ValueError("a seeded generator is required for sampled sweeps")
    seen = set()
    out = []
    while len(out) < sample:
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key not in seen:
            seen.add(key)
            out.append(key)
    out.sort()
    return out, False


def worker_count() -> int:
    """Worker processes for sweeps, from RSREPAIR_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("RSREPAIR_THREADS", "1")))
    except ValueError:
        return 1


def merge_summaries(parts: list[SweepSummary]) -> SweepSummary:
    """Combine sweeps over disjoint erasure sets; rows are sorted by erasure."""
    first = parts[0]
    samples = sum(p.samples for p in parts)
    rounds: dict[int, int] = {}
    shapes: dict[tuple, int] = {}
    for p in parts:
        for k, v in p.rounds.items():
            rounds[k] = rounds.get(k, 0) + v
        for k, v in p.batch_shapes.items():
            shapes[k] = shapes.get(k, 0) + v
    rows = sorted((row for p in parts for row in p.rows), key=lambda row: row["erased"])
    return SweepSummary(
        first.kind,
        first.n,
        sum(p.erasures_tested for p in parts),
        all(p.exhaustive for p in parts),
        first.codewords,
        min(p.min_subsymbols for p in parts),
        max(p.max_subsymbols for p in parts),
        sum(p.mean_subsymbols * p.samples for p in parts) / samples,
        first.bits_per_subsymbol,
        all(p.all_ok for p in parts),
        samples,
        rounds,
        shapes,
        rows,
    )


def _sweep_chunk(args):
    ctx, W, mode, code, codewords, chunk, keep_rows = args
    return sweep_pairs(ctx, W, mode, code, codewords, pairs=chunk, keep_rows=keep_rows, workers=1)


def sweep_pairs(
    ctx: FieldCtx,
    W: Subspace,
    mode: str,
    code: CodeSpec,
    codewords,
    pairs=None,
    rng: np.random.Generator | None = None,
    limit: int = EXHAUSTIVE_LIMIT,
    sample: int = SAMPLE_SIZE,
    family: PairFamily | None = None,
    keep_rows: bool = False,
    workers: int | None = None,
    on_scheme=None,
) -> SweepSummary:
    """Repair every unordered erasure pair (or a seeded sample) of every codeword.

    With more than one worker the pairs are split into contiguous chunks and
    run in separate processes; codewords and the scheme family are shared
    read-only, so the merged result equals the serial one.
    """
    exhaustive = pairs is None
    if pairs is None:
        pairs, exhaustive = _pair_list(code.n, rng, limit, sample)
    workers = worker_count() if workers is None else workers
    if on_scheme is not None:
        workers = 1
    if workers > 1 and len(pairs) > workers:
        size = -(-len(pairs) // workers)
        chunks = [pairs[i : i + size] for i in range(0, len(pairs), size)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_sweep_chunk, [(ctx, W, mode, code, codewords, c, keep_rows) for c in chunks]))
        merged = merge_summaries(parts)
        merged.exhaustive = exhaustive
        return merged
    family = prepare_pair_family(ctx, W, mode) if family is None else family
    build = construction_II if mode == "one_round" else construction_III
    run = simulate_pair_one_round if mode == "one_round" else simulate_pair_multi_round
    per, rows = [], []
    rounds: dict[int, int] = {}
    shapes: dict[tuple, int] = {}
    ok = True
    for a, b in pairs:
        scheme = build(ctx, W, int(code.points[a]), int(code.points[b]), code, family)
        if on_scheme is not None:
            on_scheme(scheme)
        sig = None
        for cw in codewords:
            _, tr = run(scheme, cw, (a, b))
            ok &= tr.recovered_ok
            s = tr.size_signature()
            if sig is None:
                sig = s
            elif s != sig:
                raise VerificationError("transcript size depends on the codeword")
            per.extend(tr.subsymbols(rn) for rn in tr.erased)
        rounds[tr.n_rounds] = rounds.get(tr.n_rounds, 0) + 1
        shape = tuple(tr.batch_sizes(a))
        shapes[shape] = shapes.get(shape, 0) + 1
        if keep_rows:
            rows.append({"erased": [a, b], "subsymbols": [tr.subsymbols(a), tr.subsymbols(b)], "rounds": tr.n_rounds, "ok": tr.recovered_ok})
    kind = "II" if mode == "one_round" else "III"
    return _summary(kind, code, len(pairs), exhaustive, len(codewords), per, ok, rounds, shapes, rows)


def random_codewords(code: CodeSpec, count: int, seed: int) -> list[Codeword]:
    rng = np.random.default_rng(seed)
    return [random_codeword(code, rng) for _ in range(count)]


__all__ += ["random_codewords", "ReplacementNode", "merge_summaries", "worker_count", "monitor", "NoCheatingMonitor"]
