"""Command-line interface: ``rsrepair {bound,build,simulate,sweep,verify}``.

Exit codes: 0 success, 2 invalid input or infeasible parameters, 3 a
verification failure (an invariant of a built scheme or a repair run broke).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .bounds import BoundError, integral_lower_bound
from .field import FieldCtx, FieldError, Subspace, parse_field_spec
from .rscode import CodeSpec, Codeword, NotACodeword, full_length_points, is_codeword, naive_repair, random_codeword
from .schemes import (
    SchemeError,
    SingleScheme,
    VerificationError,
    construction_I,
    construction_II,
    construction_III,
    corollary5_W,
    corollary6_W,
    default_W,
    prepare_pair_family,
    reduction_lemma_W,
    scheme_from_json,
    subspace_with_unit_tau,
    verify_scheme,
)
from .simulator import (
    EXHAUSTIVE_LIMIT,
    SAMPLE_SIZE,
    SchemeMismatch,
    simulate_pair_multi_round,
    simulate_pair_one_round,
    simulate_single,
    sweep_pairs,
    sweep_single,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VERIFY = 3

W_CHOICES = ("auto", "standard", "subfield", "unit-tau", "reduction", "cor5", "cor6")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", required=True, help="coding field, e.g. 'gf(2^8)/0x11D'")
    p.add_argument("--base", help="subsymbol field, e.g. 'gf(2^4)' (default: prime field)")


def _code_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--n", type=int, help="code length (points 0, 1, xi, xi^2, ...)")
    g.add_argument("--full", action="store_true", help="full-length code, n = q^ell")
    h = p.add_mutually_exclusive_group(required=required)
    h.add_argument("--k", type=int, help="code dimension")
    h.add_argument("--r", type=int, help="redundancy n - k")


def _scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", choices=("I", "II", "III", "auto"), default="auto")
    p.add_argument("--m", type=int, help="dim of W over GF(q); default log_q r")
    p.add_argument("--W", dest="w_kind", choices=W_CHOICES, default="auto", help="how to pick the subspace W")
    p.add_argument("--W-basis", dest="w_basis", help="explicit W basis, comma-separated hex")
    p.add_argument("--a", type=int, help="ell = q^a (for --W cor6)")
    p.add_argument("--b", type=int, help="m = q^b - 1 (for --W cor6)")
    p.add_argument("--beta", help="construction I basis, comma-separated hex")


def _format_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def _parse_ctx(args) -> FieldCtx:
    return parse_field_spec(args.field, args.base)


def _parse_code(ctx: FieldCtx, args, m: int | None = None) -> CodeSpec:
    n = ctx.order if args.full or args.n is None else args.n
    if args.k is None and args.r is None:
        if m is None:
            raise UsageError("give --k or --r")
        r = ctx.q**m
        k = n - r
    else:
        k = args.k if args.k is not None else n - args.r
    if not 1 <= k < n:
        raise UsageError(f"need 1 <= k < n, got k={k}, n={n}")
    if n > ctx.order:
        raise UsageError(f"n={n} exceeds the field size {ctx.order}")
    pts = full_length_points(ctx)[:n]
    return CodeSpec(ctx, pts, k)


def _hex_list(text: str) -> list[int]:
    try:
        return [int(x, 16) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad hex list {text!r}: {exc}") from None


def _erase_arg(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad erasure list {text!r}; expected 'j' or 'j1,j2'") from None


def _default_m(ctx: FieldCtx, args, code: CodeSpec | None) -> int:
    if args.m is not None:
        return args.m
    if args.w_basis:
        return len(_hex_list(args.w_basis))
    if code is None:
        raise UsageError("give --m or the code redundancy")
    return int(math.floor(math.log(code.r, ctx.q) + 1e-9))


def _w_candidates(ctx: FieldCtx, m: int, kind: str, args, mode: str | None):
    """Yield (name, thunk) pairs; thunks build a W or raise SchemeError."""
    if args.w_basis:
        yield "basis", lambda: Subspace(ctx, _hex_list(args.w_basis))
        return
    table = {
        "standard": lambda: default_W(ctx, m),
        "subfield": lambda: _subfield_W(ctx, m),
        "unit-tau": lambda: subspace_with_unit_tau(ctx, m),
        "reduction": lambda: reduction_lemma_W(ctx, m),
        "cor5": lambda: corollary5_W(ctx, m),
        "cor6": lambda: corollary6_W(ctx, *_cor6_ab(ctx, m, args)),
    }
    if kind != "auto":
        yield kind, table[kind]
        return
    if mode is None:
        order = ["standard"]
    elif mode == "one_round":
        order = ["cor5", "subfield", "reduction", "unit-tau"]
    else:
        order = ["cor6", "cor5", "subfield", "unit-tau", "standard"]
    for name in order:
        yield name, table[name]


def _subfield_W(ctx: FieldCtx, m: int) -> Subspace:
    if m < 1 or ctx.ell % m:
        raise SchemeError(f"GF(q^{m}) is not a subfield (ell={ctx.ell})", "m | ell")
    return Subspace.subfield(ctx, m)


def _cor6_ab(ctx: FieldCtx, m: int, args) -> tuple[int, int]:
    if args.a is not None and args.b is not None:
        return args.a, args.b
    q = ctx.q
    a = round(math.log(ctx.ell, q))
    b = round(math.log(m + 1, q))
    if q**a != ctx.ell or q**b != m + 1:
        raise SchemeError(f"need ell = q^a and m = q^b - 1 (ell={ctx.ell}, m={m})", "ell=q^a, m=q^b-1")
    return a, b


def _pick_pair_W(ctx: FieldCtx, m: int, args, scheme: str):
    """(W, mode) for a two-erasure request; 'auto' prefers the one-round scheme."""
    modes = {"II": ["one_round"], "III": ["multi_round"], "auto": ["one_round", "multi_round"]}[scheme]
    errors = []
    for mode in modes:
        for name, build in _w_candidates(ctx, m, args.w_kind, args, mode):
            try:
                W = build()
                if W.dim != m:
                    raise SchemeError(f"W has dim {W.dim}, expected m={m}")
                family = prepare_pair_family(ctx, W, mode)
                return W, mode, family
            except SchemeError as exc:
                errors.append(f"{mode}/{name}: {exc}")
    raise SchemeError("no admissible W: " + "; ".join(errors))


def _build_scheme(ctx: FieldCtx, code: CodeSpec, m: int, args, erased: list[int]):
    for j in erased:
        if not 0 <= j < code.n:
            raise UsageError(f"erasure index {j} outside [0, {code.n})")
    if len(erased) == 1:
        if args.scheme not in ("I", "auto"):
            raise UsageError(f"scheme {args.scheme} repairs two erasures, got one index")
        name, build = next(iter(_w_candidates(ctx, m, args.w_kind, args, None)))
        W = build()
        beta = _hex_list(args.beta) if args.beta else None
        return construction_I(ctx, W, int(code.points[erased[0]]), beta, code)
    if len(erased) != 2 or erased[0] == erased[1]:
        raise UsageError("give one index or two distinct indices to --erase")
    if args.scheme == "I":
        raise UsageError("construction I repairs a single erasure")
    W, mode, family = _pick_pair_W(ctx, m, args, args.scheme)
    build = construction_II if mode == "one_round" else construction_III
    return build(ctx, W, int(code.points[erased[0]]), int(code.points[erased[1]]), code, family)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _emit(out, fmt: str, payload: dict, text: str, csv_rows: list[dict] | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, default=_json_default) + "\n")
    elif fmt == "csv":
        rows = csv_rows if csv_rows is not None else [_flatten(payload)]
        buf = io.StringIO()
        keys = list(dict.fromkeys(k for row in rows for k in row))
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: _csv_cell(v) for k, v in row.items()})
        out.write(buf.getvalue())
    else:
        out.write(text.rstrip("\n") + "\n")


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not serialisable: {type(o).__name__}")


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return v


def _bound_for(code: CodeSpec):
    ctx = code.ctx
    return integral_lower_bound(ctx.q, ctx.ell, code.n, code.r)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bound(args, out) -> int:
    ctx = _parse_ctx(args)
    n = ctx.order if args.full or args.n is None else args.n
    if args.k is not None:
        if args.k < 1:
            raise UsageError(f"--k must be >= 1, got {args.k}")
        r = n - args.k
    else:
        r = args.r
    rep = integral_lower_bound(ctx.q, ctx.ell, n, r)
    payload = rep.to_json()
    text = "\n".join(
        [
            f"code [n={n}, k={n - r}] over {ctx.spec}, subsymbols in {ctx.base_spec} (q={ctx.q}, ell={ctx.ell})",
            f"T = {rep.T}   b_ave = {rep.b_ave:.6f}{' (integral)' if rep.b_ave_integral else ''}   t = {rep.t}",
            f"{'':12}{'subsymbols':>12}{'bits':>12}",
            f"{'integral':12}{rep.integral_bound_subsymbols:>12}{_num(rep.integral_bound_bits):>12}",
            f"{'fractional':12}{rep.fractional_bound_subsymbols:>12.4f}{rep.fractional_bound_bits:>12.4f}",
            f"fractional bound: at least {rep.fractional_bits_ceil} bits; integral bound: {_num(rep.integral_bound_bits)} bits",
            f"profile: {' '.join(map(str, rep.per_node_profile))}",
        ]
    )
    _emit(out, args.format, payload, text)
    return EXIT_OK


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else f"{x:.4f}"


def _describe_scheme(s) -> dict:
    ctx = s.ctx
    bound = _bound_for(s.code)
    info = {
        "kind": s.kind,
        "m": s.m,
        "L_W": s.L.pretty(),
        "tau": ctx.power_str(s.tau),
        "bound_subsymbols": bound.integral_bound_subsymbols,
    }
    if isinstance(s, SingleScheme):
        dims = [int(d) for d in s.column_dims]
        info["target_index"] = s.target_index
        info["predicted_bandwidth"] = s.predicted_bandwidth
        hist_dims = [d for j, d in enumerate(dims) if j != s.target_index]
    else:
        info["target_indices"] = list(s.target_indices)
        info["predicted_bandwidth"] = list(s.predicted_bandwidth())
        info["rounds"] = s.rounds
        js, jb = s.target_indices
        hist_dims = [int(d) for j, d in enumerate(s.g_columns.rank) if j not in (js, jb)]
        if s.chain is not None:
            info["chain"] = [ctx.power_str(g) for g in s.chain]
    hist: dict[int, int] = {}
    for d in hist_dims:
        hist[d] = hist.get(d, 0) + 1
    info["column_dim_histogram"] = {str(k): v for k, v in sorted(hist.items())}
    return info


def _scheme_text(s, info: dict, with_table: bool) -> str:
    ctx = s.ctx
    lines = [
        f"construction {s.kind} over {ctx.spec} / {ctx.base_spec}, [{s.code.n},{s.code.k}], m = {s.m}",
        f"L_W = {info['L_W']}   tau_W = {info['tau']}",
        "column dims (helpers): " + ", ".join(f"{k}: {v}" for k, v in info["column_dim_histogram"].items()),
        f"predicted bandwidth per erasure: {info['predicted_bandwidth']} subsymbols (integral bound {info['bound_subsymbols']})",
    ]
    if "chain" in info:
        m = s.m
        chain = info["chain"]
        lines.append("chain (L_W maps gamma_i to gamma_(i-m)):")
        for i in range(len(chain)):
            arrow = f" -> gamma_{i + 1 - m}" if i >= m else "  (in W)"
            lines.append(f"  gamma_{i + 1} = {chain[i]}{arrow}")
    if with_table:
        lines.append(s.table())
    return "\n".join(lines)


def cmd_build(args, out) -> int:
    ctx = _parse_ctx(args)
    erased = _erase_arg(args.erase)
    m_hint = args.m if args.m is not None else (len(_hex_list(args.w_basis)) if args.w_basis else None)
    code = _parse_code(ctx, args, m_hint)
    m = _default_m(ctx, args, code)
    s = _build_scheme(ctx, code, m, args, erased)
    verify_scheme(s)
    data = s.to_json()
    if args.output:
        Path(args.output).write_text(json.dumps(data, indent=1) + "\n")
    info = _describe_scheme(s)
    info["output"] = args.output
    _emit(out, args.format, info, _scheme_text(s, info, args.table or code.n <= 32))
    return EXIT_OK


def _load_json(path: str):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_scheme(path: str):
    data = _load_json(path)
    try:
        return scheme_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (FieldError, SchemeError)):
            raise
        raise UsageError(f"{path}: malformed scheme file ({exc})") from None


def _scheme_from_args(args):
    if args.scheme_file:
        return _load_scheme(args.scheme_file)
    if not args.field or not args.erase:
        raise UsageError("give --scheme-file, or --field with --erase")
    ctx = _parse_ctx(args)
    code = _parse_code(ctx, args, args.m)
    return _build_scheme(ctx, code, _default_m(ctx, args, code), args, _erase_arg(args.erase))


def _read_codeword(args, code: CodeSpec) -> Codeword:
    if args.codeword:
        raw = args.codeword
        if Path(raw).is_file():
            data = _load_json(raw)
            syms = data["symbols"] if isinstance(data, dict) else data
            syms = [int(x, 16) if isinstance(x, str) else int(x) for x in syms]
        else:
            syms = _hex_list(raw)
        if len(syms) != code.n:
            raise UsageError(f"codeword has {len(syms)} symbols, code length is {code.n}")
        if not is_codeword(code, syms):
            raise NotACodeword("dual-orthogonality check failed")
        return Codeword(code, np.asarray(syms, dtype=np.int64))
    if args.seed is None:
        raise UsageError("--seed is required when the codeword is sampled")
    return random_codeword(code, np.random.default_rng(args.seed))


def cmd_simulate(args, out) -> int:
    s = _scheme_from_args(args)
    code = s.code
    cw = _read_codeword(args, code)
    if isinstance(s, SingleScheme):
        j = s.target_index
        _, tr = simulate_single(s, cw, j)
    else:
        run = simulate_pair_one_round if s.mode == "one_round" else simulate_pair_multi_round
        _, tr = run(s, cw, s.target_indices)
    bound = _bound_for(code)
    naive = naive_repair(code, cw.erase(*tr.erased))
    payload = tr.to_json()
    payload["bound_subsymbols"] = bound.integral_bound_subsymbols
    payload["naive_subsymbols"] = naive.bandwidth_subsymbols
    if args.format == "json":
        _emit(out, "json", payload, "")
        return EXIT_OK
    rows = [
        {
            "erased": rn,
            "recovered": hex(tr.recovered[rn]),
            "download": tr.download_subsymbols(rn),
            "collaboration": tr.collaboration_subsymbols(rn),
            "subsymbols": tr.subsymbols(rn),
            "bits": tr.bits(rn),
            "bound_subsymbols": bound.integral_bound_subsymbols,
            "naive_subsymbols": naive.bandwidth_subsymbols,
        }
        for rn in tr.erased
    ]
    lines = [f"construction {s.kind}: erased {list(tr.erased)}, recovered_ok = {str(tr.recovered_ok).lower()}"]
    for row in rows:
        lines.append(
            f"  node {row['erased']}: {row['recovered']}  download {row['download']}  collaboration {row['collaboration']}"
            f"  total {row['subsymbols']} subsymbols = {_num(row['bits'])} bits"
            f"  (bound {row['bound_subsymbols']}, naive {row['naive_subsymbols']})"
        )
    if tr.rounds:
        lines.append(f"  collaboration rounds: {tr.n_rounds}, batches {tr.batch_sizes(tr.erased[0])}")
    _emit(out, args.format, payload, "\n".join(lines), rows)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    if args.seed is None:
        raise UsageError("--seed is required for sweeps (codewords are sampled)")
    ctx = _parse_ctx(args)
    m_hint = args.m if args.m is not None else (len(_hex_list(args.w_basis)) if args.w_basis else None)
    code = _parse_code(ctx, args, m_hint)
    m = _default_m(ctx, args, code)
    rng = np.random.default_rng(args.seed)
    cws = [random_codeword(code, rng) for _ in range(args.codewords)]
    bound = _bound_for(code)
    naive = code.k * ctx.ell
    if args.scheme == "I":
        name, build = next(iter(_w_candidates(ctx, m, args.w_kind, args, None)))
        beta = _hex_list(args.beta) if args.beta else None
        summary = sweep_single(ctx, build(), code, cws, beta=beta)
    else:
        W, mode, family = _pick_pair_W(ctx, m, args, args.scheme)
        summary = sweep_pairs(ctx, W, mode, code, cws, rng=rng, family=family, keep_rows=True, limit=args.limit, sample=args.sample)
    payload = summary.to_json()
    payload["bound_subsymbols"] = bound.integral_bound_subsymbols
    payload["naive_subsymbols"] = naive
    payload["optimal"] = summary.max_subsymbols == bound.integral_bound_subsymbols
    payload["within_bound"] = summary.max_subsymbols >= bound.integral_bound_subsymbols
    bits = summary.bits_per_subsymbol
    lines = [
        f"sweep construction {summary.kind} over {ctx.spec} / {ctx.base_spec}, [{code.n},{code.k}], m = {m}",
        f"erasure sets: {summary.erasures_tested} ({'exhaustive' if summary.exhaustive else 'seeded sample'}), codewords: {summary.codewords}",
        f"per-erasure bandwidth: min {summary.min_subsymbols}  max {summary.max_subsymbols}  mean {summary.mean_subsymbols:.3f} subsymbols"
        f" (max {_num(summary.max_bits)} bits)",
        f"integral bound: {bound.integral_bound_subsymbols} subsymbols = {_num(bound.integral_bound_bits)} bits; naive: {naive} subsymbols",
        f"all recovered: {str(summary.all_ok).lower()}   optimal: {str(payload['optimal']).lower()}",
    ]
    if summary.rounds:
        lines.append("collaboration rounds: " + ", ".join(f"{k}: {v}" for k, v in sorted(summary.rounds.items())))
        lines.append("batch shapes: " + ", ".join(f"({','.join(map(str, k))}): {v}" for k, v in sorted(summary.batch_shapes.items())))
    rows = [
        {**row, "bits": [x * bits for x in row["subsymbols"]] if isinstance(row["subsymbols"], list) else row["subsymbols"] * bits}
        for row in summary.rows
    ]
    _emit(out, args.format, payload, "\n".join(lines), rows or None)
    return EXIT_OK if summary.all_ok else EXIT_VERIFY


def cmd_verify(args, out) -> int:
    s = _load_scheme(args.scheme_file)
    verify_scheme(s)
    info = _describe_scheme(s)
    info["verified"] = True
    _emit(out, args.format, info, f"{args.scheme_file}: construction {s.kind} verified\n" + _scheme_text(s, info, False))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsrepair", description="Trace repair of Reed-Solomon codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="integral and fractional lower bounds on repair bandwidth")
    _field_args(p)
    _code_args(p)
    _format_arg(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("build", help="build, verify and save a repair scheme")
    _field_args(p)
    _code_args(p, required=False)
    _scheme_args(p)
    p.add_argument("--erase", required=True, help="erased index 'j' or pair 'j1,j2'")
    p.add_argument("-o", "--output", help="write the scheme JSON here")
    p.add_argument("--table", action="store_true", help="print the check-value table")
    _format_arg(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("simulate", help="run one repair and print its transcript")
    p.add_argument("--scheme-file")
    p.add_argument("--field")
    p.add_argument("--base")
    _code_args(p, required=False)
    _scheme_args(p)
    p.add_argument("--erase", help="erased index 'j' or pair 'j1,j2'")
    p.add_argument("--codeword", help="JSON file or comma-separated hex symbols")
    p.add_argument("--seed", type=int, help="seed for a random codeword")
    _format_arg(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="repair every position or pair over random codewords")
    _field_args(p)
    _code_args(p, required=False)
    _scheme_args(p)
    p.add_argument("--codewords", type=int, default=20)
    p.add_argument("--seed", type=int, help="seed for codewords and pair sampling")
    p.add_argument("--limit", type=int, default=EXHAUSTIVE_LIMIT, help="exhaustive up to this many pairs")
    p.add_argument("--sample", type=int, default=SAMPLE_SIZE, help="sampled pairs above the limit")
    _format_arg(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="re-check a saved scheme's invariants")
    p.add_argument("scheme_file")
    _format_arg(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except NotACodeword as exc:
        print(f"error: not a codeword: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, FieldError, SchemeError, BoundError, SchemeMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
