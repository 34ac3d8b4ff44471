"""Compare the compiled and pure-Python column-basis kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each case times ``column_bases`` on a check-value matrix of the kind a repair
scheme produces, checks that both implementations agree, and reports the
speedup.  The last case times a full construction-III scheme build, where the
kernel runs twice per erasure pair.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

import numpy as np

from rsrepair import kernels, schemes
from rsrepair.field import create_field
from rsrepair.rscode import CodeSpec
from rsrepair.schemes import corollary6_W, prepare_pair_family

CASES = [
    # label, (p, s, ell, modulus), rows
    ("GF(2^8) binary", (2, 1, 8, 0x11D), 256),
    ("GF(2^16) binary", (2, 1, 16, None), 65536),
    ("GF(3^4) prime base", (3, 1, 4, None), 81),
    ("GF(3^6) prime base", (3, 1, 6, None), 729),
    ("GF(4^4) over GF(4)", (2, 2, 4, None), 256),
]


def _time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench_kernel(label, params, rows, repeat, rng):
    F = create_field(*params)
    values = rng.integers(0, F.order, size=(rows, F.ell))
    values[::4, -1] = values[::4, 0]  # some rank-deficient rows
    a = kernels.column_bases(F, values, "python")
    b = kernels.column_bases(F, values, "cython")
    agree = all(np.array_equal(x, y) for x, y in zip(a, b))
    tp = _time(lambda: kernels.column_bases(F, values, "python"), repeat)
    tc = _time(lambda: kernels.column_bases(F, values, "cython"), repeat)
    return {"case": label, "rows": rows, "python_s": tp, "cython_s": tc, "speedup": tp / tc, "agree": agree}


def bench_scheme(repeat):
    F = create_field(2, 1, 8, 0x11D)
    code = CodeSpec.full(F, r=8)
    fam = prepare_pair_family(F, corollary6_W(F, 3, 2), "multi_round")
    saved = schemes.column_bases
    times = {}
    for impl in ("python", "cython"):
        schemes.column_bases = lambda ctx, v, impl=impl: kernels.column_bases(ctx, v, impl)
        try:
            times[impl] = _time(
                lambda: [schemes.construction_III(F, fam.W, 0, int(code.points[b]), code, fam) for b in range(1, 41)],
                repeat,
            )
        finally:
            schemes.column_bases = saved
    tp, tc = times["python"], times["cython"]
    return {"case": "40 construction-III builds, GF(2^8)", "rows": 40, "python_s": tp, "cython_s": tc, "speedup": tp / tc, "agree": True}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args(argv)
    try:
        kernels.get_impl("cython")
    except ImportError:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first", file=sys.stderr)
        return 1
    rng = np.random.default_rng(0)
    results = [bench_kernel(label, params, rows, args.repeat, rng) for label, params, rows in CASES]
    results.append(bench_scheme(max(1, args.repeat // 2)))
    print(f"selected implementation at import: {kernels.IMPLEMENTATION}")
    print(f"{'case':38s} {'rows':>7s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}  agree")
    for r in results:
        print(f"{r['case']:38s} {r['rows']:7d} {1e3 * r['python_s']:10.2f} {1e3 * r['cython_s']:10.2f} {r['speedup']:7.1f}x  {r['agree']}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)
    return 0 if all(r["agree"] for r in results) else 2


if __name__ == "__main__":
    sys.exit(main())
