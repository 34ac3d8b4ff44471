import numpy as np
import pytest

from rsrepair import kernels
from rsrepair.field import FieldError
from rsrepair.linalg import Echelon
from rsrepair.rscode import (
    CodeSpec,
    ErasedSymbolAccess,
    dual_multipliers,
    encode,
    full_length_points,
    interpolate_message,
    is_codeword,
    naive_repair,
    random_codeword,
)

from conftest import field

IMPLS = ["python"] + (["cython"] if kernels.IMPLEMENTATION == "cython" else [])


def test_full_length_point_order():
    F = field("gf8")
    assert full_length_points(F).tolist() == [0, 1, 2, 4, 3, 6, 7, 5]


@pytest.mark.parametrize("name", ["gf8", "gf9", "gf64_over_gf4", "gf256"])
def test_encode_and_parity(name):
    F = field(name)
    rng = np.random.default_rng(0)
    for n, k in ((F.order, F.order // 2), (min(F.order, 20), 5)):
        code = CodeSpec(F, full_length_points(F)[:n], k)
        cw = random_codeword(code, rng)
        assert is_codeword(code, cw.symbols)
        bad = cw.symbols.copy()
        bad[3] = F.add(int(bad[3]), 1)
        assert not is_codeword(code, bad)
        assert interpolate_message(code, list(range(k)), cw.symbols[:k].tolist()) == cw.message


@pytest.mark.parametrize("name", ["gf16", "gf81", "gf64_over_gf4"])
def test_dual_multipliers_annihilate_low_powers(name):
    F = field(name)
    rng = np.random.default_rng(1)
    pts = rng.choice(F.order, size=11, replace=False)
    code = CodeSpec(F, pts, 6)
    lam = dual_multipliers(code)
    assert int(lam[0]) == 1 and all(int(x) for x in lam)
    # sum_j lambda_j a_j^t = 0 for t <= n - 2
    for t in range(code.n - 1):
        acc = F.sum(F.mul(int(l), F.pow(int(a), t)) for l, a in zip(lam, pts))
        assert acc == 0
    acc = F.sum(F.mul(int(l), F.pow(int(a), code.n - 1)) for l, a in zip(lam, pts))
    assert acc != 0


def test_full_length_multipliers_are_one():
    code = CodeSpec.full(field("gf16"), r=4)
    assert code.lambdas.tolist() == [1] * 16


def test_erased_codeword_refuses_reads():
    F = field("gf16")
    code = CodeSpec.full(F, r=4)
    word = random_codeword(code, np.random.default_rng(2)).erase(3, 5)
    with pytest.raises(ErasedSymbolAccess):
        word.symbol(3)
    with pytest.raises(ErasedSymbolAccess):
        word.helper_symbols([0, 1, 5])
    word.symbol(0)
    word.helper_symbols([1, 2])
    assert word.reads == 3
    assert 3 not in word.intact().tolist()


def test_naive_repair():
    F = field("gf256")
    code = CodeSpec.full(F, r=8)
    cw = random_codeword(code, np.random.default_rng(3))
    res = naive_repair(code, cw.erase(10, 200))
    assert res.recovered == {10: int(cw.symbols[10]), 200: int(cw.symbols[200])}
    assert res.bandwidth_subsymbols == code.k * F.ell


def test_code_validation():
    F = field("gf8")
    with pytest.raises(FieldError):
        CodeSpec(F, [0, 1, 1, 2], 2)
    with pytest.raises(FieldError):
        CodeSpec(F, [0, 1, 2], 3)
    with pytest.raises(FieldError):
        encode(CodeSpec.full(F, k=3), [1, 2])


def test_code_json_roundtrip():
    F = field("gf81")
    for code in (CodeSpec.full(F, k=70), CodeSpec(F, [3, 7, 11, 19], 2)):
        assert CodeSpec.from_json(F, code.to_json()) == code


# ---------------------------------------------------------------------------
# column-basis kernels: both implementations against the Echelon oracle
# ---------------------------------------------------------------------------

def _check_against_echelon(F, values, out):
    rank, bidx, coef = out
    fq = F.fq_elements
    for j, row in enumerate(values):
        ech = Echelon(F)
        chosen = [i for i, v in enumerate(row) if ech.add(int(v))[0]]
        assert rank[j] == len(chosen)
        assert bidx[j, : rank[j]].tolist() == chosen
        assert (bidx[j, rank[j] :] == -1).all()
        for i, v in enumerate(row):
            acc = 0
            for k in range(rank[j]):
                c = (int(coef[j, i]) >> k) & 1 if F.binary else fq[int(coef[j, i, k])]
                acc = F.add(acc, F.mul(c, int(row[chosen[k]])))
            assert acc == int(v)


@pytest.mark.parametrize("impl", IMPLS)
@pytest.mark.parametrize("name", ["gf16", "gf256", "gf9", "gf81", "gf64_over_gf4", "gf81_over_gf9"])
def test_column_kernels_against_oracle(impl, name):
    F = field(name)
    rng = np.random.default_rng(4)
    values = rng.integers(0, F.order, size=(60, F.ell))
    # rows with forced dependencies
    values[::3, -1] = values[::3, 0]
    values[::5] = 0
    _check_against_echelon(F, values, kernels.column_bases(F, values, impl))


@pytest.mark.parametrize("name", ["gf256", "gf81", "gf64_over_gf4"])
def test_cython_and_python_kernels_agree(name):
    if "cython" not in IMPLS:
        pytest.skip("compiled extension not built")
    F = field(name)
    rng = np.random.default_rng(5)
    values = rng.integers(0, F.order, size=(500, F.ell))
    values[::2, 1] = values[::2, 0]
    a = kernels.column_bases(F, values, "python")
    b = kernels.column_bases(F, values, "cython")
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


def test_unknown_impl():
    with pytest.raises(ValueError):
        kernels.get_impl("fortran")


def test_pure_python_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, RSREPAIR_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from rsrepair import kernels; print(kernels.IMPLEMENTATION)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_benchmark_runs(tmp_path):
    import json
    import runpy
    from pathlib import Path

    if "cython" not in IMPLS:
        pytest.skip("compiled extension not built")
    bench = runpy.run_path(str(Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"))
    out = tmp_path / "bench.json"
    assert bench["main"](["--repeat", "1", "--json", str(out)]) == 0
    assert all(r["agree"] for r in json.loads(out.read_text()))
