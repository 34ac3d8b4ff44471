import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rsrepair.field import Subspace, create_field
from rsrepair.rscode import CodeSpec, Codeword, ErasedSymbolAccess, is_codeword, naive_repair, random_codeword
from rsrepair.schemes import (
    VerificationError,
    construction_I,
    construction_II,
    construction_III,
    corollary5_W,
    corollary6_W,
    default_W,
    prepare_pair_family,
)
from rsrepair.simulator import (
    CheatingDetected,
    ReplacementNode,
    SchemeMismatch,
    _helper_traces,
    merge_summaries,
    monitor,
    random_codewords,
    simulate_pair,
    simulate_pair_multi_round,
    simulate_pair_one_round,
    simulate_single,
    sweep_pairs,
    sweep_single,
)

from conftest import field

# (c_1, ..., c_8) = (?, 1, xi^2, xi^4, 0, xi, 0, 0) with c_1 = 1, xi^3 = xi + 1
GF8_WORD = [1, 1, 4, 6, 0, 2, 0, 0]


@pytest.fixture(scope="module")
def gf8_setup():
    F = create_field(2, 1, 3, 0b1011)
    code = CodeSpec.full(F, k=6)
    scheme = construction_I(F, Subspace(F, [1]), 0, beta=[1, 2, 4], code=code)
    return F, code, scheme


def test_gf8_word_is_valid(gf8_setup):
    _, code, _ = gf8_setup
    assert is_codeword(code, GF8_WORD)


def test_gf8_word_repair(gf8_setup):
    F, code, scheme = gf8_setup
    cw = Codeword(code, GF8_WORD)
    value, tr = simulate_single(scheme, cw, 0)
    assert value == 1
    assert tr.bits(0) == 14
    assert tr.recovered_ok
    assert tr.helper_reads == 7
    msgs = {m.src: m for m in tr.downloads[0].messages()}
    assert all(m.subsymbols == 2 for m in msgs.values())
    # node 2 sends Tr(xi^4 c_2) and Tr(xi c_2)
    assert msgs[1].traces == [F.trace(F.mul(6, 1)), F.trace(F.mul(2, 1))]


def test_repair_from_erased_word_alone(gf8_setup):
    _, code, scheme = gf8_setup
    word = Codeword(code, GF8_WORD).erase(0)
    value, tr = simulate_single(scheme, word, 0)
    assert value == 1
    assert tr.subsymbols(0) == 14


def test_zero_codeword_has_identical_transcript_shape(gf8_setup):
    _, code, scheme = gf8_setup
    _, a = simulate_single(scheme, Codeword(code, GF8_WORD), 0)
    value, b = simulate_single(scheme, Codeword(code, [0] * 8), 0)
    assert value == 0
    assert a.size_signature() == b.size_signature()


@pytest.mark.parametrize("name, m", [("gf8", 1), ("gf16", 1), ("gf16", 2), ("gf9", 1), ("gf64_over_gf4", 1), ("gf81_over_gf9", 1)])
def test_single_erasure_exhaustive(name, m):
    F = field(name)
    code = CodeSpec.full(F, r=F.q**m)
    cws = random_codewords(code, 50 if F.order <= 16 else 5, seed=1)
    summary = sweep_single(F, default_W(F, m), code, cws)
    assert summary.all_ok and summary.exhaustive
    assert summary.erasures_tested == code.n
    expect = (code.n - 1) * (F.ell - m)
    assert summary.min_subsymbols == summary.max_subsymbols == expect


def test_short_code_repair_beats_naive():
    F = field("gf256")
    pts = np.arange(1, 120)
    code = CodeSpec(F, pts, 100)
    rng = np.random.default_rng(8)
    cw = random_codeword(code, rng)
    for j in (0, 50, 118):
        s = construction_I(F, default_W(F, 4), int(code.points[j]), code=code)
        value, tr = simulate_single(s, cw, j)
        assert value == int(cw.symbols[j])
        naive = naive_repair(code, cw.erase(j))
        assert tr.subsymbols(j) <= naive.bandwidth_subsymbols
        assert tr.subsymbols(j) == int(np.delete(s.column_dims, j).sum())


@settings(max_examples=25)
@given(st.integers(0, 15), st.integers(0, 2**32 - 1))
def test_single_repair_property(j, seed):
    F = field("gf16")
    code = CodeSpec.full(F, r=4)
    cw = random_codeword(code, np.random.default_rng(seed))
    s = construction_I(F, default_W(F, 2), int(code.points[j]), code=code)
    value, tr = simulate_single(s, cw, j)
    assert value == int(cw.symbols[j])
    assert tr.subsymbols(j) == 30


# ---------------------------------------------------------------------------
# no-cheating instrumentation
# ---------------------------------------------------------------------------

def test_reading_erased_symbol_is_caught(gf8_setup):
    F, code, scheme = gf8_setup
    word = Codeword(code, GF8_WORD).erase(0)
    before = monitor.erased_reads
    with pytest.raises(ErasedSymbolAccess):
        _helper_traces(F, scheme.values, scheme.columns, code.lambdas, word, np.arange(8))
    assert monitor.erased_reads == before + 1
    monitor.erased_reads = before


def test_unknown_trace_use_is_caught(gf8_setup):
    F, code, scheme = gf8_setup
    saved = monitor.unreceived_uses
    rn = ReplacementNode(F, 0, scheme.values, scheme.columns, 1, scheme.tau, [1, 4, 2])
    with pytest.raises(CheatingDetected):
        rn.solve(0)
    with pytest.raises(CheatingDetected):
        rn.repair_trace([0, 1, 0])
    with pytest.raises(CheatingDetected):
        rn.reconstruct()
    assert monitor.unreceived_uses == saved + 3
    monitor.unreceived_uses = saved


def test_honest_runs_never_trigger_monitor(gf8_setup):
    _, code, scheme = gf8_setup
    before = monitor.violations
    runs = monitor.runs
    for cw in random_codewords(code, 10, seed=4):
        simulate_single(scheme, cw, 0)
    assert monitor.violations == before
    assert monitor.runs == runs + 10


def test_scheme_mismatch(gf8_setup):
    F, code, scheme = gf8_setup
    cw = Codeword(code, GF8_WORD)
    with pytest.raises(SchemeMismatch):
        simulate_single(scheme, cw, 3)
    other = CodeSpec.full(F, k=4)
    with pytest.raises(SchemeMismatch):
        simulate_single(scheme, random_codeword(other, np.random.default_rng(0)), 0)


def test_wrong_symbol_is_reported(gf8_setup):
    _, code, scheme = gf8_setup
    bad = list(GF8_WORD)
    bad[0] = 5
    with pytest.raises(VerificationError):
        simulate_single(scheme, Codeword(code, bad), 0)


# ---------------------------------------------------------------------------
# two erasures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def gf16_pairs():
    F = field("gf16")
    code = CodeSpec.full(F, r=4)
    W = corollary5_W(F, 2)
    return F, code, W


def test_one_round_transcript_accounting(gf16_pairs):
    F, code, W = gf16_pairs
    s = construction_II(F, W, int(code.points[2]), int(code.points[9]), code)
    cw = random_codeword(code, np.random.default_rng(3))
    vals, tr = simulate_pair_one_round(s, cw)
    assert vals == (int(cw.symbols[2]), int(cw.symbols[9]))
    assert tr.recovered == {2: int(cw.symbols[2]), 9: int(cw.symbols[9])}
    assert tr.n_rounds == 1
    for rn in (2, 9):
        assert tr.subsymbols(rn) <= 30
        assert tr.download_subsymbols(rn) + sum(tr.round_subsymbols(rn)) == tr.subsymbols(rn)
        # every target trace is recovered exactly once
        flat = [i for b in tr.recovered_batches[rn] for i in b]
        assert sorted(flat) == list(range(F.ell))
    assert tr.total_subsymbols == tr.subsymbols(2) + tr.subsymbols(9)
    data = json.loads(json.dumps(tr.to_json()))
    assert sum(p["subsymbols"] for p in data["phases"]) == data["totals"]["subsymbols"]
    assert {p["phase"] for p in data["phases"]} == {"download", "collaboration"}
    assert data["recovered_ok"]
    for p in data["phases"]:
        assert len(p["traces_hex"]) == p["subsymbols"]


def test_one_round_all_pairs(gf16_pairs):
    F, code, W = gf16_pairs
    cws = random_codewords(code, 5, seed=2)
    summary = sweep_pairs(F, W, "one_round", code, cws)
    assert summary.exhaustive and summary.erasures_tested == 120
    assert summary.all_ok
    assert summary.max_subsymbols <= 30
    assert summary.rounds == {1: 120}


def test_parallel_sweep_matches_serial(gf16_pairs):
    F, code, W = gf16_pairs
    cws = random_codewords(code, 2, seed=7)
    a = sweep_pairs(F, W, "one_round", code, cws, workers=1)
    b = sweep_pairs(F, W, "one_round", code, cws, workers=2)
    assert a.to_json() == b.to_json()


def test_sampled_sweep_is_reproducible(gf16_pairs):
    F, code, W = gf16_pairs
    cws = random_codewords(code, 1, seed=0)
    a = sweep_pairs(F, W, "one_round", code, cws, rng=np.random.default_rng(5), limit=10, sample=15)
    b = sweep_pairs(F, W, "one_round", code, cws, rng=np.random.default_rng(5), limit=10, sample=15)
    assert not a.exhaustive and a.erasures_tested == 15
    assert a.to_json() == b.to_json()


def test_merge_summaries(gf16_pairs):
    F, code, W = gf16_pairs
    cws = random_codewords(code, 1, seed=0)
    whole = sweep_pairs(F, W, "one_round", code, cws, pairs=[(0, 1), (2, 3), (4, 5)])
    parts = [sweep_pairs(F, W, "one_round", code, cws, pairs=p) for p in ([(0, 1)], [(2, 3), (4, 5)])]
    merged = merge_summaries(parts)
    assert merged.erasures_tested == whole.erasures_tested
    assert merged.max_subsymbols == whole.max_subsymbols
    assert merged.mean_subsymbols == pytest.approx(whole.mean_subsymbols)


def test_multi_round_subfield_three_rounds():
    # ell/m = 4 is a power of q, so W = GF(4) has the chain property
    F = create_field(2, 1, 8, 0x11D)
    code = CodeSpec.full(F, r=4)
    W = corollary5_W(F, 2)
    fam = prepare_pair_family(F, W, "multi_round")
    cw = random_codeword(code, np.random.default_rng(1))
    for a, b in [(0, 1), (5, 40), (255, 7)]:
        s = construction_III(F, W, int(code.points[a]), int(code.points[b]), code, fam)
        _, tr = simulate_pair_multi_round(s, cw)
        assert tr.recovered_ok
        assert tr.n_rounds == 3
        for rn in (a, b):
            assert tr.batch_sizes(rn) == [2, 2, 2]
            assert tr.subsymbols(rn) <= 255 * 6


def test_multi_round_gf256_batches():
    F = create_field(2, 1, 8, 0x11D)
    code = CodeSpec.full(F, r=8)
    W = corollary6_W(F, 3, 2)
    fam = prepare_pair_family(F, W, "multi_round")
    cws = random_codewords(code, 2, seed=11)
    for a, b in [(0, 255), (17, 18)]:
        s = construction_III(F, W, int(code.points[a]), int(code.points[b]), code, fam)
        sigs = set()
        for cw in cws:
            _, tr = simulate_pair_multi_round(s, cw)
            assert tr.n_rounds == 2
            assert tr.batch_sizes(a) == tr.batch_sizes(b) == [3, 2]
            assert tr.subsymbols(a) <= 1275 and tr.subsymbols(b) <= 1275
            sigs.add(tr.size_signature())
        assert len(sigs) == 1


def test_mode_mismatch(gf16_pairs):
    F, code, W = gf16_pairs
    s = construction_II(F, W, 0, 1, code)
    cw = random_codeword(code, np.random.default_rng(0))
    with pytest.raises(SchemeMismatch):
        simulate_pair_multi_round(s, cw)
    with pytest.raises(SchemeMismatch):
        simulate_pair(s, cw, erased=(0, 5))
    with pytest.raises(SchemeMismatch):
        simulate_pair(s, cw.erase(0, 2))


def test_pair_repair_beats_naive(gf16_pairs):
    F, code, W = gf16_pairs
    cw = random_codeword(code, np.random.default_rng(12))
    s = construction_II(F, W, int(code.points[3]), int(code.points[4]), code)
    _, tr = simulate_pair(s, cw)
    # naive repair ships k full symbols to each replacement node
    naive = naive_repair(code, cw.erase(3, 4)).bandwidth_subsymbols
    assert naive == code.k * F.ell
    assert max(tr.subsymbols(3), tr.subsymbols(4)) < naive
