import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctmbdm.bdm import (DecompositionSpec, GridFormatError, GridPattern, Remainder, bdm_1d, bdm_2d,
                        block_entropy, decompose_1d, decompose_2d, shannon_entropy)
from ctmbdm.distribution import ComplexityTable, lookup_K

FLIP = str.maketrans("01", "10")


def test_spec_validation():
    assert DecompositionSpec(6, 3).step == 3
    with pytest.raises(ValueError):
        DecompositionSpec(4, 4)
    with pytest.raises(ValueError):
        DecompositionSpec(0)
    with pytest.raises(ValueError):
        DecompositionSpec(4, -1)


def test_decompose_overlap_example():
    assert decompose_1d("123123456", DecompositionSpec(6, 3)) == ["123123", "123456"]


def test_decompose_single_block():
    assert decompose_1d("0101", DecompositionSpec(4)) == ["0101"]


def test_decompose_remainder_policy():
    assert decompose_1d("0110011", DecompositionSpec(4)) == ["0110", "011"]
    assert decompose_1d("0110011", DecompositionSpec(4, remainder=Remainder.DROP)) == ["0110"]
    assert decompose_1d("011", DecompositionSpec(4, remainder=Remainder.DROP)) == []
    with pytest.raises(ValueError):
        decompose_1d("", DecompositionSpec(4))


@given(st.text("01", min_size=1, max_size=60), st.integers(1, 12), st.data())
def test_decomposition_covers_string(s, b, data):
    v = data.draw(st.integers(0, b - 1))
    blocks = decompose_1d(s, DecompositionSpec(b, v))
    step = b - v
    # every block sits at its offset and the blocks reach the end of s
    for i, block in enumerate(blocks):
        assert s[i * step:i * step + b] == block
    assert (len(blocks) - 1) * step + len(blocks[-1]) == len(s)


def test_single_block_and_doubling(k32):
    b = "0110"
    spec = DecompositionSpec(len(b))
    K = k32.entries[b]
    assert bdm_1d(b, k32, spec).value == K
    assert bdm_1d(b * 2, k32, spec).value == 1 + K
    assert bdm_1d(b * 8, k32, spec).value == 3 + K
    assert bdm_1d(b * 16, k32, spec).value == 4 + K


def test_repetition_law_random_blocks(k32):
    rng = random.Random(11)
    pool = sorted(k32.entries, key=lambda s: (len(s), s))
    for b in rng.sample(pool, 40):
        spec = DecompositionSpec(len(b))
        for k in (1, 2, 3, 4, 8, 16):
            r = bdm_1d(b * k, k32, spec)
            assert r.value == math.log2(k) + k32.entries[b]
            assert (r.blocks, r.distinct, r.extrapolated_blocks) == (k, 1, 0)


def test_bdm_equals_ctm_for_short_strings(k32):
    for s, K in k32.entries.items():
        assert bdm_1d(s, k32, DecompositionSpec(12)).value == K


def test_block_permutation_invariance(k32):
    rng = random.Random(3)
    four = [s for s in k32.entries if len(s) == 4]
    for _ in range(50):
        blocks = [rng.choice(four) for _ in range(rng.randint(2, 9))]
        shuffled = blocks[:]
        rng.shuffle(shuffled)
        spec = DecompositionSpec(4)
        assert bdm_1d("".join(blocks), k32, spec) == bdm_1d("".join(shuffled), k32, spec)


def test_complement_inheritance(k32):
    rng = random.Random(8)
    for _ in range(200):
        s = "".join(rng.choice("01") for _ in range(rng.randint(1, 40)))
        spec = DecompositionSpec(5)
        assert bdm_1d(s, k32, spec).value == bdm_1d(s.translate(FLIP), k32, spec).value


def test_overlapped_duplicates_count():
    t = ComplexityTable({"00": 3.0})
    r = bdm_1d("0000", t, DecompositionSpec(2, 1))
    assert (r.blocks, r.distinct) == (3, 1)
    assert r.value == math.log2(3) + 3.0


def test_extrapolated_blocks_are_counted():
    t = ComplexityTable({"00": 3.0, "01": 5.0})
    r = bdm_1d("001111", t, DecompositionSpec(2))
    assert r.extrapolated_blocks == 1
    assert (r.blocks, r.distinct) == (3, 2)
    assert r.value == 3.0 + 1 + 6.0


# -- grids ---------------------------------------------------------------------


def test_grid_parse_and_key():
    g = GridPattern.parse("0101\n1010\n\n")
    assert (g.rows, g.cols) == (2, 4)
    assert g.key() == "0101-1010"
    assert GridPattern.from_rows(["01", "10"]).cells == (0, 1, 1, 0)


@pytest.mark.parametrize("text, line", [("0101\n011\n", 2), ("01\n0a\n", 2), ("", 1), ("\n\n012\n", 3)])
def test_grid_parse_errors(text, line):
    with pytest.raises(GridFormatError) as err:
        GridPattern.parse(text)
    assert err.value.line == line


def test_grid_invariants():
    with pytest.raises(ValueError):
        GridPattern(2, 2, (0, 1, 0))
    with pytest.raises(ValueError):
        GridPattern(1, 2, (0, 2))


def _random_grid(rng, rows, cols):
    return GridPattern(rows, cols, tuple(rng.randint(0, 1) for _ in range(rows * cols)))


def _tile(block, times=2):
    rows = [block.row(r) for r in range(block.rows)]
    cells = []
    for _ in range(times):
        for row in rows:
            cells.extend(row * times)
    return GridPattern(block.rows * times, block.cols * times, tuple(cells))


def test_decompose_2d_geometry():
    rng = random.Random(0)
    g8 = _random_grid(rng, 8, 8)
    tiles = decompose_2d(g8, 4)
    assert len(tiles) == 4 and all((t.rows, t.cols) == (4, 4) for t in tiles)
    assert tiles[1] == g8.sub(0, 4, 4, 4)
    g4 = _random_grid(rng, 4, 4)
    assert decompose_2d(g4, 4) == [g4]
    g5 = _random_grid(rng, 5, 5)
    assert [(t.rows, t.cols) for t in decompose_2d(g5, 4)] == [(4, 4), (4, 1), (1, 4), (1, 1)]
    assert [(t.rows, t.cols) for t in decompose_2d(g5, 4, Remainder.DROP)] == [(4, 4)]


def test_bdm_2d_four_identical_blocks(acss2d):
    rng = random.Random(1)
    block = _random_grid(rng, 4, 4)
    r = bdm_2d(_tile(block), acss2d, 4)
    assert r.value == 2 + lookup_K(acss2d, block.key()).K
    assert (r.blocks, r.distinct, r.extrapolated_blocks) == (4, 1, 0)
    assert bdm_2d(block, acss2d).value == lookup_K(acss2d, block.key()).K


def test_bdm_2d_zero_grid_is_simplest(acss2d):
    zero = GridPattern(4, 4, (0,) * 16)
    assert acss2d.entries[zero.key()] == min(v for k, v in acss2d.entries.items() if len(k) == 19)
    mixed = GridPattern.from_rows(["0110", "1011", "0010", "1101"])
    assert bdm_2d(_tile(zero), acss2d).value < bdm_2d(_tile(mixed), acss2d).value


def test_bdm_2d_with_synthetic_table():
    t = ComplexityTable({"00-00": 2.0, "01-10": 7.0})
    g = GridPattern.from_rows(["0001", "0010"])
    r = bdm_2d(g, t, 2)
    assert r.value == 9.0 and r.blocks == 2


# -- entropy -------------------------------------------------------------------


def test_shannon_entropy_examples():
    assert shannon_entropy("0000") == 0.0
    assert shannon_entropy("0101") == 1.0
    expected = -0.7 * math.log2(0.7) - 0.3 * math.log2(0.3)
    assert shannon_entropy("1111111000") == pytest.approx(expected, abs=1e-15)
    with pytest.raises(ValueError):
        shannon_entropy("")


def test_block_entropy_examples():
    expected = -(4 / 7) * math.log2(4 / 7) - (3 / 7) * math.log2(3 / 7)
    assert block_entropy("01010101", 2) == pytest.approx(expected, abs=1e-15)
    for b in (1, 2, 5):
        assert block_entropy("1111111", b) == 0.0
    with pytest.raises(ValueError):
        block_entropy("01", 3)


def _de_bruijn(k, n):
    # standard construction over alphabet {0..k-1}
    a = [0] * k * n
    seq = []

    def db(t, p):
        if t > n:
            if n % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, k):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return "".join(map(str, seq))


def test_period_two_has_lower_block_entropy_than_de_bruijn():
    db = _de_bruijn(2, 4)
    db = db + db[:3]  # cyclic closure: every 4-window appears once
    periodic = ("01" * len(db))[:len(db)]
    assert block_entropy(periodic, 2) < block_entropy(db, 2)
    assert block_entropy(db, 4) == 4.0


@given(st.text("01", min_size=1, max_size=40))
def test_entropy_bounds(s):
    assert 0.0 <= shannon_entropy(s) <= 1.0
    assert shannon_entropy(s) == shannon_entropy(s.translate(FLIP))
