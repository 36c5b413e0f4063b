import collections

import pytest

from ctmbdm.reference import expand_relabelings, load_pybdm


def test_expand_binary():
    assert expand_relabelings({"0": 2.0, "01": 3.5, "0000": 4.0}, 2) == {
        "0": 2.0, "1": 2.0, "01": 3.5, "10": 3.5, "0000": 4.0, "1111": 4.0}


def test_expand_keeps_grid_separators():
    assert expand_relabelings({"01-00": 5.0}, 2) == {"01-00": 5.0, "10-11": 5.0}


def test_expand_larger_alphabet():
    out = expand_relabelings({"01": 1.0}, 3)
    assert sorted(out) == ["01", "02", "10", "12", "20", "21"]


def test_unknown_dataset():
    with pytest.raises(ValueError):
        load_pybdm("CTM-B7-D3")


def test_acss_1d(acss):
    assert len(acss) == 8190
    assert acss.source == "pybdm:CTM-B2-D12"
    # closed under complement, and short strings are all present
    flip = str.maketrans("01", "10")
    assert all(acss.entries[s.translate(flip)] == k for s, k in acss.entries.items())
    assert sum(1 for s in acss.entries if len(s) == 10) == 1024
    # the shipped table already fills the length-12 strings no machine produced
    assert sum(1 for s in acss.entries if len(s) == 12) == 4096
    assert acss.max_K == pytest.approx(37.479, abs=1e-3)


def test_acss_2d(acss2d):
    assert len(acss2d) == 66066
    shapes = collections.Counter((k.count("-") + 1, len(k.split("-")[0])) for k in acss2d.entries)
    assert shapes == {(4, 4): 65536, (3, 3): 512, (2, 2): 16, (1, 1): 2}
    assert acss2d.entries["0000-0000-0000-0000"] == pytest.approx(22.0067, abs=1e-4)
