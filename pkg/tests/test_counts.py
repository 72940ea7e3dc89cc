from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rocnpmle.counts import (
    CategoryCounts,
    ScoreSample,
    expand,
    parse_counts_rows,
    read_bin_edges,
    read_counts_csv,
    read_scores_csv,
    sniff_format,
    tabulate,
)
from rocnpmle.errors import MissingClass, ParseError

from .conftest import RAD5_M, RAD5_N, category_counts


def test_tabulate_direct_counting():
    sample = ScoreSample(
        scores=[3, 3, 1, 2], labels=[1, 1, 0, 0], category_of=[3, 3, 1, 2]
    )
    c = tabulate(sample)
    assert c.m == (0, 0, 2)
    assert c.n == (1, 1, 0)


def test_tabulate_radiologist_expansion(rad5):
    c = tabulate(expand(rad5))
    assert c.m == RAD5_M
    assert c.n == RAD5_N
    assert (c.M, c.N, c.k) == (40, 72, 10)


def test_single_category():
    c = tabulate(ScoreSample.from_scores([2.0] * 5, [1, 1, 0, 0, 0]))
    assert (c.k, c.m, c.n) == (1, (2,), (3,))


def test_empty_categories_dropped_with_labels_kept():
    c = CategoryCounts((1, 0, 2), (1, 0, 0), ("a", "b", "c"))
    assert c.m == (1, 2) and c.n == (1, 0)
    assert c.labels == ("a", "c")


@pytest.mark.parametrize(
    "m, n",
    [((0, 0), (1, 2)), ((3,), (0,))],
)
def test_missing_class(m, n):
    with pytest.raises(MissingClass):
        CategoryCounts(m, n)


def test_negative_and_mismatched_counts_rejected():
    with pytest.raises(ValueError):
        CategoryCounts((1, -1), (1, 1))
    with pytest.raises(ValueError):
        CategoryCounts((1, 1), (1,))


def test_score_sample_rejects_inconsistent_order():
    with pytest.raises(ValueError):
        ScoreSample(scores=[1.0, 2.0], labels=[0, 1], category_of=[2, 1])


def test_from_scores_with_edges():
    s = ScoreSample.from_scores([0.1, 0.5, 0.5, 0.9], [0, 0, 1, 1], edges=[0.5])
    assert s.category_of.tolist() == [1, 2, 2, 2]
    c = tabulate(s)
    assert c.m == (0, 2) and c.n == (1, 1)


@settings(max_examples=200, deadline=None)
@given(category_counts())
def test_round_trip_through_expansion(c):
    assert tabulate(expand(c)) == c


@settings(max_examples=100, deadline=None)
@given(category_counts(), st.randoms(use_true_random=False))
def test_permutation_invariance(c, rnd):
    s = expand(c)
    perm = list(range(len(s.scores)))
    rnd.shuffle(perm)
    shuffled = ScoreSample(s.scores[perm], s.labels[perm], s.category_of[perm], s.category_labels)
    assert tabulate(shuffled) == c


# --- CSV ingestion --------------------------------------------------------

HEADER = "category,diseased,nondiseased\n"


def test_read_counts_two_rows(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text(HEADER + "1,10,33\n2,8,17\n")
    c = read_counts_csv(p)
    assert (c.k, c.m, c.n) == (2, (10, 8), (33, 17))


def test_read_counts_radiologist_file(rad5):
    c = read_counts_csv("data/radiologist5.csv")
    assert c.m == rad5.m and c.n == rad5.n


@pytest.mark.parametrize(
    "body, row",
    [
        ("1,-1,3\n", 2),
        ("1,2,3\n1,4,5\n", 3),
        ("1,2\n", 2),
        ("1,2,x\n", 2),
        ("2,1,1\n1,1,1\n", 3),
        (",1,1\n", 2),
    ],
    ids=["negative", "duplicate", "short-row", "non-integer", "descending", "empty-label"],
)
def test_parse_errors_carry_row_number(body, row):
    with pytest.raises(ParseError) as info:
        parse_counts_rows((HEADER + body).splitlines(keepends=True))
    assert info.value.row == row
    assert str(info.value).startswith(f"row {row}:")


def test_bad_header_and_no_rows():
    with pytest.raises(ParseError):
        parse_counts_rows(["cat,d,n\n", "1,1,1\n"])
    with pytest.raises(ParseError):
        parse_counts_rows([HEADER])


def test_text_labels_keep_file_order():
    c = parse_counts_rows([HEADER, "low,1,3\n", "mid,2,2\n", "high,3,1\n"])
    assert c.labels == ("low", "mid", "high")


def test_scores_csv_distinct_values(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("score,label\n1,0\n2,0\n3,1\n3,1\n")
    c = tabulate(read_scores_csv(p))
    assert (c.m, c.n) == ((0, 0, 2), (1, 1, 0))
    assert sniff_format(p) == "scores"


def test_scores_csv_bad_label(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("score,label\n1,0\n2,2\n")
    with pytest.raises(ParseError) as info:
        read_scores_csv(p)
    assert info.value.row == 3


def test_bin_edges_file(tmp_path):
    p = tmp_path / "e.txt"
    p.write_text("# edges\n0.5\n\n1.5\n")
    assert read_bin_edges(p) == [0.5, 1.5]
    p.write_text("1\n0\n")
    with pytest.raises(ParseError):
        read_bin_edges(p)


def test_swap_classes():
    c = CategoryCounts((1, 2), (3, 4))
    s = c.swap_classes()
    assert (s.m, s.n) == ((3, 4), (1, 2))
    assert np.array_equal(np.asarray(s.swap_classes().m), np.asarray(c.m))
