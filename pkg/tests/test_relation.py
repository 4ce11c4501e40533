"""Tests for the relation container, JSON format, and level merging."""

from fractions import Fraction

import numpy as np
import pytest

from choqfit.capacity import Capacity
from choqfit.instances import induce
from choqfit.relation import (
    MergeMap,
    PreferenceRelation,
    ProductSpace,
    RelationFormatError,
    coordinate_order,
    expand_values,
    load_relation,
    merge_duplicates,
    relation_from_dict,
    relation_to_dict,
    save_relation,
)

F = Fraction


def small_doc():
    # 2 x 2 grid ranked by the sum of level indices, ties broken nowhere:
    # scores (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3.
    return {
        "x1": ["lo", "hi"],
        "x2": ["p", "q"],
        "pairs": [
            [0, 0, 0, 1, "D"],
            [0, 0, 1, 0, "D"],
            [0, 0, 1, 1, "D"],
            [0, 1, 1, 0, "D"],
            [0, 1, 1, 1, "D"],
            [1, 0, 1, 1, "D"],
        ],
    }


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------


def test_space_rejects_duplicate_labels():
    with pytest.raises(RelationFormatError, match="axis 1"):
        ProductSpace(("a", "a"), ("b",))


def test_space_rejects_empty_axis():
    with pytest.raises(RelationFormatError, match="at least one"):
        ProductSpace((), ("b",))


def test_space_indexing_roundtrip():
    sp = ProductSpace(("a", "b", "c"), ("p", "q"))
    for i, j in sp.points():
        assert sp.pos(sp.idx(i, j)) == (i, j)
    assert sp.size == 6


def test_relation_rejects_nonzero_diagonal():
    sp = ProductSpace(("a",), ("p", "q"))
    cmp = np.zeros((2, 2), dtype=np.int8)
    cmp[0, 0] = 1
    with pytest.raises(RelationFormatError, match="itself"):
        PreferenceRelation(sp, cmp)


def test_relation_rejects_asymmetry():
    sp = ProductSpace(("a",), ("p", "q"))
    cmp = np.zeros((2, 2), dtype=np.int8)
    cmp[0, 1] = 1
    cmp[1, 0] = 1
    with pytest.raises(RelationFormatError, match="disagree"):
        PreferenceRelation(sp, cmp)


def test_relation_rejects_out_of_range_codes():
    sp = ProductSpace(("a",), ("p", "q"))
    cmp = np.zeros((2, 2), dtype=np.int8)
    cmp[0, 1] = 3
    cmp[1, 0] = -3
    with pytest.raises(RelationFormatError, match="out of range"):
        PreferenceRelation(sp, cmp)


def test_cmp_matrix_is_frozen():
    rel = relation_from_dict(small_doc())
    with pytest.raises(ValueError):
        rel.cmp[0, 1] = 1


# ---------------------------------------------------------------------------
# JSON parsing diagnostics
# ---------------------------------------------------------------------------


def test_parse_small_doc():
    rel = relation_from_dict(small_doc())
    assert rel.m1 == 2 and rel.m2 == 2
    assert rel.compare((1, 1), (0, 0)) == 1
    assert rel.compare((0, 1), (1, 0)) == -1
    assert rel.compare((0, 1), (0, 1)) == 0


def test_missing_key():
    with pytest.raises(RelationFormatError, match="'pairs'"):
        relation_from_dict({"x1": ["a"], "x2": ["b"]})


def test_bad_index_reports_entry():
    doc = small_doc()
    doc["pairs"][3] = [0, 1, 5, 0, "D"]
    with pytest.raises(RelationFormatError, match="entry 3.*i2=5"):
        relation_from_dict(doc)


def test_bad_code_reports_entry():
    doc = small_doc()
    doc["pairs"][2] = [0, 0, 1, 1, "X"]
    with pytest.raises(RelationFormatError, match="entry 2.*'X'"):
        relation_from_dict(doc)


def test_duplicate_entry_rejected():
    doc = small_doc()
    doc["pairs"].append([0, 0, 0, 1, "D"])
    with pytest.raises(RelationFormatError, match="entry 6: duplicate"):
        relation_from_dict(doc)


def test_reversed_duplicate_still_detected():
    doc = small_doc()
    doc["pairs"].append([0, 1, 0, 0, "P"])
    with pytest.raises(RelationFormatError, match="entry 6: duplicate"):
        relation_from_dict(doc)


def test_contradiction_rejected():
    doc = small_doc()
    doc["pairs"].append([0, 0, 0, 1, "P"])
    with pytest.raises(RelationFormatError, match="entry 6: contradicts"):
        relation_from_dict(doc)


def test_incomplete_rejected_with_example():
    doc = small_doc()
    doc["pairs"].pop()
    with pytest.raises(RelationFormatError, match=r"1 pair\(s\) missing.*\(hi,p\) vs \(hi,q\)"):
        relation_from_dict(doc)


def test_self_pair_must_be_indifferent():
    doc = small_doc()
    doc["pairs"].append([0, 0, 0, 0, "P"])
    with pytest.raises(RelationFormatError, match="entry 6.*itself"):
        relation_from_dict(doc)


def test_self_pair_indifferent_is_tolerated():
    doc = small_doc()
    doc["pairs"].append([0, 0, 0, 0, "I"])
    rel = relation_from_dict(doc)
    assert rel.compare((0, 0), (0, 0)) == 0


def test_roundtrip_through_dict():
    rel = relation_from_dict(small_doc())
    again = relation_from_dict(relation_to_dict(rel))
    assert np.array_equal(rel.cmp, again.cmp)
    assert rel.space == again.space


def test_file_roundtrip(tmp_path):
    rel = induce([F(0), F(1), F(2)], [F(0), F(3, 2)], Capacity.two(F(1, 2), F(1, 4)))
    path = tmp_path / "rel.json"
    save_relation(rel, str(path))
    again = load_relation(str(path))
    assert np.array_equal(rel.cmp, again.cmp)


def test_load_rejects_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(RelationFormatError, match="not valid JSON"):
        load_relation(str(path))


def test_load_rejects_non_object(tmp_path):
    path = tmp_path / "arr.json"
    path.write_text("[1, 2]")
    with pytest.raises(RelationFormatError, match="object"):
        load_relation(str(path))


# ---------------------------------------------------------------------------
# induced per-axis orders
# ---------------------------------------------------------------------------


def test_coordinate_order_on_weighted_sum():
    rel = induce([F(0), F(2), F(1)], [F(0), F(1)], Capacity.two(F(1, 2), F(1, 2)))
    ord1 = coordinate_order(rel, 1)
    assert ord1.complete
    assert list(ord1.ranks()) == [0, 2, 1]
    ord2 = coordinate_order(rel, 2)
    assert list(ord2.ranks()) == [0, 1]
    assert list(ord2.maximal()) == [False, True]
    assert list(ord2.minimal()) == [True, False]


def test_coordinate_order_detects_incompleteness():
    # Hand-built reversal: a above b at p, below at q.
    sp = ProductSpace(("a", "b"), ("p", "q"))
    cmp = np.zeros((4, 4), dtype=np.int8)

    def setpair(a, b, v):
        cmp[a, b], cmp[b, a] = v, -v

    # points: 0=(a,p) 1=(a,q) 2=(b,p) 3=(b,q)
    setpair(0, 2, 1)   # (a,p) > (b,p)
    setpair(1, 3, -1)  # (a,q) < (b,q)
    rel = PreferenceRelation(sp, cmp)
    assert not coordinate_order(rel, 1).complete
    with pytest.raises(ValueError, match="incomplete"):
        coordinate_order(rel, 1).ranks()


def test_coordinate_order_ties():
    rel = induce([F(1), F(1)], [F(0), F(2)], Capacity.two(F(1, 2), F(1, 2)))
    ord1 = coordinate_order(rel, 1)
    assert ord1.equiv.all()
    assert list(ord1.ranks()) == [0, 0]


# ---------------------------------------------------------------------------
# duplicate-acting levels
# ---------------------------------------------------------------------------


def test_merge_collapses_equal_value_levels():
    rel = induce([F(0), F(1), F(1), F(2)], [F(0), F(1)], Capacity.two(F(1, 2), F(1, 2)))
    merged, mm = merge_duplicates(rel)
    assert merged.m1 == 3
    assert mm.to_merged1 == (0, 1, 1, 2)
    assert mm.reps1 == (0, 1, 3)
    assert mm.trivial is False
    assert merged.space.x1 == ("a0", "a1", "a3")
    # Re-expansion copies the representative's value onto each duplicate.
    assert expand_values([10, 11, 12], mm, 1) == [10, 11, 11, 12]


def test_merge_is_noop_without_duplicates():
    rel = induce([F(0), F(1)], [F(0), F(3)], Capacity.two(F(1, 2), F(1, 4)))
    merged, mm = merge_duplicates(rel)
    assert merged is rel
    assert mm.trivial


def test_merge_under_min_collapses_dominated_rows():
    # With the min rule, rows whose value exceeds every column value all
    # act like the column vector itself.
    rel = induce([F(5), F(6), F(0)], [F(1), F(2)], Capacity.two(0, 0))
    merged, mm = merge_duplicates(rel)
    assert merged.m1 == 2
    assert mm.to_merged1 == (0, 0, 1)


def test_merged_relation_preserves_comparisons():
    rel = induce([F(0), F(1), F(1)], [F(0), F(2), F(2)], Capacity.two(F(1, 3), F(1, 2)))
    merged, mm = merge_duplicates(rel)
    assert merged.m1 == 2 and merged.m2 == 2
    for i in range(rel.m1):
        for j in range(rel.m2):
            for k in range(rel.m1):
                for l in range(rel.m2):
                    got = merged.compare(
                        (mm.to_merged1[i], mm.to_merged2[j]),
                        (mm.to_merged1[k], mm.to_merged2[l]),
                    )
                    assert got == rel.compare((i, j), (k, l))


def test_summary_mentions_shape():
    rel = relation_from_dict(small_doc())
    assert "2x2" in rel.summary()
