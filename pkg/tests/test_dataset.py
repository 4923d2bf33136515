import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scorecalib.dataset import (
    GroupId,
    GroupVocabulary,
    RecordPairRaw,
    Schema,
    ScoredPair,
    derive_pair_group,
    dump_dataset,
    load_dataset,
)
from scorecalib.errors import (
    MalformedRowError,
    ScoreOutOfRangeError,
    UnknownGroupError,
)

from conftest import EXAMPLE_PAIRS_RAW, make_dataset

MIN, MAJ = GroupId.MINORITY, GroupId.MAJORITY


@pytest.mark.parametrize(
    "left,right,expected",
    [
        (MIN, MAJ, MIN),
        (MAJ, MIN, MIN),
        (MIN, MIN, MIN),
        (MAJ, MAJ, MAJ),
    ],
)
def test_derive_pair_group(left, right, expected):
    assert derive_pair_group(RecordPairRaw("r", 0.5, left, right)) is expected


@pytest.mark.parametrize("left", [MIN, MAJ])
@pytest.mark.parametrize("right", [MIN, MAJ])
def test_derive_pair_group_symmetric(left, right):
    fwd = derive_pair_group(RecordPairRaw("r", 0.5, left, right))
    rev = derive_pair_group(RecordPairRaw("r", 0.5, right, left))
    assert fwd is rev


@pytest.mark.parametrize("score", [-0.01, 1.2, float("nan")])
def test_scored_pair_rejects_bad_score(score):
    with pytest.raises(ScoreOutOfRangeError):
        ScoredPair("p", score, MIN)


@pytest.mark.parametrize("score", [0.0, 1.0])
def test_boundary_scores_accepted(score):
    assert ScoredPair("p", score, MIN).score == score


def test_scored_pair_rejects_bad_label():
    with pytest.raises(MalformedRowError):
        ScoredPair("p", 0.5, MIN, label=2)


def test_load_single_unlabeled_row():
    csv = "id,score,group,label\np1,0.45,a,\n"
    d = load_dataset(io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a")
    assert len(d) == 1
    assert not d.labeled
    assert d.pairs[0] == ScoredPair("p1", 0.45, MIN)


def test_load_rejects_out_of_range_score():
    csv = "id,score,group,label\np1,1.2,a,\n"
    with pytest.raises(ScoreOutOfRangeError):
        load_dataset(io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a")


def test_load_worked_example_counts():
    lines = ["id,score,group,label"]
    lines += [f"p{i+1},{s},{g}," for i, (s, g) in enumerate(EXAMPLE_PAIRS_RAW)]
    d = load_dataset(io.StringIO("\n".join(lines)), Schema.PAIR_LEVEL, minority_token="a")
    assert len(d) == 15
    assert d.count(MIN) == 6
    assert d.count(MAJ) == 9


def test_load_record_level_derives_group():
    csv = (
        "id,score,group_left,group_right,label\n"
        "p1,0.5,f,m,1\n"
        "p2,0.5,m,m,0\n"
        "p3,0.5,m,f,1\n"
    )
    d = load_dataset(io.StringIO(csv), Schema.RECORD_LEVEL, minority_token="f")
    assert [p.group for p in d.pairs] == [MIN, MAJ, MIN]
    assert d.labeled


@pytest.mark.parametrize(
    "csv",
    [
        "",  # no header
        "id,score\n",  # wrong header
        "id,score,group,label\np1,0.5,a\n",  # short row
        "id,score,group,label\np1,0.5,a,1,extra\n",  # long row
        "id,score,group,label\np1,abc,a,\n",  # unparsable score
        "id,score,group,label\np1,0.5,a,2\n",  # bad label
    ],
)
def test_load_malformed(csv):
    with pytest.raises(MalformedRowError):
        load_dataset(io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a")


def test_unknown_group_with_closed_vocabulary():
    csv = "id,score,group,label\np1,0.5,x,\n"
    with pytest.raises(UnknownGroupError):
        load_dataset(
            io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a", majority_token="b"
        )


def test_open_vocabulary_accepts_any_majority_token():
    csv = "id,score,group,label\np1,0.5,whatever,\n"
    d = load_dataset(io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a")
    assert d.pairs[0].group is MAJ


def test_empty_group_token_rejected():
    csv = "id,score,group,label\np1,0.5,,\n"
    with pytest.raises(UnknownGroupError):
        load_dataset(io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a")


def test_vocabulary_rejects_equal_tokens():
    with pytest.raises(UnknownGroupError):
        GroupVocabulary("a", "a")


def test_mixed_labels_not_an_error():
    csv = "id,score,group,label\np1,0.5,a,1\np2,0.6,b,\n"
    d = load_dataset(io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a")
    assert not d.labeled


def test_duplicate_ids_allowed():
    csv = "id,score,group,label\np1,0.5,a,\np1,0.6,b,\n"
    d = load_dataset(io.StringIO(csv), Schema.PAIR_LEVEL, minority_token="a")
    assert len(d) == 2


pair_strategy = st.tuples(
    st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    st.sampled_from(["a", "b"]),
)
label_strategy = st.one_of(st.none(), st.lists(st.integers(0, 1), min_size=40, max_size=40))


@given(st.lists(pair_strategy, min_size=1, max_size=40))
def test_group_counts_partition_dataset(rows):
    d = make_dataset(rows)
    assert d.count(MIN) + d.count(MAJ) == len(d)


@given(st.lists(pair_strategy, min_size=1, max_size=25), st.data())
def test_round_trip(rows, data):
    labels = data.draw(
        st.one_of(st.none(), st.lists(st.integers(0, 1), min_size=len(rows), max_size=len(rows)))
    )
    d = make_dataset(rows, labels)
    buf = io.StringIO()
    dump_dataset(d, buf)
    again = load_dataset(
        io.StringIO(buf.getvalue()), Schema.PAIR_LEVEL, minority_token="minority"
    )
    assert again == d

    buf2 = io.StringIO()
    dump_dataset(again, buf2)
    assert buf2.getvalue() == buf.getvalue()
