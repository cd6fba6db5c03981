"""Parsers against hand-specified 10-line fixtures, thresholds, canonical files."""

import pytest

from trendlab import EmptyDatasetError, FormatError, LinkEvent
from trendlab.ingest import (
    DatasetSpec,
    canonical_order,
    parse_citation,
    parse_dates,
    parse_rating,
    parse_wallpost,
    read_canonical,
    write_canonical,
)

# Ten lines: nine good (one of them '::'-separated, one at the epoch), one
# malformed (three fields). Day indices by hand: ts // 86400.
RATING_LINES = [
    "1\t1193\t5\t978300760\n",   # day 11322
    "2::1193::4::978302109\n",   # day 11322
    "3\t2355\t3\t978824291\n",   # day 11328
    "4\t1193\t4\t978300000\n",   # day 11322
    "5\t1500\t2\t978400000\n",   # day 11324
    "6\t1500\t1\t979000000\n",   # day 11331
    "7\t8\t3\n",                 # malformed: missing the timestamp
    "8\t2355\t5\t978999999\n",   # day 11331
    "9\t1193\t2\t0\n",           # day 0, timestamp exactly at the epoch
    "1\t2355\t4\t86400\n",       # day 1
]

RATING_EVENTS = [
    LinkEvent("1", "1193", 11322),
    LinkEvent("2", "1193", 11322),
    LinkEvent("3", "2355", 11328),
    LinkEvent("4", "1193", 11322),
    LinkEvent("5", "1500", 11324),
    LinkEvent("6", "1500", 11331),
    LinkEvent("8", "2355", 11331),
    LinkEvent("9", "1193", 0),
    LinkEvent("1", "2355", 1),
]

# Ten lines: eight good, one self-post, one malformed single token.
WALLPOST_LINES = [
    "7 42 1199133531\n",    # day 13878
    "42 42 1199133531\n",   # self-post
    "8 42 1199145600\n",    # day 13879 (exact day boundary)
    "9 50 1199059200\n",    # day 13878
    "10 50 1199059199\n",   # day 13877 (one second earlier)
    "11 60 0\n",            # day 0
    "12 60 86399\n",        # day 0 (last second of the day)
    "badline\n",            # malformed
    "13 42 1199200000\n",   # day 13879
    "14 70 863990000\n",    # day 9999
]

WALLPOST_EVENTS = [
    LinkEvent("7", "42", 13878),
    LinkEvent("8", "42", 13879),
    LinkEvent("9", "50", 13878),
    LinkEvent("10", "50", 13877),
    LinkEvent("11", "60", 0),
    LinkEvent("12", "60", 0),
    LinkEvent("13", "42", 13879),
    LinkEvent("14", "70", 9999),
]

# Ten lines: a comment, seven datable edges, one malformed, one whose citing
# paper has no date.
CITATION_LINES = [
    "# FromNodeId ToNodeId\n",
    "9001 9002\n",
    "9002 9003\n",
    "9001 9003\n",
    "9003 9001\n",
    "9004 9001\n",
    "bad-edge-line\n",
    "9005 9002\n",
    "9006 9001\n",   # 9006 never appears in the dates file
    "9002 9001\n",
]

# month index = (year - 1993) * 12 + (month - 1)
CITATION_DATES = [
    "# paper date\n",
    "9001 1993-01-15\n",   # month 0
    "9002 1994-03-02\n",   # month 14
    "9003 1993-07-30\n",   # month 6
    "9004 1995-12-01\n",   # month 35
    "9005 2003-04-10\n",   # month 123
]

CITATION_EVENTS = [
    LinkEvent("9001", "9002", 0),
    LinkEvent("9002", "9003", 14),
    LinkEvent("9001", "9003", 0),
    LinkEvent("9003", "9001", 6),
    LinkEvent("9004", "9001", 35),
    LinkEvent("9005", "9002", 123),
    LinkEvent("9002", "9001", 14),
]


def test_rating_fixture_events_and_counts():
    events, report = parse_rating(RATING_LINES)
    assert events == RATING_EVENTS
    assert report.accepted == 9
    assert report.skipped_malformed == 1
    assert report.malformed_lines == [7]
    assert report.dropped_self == 0
    assert report.dropped_undated == 0
    assert report.nodes == 11  # 8 distinct users + 3 items
    assert (report.t_min, report.t_max) == (0, 11331)
    assert report.to_json()["span"] == [0, 11331]


def test_wallpost_fixture_events_and_counts():
    events, report = parse_wallpost(WALLPOST_LINES)
    assert events == WALLPOST_EVENTS
    assert report.accepted == 8
    assert report.skipped_malformed == 1
    assert report.malformed_lines == [8]
    assert report.dropped_self == 1
    assert report.nodes == 12  # 8 posters + 4 walls
    assert (report.t_min, report.t_max) == (0, 13879)


def test_citation_fixture_events_and_counts():
    events, report = parse_citation(CITATION_LINES, CITATION_DATES)
    assert events == CITATION_EVENTS
    assert report.accepted == 7
    assert report.skipped_malformed == 1
    assert report.malformed_lines == [7]
    assert report.dropped_undated == 1
    assert report.dropped_self == 0
    assert report.nodes == 5
    assert (report.t_min, report.t_max) == (0, 123)


def test_line_accounting_adds_up():
    for events, report, lines in (
        parse_rating(RATING_LINES) + (10,),
        parse_wallpost(WALLPOST_LINES) + (10,),
        parse_citation(CITATION_LINES, CITATION_DATES) + (9,),  # comment excluded
    ):
        total = (
            report.accepted
            + report.skipped_malformed
            + report.dropped_self
            + report.dropped_undated
        )
        assert total == lines
        assert len(events) == report.accepted


def test_rating_fails_hard_when_malformed_lines_pile_up():
    lines = RATING_LINES[:6] + ["junk\n", "more junk\n"] + RATING_LINES[7:]
    with pytest.raises(FormatError) as info:
        parse_rating(lines)
    assert 7 in info.value.lines and 8 in info.value.lines


def test_wallpost_tolerates_exactly_one_bad_line():
    events, report = parse_wallpost(WALLPOST_LINES)
    assert report.skipped_malformed == 1  # 10% of a 10-line file, still accepted


def test_citation_fails_hard_when_undated_edges_pile_up():
    lines = CITATION_LINES + ["9006 9002\n"]  # second undated edge
    with pytest.raises(FormatError):
        parse_citation(lines, CITATION_DATES)


def test_rating_negative_day_under_origin_is_malformed():
    spec = DatasetSpec("rating", origin_day=100)
    events, report = parse_rating(["1\t2\t5\t86400\n", "1\t3\t5\t8640000000\n"], spec)
    assert report.skipped_malformed == 1  # day 1 - 100 < 0
    assert events == [LinkEvent("1", "3", 99900)]


def test_rating_self_link_dropped():
    events, report = parse_rating(["5\t5\t4\t0\n", "5\t6\t4\t0\n"])
    assert report.dropped_self == 1
    assert events == [LinkEvent("5", "6", 0)]


def test_dates_parsing_is_lenient_and_last_wins():
    spec = DatasetSpec("citation")
    months = parse_dates(
        ["# c\n", "p1 1993-02-01\n", "p1 1994-02-01\n", "p2 nonsense\n", "short\n"],
        spec,
    )
    assert months == {"p1": 13}


def test_citation_pre_anchor_month_is_malformed():
    edges = ["p1 p2\n", "p3 p2\n"]
    dates = ["p1 1990-06-01\n", "p3 1993-06-01\n"]
    events, report = parse_citation(edges, dates)
    assert report.skipped_malformed == 1
    assert events == [LinkEvent("p3", "p2", 5)]


def test_dataset_spec_validation():
    assert DatasetSpec("citation").time_unit == "month"
    assert DatasetSpec("rating").time_unit == "day"
    with pytest.raises(ValueError):
        DatasetSpec("rating", time_unit="month")
    with pytest.raises(ValueError):
        DatasetSpec("spreadsheet")
    with pytest.raises(ValueError):
        DatasetSpec("citation", anchor_month=0)


# -- canonical files ---------------------------------------------------------------


def test_canonical_round_trip(tmp_path):
    path = tmp_path / "events.tsv"
    write_canonical(RATING_EVENTS, path)
    text = path.read_text()
    assert text.endswith("\n")
    assert "\r" not in text
    events, report = read_canonical(text.splitlines())
    assert events == canonical_order(RATING_EVENTS)
    assert report.accepted == len(RATING_EVENTS)


def test_canonical_output_is_time_then_source_then_target_sorted(tmp_path):
    path = tmp_path / "events.tsv"
    write_canonical(
        [
            LinkEvent("z", "a", 5),
            LinkEvent("a", "z", 5),
            LinkEvent("m", "n", 1),
        ],
        path,
    )
    assert path.read_text() == "m\tn\t1\na\tz\t5\nz\ta\t5\n"


def test_canonical_reader_is_strict():
    with pytest.raises(FormatError):
        read_canonical(["a\tb\t1", "oops"])
    with pytest.raises(FormatError):
        read_canonical(["a\tb\tnotatime"])
    with pytest.raises(FormatError):
        read_canonical(["a\ta\t1"])
    with pytest.raises(FormatError):
        read_canonical(["a\tb\t-3"])


def test_write_canonical_refuses_empty(tmp_path):
    with pytest.raises(EmptyDatasetError):
        write_canonical([], tmp_path / "nothing.tsv")
