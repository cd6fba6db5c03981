"""Readers for the supported raw formats, plus the canonical event file.

Every reader turns foreign lines into integer-time link events and reports
what happened to each input line: accepted, skipped as malformed, dropped as
a self-link, or dropped for missing date information. Counts always add up to
the number of (nonblank, non-comment) input lines, so nothing disappears
silently. A single bad line is counted and tolerated; when bad lines are more
than noise (above 1% malformed, or 5% undated for citations, and at least
two), the whole parse is refused with the offending line numbers.

Formats:

* rating    - ``user<sep>item<sep>rating<sep>unix_ts`` with sep one of
              '::', tab, or runs of spaces; the rating value is ignored and
              the timestamp collapses to whole days (ts // 86400 - origin)
* wallpost  - ``poster wall unix_ts`` whitespace-separated, days as above;
              posts on one's own wall are self-links and thus dropped
* citation  - ``citing cited`` whitespace-separated with '#' comment lines,
              plus a dates file ``paper YYYY-MM-DD``; the event time is the
              citing paper's month index relative to an anchor month
* canonical - ``source<TAB>target<TAB>time``, the package's own format:
              sorted by (time, source, target), LF line endings, no header

The canonical reader is strict: any bad line is an error, because canonical
files are produced by this package and a bad line means corruption.
"""

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyDatasetError, FormatError
from .events import LinkEvent

FORMATS = ("rating", "wallpost", "citation", "canonical")
SECONDS_PER_DAY = 86400


@dataclass(frozen=True)
class DatasetSpec:
    """How to interpret a raw file's ids and clocks.

    origin_day shifts the day index of the unix-timestamp formats (day 0 is
    1970-01-01 shifted right by origin_day). The citation format counts whole
    months from the anchor month instead.
    """

    format: str
    time_unit: str = ""
    origin_day: int = 0
    anchor_year: int = 1993
    anchor_month: int = 1

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format: {self.format!r}")
        wanted = "month" if self.format == "citation" else "day"
        if not self.time_unit:
            object.__setattr__(self, "time_unit", wanted)
        elif self.time_unit != wanted:
            raise ValueError(
                f"format {self.format!r} uses {wanted}-resolution times, "
                f"got time_unit={self.time_unit!r}"
            )
        if not 1 <= self.anchor_month <= 12:
            raise ValueError(f"anchor_month must be in 1..12, got {self.anchor_month}")


@dataclass
class IngestReport:
    """Per-line accounting of one parse."""

    accepted: int = 0
    skipped_malformed: int = 0
    dropped_self: int = 0
    dropped_undated: int = 0
    malformed_lines: list[int] = field(default_factory=list)
    nodes: int = 0
    t_min: int | None = None
    t_max: int | None = None

    def to_json(self) -> dict:
        span = None if self.t_min is None else [self.t_min, self.t_max]
        return {
            "accepted": self.accepted,
            "skipped_malformed": self.skipped_malformed,
            "dropped_self": self.dropped_self,
            "dropped_undated": self.dropped_undated,
            "nodes": self.nodes,
            "span": span,
        }


def merge_reports(reports: Sequence[IngestReport]) -> IngestReport:
    """Sum the line accounting of several parses (node/span fields are refilled)."""
    merged = IngestReport()
    for r in reports:
        merged.accepted += r.accepted
        merged.skipped_malformed += r.skipped_malformed
        merged.dropped_self += r.dropped_self
        merged.dropped_undated += r.dropped_undated
        merged.malformed_lines.extend(r.malformed_lines)
    return merged


def finalize_report(events: Sequence[LinkEvent], report: IngestReport) -> IngestReport:
    """Fill the dataset-level fields from the accepted events."""
    ids = set()
    for ev in events:
        ids.add(ev.source)
        ids.add(ev.target)
    report.nodes = len(ids)
    if events:
        report.t_min = min(ev.time for ev in events)
        report.t_max = max(ev.time for ev in events)
    return report


def _too_many(bad: int, total: int, fraction: float) -> bool:
    # a single bad line is tolerated whatever the file size; beyond that the
    # fractional threshold decides
    return bad > 1 and bad > fraction * total


def _day_index(unix_ts: int, spec: DatasetSpec) -> int:
    return unix_ts // SECONDS_PER_DAY - spec.origin_day


def _split_rating(line: str) -> list[str]:
    if "::" in line:
        return line.split("::")
    if "\t" in line:
        return line.split("\t")
    return line.split()


def parse_rating(lines: Iterable[str], spec: DatasetSpec | None = None):
    """Read rating lines; returns (events, report).

    A line is malformed if it does not have exactly four fields, its
    timestamp is not a nonnegative integer, or the day index comes out
    negative under the spec's origin.
    """
    spec = spec or DatasetSpec("rating")
    events: list[LinkEvent] = []
    report = IngestReport()
    counted = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        counted += 1
        parts = [p.strip() for p in _split_rating(line)]
        if len(parts) != 4 or not parts[3].lstrip("-").isdigit():
            report.skipped_malformed += 1
            report.malformed_lines.append(lineno)
            continue
        user, item, _rating, ts = parts
        day = _day_index(int(ts), spec)
        if int(ts) < 0 or day < 0 or not user or not item:
            report.skipped_malformed += 1
            report.malformed_lines.append(lineno)
            continue
        if user == item:
            report.dropped_self += 1
            continue
        events.append(LinkEvent(user, item, day))
        report.accepted += 1
    if _too_many(report.skipped_malformed, counted, 0.01):
        raise FormatError(
            f"{report.skipped_malformed} of {counted} rating lines are malformed "
            f"(lines {report.malformed_lines})",
            lines=report.malformed_lines,
        )
    return events, finalize_report(events, report)


def parse_wallpost(lines: Iterable[str], spec: DatasetSpec | None = None):
    """Read wall-post lines; returns (events, report)."""
    spec = spec or DatasetSpec("wallpost")
    events: list[LinkEvent] = []
    report = IngestReport()
    counted = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        counted += 1
        parts = line.split()
        if len(parts) != 3 or not parts[2].lstrip("-").isdigit():
            report.skipped_malformed += 1
            report.malformed_lines.append(lineno)
            continue
        poster, wall, ts = parts
        day = _day_index(int(ts), spec)
        if int(ts) < 0 or day < 0:
            report.skipped_malformed += 1
            report.malformed_lines.append(lineno)
            continue
        if poster == wall:
            report.dropped_self += 1
            continue
        events.append(LinkEvent(poster, wall, day))
        report.accepted += 1
    if _too_many(report.skipped_malformed, counted, 0.01):
        raise FormatError(
            f"{report.skipped_malformed} of {counted} wall-post lines are malformed "
            f"(lines {report.malformed_lines})",
            lines=report.malformed_lines,
        )
    return events, finalize_report(events, report)


def parse_dates(lines: Iterable[str], spec: DatasetSpec) -> dict[str, int]:
    """Read ``paper YYYY-MM-DD`` lines into a paper -> month-index mapping.

    Days within a month are ignored. Unparseable lines are skipped (the
    papers they would have dated simply stay undated); a repeated paper keeps
    its last date.
    """
    months: dict[str, int] = {}
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            continue
        paper, datestr = parts
        pieces = datestr.split("-")
        if len(pieces) != 3:
            continue
        try:
            year, month = int(pieces[0]), int(pieces[1])
        except ValueError:
            continue
        if not 1 <= month <= 12:
            continue
        months[paper] = (year - spec.anchor_year) * 12 + (month - spec.anchor_month)
    return months


def parse_citation(
    edge_lines: Iterable[str],
    date_lines: Iterable[str],
    spec: DatasetSpec | None = None,
):
    """Read a citation edge list with a companion dates file; returns (events, report).

    The event time is the *citing* paper's month index; edges whose citing
    paper has no date are dropped and counted. '#' comment lines are ignored.
    A citing month before the anchor is malformed (times must be nonnegative).
    """
    spec = spec or DatasetSpec("citation")
    months = parse_dates(date_lines, spec)
    events: list[LinkEvent] = []
    report = IngestReport()
    counted = 0
    for lineno, raw in enumerate(edge_lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        counted += 1
        parts = line.split()
        if len(parts) != 2:
            report.skipped_malformed += 1
            report.malformed_lines.append(lineno)
            continue
        citing, cited = parts
        if citing == cited:
            report.dropped_self += 1
            continue
        if citing not in months:
            report.dropped_undated += 1
            continue
        month = months[citing]
        if month < 0:
            report.skipped_malformed += 1
            report.malformed_lines.append(lineno)
            continue
        events.append(LinkEvent(citing, cited, month))
        report.accepted += 1
    if _too_many(report.skipped_malformed, counted, 0.01):
        raise FormatError(
            f"{report.skipped_malformed} of {counted} citation edges are malformed "
            f"(lines {report.malformed_lines})",
            lines=report.malformed_lines,
        )
    if _too_many(report.dropped_undated, counted, 0.05):
        raise FormatError(
            f"{report.dropped_undated} of {counted} citation edges have an "
            f"undated citing paper"
        )
    return events, finalize_report(events, report)


# -- canonical event files -------------------------------------------------------


def canonical_order(events: Iterable[LinkEvent]) -> list[LinkEvent]:
    return sorted(events, key=lambda e: (e.time, e.source, e.target))


def read_canonical(lines: Iterable[str]):
    """Strictly parse canonical lines; returns (events, report)."""
    events: list[LinkEvent] = []
    report = IngestReport()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line:
            raise FormatError(f"canonical file: blank line {lineno}", lines=[lineno])
        parts = line.split("\t")
        if len(parts) != 3:
            raise FormatError(
                f"canonical file: expected 3 tab-separated fields on line {lineno}, "
                f"got {len(parts)}",
                lines=[lineno],
            )
        source, target, timestr = parts
        try:
            time = int(timestr)
        except ValueError:
            raise FormatError(
                f"canonical file: bad time {timestr!r} on line {lineno}", lines=[lineno]
            ) from None
        if time < 0:
            raise FormatError(
                f"canonical file: negative time on line {lineno}", lines=[lineno]
            )
        if source == target:
            raise FormatError(
                f"canonical file: self-link on line {lineno}", lines=[lineno]
            )
        events.append(LinkEvent(source, target, time))
        report.accepted += 1
    return events, finalize_report(events, report)


def write_canonical(events: Sequence[LinkEvent], path: str | os.PathLike) -> None:
    """Write events in canonical order; empty datasets are refused."""
    ordered = canonical_order(events)
    if not ordered:
        raise EmptyDatasetError("refusing to write an empty canonical file")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for ev in ordered:
            fh.write(f"{ev.source}\t{ev.target}\t{ev.time}\n")


def load_canonical(path: str | os.PathLike):
    """Read a canonical file from disk; returns (events, report)."""
    with open(path, "r", encoding="utf-8") as fh:
        return read_canonical(fh)
