"""Timestamped link events and window-based degree queries.

A dataset is a multiset of directed link events (source, target, time) with
integer times. All ranking and evaluation questions reduce to counting a
node's received links inside half-open windows, so the core structure here
keeps one sorted array of receipt times per target and answers every query
with binary search.

Window conventions, used consistently everywhere:

* ``degree_at(o, t)``      counts receipts with time <= t
* ``window_gain(o, t, w)`` counts receipts with t - w < time <= t
* ``future_gain(o, t, w)`` counts receipts with t < time <= t + w

An event exactly at t is part of the present/past, never of the future.
"""

from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import EmptyDatasetError, UnknownNodeError


class LinkEvent(NamedTuple):
    """One directed link received by ``target`` from ``source`` at ``time``."""

    source: str
    target: str
    time: int


def _check_event(ev: LinkEvent) -> None:
    if ev.source == ev.target:
        raise ValueError(f"self-link not allowed: {ev.source!r} at t={ev.time}")
    if ev.time < 0:
        raise ValueError(f"negative event time: {ev!r}")


class DegreeHistory:
    """Immutable index of link receipts by target node.

    Construction sorts the events into the canonical order (time, source,
    target), so any permutation of the same input multiset produces an
    identical structure. Only targets are nodes in the degree sense: a pure
    source (a node that never received a link) has no degree history and is
    unknown to the queries here.
    """

    def __init__(self, events: Iterable[LinkEvent]):
        canon = sorted(events, key=lambda e: (e.time, e.source, e.target))
        if not canon:
            raise EmptyDatasetError("no link events")
        for ev in canon:
            _check_event(ev)
        self._events: tuple[LinkEvent, ...] = tuple(
            ev if isinstance(ev, LinkEvent) else LinkEvent(*ev) for ev in canon
        )

        by_target: dict[str, list[int]] = {}
        for ev in self._events:
            by_target.setdefault(ev.target, []).append(ev.time)
        # events are time-sorted, so each per-target list is already sorted
        self._times: dict[str, np.ndarray] = {
            o: np.asarray(ts, dtype=np.int64) for o, ts in by_target.items()
        }
        self._nodes: tuple[str, ...] = tuple(sorted(self._times))
        self._first: dict[str, int] = {o: int(self._times[o][0]) for o in self._nodes}
        self.t_min: int = self._events[0].time
        self.t_max: int = self._events[-1].time

    # -- basic views ---------------------------------------------------------

    @property
    def events(self) -> tuple[LinkEvent, ...]:
        """All events in canonical (time, source, target) order."""
        return self._events

    @property
    def nodes(self) -> tuple[str, ...]:
        """All link-receiving nodes, sorted by id."""
        return self._nodes

    @property
    def num_nodes(self) -> int:
        return len(self._nodes)

    @property
    def num_events(self) -> int:
        return len(self._events)

    @property
    def span(self) -> int:
        return self.t_max - self.t_min

    def __eq__(self, other) -> bool:
        if not isinstance(other, DegreeHistory):
            return NotImplemented
        return self._events == other._events

    def __hash__(self):
        return hash(self._events)

    def __iter__(self) -> Iterator[LinkEvent]:
        return iter(self._events)

    def receipt_times(self, node: str) -> np.ndarray:
        """Sorted receipt times of ``node``. Raises UnknownNodeError if it never received a link."""
        try:
            return self._times[node]
        except KeyError:
            raise UnknownNodeError(f"unknown node: {node!r}") from None

    # -- window queries ------------------------------------------------------

    def degree_at(self, node: str, t: int) -> int:
        """Number of links ``node`` has received up to and including time t."""
        times = self.receipt_times(node)
        return int(np.searchsorted(times, t, side="right"))

    def window_gain(self, node: str, t: int, window: int) -> int:
        """Links received in the half-open past window (t - window, t]."""
        if window <= 0:
            raise ValueError(f"window must be positive, got {window}")
        times = self.receipt_times(node)
        hi = np.searchsorted(times, t, side="right")
        lo = np.searchsorted(times, t - window, side="right")
        return int(hi - lo)

    def future_gain(self, node: str, t: int, window: int) -> int:
        """Links received in the half-open future window (t, t + window]."""
        if window <= 0:
            raise ValueError(f"window must be positive, got {window}")
        times = self.receipt_times(node)
        hi = np.searchsorted(times, t + window, side="right")
        lo = np.searchsorted(times, t, side="right")
        return int(hi - lo)

    def aged_degree(self, node: str, t: int, decay: float) -> float:
        """Degree at t with each receipt discounted by exp(-decay * age).

        Age is t minus the receipt time, so a link received exactly at t
        contributes 1.0. With decay = 0 this equals ``degree_at`` exactly
        (the weights are all exactly 1.0).
        """
        if decay < 0:
            raise ValueError(f"decay must be nonnegative, got {decay}")
        times = self.receipt_times(node)
        hi = np.searchsorted(times, t, side="right")
        if hi == 0:
            return 0.0
        ages = t - times[:hi]
        return float(np.exp(-decay * ages.astype(np.float64)).sum())

    # -- node eligibility ----------------------------------------------------

    def eligible_nodes(self, t: int) -> set[str]:
        """Nodes that have received at least one link by time t (inclusive)."""
        return {o for o, first in self._first.items() if first <= t}

    def eligible_sorted(self, t: int) -> list[str]:
        """Same set as ``eligible_nodes`` but id-sorted, for deterministic iteration."""
        return [o for o in self._nodes if self._first[o] <= t]

    def events_until(self, t: int) -> tuple[LinkEvent, ...]:
        """Prefix of the canonical event sequence with time <= t."""
        lo, hi = 0, len(self._events)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._events[mid].time <= t:
                lo = mid + 1
            else:
                hi = mid
        return self._events[:lo]


def build_history(events: Iterable[LinkEvent]) -> DegreeHistory:
    """Build a DegreeHistory from an event iterable (any order)."""
    return DegreeHistory(events)
