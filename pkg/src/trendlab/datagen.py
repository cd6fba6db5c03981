"""Deterministic test-network generator: rich-get-richer with recency bursts.

Produces a bipartite event stream (users link to items over integer days)
whose shape matches what the predictors care about: most links go to already
popular items (preferential attachment with +1 smoothing), but every so often
a handful of items "burst" and soak up a share of the traffic for a few days
regardless of their standing. Bursting items are exactly the rising
newcomers the recency-aware scores are supposed to catch, so this stream
exercises every code path without shipping a real dataset.
"""

import numpy as np

from .events import LinkEvent


def generate_network(
    num_users: int = 500,
    num_items: int = 2000,
    num_events: int = 50_000,
    horizon: int = 300,
    burst_share: float = 0.3,
    burst_every: int = 15,
    burst_len: int = 10,
    burst_count: int = 3,
    seed: int = 7,
) -> list[LinkEvent]:
    """Draw the event stream; same arguments, same stream, event for event.

    Events are spread evenly over days 0..horizon-1 (remainder on the early
    days). Each event picks a uniform user; the item comes from the active
    burst set with probability burst_share (when one exists), otherwise from
    the attachment urn (one smoothing ticket per item plus one ticket per
    link already received). Every burst_every days the burst set is redrawn:
    burst_count uniform items, active for burst_len days.
    """
    if min(num_users, num_items, num_events, horizon) < 1:
        raise ValueError("all sizes must be positive")
    if num_items < 2:
        raise ValueError("need at least 2 items")
    if not 0.0 <= burst_share <= 1.0:
        raise ValueError(f"burst_share must be in [0, 1], got {burst_share}")
    if min(burst_every, burst_len, burst_count) < 1:
        raise ValueError("burst schedule values must be positive")

    rng = np.random.default_rng(seed)
    users = [f"u{i:04d}" for i in range(num_users)]
    items = [f"i{i:04d}" for i in range(num_items)]

    base, extra = divmod(num_events, horizon)
    urn = list(range(num_items))  # one smoothing ticket per item, grows per link
    active: list[int] = []
    expiry = -1

    events: list[LinkEvent] = []
    for day in range(horizon):
        if day % burst_every == 0:
            active = [int(x) for x in rng.integers(0, num_items, size=burst_count)]
            expiry = day + burst_len
        if day >= expiry:
            active = []
        today = base + (1 if day < extra else 0)
        for _ in range(today):
            if active and rng.random() < burst_share:
                item = active[int(rng.integers(0, len(active)))]
            else:
                item = urn[int(rng.integers(0, len(urn)))]
            user = users[int(rng.integers(0, num_users))]
            events.append(LinkEvent(user, items[item], day))
            urn.append(item)
    return events
