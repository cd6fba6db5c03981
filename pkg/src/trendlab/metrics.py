"""Ranking quality metrics: top-n precision, novelty share, AUC, rank correlation.

Everything here compares a predictor's scores against the realized future
gains. The contract questions are always about *lists*: the predicted top-n
against the real top-n (who actually gained most), sometimes against the past
top-n (who was already big). Counts are kept as exact integers and divisions
happen once at the end, so equal inputs give bit-equal metric values.
"""

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np


@dataclass(frozen=True)
class RankedList:
    """Top slice of a score mapping, strictly ordered by (score desc, id asc)."""

    entries: tuple[tuple[str, float], ...]
    n: int
    short: bool

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(node for node, _ in self.entries)


def top_n(scores: Mapping[str, float], n: int) -> RankedList:
    """The n best-scoring nodes; ties broken by id so the cut is deterministic.

    ``short`` is set when fewer than n nodes exist; the list is simply shorter
    then, never padded.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return RankedList(tuple(ranked[:n]), n, short=len(ranked) < n)


def precision_at_n(pred: RankedList, real: RankedList, n: int) -> float:
    """Overlap of the two top-n lists divided by n."""
    if pred.n != n or real.n != n:
        raise ValueError(f"mismatched n: pred={pred.n} real={real.n} wanted={n}")
    hits = len(set(pred.ids) & set(real.ids))
    return hits / n


def novelty_qn(pred: RankedList, real: RankedList, past: RankedList, n: int) -> float | None:
    """Share of the *newcomers* among the real top-n that the prediction caught.

    Newcomers are real top-n nodes absent from the past top-n. Returns the
    caught fraction, or None when there are no newcomers at all (the measure
    is undefined then, not zero).
    """
    if pred.n != n or real.n != n or past.n != n:
        raise ValueError(
            f"mismatched n: pred={pred.n} real={real.n} past={past.n} wanted={n}"
        )
    newcomers = set(real.ids) - set(past.ids)
    if not newcomers:
        return None
    caught = len(set(pred.ids) & newcomers)
    return caught / len(newcomers)


def _pairwise_auc(a: np.ndarray, b: np.ndarray) -> float:
    """Mean over all (i, j) of [a_i > b_j] + 0.5 [a_i == b_j], exact."""
    wins = (a[:, None] > b[None, :]).sum()
    ties = (a[:, None] == b[None, :]).sum()
    return (float(wins) + 0.5 * float(ties)) / (a.size * b.size)


def _midrank_auc(pos: np.ndarray, neg: np.ndarray) -> float:
    """Same pairwise statistic via midranks, O(m log m) instead of O(m^2).

    The midrank identity keeps every intermediate an exact integer or
    half-integer, so this equals the brute-force pair loop bit for bit.
    """
    scores = np.concatenate([pos, neg])
    order = np.argsort(scores, kind="stable")
    sorted_scores = scores[order]
    ranks = np.empty(scores.size, dtype=np.float64)
    i = 0
    while i < scores.size:
        j = i
        while j < scores.size and sorted_scores[j] == sorted_scores[i]:
            j += 1
        ranks[order[i:j]] = (i + 1 + j) / 2.0
        i = j
    r_pos = float(ranks[: pos.size].sum())
    u = r_pos - pos.size * (pos.size + 1) / 2.0
    return u / (pos.size * neg.size)


def auc(
    scores: Mapping[str, float],
    real: RankedList,
    n: int,
    mode: str = "classwise",
) -> float | None:
    """Probability that the predictor ranks a genuine riser above the rest.

    mode="literal": compare the predictor scores of the predicted top-n
    against the predictor scores of the real top-n, averaging the win/tie
    indicator over all list pairs.

    mode="classwise": the real top-n are the positive class, every other
    scored node is negative; standard pairwise AUC between the classes.
    Returns None when the negative class is empty (nothing to rank against).

    The real list must be nonempty and its ids must all be scored.
    """
    if real.n != n:
        raise ValueError(f"mismatched n: real={real.n} wanted={n}")
    if not real.entries:
        raise ValueError("real top-n list is empty")
    if mode == "literal":
        pred = top_n(scores, n)
        a = np.array([scores[o] for o in pred.ids], dtype=np.float64)
        b = np.array([scores[o] for o in real.ids], dtype=np.float64)
        return _pairwise_auc(a, b)
    if mode == "classwise":
        positives = set(real.ids)
        missing = positives - scores.keys()
        if missing:
            raise ValueError(f"real top-n ids missing from scores: {sorted(missing)}")
        pos = np.array([scores[o] for o in sorted(positives)], dtype=np.float64)
        neg = np.array(
            [s for o, s in sorted(scores.items()) if o not in positives],
            dtype=np.float64,
        )
        if neg.size == 0:
            return None
        return _midrank_auc(pos, neg)
    raise ValueError(f"unknown auc mode: {mode!r}")


# -- rank correlation ----------------------------------------------------------


class _Fenwick:
    """Prefix-count tree over ranks 1..m."""

    def __init__(self, m: int):
        self.tree = [0] * (m + 1)

    def add(self, i: int) -> None:
        while i < len(self.tree):
            self.tree[i] += 1
            i += i & (-i)

    def count_le(self, i: int) -> int:
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & (-i)
        return s


def concordant_discordant(x: Sequence[float], y: Sequence[float]) -> tuple[int, int]:
    """Exact concordant/discordant pair counts, ties in either coordinate excluded.

    Sweeps the items in x order and counts, for each one, how many already
    placed items (strictly smaller x) sit strictly below or above it in y.
    Items sharing an x value are compared against earlier groups only, never
    against each other. O(n log n).
    """
    if len(x) != len(y):
        raise ValueError("x and y must have equal length")
    m = len(x)
    order = sorted(range(m), key=lambda i: x[i])
    y_rank = {v: r + 1 for r, v in enumerate(sorted(set(y)))}
    tree = _Fenwick(len(y_rank))
    concordant = 0
    discordant = 0
    placed = 0
    i = 0
    while i < m:
        j = i
        while j < m and x[order[j]] == x[order[i]]:
            j += 1
        group = order[i:j]
        for idx in group:
            r = y_rank[y[idx]]
            below = tree.count_le(r - 1)
            above = placed - tree.count_le(r)
            concordant += below
            discordant += above
        for idx in group:
            tree.add(y_rank[y[idx]])
            placed += 1
        i = j
    return concordant, discordant


def tau_from_arrays(x: Sequence[float], y: Sequence[float]) -> float:
    """(C - D) / (C + D) over the decisive pairs; 0.0 when every pair is tied."""
    if len(x) < 2:
        raise ValueError("need at least 2 items for rank correlation")
    c, d = concordant_discordant(x, y)
    if c + d == 0:
        return 0.0
    return (c - d) / (c + d)


def kendall_tau(scores: Mapping[str, float], gains: Mapping[str, float]) -> float:
    """Rank agreement between predicted scores and realized gains.

    Both mappings must cover exactly the same nodes (at least two). Pairs tied
    in either coordinate carry no rank information and are excluded from both
    counts.
    """
    if scores.keys() != gains.keys():
        raise ValueError("scores and gains must cover the same node set")
    nodes = sorted(scores)
    if len(nodes) < 2:
        raise ValueError("need at least 2 nodes for rank correlation")
    x = [scores[o] for o in nodes]
    y = [gains[o] for o in nodes]
    return tau_from_arrays(x, y)


# -- one evaluation's worth of numbers ----------------------------------------


@dataclass(frozen=True)
class EvalReport:
    """Every metric for one (time, predictor, n) evaluation.

    dn, ppo, pro are the raw intersection counts behind precision and novelty:
    hits in the real top-n, newcomers caught, newcomers available. c and d are
    the decisive pair counts behind tau. novelty and auc are None when
    undefined (no newcomers / no negative class).
    """

    predictor: str
    t: int
    t_p: int
    t_f: int
    n: int
    precision: float
    dn: int
    novelty: float | None
    ppo: int
    pro: int
    auc: float | None
    tau: float
    c: int
    d: int
    seed: int | None = None
    short_list: bool = False
    clipped_future: bool = False

    def to_json(self) -> dict:
        return {
            "predictor": self.predictor,
            "t": self.t,
            "tp": self.t_p,
            "tf": self.t_f,
            "n": self.n,
            "seed": self.seed,
            "precision": self.precision,
            "dn": self.dn,
            "novelty": self.novelty,
            "ppo": self.ppo,
            "pro": self.pro,
            "auc": self.auc,
            "tau": self.tau,
            "c": self.c,
            "d": self.d,
            "short_list": self.short_list,
            "clipped_future": self.clipped_future,
        }
