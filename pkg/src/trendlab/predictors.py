"""Node scoring: who is about to gain links.

Six predictors, all scoring the nodes that have received at least one link by
the scoring time t:

* ``indegree``  - total links received so far
* ``pagerank``  - stationary visit probability of a teleporting random walk
                  on the link snapshot up to t
* ``pbp``       - recency-corrected popularity k(t) - lam * k(t - w)
* ``tbp``       - exponentially aged degree, each receipt damped by its age
* ``rbdm``      - blend of recent-gain share and total-degree share, weighted
                  per node by how dominant its recent gain is
* ``rbndm``     - same idea with the total-degree share replaced by the aged
                  popularity share

The blend weight ("dominance") of a node is the empirical CDF of recent gains
evaluated at that node: the fraction of eligible nodes whose recent gain does
not exceed its own. Nodes currently outpacing the field are scored mostly by
their recent momentum, settled nodes mostly by accumulated popularity.
"""

from dataclasses import dataclass, field
from math import isfinite
from typing import Iterable, Mapping

import numpy as np

from .errors import EmptyDatasetError, NoEligibleNodesError, PageRankConvergenceError
from .events import DegreeHistory, LinkEvent

PREDICTOR_NAMES = ("indegree", "pagerank", "pbp", "tbp", "rbdm", "rbndm")


@dataclass(frozen=True)
class PredictorParams:
    """Numeric knobs shared by the predictors.

    lam       - recency discount of the popularity benchmark, in [0, 1]
    gamma     - exponential age-decay rate per time unit, >= 0
    teleport  - probability of following a link (vs jumping uniformly), in (0, 1)
    """

    lam: float = 0.98
    gamma: float = 0.06
    teleport: float = 0.90
    pagerank_tol: float = 1e-12
    pagerank_max_iters: int = 1000

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lam must be in [0, 1], got {self.lam}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")
        if not 0.0 < self.teleport < 1.0:
            raise ValueError(f"teleport must be in (0, 1), got {self.teleport}")
        if self.pagerank_tol <= 0.0:
            raise ValueError(f"pagerank_tol must be positive, got {self.pagerank_tol}")
        if self.pagerank_max_iters < 1:
            raise ValueError(
                f"pagerank_max_iters must be at least 1, got {self.pagerank_max_iters}"
            )


@dataclass(frozen=True)
class ScoreVector:
    """Scores over exactly the nodes eligible at time t, plus provenance."""

    scores: dict[str, float]
    t: int
    predictor: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for node, s in self.scores.items():
            if not isfinite(s):
                raise ValueError(f"non-finite score {s!r} for node {node!r}")


@dataclass(frozen=True)
class DominanceWeights:
    """Per-node blend weights; degenerate means every recent gain was zero."""

    alpha: dict[str, float]
    degenerate: bool


def _eligible_or_raise(h: DegreeHistory, t: int) -> list[str]:
    nodes = h.eligible_sorted(t)
    if not nodes:
        raise NoEligibleNodesError(f"no node has received a link by t={t}")
    return nodes


# -- simple benchmarks --------------------------------------------------------


def indegree_score(h: DegreeHistory, t: int) -> ScoreVector:
    """Total links received by time t."""
    nodes = _eligible_or_raise(h, t)
    scores = {o: float(h.degree_at(o, t)) for o in nodes}
    return ScoreVector(scores, t, "indegree")


def pbp_score(h: DegreeHistory, t: int, past_window: int, lam: float = 0.98) -> ScoreVector:
    """Popularity with the pre-window part discounted: k(t) - lam * k(t - w).

    With lam = 0 this is plain degree; with lam = 1 it is the recent window
    gain. A window reaching past the start of the data leaves nothing to
    discount, so the score degrades to plain degree.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must be in [0, 1], got {lam}")
    nodes = _eligible_or_raise(h, t)
    scores = {
        o: float(h.degree_at(o, t)) - lam * float(h.degree_at(o, t - past_window))
        for o in nodes
    }
    return ScoreVector(scores, t, "pbp", {"lam": lam, "past_window": past_window})


def tbp_score(h: DegreeHistory, t: int, gamma: float = 0.06) -> ScoreVector:
    """Exponentially aged degree: each receipt contributes exp(-gamma * age)."""
    nodes = _eligible_or_raise(h, t)
    scores = {o: h.aged_degree(o, t, gamma) for o in nodes}
    return ScoreVector(scores, t, "tbp", {"gamma": gamma})


# -- dominance-weighted blends ------------------------------------------------
#
# The array-level functions below are the single implementation of the blend
# arithmetic; the history-backed scorers are thin wrappers that extract the
# count vectors and call them, so a value checked on arrays is the value the
# scorers serve.


def dominance_from_counts(recent: np.ndarray) -> np.ndarray:
    """Empirical CDF of the recent-gain vector, evaluated elementwise.

    alpha_i = |{j : recent_j <= recent_i}| / n. Ties share a value; the
    maximum over nodes is 1 exactly. Counts are integers, so equal gains get
    bit-identical weights.
    """
    recent = np.asarray(recent, dtype=np.int64)
    if recent.ndim != 1 or recent.size == 0:
        raise ValueError("recent gains must be a nonempty 1-d array")
    order = np.sort(recent)
    ranks = np.searchsorted(order, recent, side="right")
    return ranks / recent.size


def rbdm_from_counts(recent: np.ndarray, total: np.ndarray) -> np.ndarray:
    """Blend recent-gain shares with total-count shares under the CDF weights.

    score_i = alpha_i * recent_i / sum(recent) + (1 - alpha_i) * total_i / sum(total)

    All recent gains zero degenerates to the total-count shares alone.
    """
    recent = np.asarray(recent, dtype=np.int64)
    total = np.asarray(total, dtype=np.int64)
    if recent.shape != total.shape:
        raise ValueError("recent and total must have the same shape")
    tsum = int(total.sum())
    if tsum <= 0:
        raise ValueError("total counts must sum to a positive value")
    p = total / tsum
    rsum = int(recent.sum())
    if rsum == 0:
        return p
    r = recent / rsum
    alpha = dominance_from_counts(recent)
    return alpha * r + (1.0 - alpha) * p


def rbndm_from_counts(recent: np.ndarray, aged: np.ndarray) -> np.ndarray:
    """Blend recent-gain shares with aged-count shares, dominance on the aged side.

    score_i = (1 - alpha_i) * recent_i / sum(recent) + alpha_i * aged_i / sum(aged)

    A node whose recent gain dominates leans on its aged popularity here (the
    mirror of ``rbdm_from_counts``), which damps one-burst wonders. All recent
    gains zero degenerates to the aged shares alone.
    """
    recent = np.asarray(recent, dtype=np.int64)
    aged = np.asarray(aged, dtype=np.float64)
    if recent.shape != aged.shape:
        raise ValueError("recent and aged must have the same shape")
    wsum = float(aged.sum())
    if wsum <= 0.0:
        raise ValueError("aged counts must sum to a positive value")
    q = aged / wsum
    rsum = int(recent.sum())
    if rsum == 0:
        return q
    r = recent / rsum
    alpha = dominance_from_counts(recent)
    return (1.0 - alpha) * r + alpha * q


def dominance_weights(h: DegreeHistory, t: int, past_window: int) -> DominanceWeights:
    """CDF blend weights over the eligible nodes at t; degenerate if no gains."""
    nodes = _eligible_or_raise(h, t)
    recent = np.array([h.window_gain(o, t, past_window) for o in nodes], dtype=np.int64)
    if int(recent.sum()) == 0:
        return DominanceWeights({}, degenerate=True)
    alpha = dominance_from_counts(recent)
    return DominanceWeights({o: float(a) for o, a in zip(nodes, alpha)}, degenerate=False)


def rbdm_score(h: DegreeHistory, t: int, past_window: int) -> ScoreVector:
    """Dominance-weighted blend of recent-gain share and degree share."""
    nodes = _eligible_or_raise(h, t)
    recent = np.array([h.window_gain(o, t, past_window) for o in nodes], dtype=np.int64)
    total = np.array([h.degree_at(o, t) for o in nodes], dtype=np.int64)
    blended = rbdm_from_counts(recent, total)
    scores = {o: float(s) for o, s in zip(nodes, blended)}
    return ScoreVector(scores, t, "rbdm", {"past_window": past_window})


def rbndm_score(h: DegreeHistory, t: int, past_window: int, gamma: float = 0.06) -> ScoreVector:
    """Dominance-weighted blend of recent-gain share and aged-degree share."""
    if gamma < 0.0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    nodes = _eligible_or_raise(h, t)
    recent = np.array([h.window_gain(o, t, past_window) for o in nodes], dtype=np.int64)
    aged = np.array([h.aged_degree(o, t, gamma) for o in nodes], dtype=np.float64)
    blended = rbndm_from_counts(recent, aged)
    scores = {o: float(s) for o, s in zip(nodes, blended)}
    return ScoreVector(scores, t, "rbndm", {"gamma": gamma, "past_window": past_window})


# -- random-walk benchmark ----------------------------------------------------


def pagerank_vector(
    events: Iterable[LinkEvent],
    teleport: float = 0.90,
    tol: float = 1e-12,
    max_iters: int = 1000,
) -> dict[str, float]:
    """Stationary distribution of the teleporting walk on the event snapshot.

    The snapshot graph has one directed edge per distinct (source, target)
    pair; repeated links do not multiply edge weight. A step follows a
    uniformly random out-edge with probability ``teleport`` and jumps to a
    uniformly random node otherwise; nodes without out-edges always jump.
    Power iteration from the uniform vector, stopping when the L1 change
    between sweeps falls below ``tol``.

    Returns a mapping over every node in the snapshot (sources included).
    Raises PageRankConvergenceError if the cap is hit first.
    """
    if not 0.0 < teleport < 1.0:
        raise ValueError(f"teleport must be in (0, 1), got {teleport}")
    edges = sorted({(e.source, e.target) for e in events})
    if not edges:
        raise EmptyDatasetError("no link events in snapshot")
    nodes = sorted({u for u, _ in edges} | {v for _, v in edges})
    index = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)
    src = np.array([index[u] for u, _ in edges], dtype=np.int64)
    dst = np.array([index[v] for _, v in edges], dtype=np.int64)
    out = np.bincount(src, minlength=n)
    inv_out = np.zeros(n, dtype=np.float64)
    inv_out[out > 0] = 1.0 / out[out > 0]
    dangling = out == 0

    pr = np.full(n, 1.0 / n, dtype=np.float64)
    base = (1.0 - teleport) / n
    change = np.inf
    for _ in range(max_iters):
        follow = np.bincount(dst, weights=pr[src] * inv_out[src], minlength=n)
        nxt = teleport * (follow + pr[dangling].sum() / n) + base
        change = float(np.abs(nxt - pr).sum())
        pr = nxt
        if change < tol:
            return {nodes[i]: float(pr[i]) for i in range(n)}
    raise PageRankConvergenceError(
        f"power iteration did not reach {tol} within {max_iters} sweeps "
        f"(last change {change:.3e})",
        residual=change,
    )


def pagerank_score(h: DegreeHistory, t: int, params: PredictorParams | None = None) -> ScoreVector:
    """Walk scores on the snapshot up to t, restricted to eligible nodes.

    The walk itself runs on the full snapshot (sources included); the returned
    vector keeps only link-receiving nodes, so it is a ranking aid rather than
    a probability distribution.
    """
    params = params or PredictorParams()
    nodes = _eligible_or_raise(h, t)
    full = pagerank_vector(
        h.events_until(t),
        teleport=params.teleport,
        tol=params.pagerank_tol,
        max_iters=params.pagerank_max_iters,
    )
    scores = {o: full[o] for o in nodes}
    return ScoreVector(
        scores,
        t,
        "pagerank",
        {
            "teleport": params.teleport,
            "tol": params.pagerank_tol,
            "max_iters": params.pagerank_max_iters,
        },
    )


def compute_scores(
    h: DegreeHistory,
    predictor: str,
    t: int,
    past_window: int,
    params: PredictorParams | None = None,
) -> ScoreVector:
    """Run one predictor by name. Unknown names raise ValueError."""
    params = params or PredictorParams()
    if predictor == "indegree":
        return indegree_score(h, t)
    if predictor == "pagerank":
        return pagerank_score(h, t, params)
    if predictor == "pbp":
        return pbp_score(h, t, past_window, params.lam)
    if predictor == "tbp":
        return tbp_score(h, t, params.gamma)
    if predictor == "rbdm":
        return rbdm_score(h, t, past_window)
    if predictor == "rbndm":
        return rbndm_score(h, t, past_window, params.gamma)
    raise ValueError(f"unknown predictor: {predictor!r}")
