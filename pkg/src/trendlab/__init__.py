"""trendlab: predict which nodes of an evolving network are about to rise.

The library half ingests timestamped link events, scores nodes with six
predictors (from plain popularity to recency-dominance blends), and grades
predictions against realized future gains with top-n precision, newcomer
novelty, AUC, and a tie-excluding rank correlation. The CLI half wraps the
whole evaluation protocol and writes JSON reports, delimited plot tables,
and rendered figures.
"""

__version__ = "0.1.0"

from .errors import (
    EmptyDatasetError,
    FormatError,
    NoEligibleNodesError,
    PageRankConvergenceError,
    SpanError,
    TrendlabError,
    UnknownNodeError,
)
from .events import DegreeHistory, LinkEvent, build_history
from .metrics import (
    EvalReport,
    RankedList,
    auc,
    concordant_discordant,
    kendall_tau,
    novelty_qn,
    precision_at_n,
    tau_from_arrays,
    top_n,
)
from .predictors import (
    PREDICTOR_NAMES,
    DominanceWeights,
    PredictorParams,
    ScoreVector,
    compute_scores,
    dominance_from_counts,
    dominance_weights,
    indegree_score,
    pagerank_score,
    pagerank_vector,
    pbp_score,
    rbdm_from_counts,
    rbdm_score,
    rbndm_from_counts,
    rbndm_score,
    tbp_score,
)
from .protocol import (
    ProtocolConfig,
    SweepSpec,
    evaluate_once,
    evaluate_scores,
    plot_table_rows,
    run_protocol,
    run_sweep,
    sample_times,
    sweep_table_rows,
)
from .synthetic import TAU_PAIRS, SyntheticSample, rank_agreement_experiment, generate_sample, model_taus

__all__ = [
    "DegreeHistory",
    "DominanceWeights",
    "EmptyDatasetError",
    "EvalReport",
    "FormatError",
    "LinkEvent",
    "NoEligibleNodesError",
    "PREDICTOR_NAMES",
    "PageRankConvergenceError",
    "PredictorParams",
    "ProtocolConfig",
    "RankedList",
    "ScoreVector",
    "SpanError",
    "SweepSpec",
    "SyntheticSample",
    "TAU_PAIRS",
    "TrendlabError",
    "UnknownNodeError",
    "auc",
    "build_history",
    "compute_scores",
    "concordant_discordant",
    "dominance_from_counts",
    "dominance_weights",
    "evaluate_once",
    "evaluate_scores",
    "rank_agreement_experiment",
    "generate_sample",
    "indegree_score",
    "kendall_tau",
    "model_taus",
    "novelty_qn",
    "pagerank_score",
    "pagerank_vector",
    "pbp_score",
    "plot_table_rows",
    "precision_at_n",
    "rbdm_from_counts",
    "rbdm_score",
    "rbndm_from_counts",
    "rbndm_score",
    "run_protocol",
    "run_sweep",
    "sample_times",
    "sweep_table_rows",
    "tau_from_arrays",
    "tbp_score",
    "top_n",
]
