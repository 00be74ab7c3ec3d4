"""Link prediction with local similarity indices and their CF / SCF enhancements."""

from .baselines import katz_scores, lo_scores, spm_scores
from .enhance import cf_enhance, scf_enhance
from .errors import (
    CFLinkError,
    DatasetError,
    DivergenceError,
    EdgeListError,
    NumericalError,
    ParameterError,
    ResourceError,
)
from .evaluation import (
    BaselineParams,
    EvaluationRow,
    ExperimentConfig,
    auc_exact,
    auc_sampled,
    run_experiment,
    sparsity_sweep,
    winning_rates,
)
from .graph import (
    Graph,
    TrainProbeSplit,
    common_neighbors,
    parse_edge_list,
    random_graph,
    read_edge_list,
    split_train_probe,
)
from .local import score_cn, score_cra, score_ra
from .scores import ScoreMatrix
from .stats import NetworkStats, compute_stats

__version__ = "0.1.0"
