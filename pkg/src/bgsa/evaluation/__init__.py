from .roc import MethodScores, auc, roc_points
from .methods import MethodSpec, run_method, score_adapter
from .benchmark import BenchmarkReport, paired_tests, run_benchmark
