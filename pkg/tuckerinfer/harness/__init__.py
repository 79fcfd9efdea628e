"""
Harness模块，提供 Monte Carlo 实验

主要组件:
- ExperimentConfig: 实验配置
- CltExperiment / run_clt_experiment: Ŵ_test 正态性与方差最优性
- CoverageExperiment / run_coverage_experiment: 平均覆盖率
- classify_regime / regime_sweep: 信噪比-样本量相图区域划分
- ExperimentReport / write_report: 报告与样本文件
"""
from .constant import Status, ExperimentKind, InitMode, FormKind, FormWeights, Region, DEFAULT_LEVELS
from .schema import ExperimentConfig, InitConfig, FormsConfig, RegimeConfig
from .regime import RegimeReport, Threshold, classify_regime, regime_sweep, region_grid, thresholds
from .trial import (
    run_clt_trial, run_coverage_trial, draw_sparse_form, draw_coverage_family, draw_forms, clt_form, covered
)
from .report import (
    ExperimentReport, CltSample, CoverageSample, CoverageSummary, VarianceCheck, TrialFailure,
    summarize_clt, summarize_coverage, write_report
)
from .engine import (
    ExperimentEngine, CltExperiment, CoverageExperiment, run_clt_experiment, run_coverage_experiment
)

__all__ = [
    "Status", "ExperimentKind", "InitMode", "FormKind", "FormWeights", "Region", "DEFAULT_LEVELS",
    "ExperimentConfig", "InitConfig", "FormsConfig", "RegimeConfig",
    "RegimeReport", "Threshold", "classify_regime", "regime_sweep", "region_grid", "thresholds",
    "run_clt_trial", "run_coverage_trial", "draw_sparse_form", "draw_coverage_family", "draw_forms",
    "clt_form", "covered",
    "ExperimentReport", "CltSample", "CoverageSample", "CoverageSummary", "VarianceCheck", "TrialFailure",
    "summarize_clt", "summarize_coverage", "write_report",
    "ExperimentEngine", "CltExperiment", "CoverageExperiment", "run_clt_experiment", "run_coverage_experiment",
]
