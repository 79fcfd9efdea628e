# 实验报告模块
"""
本模块汇总试验记录并写出报告：
1. summarize_clt：Ŵ_test 相对 N(0,1) 的 KS 距离、均值、方差，以及误差标准差与总体标准误之比
2. summarize_coverage：各置信水平 AvgCov 的均值、标准差、误差棒 ± z_{0.1}·σ̂ 与 Monte Carlo 标准误
3. write_report：report.json 与 samples.csv

汇总前按试验编号排序，结果与试验完成顺序无关。
"""
import math
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from .constant import ExperimentKind, ERROR_BAR_QUANTILE, SAMPLE_FLOAT_FORMAT
from ..algolib import kstest, normal_quantile
from ..utils import dump_json


class TrialFailure(BaseModel):
    trial: int
    seed: int
    error: str


class CltSample(BaseModel):
    trial: int
    statistic: Optional[float] = Field(default=None, description="Ŵ_test，标准误为零时为空")
    population: Optional[float] = Field(default=None, description="以总体标准误标准化的 W_test")
    error: float = Field(description="⟨T̂ − T, I⟩")
    se: float
    oracle_se: float
    degenerate: bool = False


class CoverageSample(BaseModel):
    trial: int
    avgcov: Dict[float, float] = Field(description="各置信水平的 AvgCov")
    degenerate: int = Field(default=0, description="标准误为零的线性型个数")


class CoverageSummary(BaseModel):
    level: float
    mean: float = Field(ge=0, le=1)
    sd: float
    err_lo: float
    err_hi: float
    mcse: float = Field(description="均值的 Monte Carlo 标准误 σ̂/√trials")


class VarianceCheck(BaseModel):
    empirical_sd: float = Field(description="⟨T̂ − T, I⟩ 的样本标准差")
    oracle_se: float = Field(description="总体标准误 ‖P_T(I) ⊙ S‖_F√(d*/n) 的平均")
    ratio: float


class ExperimentReport(BaseModel):
    kind: ExperimentKind
    config: dict = Field(description="完整配置")
    trials: int
    completed: int
    failures: List[TrialFailure] = Field(default_factory=list)
    samples: List[Union[CltSample, CoverageSample]] = Field(default_factory=list)
    degenerate: int = Field(default=0, description="标准误为零的统计量个数")
    ks: Optional[float] = Field(default=None, ge=0, le=1)
    ks_pvalue: Optional[float] = None
    mean: Optional[float] = None
    variance: Optional[float] = None
    coverage: Dict[str, CoverageSummary] = Field(default_factory=dict)
    variance_check: Optional[VarianceCheck] = None
    elapsed: float = 0.0

    def statistics(self) -> np.ndarray:
        """按试验编号排列的非退化 Ŵ_test"""
        return np.array([s.statistic for s in self.samples if getattr(s, "statistic", None) is not None])

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json")

    def samples_frame(self) -> pd.DataFrame:
        if self.kind == ExperimentKind.CLT:
            return pd.DataFrame({"trial": [s.trial for s in self.samples],
                                 "statistic": [s.statistic for s in self.samples]})
        rows = [(s.trial, level, cov) for s in self.samples for level, cov in sorted(s.avgcov.items())]
        return pd.DataFrame(rows, columns=["trial", "alpha", "avgcov"])


def _sd(x: np.ndarray) -> float:
    return float(np.std(x, ddof=1)) if x.size > 1 else 0.0


def summarize_clt(samples: List[CltSample]) -> dict:
    stats = np.array([s.statistic for s in samples if s.statistic is not None and math.isfinite(s.statistic)])
    out: dict = {"degenerate": sum(int(s.degenerate) for s in samples)}
    if stats.size:
        out["ks"], out["ks_pvalue"] = kstest(stats)
        out["mean"] = float(np.mean(stats))
        out["variance"] = float(np.var(stats, ddof=1)) if stats.size > 1 else 0.0
    if samples:
        errors = np.array([s.error for s in samples])
        oracle = float(np.mean([s.oracle_se for s in samples]))
        emp = _sd(errors)
        out["variance_check"] = VarianceCheck(
            empirical_sd=emp, oracle_se=oracle, ratio=emp / oracle if oracle > 0 else math.nan
        )
    return out


def summarize_coverage(samples: List[CoverageSample], levels: List[float]) -> dict:
    z = float(normal_quantile(ERROR_BAR_QUANTILE))
    coverage = {}
    for level in levels:
        values = np.array([s.avgcov[level] for s in samples])
        if not values.size:
            continue
        mean, sd = float(np.mean(values)), _sd(values)
        coverage[f"{level:g}"] = CoverageSummary(
            level=level, mean=mean, sd=sd, err_lo=mean - z * sd, err_hi=mean + z * sd,
            mcse=sd / math.sqrt(values.size),
        )
    return {"coverage": coverage, "degenerate": sum(s.degenerate for s in samples)}


def write_report(report: ExperimentReport, out_dir: Union[str, Path]) -> Dict[str, Path]:
    """
    写出 report.json 与 samples.csv。

    Returns:
        Dict[str, Path]: {"report": 报告路径, "samples": 样本路径}。
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"report": out / "report.json", "samples": out / "samples.csv"}
    dump_json(report.to_json_dict(), paths["report"])
    report.samples_frame().to_csv(paths["samples"], index=False, float_format=SAMPLE_FLOAT_FORMAT,
                                  lineterminator="\n")
    return paths
