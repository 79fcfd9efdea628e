import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .constant import DEFAULT_LEVELS, InitMode, FormKind, FormWeights, SAMPLE_CAP
from ..configer import BaseConfig
from ..executor import ExecutorConfig
from ..inference import VarianceMode
from ..logger import LoggerConfig
from ..sampling import GroundTruthSpec, NoiseConfig, NoiseKind, POSITIVE_MEAN_KINDS, lambda_from_gamma


class InitConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: InitMode = Field(default=InitMode.INDEPENDENT, description="初值构造方式")
    target_linf: Optional[float] = Field(default=None, ge=0, description="独立初值的 ℓ∞ 扰动，缺省为 σ√(d̄·log d̄/n)")
    rgd_steps: int = Field(default=30, ge=0, description="dependent / split 模式的离线梯度下降步数")
    online_c0: float = Field(default=1.0, gt=0, description="online 模式的步长常数 c₀")
    split_fraction: float = Field(default=0.5, gt=0, lt=1, description="split 模式用于初始化的观测比例")


class FormsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: FormKind = Field(default=FormKind.SPARSE, description="线性型族")
    support: int = Field(default=2, ge=1, description="sparse 线性型的支撑大小 |supp(I)|")
    count: int = Field(default=100, ge=1, description="覆盖率实验每次试验的线性型个数 |Q|")
    weights: FormWeights = Field(default=FormWeights.ONES, description="sparse 线性型的权重：全 1 或随机 ±1")


class ExperimentConfig(BaseConfig):
    """
    Monte Carlo 实验配置。

    λ_min 优先取 lambda_min，否则取 lambda_coeff·d̄^gamma；样本量由 n 或 p 二选一给出。
    """
    shape: List[int] = Field(description="张量形状 d₁..d_m")
    rank: List[int] = Field(description="多线性秩 r₁..r_m")
    gamma: Optional[float] = Field(default=None, description="λ_min = c·d̄^γ 中的指数 γ")
    lambda_coeff: float = Field(default=10.0, gt=0, description="λ_min = c·d̄^γ 中的常数 c")
    lambda_min: Optional[float] = Field(default=None, gt=0, description="直接给定的 λ_min")
    kappa_cap: float = Field(default=10.0, ge=1, description="核心条件数上限 κ₀")
    noise: NoiseConfig = Field(default_factory=NoiseConfig, description="噪声模型")
    p: Optional[float] = Field(default=None, description="抽样比例，n = ⌈p·d*⌉")
    n: Optional[int] = Field(default=None, description="样本量")
    init: InitConfig = Field(default_factory=InitConfig, description="初值配置")
    forms: FormsConfig = Field(default_factory=FormsConfig, description="线性型配置")
    trials: int = Field(default=100, ge=1, description="试验次数")
    seed: int = Field(default=0, ge=0, description="随机种子")
    levels: List[float] = Field(default_factory=lambda: list(DEFAULT_LEVELS), description="置信水平")
    variance_mode: VarianceMode = Field(default=VarianceMode.HOMO, description="标准误估计方式")
    redraw_truth: bool = Field(default=False, description="每次试验重新生成真值（及异方差标准差场）")
    executor: ExecutorConfig = Field(default_factory=ExecutorConfig, description="试验执行器")
    logger: LoggerConfig = Field(default_factory=LoggerConfig, description="日志配置")
    output_dir: Optional[str] = Field(default=None, description="报告输出目录")

    @model_validator(mode="after")
    def _check(self):
        m = len(self.shape)
        if m < 2 or any(d < 1 for d in self.shape):
            raise ValueError(f"张量形状不合法: {self.shape}")
        if len(self.rank) != m:
            raise ValueError(f"秩的长度 {len(self.rank)} 与张量阶数 {m} 不符")
        for j, (r, d) in enumerate(zip(self.rank, self.shape)):
            if not 1 <= r <= d:
                raise ValueError(f"模式 {j + 1} 的秩 {r} 超出范围 [1, {d}]")
        if (self.p is None) == (self.n is None):
            raise ValueError("p 与 n 须且仅须给定一个")
        size = int(np.prod(self.shape))
        if self.p is not None and not 0.0 < self.p <= 1.0:
            raise ValueError(f"抽样比例须在 (0, 1] 内，实际为 {self.p}")
        if self.n is not None and not 1 <= self.n <= SAMPLE_CAP * size:
            raise ValueError(f"样本量须在 [1, {SAMPLE_CAP}·d*] 内，实际为 {self.n}")
        if self.gamma is None and self.lambda_min is None:
            raise ValueError("gamma 与 lambda_min 须至少给定一个")
        if not self.levels or any(not 0.0 < a < 1.0 for a in self.levels):
            raise ValueError(f"置信水平须在 (0, 1) 内: {self.levels}")
        if self.forms.kind == FormKind.SPARSE and self.forms.support > size:
            raise ValueError(f"线性型支撑 {self.forms.support} 超过张量元素个数 {size}")
        if self.forms.kind == FormKind.COVERAGE and self.shape[-1] < 2:
            raise ValueError("覆盖率线性型要求最后一个模式的维数不小于 2")
        if self.forms.kind == FormKind.COVERAGE and self.forms.count > size - 2:
            raise ValueError(f"覆盖率线性型个数 {self.forms.count} 超过可选位置数 {size - 2}")
        return self

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def d_max(self) -> int:
        return max(self.shape)

    def sample_size(self) -> int:
        return int(self.n) if self.n is not None else int(math.ceil(self.p * self.size))

    def lambda_value(self) -> float:
        if self.lambda_min is not None:
            return float(self.lambda_min)
        return lambda_from_gamma(self.d_max, self.gamma, self.lambda_coeff)

    def sorted_levels(self) -> List[float]:
        return sorted(set(float(a) for a in self.levels))

    def truth_spec(self) -> GroundTruthSpec:
        positive = self.noise.kind in POSITIVE_MEAN_KINDS
        ceiling = self.noise.ceiling
        if positive and ceiling is None and self.noise.kind == NoiseKind.BERNOULLI:
            ceiling = 0.9
        return GroundTruthSpec(
            shape=self.shape, rank=self.rank, lambda_min=self.lambda_value(), kappa_cap=self.kappa_cap,
            seed=self.seed, positive=positive, floor=self.noise.floor, ceiling=ceiling,
        )


class RegimeConfig(BaseConfig):
    """区域划分扫描配置"""
    shape: List[int] = Field(description="张量形状")
    snrs: List[float] = Field(description="信噪比 λ_min/σ 网格")
    ns: List[int] = Field(description="样本量网格")

    @model_validator(mode="after")
    def _check(self):
        if len(self.shape) < 2 or any(d < 1 for d in self.shape):
            raise ValueError(f"张量形状不合法: {self.shape}")
        if not self.snrs or any(s < 0 for s in self.snrs):
            raise ValueError("信噪比网格须非空且非负")
        if not self.ns or any(n < 0 for n in self.ns):
            raise ValueError("样本量网格须非空且非负")
        return self
