# 噪声模型模块
"""
本模块定义迹回归模型 Y = ⟨T, X⟩ + ξ 中的噪声分布。
给定观测位置 ω，各模型的条件分布与标准差张量 S 为：
1. gaussian：Y ~ N(T_ω, σ²)，S ≡ σ
2. bernoulli：Y ~ Bernoulli(T_ω)，S = √(T(1−T))，要求 0 ≤ T ≤ 1
3. poisson：Y ~ Poisson(T_ω)，S = √T，要求 T > 0
4. exponential：Y ~ Exp(均值 T_ω)，S = T，要求 T > 0
5. custom_sd：Y ~ N(T_ω, S_ω²)，S 由用户给定，要求 S ≥ 0

所有模型满足 E[Y | ω] = T_ω。
"""
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .constant import NoiseKind, Purpose
from .rng import make_rng
from .schema import NoiseConfig
from ..errors import NoisePreconditionError, ShapeError
from ..tensor import as_array


class NoiseModel(BaseModel):
    """
    噪声模型。

    Attributes:
        kind (NoiseKind): 模型类型。
        sigma (float): gaussian 模型的标准差。
        sd (np.ndarray, optional): custom_sd 模型的标准差张量。
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: NoiseKind = Field(default=NoiseKind.GAUSSIAN, description="噪声模型")
    sigma: float = Field(default=1.0, ge=0, description="高斯噪声标准差")
    sd: Optional[np.ndarray] = Field(default=None, description="custom_sd 模型的标准差张量")

    @model_validator(mode="after")
    def _check_sd(self):
        if self.kind == NoiseKind.CUSTOM_SD:
            if self.sd is None:
                raise ValueError("custom_sd 模型需要给定标准差张量 sd")
            sd = np.asarray(self.sd, dtype=np.float64)
            if not np.all(np.isfinite(sd)):
                raise ValueError("标准差张量含有非有限值")
            bad = np.flatnonzero(sd.reshape(-1) < 0)
            if bad.size:
                index = np.unravel_index(bad[0], sd.shape)
                raise NoisePreconditionError(self.kind.value, index, sd.reshape(-1)[bad[0]])
        return self

    @classmethod
    def gaussian(cls, sigma: float) -> "NoiseModel":
        return cls(kind=NoiseKind.GAUSSIAN, sigma=sigma)

    @classmethod
    def custom(cls, sd) -> "NoiseModel":
        return cls(kind=NoiseKind.CUSTOM_SD, sd=as_array(sd))

    def check(self, t):
        """
        逐元素检查均值张量是否满足模型前置条件。

        Raises:
            NoisePreconditionError: 报告第一个违反条件的下标（按规范线性化顺序）。
            ShapeError: custom_sd 的标准差张量形状与 t 不一致。
        """
        x = as_array(t)
        flat = x.reshape(-1)
        if self.kind == NoiseKind.BERNOULLI:
            bad = np.flatnonzero((flat < 0.0) | (flat > 1.0))
        elif self.kind in (NoiseKind.POISSON, NoiseKind.EXPONENTIAL):
            bad = np.flatnonzero(flat <= 0.0)
        else:
            bad = np.empty(0, dtype=np.int64)
            if self.kind == NoiseKind.CUSTOM_SD and np.shape(self.sd) != x.shape:
                raise ShapeError(f"标准差张量形状 {np.shape(self.sd)} 与均值张量 {x.shape} 不符")
        if bad.size:
            raise NoisePreconditionError(self.kind.value, np.unravel_index(bad[0], x.shape), flat[bad[0]])

    def sd_tensor(self, t) -> np.ndarray:
        """逐元素标准差张量 S"""
        self.check(t)
        x = as_array(t)
        if self.kind == NoiseKind.GAUSSIAN:
            return np.full(x.shape, float(self.sigma))
        if self.kind == NoiseKind.BERNOULLI:
            return np.sqrt(x * (1.0 - x))
        if self.kind == NoiseKind.POISSON:
            return np.sqrt(x)
        if self.kind == NoiseKind.EXPONENTIAL:
            return x.copy()
        return np.array(self.sd, dtype=np.float64)

    def draw(self, means: np.ndarray, flat_index: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """
        按条件分布抽取观测值。

        Args:
            means (np.ndarray): 各观测位置的均值 T_ω。
            flat_index (np.ndarray): 各观测位置的扁平下标（custom_sd 读取 S 时使用）。
            rng (np.random.Generator): 噪声随机数流。

        Returns:
            np.ndarray: 观测值 Y。
        """
        n = means.shape[0]
        if self.kind == NoiseKind.GAUSSIAN:
            return means + self.sigma * rng.standard_normal(n)
        if self.kind == NoiseKind.CUSTOM_SD:
            scale = np.asarray(self.sd, dtype=np.float64).reshape(-1)[flat_index]
            return means + scale * rng.standard_normal(n)
        if self.kind == NoiseKind.BERNOULLI:
            return (rng.random(n) < means).astype(np.float64)
        if self.kind == NoiseKind.POISSON:
            return rng.poisson(means).astype(np.float64)
        return rng.exponential(means)


def sd_tensor(t, noise: NoiseModel) -> np.ndarray:
    """噪声模型 noise 在均值张量 t 下的标准差张量"""
    return noise.sd_tensor(t)


def heteroskedastic_field(shape, low: float = 0.75, high: float = 1.25, seed: int = 0, trial: int = 0) -> np.ndarray:
    """
    异方差标准差场 S = low + (high − low)·u，u 为独立均匀随机场。

    Args:
        shape: 张量形状。
        low (float, optional): 下界，默认 0.75。
        high (float, optional): 上界，默认 1.25。
        seed (int, optional): 随机种子。
        trial (int, optional): 试验编号。
    """
    rng = make_rng(seed, trial, Purpose.FIELD)
    return low + (high - low) * rng.random(tuple(shape))


def noise_from_config(cfg: NoiseConfig, shape, seed: int = 0, trial: int = 0) -> NoiseModel:
    """由实验配置构造噪声模型；custom_sd 使用 [sd_low, sd_high] 上的随机标准差场"""
    if cfg.kind == NoiseKind.CUSTOM_SD:
        return NoiseModel.custom(heteroskedastic_field(shape, cfg.sd_low, cfg.sd_high, seed, trial))
    return NoiseModel(kind=cfg.kind, sigma=cfg.sigma)
