from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .constant import NoiseKind


class GroundTruthSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    shape: List[int] = Field(description="张量形状 d₁..d_m")
    rank: List[int] = Field(description="多线性秩 r₁..r_m")
    lambda_min: float = Field(gt=0, description="各模式展开最小奇异值的目标值")
    kappa_cap: float = Field(default=10.0, ge=1.0, description="超对角核心元素相对 λ_min 的上限 κ₀")
    seed: int = Field(default=0, ge=0, description="随机种子")
    positive: bool = Field(default=False, description="是否将张量仿射平移到 [floor, ceiling] 内（泊松/指数/伯努利噪声需要）")
    floor: float = Field(default=0.1, description="positive 模式下的最小元素值")
    ceiling: Optional[float] = Field(default=None, description="positive 模式下的最大元素值，为空时不压缩")

    @model_validator(mode="after")
    def _check(self):
        if len(self.shape) < 2:
            raise ValueError("张量阶数须不小于 2")
        if len(self.rank) != len(self.shape):
            raise ValueError(f"秩的长度 {len(self.rank)} 与张量阶数 {len(self.shape)} 不符")
        for j, (r, d) in enumerate(zip(self.rank, self.shape)):
            if not 1 <= r <= d:
                raise ValueError(f"模式 {j + 1} 的秩 {r} 超出范围 [1, {d}]")
        if self.ceiling is not None and self.ceiling <= self.floor:
            raise ValueError("ceiling 须大于 floor")
        return self


class NoiseConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: NoiseKind = Field(default=NoiseKind.GAUSSIAN, description="噪声模型")
    sigma: float = Field(default=1.0, ge=0, description="高斯噪声标准差 σ")
    sd_low: float = Field(default=0.75, ge=0, description="custom_sd 模型下标准差场的下界")
    sd_high: float = Field(default=1.25, ge=0, description="custom_sd 模型下标准差场的上界")
    floor: float = Field(default=0.1, description="正均值模型下真值张量的最小元素")
    ceiling: Optional[float] = Field(default=None, description="正均值模型下真值张量的最大元素（伯努利默认 0.9）")

    @model_validator(mode="after")
    def _check(self):
        if self.sd_high < self.sd_low:
            raise ValueError("sd_high 须不小于 sd_low")
        return self
