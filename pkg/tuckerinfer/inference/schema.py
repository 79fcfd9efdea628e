from typing import List, Optional

from pydantic import BaseModel, Field

from .constant import VarianceMode


class InferenceResult(BaseModel):
    """
    单个线性型的推断结果。

    statistic 仅在给定真值且标准误为正时计算；degenerate 表示标准误为零，
    此时置信区间退化为单点。
    """
    point: float = Field(description="点估计 ⟨T̂, I⟩")
    se: float = Field(ge=0, description="标准误")
    statistic: Optional[float] = Field(default=None, description="标准化统计量 Ŵ_test")
    truth_value: Optional[float] = Field(default=None, description="真值 ⟨T, I⟩")
    ci_lo: float = Field(description="置信区间下界")
    ci_hi: float = Field(description="置信区间上界")
    alpha: float = Field(gt=0, lt=1, description="显著性水平")
    variance_mode: VarianceMode = Field(description="标准误估计方式")
    degenerate: bool = Field(default=False, description="标准误是否为零")
    sigma_hat: Optional[float] = Field(default=None, description="同方差噪声标准差估计 σ̂")
    s_hat: Optional[float] = Field(default=None, description="异方差方差估计 ŝ(I)")
    proj_norm: float = Field(description="‖P_T̂(I)‖_F，切空间取在初值处")
    alignment: float = Field(description="对齐参数 α̂_I")
    proj_norm_final: Optional[float] = Field(default=None, description="在最终估计处重新计算的 ‖P(I)‖_F")

    def covers(self, value: float) -> bool:
        return self.ci_lo <= value <= self.ci_hi

    def to_json_dict(self) -> dict:
        """结果文件格式"""
        out = {"point": self.point, "se": self.se}
        if self.statistic is not None:
            out["statistic"] = self.statistic
        out.update({
            "ci": [self.ci_lo, self.ci_hi],
            "alpha": self.alpha,
            "variance_mode": self.variance_mode.value,
            "degenerate": self.degenerate,
        })
        diag = {}
        if self.sigma_hat is not None:
            diag["sigma_hat"] = self.sigma_hat
        if self.s_hat is not None:
            diag["s_hat"] = self.s_hat
        diag["proj_norm"] = self.proj_norm
        diag["alignment"] = self.alignment
        if self.proj_norm_final is not None:
            diag["proj_norm_final"] = self.proj_norm_final
        out["diagnostics"] = diag
        return out


class JointInferenceResult(BaseModel):
    results: List[InferenceResult] = Field(description="各线性型的推断结果")
    statistics: List[Optional[float]] = Field(description="各线性型的标准化统计量")
    correlation: List[List[float]] = Field(description="渐近相关系数矩阵 ρ")

    def to_json_dict(self) -> dict:
        return {
            "statistics": self.statistics,
            "correlation": self.correlation,
            "forms": [r.to_json_dict() for r in self.results],
        }
