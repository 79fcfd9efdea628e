from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .constant import EstimatorName


class EstimatorConfig(BaseModel):
    """
    补全估计量配置。

    在线步长缺省为 c₀·d*·log d̄/n：采样算子取 X_i = e_ω（而非 √d*·e_ω），
    常见写法 η = c₀·log d̄/n 换算到该尺度时需乘以 d*，两者对应同一迭代。
    """
    model_config = ConfigDict(extra="forbid")

    name: EstimatorName = Field(default=EstimatorName.DEBIAS_POWER, description="估计量名称")
    rank: List[int] = Field(description="多线性秩 r₁..r_m")
    rgd_steps: int = Field(default=50, ge=0, description="离线黎曼梯度下降步数")
    rgd_step_size: Optional[float] = Field(default=None, gt=0, description="步长；为空时离线取 d*/n，在线取 c₀·d*·log d̄/n")
    rgd_backtracks: int = Field(default=20, ge=0, description="离线梯度下降每步的步长减半次数上限，0 表示不回溯")
    online_c0: float = Field(default=1.0, gt=0, description="在线梯度下降步长常数 c₀")
    tolerance: float = Field(default=1e-8, ge=0, description="相对 F 范数变化小于该值时提前停止")
    divergence_factor: float = Field(default=1e3, gt=0, description="发散保护倍数：‖T_t‖_F 超过该倍数·‖T_obv‖_F·d*/n 时中止")
