from enum import Enum


class VarianceMode(Enum):
    """标准误估计方式"""
    HOMO = "homo"       # 同方差：σ̂‖P_T̂(I)‖_F√(d*/n)
    HETERO = "hetero"   # 异方差：ŝ(I)√(d*/n)


DEFAULT_ALPHA = 0.05

# 残差均方根不超过观测值均方根的该倍数时视为舍入误差，按零残差处理
RESIDUAL_RTOL = 1e-12
