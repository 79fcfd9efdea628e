from enum import Enum


class EstimatorName(Enum):
    """补全估计量"""
    DEBIAS_POWER = "debias_power"
    RGD_OFFLINE = "rgd_offline"
    RGD_ONLINE = "rgd_online"
    DIAG_DELETION = "diag_deletion"
    HOSVD = "hosvd"


# 在线梯度下降记录误差轨迹的最大点数
TRAJECTORY_POINTS = 100
# 相对变化的分母下限
RELATIVE_EPS = 1e-300
