from enum import Enum


class Status(Enum):
    """实验引擎运行状态"""
    INIT = "INIT"
    INITIALIZING = "INITIALIZING"
    RUNNING = "RUNNING"
    STOPPING = "STOPPING"
    STOPPED = "STOPPED"
    ERROR = "ERROR"


class ExperimentKind(Enum):
    CLT = "clt"
    COVERAGE = "coverage"


class InitMode(Enum):
    """初值构造方式"""
    INDEPENDENT = "independent"     # 真值加扰动，与观测独立
    DEPENDENT = "dependent"         # 去对角初始化 + 离线梯度下降，复用全部观测
    SPLIT = "split"                 # 样本拆分
    ONLINE = "online"               # 去对角初始化 + 在线梯度下降


class FormKind(Enum):
    """线性型族"""
    SPARSE = "sparse"               # 随机 |supp| 个位置
    COVERAGE = "coverage"           # e₁₁₁ + e₁₁₂ − e_ω


class FormWeights(Enum):
    ONES = "ones"
    SIGNED = "signed"


class Region(Enum):
    """信噪比-样本量相图中的区域"""
    A = "A"     # 统计上不可行
    B = "B"     # 统计上可行
    C = "C"     # 计算上可行
    D = "D"
    E = "E"     # 快速算法可行


DEFAULT_LEVELS = (0.9, 0.95)
# 误差棒 AvgCov ± z_{0.1}·σ̂ 使用的单侧分位数水平
ERROR_BAR_QUANTILE = 0.9
# 样本量上限 n ≤ SAMPLE_CAP·d*
SAMPLE_CAP = 20
# 覆盖判定的舍入容差（相对 1 + |真值|）
COVERAGE_ATOL = 1e-9
# 判定维度平衡的 d̄/d̲ 上限
BALANCE_RATIO = 2.0
# 样本 CSV 的浮点格式
SAMPLE_FLOAT_FORMAT = "%.17g"
