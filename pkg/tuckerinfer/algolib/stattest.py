import numpy as np
import scipy.stats as st
from scipy.special import ndtr, ndtri


def kstest(data: np.ndarray, dist: str = "norm"):
    """
    对输入数据进行假设分布的Kolmogorov-Smirnov检验（精确分布函数，不分箱）

    Args:
        data (np.ndarray): 数据数组
        dist (str, optional): 假设的分布类型. 默认为 'norm'.

    Returns:
        Tuple[float, float]: 包含Kolmogorov-Smirnov检验的统计量和p值的元组
    """
    res = st.kstest(np.asarray(data, dtype=np.float64), dist.lower())
    return float(res.statistic), float(res.pvalue)


def normal_quantile(p):
    """标准正态分布的 p 分位数"""
    return ndtri(p)


def normal_cdf(x):
    """标准正态分布函数 Φ(x)"""
    return ndtr(x)


def two_sided_z(alpha: float) -> float:
    """
    双侧 1−alpha 置信区间使用的上 alpha/2 分位数 z_{α/2}

    Args:
        alpha (float): 显著性水平，取值 (0, 1)。

    Returns:
        float: z_{α/2}，例如 alpha=0.05 时约为 1.959964。
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"显著性水平须在 (0,1) 内，实际为 {alpha}")
    return float(ndtri(1.0 - alpha / 2.0))
