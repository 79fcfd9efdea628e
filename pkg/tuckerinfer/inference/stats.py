from typing import Tuple

from .forms import LinearForm
from ..algolib import two_sided_z
from ..errors import NumericalError
from ..logger import LogManager
from ..tucker import TuckerFactorization


def standardize(point: float, truth_value: float, se: float) -> float:
    """
    标准化 (point − truth_value)/se。

    Raises:
        NumericalError: se 不为正。
    """
    if not se > 0:
        raise NumericalError(f"标准误须为正，实际为 {se}", stage="inference")
    return (point - truth_value) / se


def test_statistic(estimate, truth_value: float, form: LinearForm, se: float) -> float:
    """
    标准化统计量 Ŵ_test = (⟨T̂, I⟩ − ⟨T, I⟩)/se。

    Args:
        estimate: 估计量（TuckerFactorization 或稠密张量）。
        truth_value (float): 真值 ⟨T, I⟩。
        form (LinearForm): 线性型。
        se (float): 标准误，须为正。
    """
    dense = estimate.reconstruct() if isinstance(estimate, TuckerFactorization) else estimate
    return standardize(form.value(dense), truth_value, se)


# 非 pytest 用例
test_statistic.__test__ = False


def confidence_interval(point: float, se: float, alpha: float) -> Tuple[float, float]:
    """
    双侧 1−α 置信区间 point ∓ z_{α/2}·se；se = 0 时返回零宽区间并记录警告。

    Raises:
        ValueError: alpha 不在 (0, 1) 内或 se 为负。
    """
    z = two_sided_z(alpha)
    if se < 0:
        raise ValueError(f"标准误须非负，实际为 {se}")
    if se == 0:
        LogManager.get_instance().WARNING("标准误为零，置信区间退化为单点")
        return point, point
    return point - z * se, point + z * se
