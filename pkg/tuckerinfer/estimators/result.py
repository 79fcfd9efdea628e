from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..errors import NumericalError
from ..logger import LogManager
from ..tucker import TuckerFactorization, TuckerDiagnostics, diagnostics


@dataclass
class CompletionResult:
    """
    补全结果。

    Attributes:
        estimate (TuckerFactorization): 估计量。
        trajectory (List[float]): 相对 F 误差轨迹（给定真值时记录，首项为初值误差）。
        iterations (int): 实际迭代次数。
        converged (bool): 是否因相对变化小于容差提前停止。
        diagnostics (TuckerDiagnostics, optional): 估计量诊断；核心为零时为空。
    """
    estimate: TuckerFactorization
    trajectory: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    diagnostics: Optional[TuckerDiagnostics] = None

    def __post_init__(self):
        if self.diagnostics is None:
            self.diagnostics = safe_diagnostics(self.estimate)

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "trajectory": list(self.trajectory),
            "diagnostics": self.diagnostics.model_dump() if self.diagnostics else None,
        }


def safe_diagnostics(f: TuckerFactorization) -> Optional[TuckerDiagnostics]:
    try:
        return diagnostics(f)
    except NumericalError as e:
        LogManager.get_instance().WARNING(f"估计量诊断不可用: {e}")
        return None


def relative_error(t, truth) -> float:
    """‖T − T₀‖_F / ‖T₀‖_F；真值为零时返回绝对误差"""
    denom = float(np.linalg.norm(truth))
    diff = float(np.linalg.norm(np.asarray(t) - np.asarray(truth)))
    return diff / denom if denom > 0.0 else diff
