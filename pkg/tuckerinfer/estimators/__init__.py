"""
Estimators模块，提供张量补全估计量

主要组件:
- TangentSpace / tangent_project_at: 切空间投影
- debias / debias_power_iteration: 去偏与一步幂迭代
- diag_deletion_init / make_independent_init / split_sample_init: 初值构造
- rgd_offline / rgd_online: 黎曼梯度下降
- complete: 按名称选择估计量
"""
from .constant import EstimatorName
from .schema import EstimatorConfig
from .tangent import TangentSpace, tangent_project_at
from .debias import (
    observation_tensor, observation_counts, residuals, debias, power_iteration, debias_power_iteration
)
from .result import CompletionResult, relative_error
from .rgd import rgd_offline, rgd_online, online_update
from .init import diag_deletion_init, make_independent_init, split_sample_init, offdiag_subspace
from .core import complete

__all__ = [
    "EstimatorName", "EstimatorConfig",
    "TangentSpace", "tangent_project_at",
    "observation_tensor", "observation_counts", "residuals", "debias", "power_iteration",
    "debias_power_iteration",
    "CompletionResult", "relative_error",
    "rgd_offline", "rgd_online", "online_update",
    "diag_deletion_init", "make_independent_init", "split_sample_init", "offdiag_subspace",
    "complete",
]
