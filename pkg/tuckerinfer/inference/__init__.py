"""
Inference模块，提供线性型的统计推断

主要组件:
- LinearForm: 稀疏线性型与 CSV 读写
- sigma_hat_sq / plugin_se_homo / s_hat_sq_hetero / oracle_se: 方差与标准误
- test_statistic / confidence_interval: 标准化统计量与置信区间
- joint_correlation / correlation_bound: 联合推断
- infer / infer_many / joint_inference: 推断流程
"""
from .constant import VarianceMode, DEFAULT_ALPHA
from .forms import LinearForm, read_form, write_form
from .variance import sigma_hat_sq, plugin_se_homo, s_hat_sq_hetero, oracle_se
from .stats import standardize, test_statistic, confidence_interval
from .joint import joint_correlation, correlation_bound, alignment
from .schema import InferenceResult, JointInferenceResult
from .core import InferenceContext, infer, infer_many, joint_inference

__all__ = [
    "VarianceMode", "DEFAULT_ALPHA",
    "LinearForm", "read_form", "write_form",
    "sigma_hat_sq", "plugin_se_homo", "s_hat_sq_hetero", "oracle_se",
    "standardize", "test_statistic", "confidence_interval",
    "joint_correlation", "correlation_bound", "alignment",
    "InferenceResult", "JointInferenceResult",
    "InferenceContext", "infer", "infer_many", "joint_inference",
]
