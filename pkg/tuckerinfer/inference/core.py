# 线性型推断模块
"""
本模块串联去偏估计与标准误，输出线性型的点估计、标准化统计量与置信区间：
1. debias_power_iteration 得到 T̂
2. 在初值切空间上计算 ‖P_T̂(I)‖_F 与标准误（同方差或异方差）
3. 给定真值时计算 Ŵ_test，并给出 1−α 置信区间

多个线性型共享一次去偏与幂迭代。
"""
import math
from typing import List, Optional, Sequence, Union

import numpy as np

from .constant import VarianceMode, DEFAULT_ALPHA, RESIDUAL_RTOL
from .forms import LinearForm
from .joint import joint_correlation
from .schema import InferenceResult, JointInferenceResult
from .stats import standardize, confidence_interval
from .variance import sigma_hat_sq, plugin_se_homo, s_hat_sq_hetero
from ..errors import ShapeError
from ..estimators import TangentSpace, debias_power_iteration, residuals
from ..logger import LogManager
from ..sampling import ObservationSet
from ..tucker import TuckerFactorization


class InferenceContext:
    """
    一次去偏与幂迭代的共享结果，可对多个线性型重复推断。

    Args:
        obs (ObservationSet): 观测集合。
        init (TuckerFactorization): 初值，切空间与残差均在此处计算。
        variance_mode (VarianceMode, optional): 标准误估计方式。
    """
    def __init__(self, obs: ObservationSet, init: TuckerFactorization,
                 variance_mode: Union[VarianceMode, str] = VarianceMode.HOMO):
        if init.shape != obs.shape:
            raise ShapeError(f"初值形状 {init.shape.dims} 与观测形状 {obs.shape.dims} 不符")
        if obs.n == 0:
            raise ValueError("推断需要至少一个观测")
        self.obs = obs
        self.init = init
        self.variance_mode = VarianceMode(variance_mode)
        self.space = TangentSpace(init)
        self.estimate = debias_power_iteration(obs, init)
        self.estimate_dense = self.estimate.reconstruct()
        self.residuals = _snap_residuals(residuals(obs, init), obs.values)
        self.sigma_hat = math.sqrt(sigma_hat_sq(obs, init, self.residuals))
        self.scale = math.sqrt(obs.shape.size / obs.n)
        self._final_space: Optional[TangentSpace] = None

    def final_space(self) -> TangentSpace:
        if self._final_space is None:
            self._final_space = TangentSpace(self.estimate)
        return self._final_space

    def run(self, form: LinearForm, alpha: float = DEFAULT_ALPHA, truth_value: Optional[float] = None,
            debug_final_tangent: bool = False) -> InferenceResult:
        shape = self.obs.shape
        dense = form.to_dense(shape)
        proj_norm = self.space.norm(dense)
        align = proj_norm * math.sqrt(shape.size / shape.d_max) / form.fro

        sigma_hat = s_hat = None
        if self.variance_mode == VarianceMode.HOMO:
            sigma_hat = self.sigma_hat
            se = plugin_se_homo(self.space, form, self.obs.n, sigma_hat)
        else:
            s_hat = math.sqrt(s_hat_sq_hetero(self.obs, self.space, form, self.residuals))
            se = s_hat * self.scale

        point = form.value(self.estimate_dense)
        degenerate = not se > 0
        statistic = None
        if truth_value is not None and not degenerate:
            statistic = standardize(point, truth_value, se)
        lo, hi = confidence_interval(point, 0.0 if degenerate else se, alpha)
        final = self.final_space().norm(dense) if debug_final_tangent else None
        return InferenceResult(
            point=point, se=0.0 if degenerate else se, statistic=statistic, truth_value=truth_value,
            ci_lo=lo, ci_hi=hi, alpha=alpha, variance_mode=self.variance_mode, degenerate=degenerate,
            sigma_hat=sigma_hat, s_hat=s_hat, proj_norm=proj_norm, alignment=align, proj_norm_final=final,
        )


def _snap_residuals(res: np.ndarray, values: np.ndarray) -> np.ndarray:
    """残差处于舍入误差量级时置零，无噪声且初值精确时标准误为零"""
    scale = float(np.sqrt(np.mean(values ** 2)))
    if float(np.sqrt(np.mean(res ** 2))) <= RESIDUAL_RTOL * scale:
        return np.zeros_like(res)
    return res


def _truth_value(truth, form: LinearForm) -> Optional[float]:
    if truth is None:
        return None
    dense = truth.reconstruct() if isinstance(truth, TuckerFactorization) else truth
    return form.value(dense)


def infer(obs: ObservationSet, init: TuckerFactorization, form: LinearForm, alpha: float = DEFAULT_ALPHA,
          variance_mode: Union[VarianceMode, str] = VarianceMode.HOMO, truth_value: Optional[float] = None,
          debug_final_tangent: bool = False) -> InferenceResult:
    """
    单个线性型的推断。

    Args:
        obs (ObservationSet): 观测集合。
        init (TuckerFactorization): 初值。
        form (LinearForm): 线性型。
        alpha (float, optional): 显著性水平，默认 0.05。
        variance_mode (VarianceMode, optional): homo 或 hetero。
        truth_value (float, optional): 真值 ⟨T, I⟩，给定时计算 Ŵ_test。
        debug_final_tangent (bool, optional): 为 True 时额外报告最终估计处的 ‖P(I)‖_F。

    Returns:
        InferenceResult: 推断结果。
    """
    ctx = InferenceContext(obs, init, variance_mode)
    return ctx.run(form, alpha, truth_value, debug_final_tangent)


def infer_many(obs: ObservationSet, init: TuckerFactorization, forms: Sequence[LinearForm],
               alpha: float = DEFAULT_ALPHA, variance_mode: Union[VarianceMode, str] = VarianceMode.HOMO,
               truth=None) -> List[InferenceResult]:
    """
    多个线性型共享一次去偏与幂迭代的推断，truth 为真值张量或分解。
    """
    ctx = InferenceContext(obs, init, variance_mode)
    return [ctx.run(form, alpha, _truth_value(truth, form)) for form in forms]


def joint_inference(obs: ObservationSet, init: TuckerFactorization, forms: Sequence[LinearForm],
                    alpha: float = DEFAULT_ALPHA, variance_mode: Union[VarianceMode, str] = VarianceMode.HOMO,
                    truth=None) -> JointInferenceResult:
    """
    联合推断：各线性型的结果与统计量的渐近相关系数矩阵。

    Raises:
        DegenerateFormError: 某个线性型的切空间投影为零。
    """
    ctx = InferenceContext(obs, init, variance_mode)
    rho = joint_correlation(ctx.space, forms)
    results = [ctx.run(form, alpha, _truth_value(truth, form)) for form in forms]
    LogManager.get_instance().DEBUG(f"联合推断完成: {len(forms)} 个线性型")
    return JointInferenceResult(
        results=results,
        statistics=[r.statistic for r in results],
        correlation=rho.tolist(),
    )
