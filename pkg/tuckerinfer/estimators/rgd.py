# 黎曼梯度下降模块
"""
本模块实现固定多线性秩流形上的两种黎曼梯度下降：
1. rgd_offline：全样本梯度 G_t = Σ⟨T̂_{t−1}, X_i⟩X_i − T̂_obv，
   T̂_t = HOSVD_r(T̂_{t−1} − η·P_{T_{t−1}}(G_t))，每步从 η = d*/n 出发，
   观测平方损失上升时步长减半，至多 rgd_backtracks 次
2. rgd_online：逐样本梯度 G_t = (⟨T̂_{t−1}, X_t⟩ − Y_t)X_t，默认 η = c₀·d*·log d̄/n

单样本梯度为秩一张量，其切空间投影在每个模式上落在 span([U_j, P⊥e_{i_j}]) 内，
因此在线更新只需对 (r_j+1) 维的小核心做 HOSVD，每步代价与 d* 无关。
"""
import math
from typing import List, Optional

import numpy as np

from .constant import TRAJECTORY_POINTS, RELATIVE_EPS
from .debias import observation_tensor, observation_counts
from .result import CompletionResult, relative_error
from .schema import EstimatorConfig
from .tangent import TangentSpace
from ..algolib import orthonormal_basis, pinv_cutoff, sign_convention
from ..errors import NumericalError, ShapeError
from ..logger import LogManager
from ..sampling import ObservationSet
from ..tensor import kron_others, marginal_multiply, multi_multiply, outer, unfold
from ..tucker import TuckerFactorization, hosvd


def _check_inputs(obs: ObservationSet, init: TuckerFactorization, cfg: EstimatorConfig):
    if init.shape != obs.shape:
        raise ShapeError(f"初始估计形状 {init.shape.dims} 与观测形状 {obs.shape.dims} 不符")
    if tuple(cfg.rank) != init.rank:
        raise ShapeError(f"初始估计秩 {init.rank} 与配置秩 {tuple(cfg.rank)} 不符")
    if obs.n == 0:
        raise ValueError("梯度下降需要至少一个观测")


def divergence_limit(obs: ObservationSet, cfg: EstimatorConfig) -> float:
    """发散保护阈值 factor·‖T̂_obv‖_F·d*/n"""
    return cfg.divergence_factor * float(np.linalg.norm(observation_tensor(obs))) * obs.shape.size / obs.n


def offline_step_size(obs: ObservationSet, cfg: EstimatorConfig) -> float:
    return cfg.rgd_step_size if cfg.rgd_step_size is not None else obs.shape.size / obs.n


def observed_loss(t: np.ndarray, counts: np.ndarray, t_obv: np.ndarray) -> float:
    """½Σ(⟨T, X_i⟩ − Y_i)² 去掉常数项 ½ΣY_i²"""
    return float(0.5 * np.sum(counts * t * t) - np.sum(t * t_obv))


def online_step_size(obs: ObservationSet, cfg: EstimatorConfig) -> float:
    if cfg.rgd_step_size is not None:
        return cfg.rgd_step_size
    return cfg.online_c0 * obs.shape.size * math.log(obs.shape.d_max) / obs.n


def rgd_offline(obs: ObservationSet, init: TuckerFactorization, cfg: EstimatorConfig,
                truth=None) -> CompletionResult:
    """
    离线黎曼梯度下降。

    Args:
        obs (ObservationSet): 观测集合。
        init (TuckerFactorization): 初值。
        cfg (EstimatorConfig): 配置（rgd_steps、rgd_step_size、rgd_backtracks、tolerance、divergence_factor）。
        truth (optional): 真值张量；给定时记录相对误差轨迹。

    Returns:
        CompletionResult: 补全结果；步数为 0 时估计量即为初值。

    Raises:
        NumericalError: 迭代发散或切空间投影病态。
    """
    _check_inputs(obs, init, cfg)
    lm = LogManager.get_instance()
    truth_t = _dense_truth(truth)
    t_obv = observation_tensor(obs)
    counts = observation_counts(obs)
    eta0 = offline_step_size(obs, cfg)
    limit = divergence_limit(obs, cfg)
    slack = 1e-12 * max(0.5 * float(np.dot(obs.values, obs.values)), RELATIVE_EPS)

    current, t = init, init.reconstruct()
    trajectory: List[float] = [relative_error(t, truth_t)] if truth_t is not None else []
    converged, iterations = False, 0
    loss = observed_loss(t, counts, t_obv)
    for step in range(cfg.rgd_steps):
        direction = TangentSpace(current).project(counts * t - t_obv)
        eta = eta0
        for halving in range(cfg.rgd_backtracks + 1):
            nxt = hosvd(t - eta * direction, cfg.rank)
            t_new = nxt.reconstruct()
            loss_new = observed_loss(t_new, counts, t_obv)
            if loss_new <= loss + slack or halving == cfg.rgd_backtracks:
                break
            eta *= 0.5
        if cfg.rgd_backtracks and loss_new > loss + slack:
            converged = True
            lm.INFO(f"离线梯度下降在第 {step + 1} 步停止：步长减半 {cfg.rgd_backtracks} 次后损失仍未下降")
            break
        norm_new = float(np.linalg.norm(t_new))
        if not math.isfinite(norm_new) or norm_new > limit:
            lm.WARNING(f"离线梯度下降第 {step + 1} 步发散: ‖T‖_F = {norm_new:.3e}，阈值 {limit:.3e}")
            raise NumericalError(f"第 {step + 1} 步迭代发散（‖T‖_F = {norm_new:.3e}）", stage="rgd_offline")
        change = float(np.linalg.norm(t_new - t)) / max(float(np.linalg.norm(t)), RELATIVE_EPS)
        current, t, loss = nxt, t_new, loss_new
        iterations += 1
        if truth_t is not None:
            trajectory.append(relative_error(t, truth_t))
        if lm.enabled("DEBUG"):
            lm.DEBUG(f"离线梯度下降第 {step + 1} 步: 步长 {eta:.3e}，相对变化 {change:.3e}")
        if change < cfg.tolerance:
            converged = True
            lm.INFO(f"离线梯度下降在第 {step + 1} 步收敛（相对变化 {change:.3e}）")
            break
    return CompletionResult(current, trajectory, iterations, converged)


def online_update(f: TuckerFactorization, index, y: float, eta: float) -> TuckerFactorization:
    """
    单样本更新 HOSVD_r(T − η·P_T((⟨T, e_ω⟩ − y)e_ω))。

    每个模式取 Q_j = qr([U_j, p_j])，p_j = e_{i_j} − U_jU_j[i_j]ᵀ，则
    T⁺ = S ×₁Q₁ ⋯ ×_mQ_m，其中
    S = C ×_j A_j − ηg[⊗_j a_j + Σ_j C ×_{k≠j} A_k ×_j (b_j z_j)]，
    A_j = Q_jᵀU_j，a_j = A_jU_j[i_j]ᵀ，b_j = Q_jᵀp_j，z_j = (⊗_{k≠j}U_k[i_k]) M_j†(C)，g = ⟨T, e_ω⟩ − y。
    """
    rows = [u[i] for u, i in zip(f.factors, index)]
    value = float(multi_multiply(f.core, [r[None, :] for r in rows]).reshape(-1)[0])
    g = value - y
    if g == 0.0 or eta == 0.0:
        return f

    bases, a_mats, a_vecs, b_vecs = [], [], [], []
    for u, i, row in zip(f.factors, index, rows):
        p = -(u @ row)
        p[i] += 1.0
        q = orthonormal_basis(np.column_stack([u, p]))
        a_mat = q.T @ u
        bases.append(q)
        a_mats.append(a_mat)
        a_vecs.append(a_mat @ row)
        b_vecs.append(q.T @ p)

    small = multi_multiply(f.core, a_mats)
    grad = outer(a_vecs)
    for j in range(f.m):
        z = kron_others([r[None, :] for r in rows], j) @ pinv_cutoff(unfold(f.core, j), stage="rgd_online")
        mats = list(a_mats)
        mats[j] = np.outer(b_vecs[j], z.reshape(-1))
        grad = grad + multi_multiply(f.core, mats)
    small = small - eta * g * grad

    reduced = hosvd(small, f.rank)
    factors, core = [], reduced.core
    for j, (q, v) in enumerate(zip(bases, reduced.factors)):
        u = q @ v
        signs = sign_convention(u)
        factors.append(np.ascontiguousarray(u * signs))
        core = marginal_multiply(core, j, np.diag(signs))
    return TuckerFactorization(core, tuple(factors))


def rgd_online(obs: ObservationSet, init: TuckerFactorization, cfg: EstimatorConfig,
               truth=None) -> CompletionResult:
    """
    在线黎曼梯度下降，按观测顺序遍历一次。

    Args:
        obs (ObservationSet): 观测集合。
        init (TuckerFactorization): 初值。
        cfg (EstimatorConfig): 配置（rgd_step_size、online_c0、divergence_factor）。
        truth (optional): 真值张量；给定时按等间隔记录至多 100 个相对误差检查点。

    Returns:
        CompletionResult: 补全结果，iterations 为处理的样本数。

    Raises:
        NumericalError: 迭代发散或核心展开病态。
    """
    _check_inputs(obs, init, cfg)
    lm = LogManager.get_instance()
    truth_t = _dense_truth(truth)
    eta = online_step_size(obs, cfg)
    limit = divergence_limit(obs, cfg)
    every = max(1, obs.n // TRAJECTORY_POINTS)

    current = init
    trajectory: List[float] = [relative_error(init.reconstruct(), truth_t)] if truth_t is not None else []
    for k in range(obs.n):
        current = online_update(current, obs.indices[k], float(obs.values[k]), eta)
        # 因子列正交，‖T‖_F = ‖C‖_F
        norm_new = float(np.linalg.norm(current.core))
        if not math.isfinite(norm_new) or norm_new > limit:
            lm.WARNING(f"在线梯度下降第 {k + 1} 个样本后发散: ‖T‖_F = {norm_new:.3e}，阈值 {limit:.3e}")
            raise NumericalError(f"第 {k + 1} 个样本后迭代发散（‖T‖_F = {norm_new:.3e}）", stage="rgd_online")
        if truth_t is not None and ((k + 1) % every == 0 or k + 1 == obs.n):
            trajectory.append(relative_error(current.reconstruct(), truth_t))
            if lm.enabled("DEBUG"):
                lm.DEBUG(f"在线梯度下降第 {k + 1} 个样本: 相对误差 {trajectory[-1]:.3e}")
    return CompletionResult(current, trajectory, obs.n, False)


def _dense_truth(truth) -> Optional[np.ndarray]:
    if truth is None:
        return None
    if isinstance(truth, TuckerFactorization):
        return truth.reconstruct()
    return np.asarray(truth, dtype=np.float64)
