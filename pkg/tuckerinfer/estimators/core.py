from typing import Optional

from .constant import EstimatorName
from .debias import observation_tensor, debias_power_iteration
from .init import diag_deletion_init
from .result import CompletionResult
from .rgd import rgd_offline, rgd_online
from .schema import EstimatorConfig
from ..logger import LogManager
from ..sampling import ObservationSet
from ..tucker import TuckerFactorization, hosvd


def complete(obs: ObservationSet, cfg: EstimatorConfig, init: Optional[TuckerFactorization] = None,
             truth=None) -> CompletionResult:
    """
    按配置名称选择补全估计量。

    1. hosvd：对 (d*/n)·T̂_obv 做 HOSVD
    2. diag_deletion：去对角谱初始化
    3. rgd_offline / rgd_online：从 init（缺省为去对角初值）出发做梯度下降
    4. debias_power：从 init（缺省为去对角初值）出发去偏并做一次幂迭代

    Args:
        obs (ObservationSet): 观测集合。
        cfg (EstimatorConfig): 估计量配置。
        init (TuckerFactorization, optional): 初值。
        truth (optional): 真值，给定时梯度下降记录误差轨迹。

    Returns:
        CompletionResult: 补全结果。
    """
    lm = LogManager.get_instance()
    lm.INFO(f"开始补全: 估计量 {cfg.name.value}，形状 {obs.shape.dims}，秩 {tuple(cfg.rank)}，样本量 {obs.n}")
    if obs.n == 0:
        raise ValueError("补全需要至少一个观测")

    if cfg.name == EstimatorName.HOSVD:
        return CompletionResult(hosvd(observation_tensor(obs) * (obs.shape.size / obs.n), cfg.rank))
    if cfg.name == EstimatorName.DIAG_DELETION:
        return CompletionResult(diag_deletion_init(obs, cfg.rank))

    if init is None:
        init = diag_deletion_init(obs, cfg.rank)
    if cfg.name == EstimatorName.RGD_OFFLINE:
        return rgd_offline(obs, init, cfg, truth=truth)
    if cfg.name == EstimatorName.RGD_ONLINE:
        return rgd_online(obs, init, cfg, truth=truth)
    return CompletionResult(debias_power_iteration(obs, init), iterations=1)
