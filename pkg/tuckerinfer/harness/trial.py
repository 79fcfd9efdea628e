# 单次试验模块
"""
本模块定义 Monte Carlo 单次试验。试验函数为模块级函数，可在进程模式下按点分路径导入；
每次试验的随机性只来自 make_rng(seed, trial, purpose)，结果与执行顺序和并行度无关。

1. run_clt_trial：一个固定线性型的 Ŵ_test、总体统计量 W_test 与误差 ⟨T̂ − T, I⟩
2. run_coverage_trial：一族线性型在各置信水平下的平均覆盖率 AvgCov
"""
import math
from typing import List, Optional, Tuple

import numpy as np

from .constant import COVERAGE_ATOL, FormKind, FormWeights, InitMode
from .schema import ExperimentConfig, FormsConfig
from ..algolib import two_sided_z
from ..estimators import (
    EstimatorConfig, EstimatorName, diag_deletion_init, make_independent_init, rgd_offline, rgd_online,
    split_sample_init
)
from ..inference import InferenceContext, LinearForm, oracle_se
from ..sampling import (
    NoiseModel, ObservationSet, Purpose, generate_ground_truth, make_rng, noise_from_config, sample_observations
)
from ..tensor import Shape
from ..tucker import TuckerFactorization


def draw_sparse_form(shape, support: int, weights: FormWeights, rng: np.random.Generator) -> LinearForm:
    """在 support 个互不相同的随机位置上取权重 1（或随机 ±1）的线性型"""
    s = Shape.of(shape)
    flat = rng.choice(s.size, size=support, replace=False)
    w = np.ones(support) if weights == FormWeights.ONES else rng.choice([-1.0, 1.0], size=support)
    return LinearForm(np.stack(np.unravel_index(flat, s.dims), axis=1), w)


def draw_coverage_family(shape, count: int, rng: np.random.Generator) -> List[LinearForm]:
    """
    count 个互不相同的覆盖率线性型 e₁…₁₁ + e₁…₁₂ − e_ω，ω 不取两个固定位置。

    两个固定位置在规范线性化下的扁平下标为 0 与 1，ω 从其余 d* − 2 个位置无放回抽取。
    """
    s = Shape.of(shape)
    flat = rng.choice(s.size - 2, size=count, replace=False) + 2
    return [LinearForm.coverage_form(idx, s.m) for idx in zip(*np.unravel_index(flat, s.dims))]


def draw_forms(shape, forms: FormsConfig, count: int, rng: np.random.Generator) -> List[LinearForm]:
    if forms.kind == FormKind.COVERAGE:
        return draw_coverage_family(shape, count, rng)
    return [draw_sparse_form(shape, forms.support, forms.weights, rng) for _ in range(count)]


def prepare(cfg: ExperimentConfig, trial: int, truth: Optional[TuckerFactorization] = None,
            noise: Optional[NoiseModel] = None) -> Tuple[TuckerFactorization, NoiseModel]:
    """
    真值与噪声模型。固定真值时使用第 0 次试验的流，redraw_truth 时使用本次试验的流。
    """
    key = trial if cfg.redraw_truth else 0
    if truth is None:
        truth = generate_ground_truth(cfg.truth_spec(), trial=key)
    if noise is None:
        noise = noise_from_config(cfg.noise, cfg.shape, cfg.seed, key)
    return truth, noise


def default_target_linf(sigma: float, n: int, d_max: int) -> float:
    """σ√(d̄·log d̄/n)"""
    return sigma * math.sqrt(d_max * math.log(d_max) / n)


def build_init(cfg: ExperimentConfig, truth: TuckerFactorization, obs: ObservationSet, sigma: float,
               trial: int) -> Tuple[TuckerFactorization, ObservationSet]:
    """
    按初值模式构造初值，返回 (初值, 用于去偏的观测)。

    split 模式只把留出的观测交给去偏步骤；其余模式使用全部观测。
    """
    mode = cfg.init.mode
    if mode == InitMode.INDEPENDENT:
        target = cfg.init.target_linf
        if target is None:
            target = default_target_linf(sigma, obs.n, cfg.d_max)
        return make_independent_init(truth, target, cfg.seed, trial), obs

    if mode == InitMode.SPLIT:
        est = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=cfg.rank, rgd_steps=cfg.init.rgd_steps)
        return split_sample_init(obs, est, cfg.init.split_fraction, cfg.seed, trial)

    start = diag_deletion_init(obs, cfg.rank)
    if mode == InitMode.ONLINE:
        est = EstimatorConfig(name=EstimatorName.RGD_ONLINE, rank=cfg.rank, online_c0=cfg.init.online_c0)
        return rgd_online(obs, start, est).estimate, obs
    est = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=cfg.rank, rgd_steps=cfg.init.rgd_steps)
    return rgd_offline(obs, start, est).estimate, obs


def _sample(cfg: ExperimentConfig, trial: int, truth: Optional[TuckerFactorization], noise: Optional[NoiseModel]):
    truth, noise = prepare(cfg, trial, truth, noise)
    dense = truth.reconstruct()
    sd = noise.sd_tensor(dense)
    obs = sample_observations(dense, cfg.sample_size(), noise, cfg.seed, trial)
    init, obs_debias = build_init(cfg, truth, obs, float(sd.max()), trial)
    ctx = InferenceContext(obs_debias, init, cfg.variance_mode)
    return truth, dense, sd, ctx


def clt_form(cfg: ExperimentConfig) -> LinearForm:
    """CLT 实验的固定线性型，取自第 0 次试验的 forms 流"""
    return draw_forms(cfg.shape, cfg.forms, 1, make_rng(cfg.seed, 0, Purpose.FORMS))[0]


def run_clt_trial(cfg: ExperimentConfig, trial: int, truth: Optional[TuckerFactorization] = None,
                  noise: Optional[NoiseModel] = None) -> dict:
    """
    CLT 单次试验。

    Returns:
        dict: trial、statistic（Ŵ_test，标准误为零时为 None）、population（W_test）、
        error（⟨T̂ − T, I⟩）、se、oracle_se、degenerate。
    """
    truth, dense, sd, ctx = _sample(cfg, trial, truth, noise)
    form = clt_form(cfg)
    value = form.value(dense)
    res = ctx.run(form, truth_value=value)
    oracle = oracle_se(truth, form, ctx.obs.n, sd)
    return {
        "trial": trial,
        "statistic": res.statistic,
        "population": (res.point - value) / oracle if oracle > 0 else None,
        "error": res.point - value,
        "se": res.se,
        "oracle_se": oracle,
        "degenerate": res.degenerate,
    }


def covered(point: float, se: float, value: float, level: float) -> bool:
    """value 是否落在 point ∓ z·se 内（闭区间，容许舍入误差）"""
    z = two_sided_z(1.0 - level)
    return abs(point - value) <= z * se + COVERAGE_ATOL * (1.0 + abs(value))


def run_coverage_trial(cfg: ExperimentConfig, trial: int, truth: Optional[TuckerFactorization] = None,
                       noise: Optional[NoiseModel] = None) -> dict:
    """
    覆盖率单次试验：一次去偏，重新抽取 |Q| 个线性型，统计各置信水平下的 AvgCov。

    Returns:
        dict: trial、avgcov（{置信水平: AvgCov}）、degenerate（标准误为零的线性型个数）。
    """
    _, dense, _, ctx = _sample(cfg, trial, truth, noise)
    forms = draw_forms(cfg.shape, cfg.forms, cfg.forms.count, make_rng(cfg.seed, trial, Purpose.FORMS))
    levels = cfg.sorted_levels()
    hits = np.zeros(len(levels))
    degenerate = 0
    for form in forms:
        value = form.value(dense)
        res = ctx.run(form, alpha=1.0 - levels[-1])
        degenerate += int(res.degenerate)
        hits += [covered(res.point, res.se, value, level) for level in levels]
    return {
        "trial": trial,
        "avgcov": {level: float(h) / len(forms) for level, h in zip(levels, hits)},
        "degenerate": degenerate,
    }
