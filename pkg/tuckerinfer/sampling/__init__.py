"""
Sampling模块，提供模拟数据生成

主要组件:
- make_rng: 按 (seed, trial, purpose) 划分的 Philox 随机数流
- generate_ground_truth: 低秩真值张量
- NoiseModel / sd_tensor: 噪声模型与标准差张量
- ObservationSet / sample_observations: 观测集合与迹回归抽样
"""
from .constant import NoiseKind, Purpose, POSITIVE_MEAN_KINDS
from .rng import make_rng, stream_key, fresh_seed
from .schema import GroundTruthSpec, NoiseConfig
from .noise import NoiseModel, sd_tensor, heteroskedastic_field, noise_from_config
from .truth import (
    generate_ground_truth, lambda_from_gamma, random_orthonormal, superdiagonal_core, shift_into_range
)
from .observation import (
    ObservationSet, sample_observations, sampling_count, full_observation,
    read_observations, write_observations
)

__all__ = [
    # 常量
    "NoiseKind", "Purpose", "POSITIVE_MEAN_KINDS",
    # 随机数
    "make_rng", "stream_key", "fresh_seed",
    # 配置
    "GroundTruthSpec", "NoiseConfig",
    # 噪声
    "NoiseModel", "sd_tensor", "heteroskedastic_field", "noise_from_config",
    # 真值
    "generate_ground_truth", "lambda_from_gamma", "random_orthonormal", "superdiagonal_core", "shift_into_range",
    # 观测
    "ObservationSet", "sample_observations", "sampling_count", "full_observation",
    "read_observations", "write_observations",
]
