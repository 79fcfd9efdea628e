from enum import Enum


class NoiseKind(Enum):
    """观测噪声模型"""
    GAUSSIAN = "gaussian"
    BERNOULLI = "bernoulli"
    POISSON = "poisson"
    EXPONENTIAL = "exponential"
    CUSTOM_SD = "custom_sd"


# 需要非负（或落在 [0,1] 内）均值张量的噪声模型
POSITIVE_MEAN_KINDS = (NoiseKind.BERNOULLI, NoiseKind.POISSON, NoiseKind.EXPONENTIAL)


class Purpose(Enum):
    """随机数流用途，每个 (seed, trial, purpose) 对应一条独立的流"""
    TRUTH = "truth"
    OBS = "obs"
    NOISE = "noise"
    INIT = "init"
    FORMS = "forms"
    FIELD = "field"
    SPLIT = "split"
