# 随机数流模块
"""
所有随机性来自单一种子。每条随机数流由 (seed, trial, purpose) 决定：
SeedSequence(seed, spawn_key=(trial, crc32(purpose))) 作为计数器型 Philox 生成器的密钥，
不同试验、不同用途的流互不重叠，并行试验的结果与调度顺序无关。
"""
import zlib
from typing import Union

import numpy as np

from .constant import Purpose


def stream_key(purpose: Union[Purpose, str]) -> int:
    name = purpose.value if isinstance(purpose, Purpose) else str(purpose)
    return zlib.crc32(name.encode("utf-8"))


def make_rng(seed: int, trial: int = 0, purpose: Union[Purpose, str] = Purpose.OBS) -> np.random.Generator:
    """
    构造指定流的随机数生成器。

    Args:
        seed (int): 非负整数种子。
        trial (int, optional): 试验编号，默认 0。
        purpose (Union[Purpose, str], optional): 用途名称，默认 "obs"。

    Returns:
        np.random.Generator: Philox 生成器。
    """
    if int(seed) < 0 or int(trial) < 0:
        raise ValueError(f"种子与试验编号须为非负整数: seed={seed}, trial={trial}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(trial), stream_key(purpose)))
    return np.random.Generator(np.random.Philox(ss))


def fresh_seed() -> int:
    """从操作系统熵源获取一个 63 位种子"""
    return int(np.random.SeedSequence().entropy % (2 ** 63))
