# 区域划分模块
"""
本模块将 (信噪比, 样本量) 对照统计与计算阈值划分到相图区域 A–E，阈值常数取 1：
1. 统计阈值：snr ≥ √(d*·d̄/n) 且 n ≥ d̄
2. 计算阈值：snr ≥ √((d*)^{3/2}/n) 且 n ≥ √d*
3. D 阈值：统计阈值的 √d̄ 倍

区域编号为从起点开始连续满足的条件个数，条件次序随阶数而定：
- m = 3：统计 → B，计算 → C，D 阈值 → D
- m ≥ 4：统计 → B，D 阈值 → D，计算 → E
- m = 2：统计 → B，计算 → E

每个条件关于 snr 与 n 单调，区域编号因此关于两者单调不减。
"""
import math
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from .constant import Region, BALANCE_RATIO
from ..logger import LogManager
from ..tensor import Shape


class Threshold(BaseModel):
    snr: float = Field(description="信噪比阈值")
    n: float = Field(description="样本量阈值")
    snr_ratio: float = Field(description="snr / 阈值")
    n_ratio: float = Field(description="n / 阈值")
    met: bool = Field(description="两个阈值是否同时满足")


class RegimeReport(BaseModel):
    region: Region = Field(description="所在区域")
    index: int = Field(ge=0, description="区域编号，A 为 0")
    snr: float
    n: float
    shape: List[int]
    balanced: bool = Field(description="d̄/d̲ 是否不超过 2")
    thresholds: Dict[str, Threshold] = Field(description="statistical / computational / d_region 三组阈值")

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json")


def _ladder(m: int) -> List[tuple]:
    if m == 2:
        return [("statistical", Region.B), ("computational", Region.E)]
    if m == 3:
        return [("statistical", Region.B), ("computational", Region.C), ("d_region", Region.D)]
    return [("statistical", Region.B), ("d_region", Region.D), ("computational", Region.E)]


def thresholds(n: float, shape) -> Dict[str, tuple]:
    """各组 (snr 阈值, n 阈值)；n = 0 时 snr 阈值为无穷大"""
    s = Shape.of(shape)
    d_star, d_bar = float(s.size), float(s.d_max)
    inv_n = 1.0 / n if n > 0 else math.inf
    stat = (math.sqrt(d_star * d_bar * inv_n), d_bar)
    comp = (math.sqrt(d_star ** 1.5 * inv_n), math.sqrt(d_star))
    lift = math.sqrt(d_bar)
    return {
        "statistical": stat,
        "computational": comp,
        "d_region": (lift * stat[0], lift * stat[1]),
    }


def classify_regime(snr: float, n: float, shape, warn: bool = True) -> RegimeReport:
    """
    按信噪比与样本量划分区域。

    Args:
        snr (float): 信噪比 λ_min/σ，≥ 0。
        n (float): 样本量，≥ 0。
        shape: 张量形状，阶数 ≥ 2。
        warn (bool, optional): 维度不平衡时是否记录警告。

    Returns:
        RegimeReport: 区域与各组阈值；维度不平衡时记录警告。
    """
    if snr < 0 or n < 0:
        raise ValueError(f"信噪比与样本量须非负: snr={snr}, n={n}")
    s = Shape.of(shape)
    balanced = s.d_max / s.d_min <= BALANCE_RATIO
    if not balanced and warn:
        LogManager.get_instance().WARNING(f"维度不平衡 d̄/d̲ = {s.d_max / s.d_min:.2f} > {BALANCE_RATIO}，阈值仅供参考")

    table = {}
    for name, (t_snr, t_n) in thresholds(n, s.dims).items():
        table[name] = Threshold(
            snr=t_snr, n=t_n,
            snr_ratio=snr / t_snr if t_snr > 0 else math.inf,
            n_ratio=n / t_n,
            met=bool(snr >= t_snr and n >= t_n),
        )

    region, index = Region.A, 0
    for name, label in _ladder(s.m):
        if not table[name].met:
            break
        region, index = label, index + 1
    return RegimeReport(region=region, index=index, snr=snr, n=n, shape=list(s.dims),
                        balanced=balanced, thresholds=table)


def regime_sweep(snrs: Sequence[float], ns: Sequence[float], shape) -> pd.DataFrame:
    """网格扫描，每个 (snr, n) 一行：snr, n, region, index 及各组比值"""
    rows = []
    for k, n in enumerate(ns):
        for i, snr in enumerate(snrs):
            rep = classify_regime(float(snr), float(n), shape, warn=(k == 0 and i == 0))
            row = {"snr": rep.snr, "n": rep.n, "region": rep.region.value, "index": rep.index}
            for name, th in rep.thresholds.items():
                row[f"{name}_snr_ratio"] = th.snr_ratio
                row[f"{name}_n_ratio"] = th.n_ratio
            rows.append(row)
    return pd.DataFrame(rows)


def region_grid(frame: pd.DataFrame) -> np.ndarray:
    """扫描结果的区域编号矩阵，行对应 n，列对应 snr（均升序）"""
    return frame.pivot(index="n", columns="snr", values="index").sort_index().sort_index(axis=1).to_numpy()
