"""
AlgoLib - 张量补全与推断使用的数值内核库

1. 对称特征分解 (eigen):
   - 循环 Jacobi 扫描（numba 加速）
   - 确定性排序的特征分解封装

2. 矩阵操作 (matops):
   - 带截断阈值的伪逆
   - QR 正交化
   - 奇异向量符号规范
   - 投影矩阵

3. 统计检验 (stattest):
   - Kolmogorov-Smirnov 检验
   - 标准正态分位数与分布函数

4. 通用工具 (utils):
   - 固定顺序的散点累加
   - 扁平下标取值

使用示例：
from tuckerinfer.algolib import eigh_sorted, two_sided_z
w, v = eigh_sorted(gram)
z = two_sided_z(0.05)
"""
from .eigen import jacobi_eigh, eigh_sorted, JACOBI_TOL, JACOBI_MAX_SWEEPS
from .matops import pinv_cutoff, orthonormal_basis, sign_convention, projector, PINV_RCOND
from .stattest import kstest, normal_quantile, normal_cdf, two_sided_z
from .utils import scatter_add, gather

__all__ = [
    # eigen
    'jacobi_eigh', 'eigh_sorted', 'JACOBI_TOL', 'JACOBI_MAX_SWEEPS',
    # matops
    'pinv_cutoff', 'orthonormal_basis', 'sign_convention', 'projector', 'PINV_RCOND',
    # stattest
    'kstest', 'normal_quantile', 'normal_cdf', 'two_sided_z',
    # utils
    'scatter_add', 'gather',
]
