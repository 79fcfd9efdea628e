"""
Tucker模块，提供 Tucker 分解与 HOSVD

主要组件:
- svd_top_r: 基于 Gram 矩阵 Jacobi 特征分解的截断 SVD
- TuckerFactorization / hosvd / reconstruct / project_multilinear: 分解、重建与多线性投影
- diagnostics: 相干性、条件数与自由度诊断
"""
from .linalg import svd_top_r
from .core import (
    TuckerFactorization, validate_rank, hosvd, reconstruct, project_multilinear,
    FACTORIZATION_SCHEMA_VERSION
)
from .diagnostics import TuckerDiagnostics, diagnostics, incoherence, degrees_of_freedom
from .io import read_factorization, write_factorization

__all__ = [
    "svd_top_r",
    "TuckerFactorization", "validate_rank", "hosvd", "reconstruct", "project_multilinear",
    "FACTORIZATION_SCHEMA_VERSION",
    "TuckerDiagnostics", "diagnostics", "incoherence", "degrees_of_freedom",
    "read_factorization", "write_factorization",
]
