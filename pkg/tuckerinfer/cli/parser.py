import argparse

from ..configer import SCHEMA_VERSION
from ..estimators import EstimatorName
from ..inference import VarianceMode, DEFAULT_ALPHA
from ..logger import LogLevel
from ..sampling import NoiseKind
from ..tucker import FACTORIZATION_SCHEMA_VERSION


FILE_SCHEMAS = (
    f"文件结构版本: 配置 {SCHEMA_VERSION}，分解 JSON {FACTORIZATION_SCHEMA_VERSION}；"
    "观测 CSV 表头 i1..im,y，线性型 CSV 表头 i1..im,w（下标 1 起始）"
)


def int_list(text: str):
    """解析逗号分隔的正整数列表，如 2,2,2"""
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"须为逗号分隔的整数: {text}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"须为正整数列表: {text}")
    return values


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="随机种子；缺省时取系统熵并打印到标准错误")
    common.add_argument("--threads", type=int, default=None, help="最大并行试验数，缺省为逻辑核数")
    common.add_argument("--dry-run", action="store_true", help="只打印解析后的参数或配置，不执行")
    common.add_argument("--log-level", choices=[lv.value for lv in LogLevel], default=None, help="日志级别")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="tuckerinfer",
        description="含噪 Tucker 张量补全与线性型统计推断",
        epilog=FILE_SCHEMAS,
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("complete", parents=[common], help="张量补全", epilog=FILE_SCHEMAS)
    p.add_argument("--obs", required=True, help="观测 CSV 文件")
    p.add_argument("--rank", required=True, type=int_list, help="多线性秩 r1,..,rm")
    p.add_argument("--estimator", default=EstimatorName.DEBIAS_POWER.value,
                   choices=[e.value for e in EstimatorName], help="估计量")
    p.add_argument("--init", default=None, help="初值分解 JSON 文件")
    p.add_argument("--steps", type=int, default=None, help="离线梯度下降步数")
    p.add_argument("--shape", type=int_list, default=None, help="张量形状 d1,..,dm")
    p.add_argument("--truth", default=None, help="真值分解 JSON 文件，给定时记录误差轨迹")
    p.add_argument("--out", required=True, help="输出分解 JSON 文件")

    p = sub.add_parser("infer", parents=[common], help="线性型推断", epilog=FILE_SCHEMAS)
    p.add_argument("--obs", required=True, help="观测 CSV 文件")
    p.add_argument("--init", required=True, help="初值分解 JSON 文件")
    p.add_argument("--form", required=True, action="append",
                   help="线性型 CSV 文件；重复给定时做联合推断")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="显著性水平")
    p.add_argument("--variance", default=VarianceMode.HOMO.value, choices=[v.value for v in VarianceMode],
                   help="标准误估计方式")
    p.add_argument("--truth", default=None, help="真值分解 JSON 文件，给定时输出 Ŵ_test")
    p.add_argument("--shape", type=int_list, default=None, help="张量形状 d1,..,dm")
    p.add_argument("--debug-final-tangent", action="store_true", help="额外报告最终估计处的 ‖P(I)‖_F")
    p.add_argument("--out", required=True, help="输出结果 JSON 文件")

    for name, desc in (("simulate-clt", "Ŵ_test 正态性实验"), ("simulate-coverage", "平均覆盖率实验")):
        p = sub.add_parser(name, parents=[common], help=desc, epilog=FILE_SCHEMAS)
        p.add_argument("--config", required=True, help="实验配置 JSON / YAML 文件")
        p.add_argument("--out", default=None, help="报告输出目录，覆盖配置中的 output_dir")

    p = sub.add_parser("classify-regime", parents=[common], help="信噪比-样本量区域划分", epilog=FILE_SCHEMAS)
    p.add_argument("--config", default=None, help="扫描配置文件（shape, snrs, ns）")
    p.add_argument("--snr", type=float, default=None, help="信噪比 λ_min/σ")
    p.add_argument("--n", type=int, default=None, help="样本量")
    p.add_argument("--shape", type=int_list, default=None, help="张量形状 d1,..,dm")
    p.add_argument("--out", default=None, help="输出文件（单点为 JSON，扫描为 CSV）；缺省打印到标准输出")

    p = sub.add_parser("gen-truth", parents=[common], help="生成低秩真值", epilog=FILE_SCHEMAS)
    p.add_argument("--shape", required=True, type=int_list, help="张量形状 d1,..,dm")
    p.add_argument("--rank", required=True, type=int_list, help="多线性秩 r1,..,rm")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda-min", type=float, help="最小奇异值 λ_min")
    group.add_argument("--gamma", type=float, help="λ_min = c·d̄^γ 中的 γ")
    p.add_argument("--lambda-coeff", type=float, default=10.0, help="λ_min = c·d̄^γ 中的 c")
    p.add_argument("--kappa-cap", type=float, default=10.0, help="核心条件数上限 κ₀")
    p.add_argument("--positive", action="store_true", help="平移到 [floor, ceiling] 内（正均值噪声模型）")
    p.add_argument("--floor", type=float, default=0.1, help="positive 模式下的最小元素")
    p.add_argument("--ceiling", type=float, default=None, help="positive 模式下的最大元素")
    p.add_argument("--out", required=True, help="输出分解 JSON 文件")

    p = sub.add_parser("sample-obs", parents=[common], help="从真值抽取含噪观测", epilog=FILE_SCHEMAS)
    p.add_argument("--truth", required=True, help="真值分解 JSON 文件")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="样本量")
    group.add_argument("--p", type=float, help="抽样比例")
    p.add_argument("--noise", required=True, choices=[k.value for k in NoiseKind], help="噪声模型")
    p.add_argument("--sigma", type=float, default=1.0, help="高斯噪声标准差")
    p.add_argument("--sd-low", type=float, default=0.75, help="custom_sd 标准差场下界")
    p.add_argument("--sd-high", type=float, default=1.25, help="custom_sd 标准差场上界")
    p.add_argument("--out", required=True, help="输出观测 CSV 文件")
    return parser
