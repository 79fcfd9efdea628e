# 命令行入口模块
"""
tuckerinfer 命令行入口，退出码：
0 成功；2 用法或文件解析错误；3 数值计算失败；4 配置或文件结构校验失败。
"""
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from .commands import COMMANDS
from .parser import build_parser
from ..configer import validation_keys
from ..errors import NumericalError, SchemaError
from ..logger import LogManager
from ..sampling import fresh_seed


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_SCHEMA = 4

# 需要随机种子的子命令
SEEDED_COMMANDS = ("gen-truth", "sample-obs")


def _error(message: str):
    sys.stderr.write(f"错误: {message}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.log_level:
        LogManager.get_instance({"log_level": args.log_level})
    seed = args.seed
    if args.command in SEEDED_COMMANDS and seed is None:
        seed = fresh_seed()
        sys.stderr.write(f"seed={seed}\n")

    try:
        return COMMANDS[args.command](args, seed)
    except SchemaError as e:
        _error(str(e))
        return EXIT_SCHEMA
    except ValidationError as e:
        _error(f"配置校验失败: {', '.join(validation_keys(e))}")
        return EXIT_SCHEMA
    except NumericalError as e:
        _error(f"数值计算失败 {e}")
        return EXIT_NUMERIC
    except (ValueError, OSError, KeyError) as e:
        _error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
