"""
Monte Carlo 实验示例：读取 configs/ 下的配置并运行 CLT 实验与区域划分扫描
"""
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

from tuckerinfer.configer import ConfigLoader
from tuckerinfer.harness import RegimeConfig, regime_sweep, region_grid, run_clt_experiment

CONFIG_PATH = Path(__file__).parent.joinpath("configs")


def demo_clt_smoke():
    report = run_clt_experiment(CONFIG_PATH / "clt-smoke.json")
    print(f"KS = {report.ks:.3f}，均值 {report.mean:.3f}，方差 {report.variance:.3f}，"
          f"误差标准差/总体标准误 = {report.variance_check.ratio:.3f}")


def demo_regime_sweep():
    cfg = ConfigLoader(CONFIG_PATH / "regime-sweep.yaml", RegimeConfig).load()
    frame = regime_sweep(cfg.snrs, cfg.ns, cfg.shape)
    print(region_grid(frame))


if __name__ == "__main__":
    demo_clt_smoke()
    demo_regime_sweep()
