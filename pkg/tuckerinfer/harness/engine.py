# 实验引擎模块
"""
本模块定义 Monte Carlo 实验引擎，沿用 on_init → on_start → on_stop 的生命周期：
1. on_init：启动日志，生成固定真值与噪声模型，按试验提交任务
2. on_start：执行器并行运行全部试验
3. on_stop：按试验编号排序合并结果，汇总为 ExperimentReport，记录执行器的运行统计，关闭日志

单次试验失败记录为 TrialFailure，实验继续执行。运行统计只写入日志，不进入报告。
"""
import time
import traceback
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from .constant import ExperimentKind, Status
from .report import (
    CltSample, CoverageSample, ExperimentReport, TrialFailure, summarize_clt, summarize_coverage, write_report
)
from .schema import ExperimentConfig
from .trial import prepare, run_clt_trial, run_coverage_trial
from ..configer import ConfigLoader
from ..executor import MultiTaskExecutor
from ..logger import LogManager, auto_log


class ExperimentEngine(ABC):
    """
    实验引擎基类

    Args:
        config (Union[ExperimentConfig, str, Path]): 实验配置或配置文件路径。
        overrides (dict, optional): 从文件加载时叠加的覆盖项（命令行 --seed / --threads）。
    """
    kind: ExperimentKind

    def __init__(self, config: Union[ExperimentConfig, str, Path], overrides: Optional[dict] = None):
        self.configer: Optional[ConfigLoader] = None
        if isinstance(config, ExperimentConfig):
            self.config = config
        else:
            self.configer = ConfigLoader(config, ExperimentConfig, overrides)
            self.config = self.configer.load()

        self.logger: LogManager = LogManager.get_instance(self.config.logger)
        self.executor: MultiTaskExecutor = MultiTaskExecutor.from_config(self.config.executor)
        self.status = Status.INIT
        self.report: Optional[ExperimentReport] = None
        self.runtime: Optional[dict] = None

        self._task_trials: Dict[str, int] = {}
        self._outcomes: Dict[int, dict] = {}
        self._failures: List[TrialFailure] = []
        self._t0 = 0.0

    def STATUS(self, status: str):
        self.status = Status(status.upper())

    @property
    @abstractmethod
    def trial_func(self) -> Callable:
        """模块级单次试验函数 (cfg, trial, truth, noise) -> dict"""

    @abstractmethod
    def summarize(self, samples: list) -> dict:
        """由排序后的试验记录计算汇总字段"""

    @abstractmethod
    def to_sample(self, outcome: dict):
        pass

    def on_init(self):
        """生成固定真值并提交全部试验"""
        self.logger.start()
        cfg = self.config
        self._t0 = time.time()
        truth = noise = None
        if not cfg.redraw_truth:
            truth, noise = prepare(cfg, 0)
        for trial in range(cfg.trials):
            task_id = self.executor.submit(self.trial_func, cfg, trial, truth, noise,
                                           task_name=f"{self.kind.value}-{trial}", task_id=f"trial-{trial}")
            self._task_trials[task_id] = trial
        self.logger.INFO(f"实验[{self.kind.value}]已提交 {cfg.trials} 次试验，执行模式 {self.executor.mode.value}，"
                         f"并行数 {self.executor.max_workers}")

    def on_start(self):
        results = self.executor.run()
        failed = set(self.executor.failed())
        for task_id, trial in self._task_trials.items():
            if task_id not in failed:
                self._outcomes[trial] = results[task_id]
            else:
                error = (self.executor.get_error(task_id) or "未知错误").strip().splitlines()[0]
                self._failures.append(TrialFailure(trial=trial, seed=self.config.seed, error=error))
                self.logger.ERROR(f"第 {trial} 次试验失败（seed={self.config.seed}）: {error}")

    def on_stop(self):
        cfg = self.config
        samples = [self.to_sample(self._outcomes[t]) for t in sorted(self._outcomes)]
        failures = sorted(self._failures, key=lambda f: f.trial)
        self.report = ExperimentReport(
            kind=self.kind, config=cfg.model_dump(mode="json"), trials=cfg.trials, completed=len(samples),
            failures=failures, samples=samples, elapsed=time.time() - self._t0, **self.summarize(samples),
        )
        self.logger.INFO(f"实验[{self.kind.value}]完成: 成功 {len(samples)}，失败 {len(failures)}，"
                         f"耗时 {self.report.elapsed:.2f}s")
        self.runtime = self.runtime_summary()
        self.logger.INFO(f"实验[{self.kind.value}]运行统计: {self.runtime}")
        self.executor.reset()
        self.logger.stop()

    def runtime_summary(self) -> dict:
        """由执行器的任务明细汇总状态计数、单次试验耗时与内存增量"""
        frame = self.executor.to_dataframe()
        summary = {"status": self.executor.status_counts(),
                   "trial_mean_s": 0.0, "trial_max_s": 0.0, "memory_max_mb": 0.0}
        if frame.empty:
            return summary
        elapsed = frame["总耗时"].astype(float)
        summary.update(trial_mean_s=float(elapsed.mean()), trial_max_s=float(elapsed.max()),
                       memory_max_mb=float(frame["内存占用"].astype(float).max()))
        return summary

    def on_exception(self, exc: Exception):
        self.STATUS("ERROR")
        self.logger.ERROR(f"实验[{self.kind.value}]运行期间发生未处理的异常: {exc}")
        self.logger.ERROR(traceback.format_exc())
        self.logger.stop()

    def run(self) -> ExperimentReport:
        """
        执行实验。

        Returns:
            ExperimentReport: 实验报告；给定 output_dir 时同时写出报告文件。

        Raises:
            Exception: 试验之外的异常（配置、真值生成等）记录后重新抛出。
        """
        try:
            self.STATUS("INITIALIZING")
            self.on_init()
            self.STATUS("RUNNING")
            self.on_start()
            self.STATUS("STOPPING")
            self.on_stop()
            self.STATUS("STOPPED")
        except Exception as e:
            self.on_exception(e)
            raise
        if self.config.output_dir:
            write_report(self.report, self.config.output_dir)
        return self.report


class CltExperiment(ExperimentEngine):
    """固定线性型的 Ŵ_test 正态性与方差最优性实验"""
    kind = ExperimentKind.CLT

    @property
    def trial_func(self) -> Callable:
        return run_clt_trial

    def to_sample(self, outcome: dict) -> CltSample:
        return CltSample(**outcome)

    def summarize(self, samples: list) -> dict:
        return summarize_clt(samples)


class CoverageExperiment(ExperimentEngine):
    """线性型族的平均覆盖率实验"""
    kind = ExperimentKind.COVERAGE

    @property
    def trial_func(self) -> Callable:
        return run_coverage_trial

    def to_sample(self, outcome: dict) -> CoverageSample:
        return CoverageSample(**outcome)

    def summarize(self, samples: list) -> dict:
        return summarize_coverage(samples, self.config.sorted_levels())


@auto_log
def run_clt_experiment(cfg: Union[ExperimentConfig, str, Path], overrides: Optional[dict] = None) -> ExperimentReport:
    """CLT 实验：记录每次试验的 Ŵ_test，报告 KS 距离、均值、方差与方差最优性检查"""
    return CltExperiment(cfg, overrides).run()


@auto_log
def run_coverage_experiment(cfg: Union[ExperimentConfig, str, Path],
                            overrides: Optional[dict] = None) -> ExperimentReport:
    """覆盖率实验：报告各置信水平的平均覆盖率及误差棒"""
    return CoverageExperiment(cfg, overrides).run()
