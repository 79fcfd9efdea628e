"""
端到端示例：生成真值 → 抽取观测 → 补全 → 线性型推断
"""
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

from tuckerinfer.estimators import EstimatorConfig, EstimatorName, complete, relative_error
from tuckerinfer.inference import LinearForm, infer
from tuckerinfer.logger import LogManager
from tuckerinfer.sampling import (
    GroundTruthSpec, NoiseModel, generate_ground_truth, lambda_from_gamma, sample_observations, sampling_count
)


def main():
    logger = LogManager.get_instance({"log_level": "INFO"})
    shape, rank, seed = (30, 30, 30), (2, 2, 2), 11

    truth = generate_ground_truth(GroundTruthSpec(
        shape=list(shape), rank=list(rank), lambda_min=lambda_from_gamma(30, 1.25), seed=seed
    ))
    dense = truth.reconstruct()
    obs = sample_observations(dense, sampling_count(shape, 0.1), NoiseModel.gaussian(1.0), seed)

    cfg = EstimatorConfig(name=EstimatorName.RGD_OFFLINE, rank=list(rank), rgd_steps=30)
    fit = complete(obs, cfg, truth=dense)
    logger.INFO(f"离线梯度下降: {fit.iterations} 步，相对误差 {relative_error(fit.estimate.reconstruct(), dense):.3e}")

    form = LinearForm.coverage_form((3, 4, 5))
    res = infer(obs, fit.estimate, form, alpha=0.05, truth_value=form.value(dense))
    logger.INFO(f"点估计 {res.point:.4f}，真值 {form.value(dense):.4f}，"
                f"95% 置信区间 [{res.ci_lo:.4f}, {res.ci_hi:.4f}]，Ŵ_test = {res.statistic:.3f}")


if __name__ == "__main__":
    main()
