# tuckerinfer - 含噪 Tucker 张量补全与线性型统计推断
# 版本信息
__version__ = "0.1.0"

# 导出常用接口，方便用户导入
from .tucker import TuckerFactorization, hosvd
from .sampling import ObservationSet, NoiseModel, generate_ground_truth, sample_observations
from .estimators import EstimatorConfig, complete, debias_power_iteration
from .inference import LinearForm, infer, infer_many, joint_inference
from .harness import ExperimentConfig, run_clt_experiment, run_coverage_experiment, classify_regime
