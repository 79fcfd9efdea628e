# 命令行子命令模块
"""
每个子命令对应一个 cmd_* 函数，参数为 argparse.Namespace 与已解析的种子，返回退出码。
结果文件写到 --out，简要结果以 JSON 打印到标准输出；日志与种子提示输出到标准错误。
"""
import json
import sys
from argparse import Namespace
from pathlib import Path

from ..configer import ConfigLoader, read_config, check_schema_version, create_schema
from ..errors import ShapeError
from ..estimators import EstimatorConfig, complete
from ..harness import (
    ExperimentConfig, RegimeConfig, classify_regime, regime_sweep, run_clt_experiment, run_coverage_experiment
)
from ..inference import VarianceMode, infer, joint_inference, read_form
from ..sampling import (
    GroundTruthSpec, NoiseConfig, NoiseKind, generate_ground_truth, lambda_from_gamma, noise_from_config,
    read_observations, sample_observations, sampling_count, write_observations
)
from ..tucker import read_factorization, write_factorization
from ..utils import JsonEncoder, dump_json


def echo(payload):
    sys.stdout.write(json.dumps(payload, cls=JsonEncoder, indent=2, ensure_ascii=False) + "\n")


def _observations(args: Namespace, init=None):
    shape = args.shape or (init.shape.dims if init is not None else None)
    return read_observations(args.obs, shape)


def cmd_complete(args: Namespace, seed: int) -> int:
    init = read_factorization(args.init) if args.init else None
    truth = read_factorization(args.truth) if args.truth else None
    obs = _observations(args, init)
    cfg = {"name": args.estimator, "rank": args.rank}
    if args.steps is not None:
        cfg["rgd_steps"] = args.steps
    cfg = EstimatorConfig(**cfg)
    if args.dry_run:
        echo({"shape": obs.shape.dims, "n": obs.n, "estimator": cfg.model_dump(mode="json")})
        return 0
    if init is not None and init.shape != obs.shape:
        raise ShapeError(f"初值形状 {init.shape.dims} 与观测形状 {obs.shape.dims} 不符")
    result = complete(obs, cfg, init=init, truth=truth)
    write_factorization(args.out, result.estimate, estimator=cfg.name.value, **result.to_dict())
    echo({"out": str(args.out), "iterations": result.iterations, "converged": result.converged})
    return 0


def cmd_infer(args: Namespace, seed: int) -> int:
    init = read_factorization(args.init)
    obs = _observations(args, init)
    forms = [read_form(path) for path in args.form]
    truth = read_factorization(args.truth) if args.truth else None
    mode = VarianceMode(args.variance)
    if args.dry_run:
        echo({"shape": obs.shape.dims, "n": obs.n, "forms": len(forms), "alpha": args.alpha, "variance": mode})
        return 0
    for form in forms:
        form.check_shape(obs.shape)
    if len(forms) == 1:
        value = forms[0].value(truth.reconstruct()) if truth is not None else None
        result = infer(obs, init, forms[0], args.alpha, mode, truth_value=value,
                       debug_final_tangent=args.debug_final_tangent)
    else:
        result = joint_inference(obs, init, forms, args.alpha, mode, truth=truth)
    payload = result.to_json_dict()
    dump_json(payload, args.out)
    echo(payload)
    return 0


def _experiment_overrides(args: Namespace) -> dict:
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threads is not None:
        overrides["executor"] = {"max_workers": args.threads}
    if args.log_level is not None:
        overrides["logger"] = {"log_level": args.log_level}
    if args.out is not None:
        overrides["output_dir"] = args.out
    return overrides


def _cmd_experiment(args: Namespace, runner) -> int:
    cfg = ConfigLoader(args.config, ExperimentConfig, _experiment_overrides(args)).load()
    if args.dry_run:
        echo(cfg.model_dump(mode="json"))
        return 0
    report = runner(cfg)
    out = {
        "kind": report.kind.value,
        "trials": report.trials,
        "completed": report.completed,
        "failures": len(report.failures),
        "ks": report.ks,
        "mean": report.mean,
        "variance": report.variance,
        "coverage": {k: v.mean for k, v in report.coverage.items()},
        "output_dir": cfg.output_dir,
    }
    if report.variance_check is not None:
        out["variance_ratio"] = report.variance_check.ratio
    echo(out)
    return 0


def cmd_simulate_clt(args: Namespace, seed: int) -> int:
    return _cmd_experiment(args, run_clt_experiment)


def cmd_simulate_coverage(args: Namespace, seed: int) -> int:
    return _cmd_experiment(args, run_coverage_experiment)


def cmd_classify_regime(args: Namespace, seed: int) -> int:
    if args.config:
        raw = read_config(args.config)
        check_schema_version(raw)
        cfg = create_schema(raw, RegimeConfig)
        if args.dry_run:
            echo(cfg.model_dump(mode="json"))
            return 0
        frame = regime_sweep(cfg.snrs, cfg.ns, cfg.shape)
        if args.out:
            Path(args.out).parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(args.out, index=False, float_format="%.10g", lineterminator="\n")
        else:
            sys.stdout.write(frame.to_csv(index=False, float_format="%.10g", lineterminator="\n"))
        return 0

    missing = [k for k in ("snr", "n", "shape") if getattr(args, k) is None]
    if missing:
        raise ValueError(f"未给定 --config 时须同时给定: {', '.join('--' + k for k in missing)}")
    if args.dry_run:
        echo({"snr": args.snr, "n": args.n, "shape": args.shape})
        return 0
    report = classify_regime(args.snr, args.n, args.shape)
    payload = report.to_json_dict()
    if args.out:
        dump_json(payload, args.out)
    echo(payload)
    return 0


def cmd_gen_truth(args: Namespace, seed: int) -> int:
    lam = args.lambda_min
    if lam is None:
        lam = lambda_from_gamma(max(args.shape), args.gamma, args.lambda_coeff)
    spec = GroundTruthSpec(shape=args.shape, rank=args.rank, lambda_min=lam, kappa_cap=args.kappa_cap,
                           seed=seed, positive=args.positive, floor=args.floor, ceiling=args.ceiling)
    if args.dry_run:
        echo(spec.model_dump(mode="json"))
        return 0
    truth = generate_ground_truth(spec)
    write_factorization(args.out, truth, seed=seed, lambda_min=lam)
    echo({"out": str(args.out), "seed": seed, "lambda_min": lam})
    return 0


def cmd_sample_obs(args: Namespace, seed: int) -> int:
    truth = read_factorization(args.truth)
    n = args.n if args.n is not None else sampling_count(truth.shape, args.p)
    noise_cfg = NoiseConfig(kind=NoiseKind(args.noise), sigma=args.sigma, sd_low=args.sd_low, sd_high=args.sd_high)
    if args.dry_run:
        echo({"shape": truth.shape.dims, "n": n, "noise": noise_cfg.model_dump(mode="json"), "seed": seed})
        return 0
    noise = noise_from_config(noise_cfg, truth.shape.dims, seed)
    obs = sample_observations(truth.reconstruct(), n, noise, seed)
    write_observations(args.out, obs)
    echo({"out": str(args.out), "n": obs.n, "seed": seed})
    return 0


COMMANDS = {
    "complete": cmd_complete,
    "infer": cmd_infer,
    "simulate-clt": cmd_simulate_clt,
    "simulate-coverage": cmd_simulate_coverage,
    "classify-regime": cmd_classify_regime,
    "gen-truth": cmd_gen_truth,
    "sample-obs": cmd_sample_obs,
}
