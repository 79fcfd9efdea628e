import pytest

from tuckerinfer.executor import ExecutorConfig, ExecutorMode, MultiTaskExecutor
from tuckerinfer.executor.payload import TaskEnvelope, func_path, import_func_from_path
from tuckerinfer.sampling import sampling_count
from tuckerinfer.tensor import norms


def square(x):
    return x * x


def fail(x):
    raise ValueError(f"bad input {x}")


def test_thread_executor_collects_results_in_submit_order():
    executor = MultiTaskExecutor("thread", max_workers=3)
    ids = [executor.submit(square, k, task_id=f"t{k}") for k in range(6)]
    results = executor.run()
    assert list(results) == ids
    assert list(results.values()) == [k * k for k in range(6)]
    assert executor.status_counts() == {"done": 6}
    assert executor.failed() == []


def test_failed_task_does_not_stop_others():
    executor = MultiTaskExecutor(max_workers=2)
    ok = executor.submit(square, 3)
    bad = executor.submit(fail, 1, task_name="boom")
    results = executor.run()
    assert results[ok] == 9 and results[bad] is None
    assert executor.get_status(bad) == "error"
    assert executor.get_error(bad).startswith("ValueError")
    assert executor.failed() == [bad]
    frame = executor.to_dataframe()
    assert len(frame) == 2
    assert executor.get_task_info(bad)[0] == "boom"


def test_duplicate_task_id_and_bad_mode():
    executor = MultiTaskExecutor()
    executor.submit(square, 1, task_id="x")
    with pytest.raises(ValueError):
        executor.submit(square, 2, task_id="x")
    with pytest.raises(ValueError):
        MultiTaskExecutor("fiber")


def test_reset_clears_tasks():
    executor = MultiTaskExecutor.from_config(ExecutorConfig(max_workers=1))
    assert executor.mode == ExecutorMode.THREAD and executor.max_workers == 1
    executor.submit(square, 2)
    executor.run()
    executor.reset()
    assert executor.get_task_ids() == []
    assert executor.run() == {}


def test_envelope_resolves_dotted_path():
    path = func_path(norms)
    assert path == "tuckerinfer.tensor.ops.norms"
    assert import_func_from_path(path) is norms
    envelope = TaskEnvelope.deserialize(TaskEnvelope("a", path, [1], {"k": 2}).serialize())
    assert envelope.resolve() is norms
    assert envelope.args == [1] and envelope.kwargs == {"k": 2}


def test_process_mode_runs_package_functions():
    executor = MultiTaskExecutor("process", max_workers=2)
    tid = executor.submit(sampling_count, (10, 10, 10), 0.05)
    assert executor.tasks[0]["func"] == "tuckerinfer.sampling.observation.sampling_count"
    assert executor.run()[tid] == 50


def test_task_list_visible_before_run():
    executor = MultiTaskExecutor(max_workers=1)
    assert not executor.is_started
    tid = executor.submit(square, 4, task_id="sq")
    assert len(executor.tasks) == 1
    assert tid in executor.task_id_map
    assert executor.get_id().startswith(executor.get_name())
    executor.run()
    assert executor.is_started
    assert executor.status_counts() == {"done": 1}
