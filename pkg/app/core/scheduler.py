import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, Tuple

from loguru import logger

from app.config import settings
from app.core.exceptions import UsageError


def resolve_jobs(jobs: Optional[int]) -> int:
    """Return the worker count, falling back to DEFAULT_JOBS."""
    if jobs is None:
        jobs = settings.DEFAULT_JOBS
    if jobs < 1:
        raise UsageError(f"--jobs must be at least 1, got {jobs}")
    return jobs


def _call(task: Tuple[Callable[..., Any], Tuple[Any, ...]]) -> Any:
    func, args = task
    return func(*args)


def run_tasks(
    func: Callable[..., Any],
    arg_list: Sequence[Tuple[Any, ...]],
    jobs: Optional[int] = None,
) -> List[Any]:
    """
    Run ``func(*args)`` for every argument tuple and return results in order.

    With one job the tasks run in this process; otherwise they are fanned
    out over a process pool. ``func`` must be a module-level function so it
    can be pickled. Result order never depends on the job count.

    Args:
        func: Task function
        arg_list: One argument tuple per task
        jobs: Worker count (None means DEFAULT_JOBS)

    Returns:
        list: Task results, in the order of ``arg_list``
    """
    jobs = resolve_jobs(jobs)
    start_time = time.time()

    if jobs == 1 or len(arg_list) <= 1:
        results = [func(*args) for args in arg_list]
    else:
        workers = min(jobs, len(arg_list))
        logger.debug(f"Fanning {len(arg_list)} tasks of {func.__name__} over {workers} workers")
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_call, [(func, tuple(args)) for args in arg_list]))

    logger.debug(f"{func.__name__}: {len(arg_list)} tasks in {time.time() - start_time:.3f}s")
    return results
