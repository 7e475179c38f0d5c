import logging
import queue
import threading
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class Job:
    index: int
    op: str
    args: Any


class WorkerPool:
    """Fixed pool of daemon threads draining a bounded job queue.

    Jobs name a handler from the table given at construction. Results are kept
    per job index, so the merged list matches a serial run; with ``stop_when``
    every job after the first index whose result satisfies it is dropped,
    exactly as a serial loop that breaks there would.
    """

    def __init__(
        self,
        handlers: Dict[str, Callable[[Any], Any]],
        n_workers: int = 1,
        max_queue: int = 1024,
    ):
        self._handlers = dict(handlers)
        self._n_workers = max(1, int(n_workers or 1))
        self._max_queue = max_queue

    @property
    def n_workers(self) -> int:
        return self._n_workers

    def _handler(self, op: str) -> Callable[[Any], Any]:
        fn = self._handlers.get(op)
        if fn is None:
            raise KeyError(f"no handler registered for {op!r}")
        return fn

    def map(
        self,
        op: str,
        jobs: Sequence[Any],
        stop_when: Optional[Callable[[Any], bool]] = None,
    ) -> list[Any]:
        fn = self._handler(op)
        if self._n_workers == 1 or len(jobs) <= 1:
            return self._run_inline(fn, jobs, stop_when)
        return self._run_threaded(fn, op, jobs, stop_when)

    def _run_inline(self, fn, jobs, stop_when) -> list[Any]:
        results: list[Any] = [None] * len(jobs)
        for i, args in enumerate(jobs):
            results[i] = fn(args)
            if stop_when is not None and stop_when(results[i]):
                break
        return results

    def _run_threaded(self, fn, op, jobs, stop_when) -> list[Any]:
        q: "queue.Queue[Optional[Job]]" = queue.Queue(maxsize=self._max_queue)
        results: list[Any] = [None] * len(jobs)
        errors: dict[int, BaseException] = {}
        lock = threading.Lock()
        stop_at = [len(jobs)]

        def worker():
            while True:
                job = q.get()
                try:
                    if job is None:
                        return
                    with lock:
                        if job.index > stop_at[0]:
                            continue
                    try:
                        res = fn(job.args)
                    except Exception as e:
                        with lock:
                            errors[job.index] = e
                            stop_at[0] = min(stop_at[0], job.index)
                        continue
                    with lock:
                        results[job.index] = res
                        if stop_when is not None and stop_when(res):
                            stop_at[0] = min(stop_at[0], job.index)
                finally:
                    q.task_done()

        threads = [
            threading.Thread(target=worker, daemon=True, name=f"soficmaps-{op}-{n}")
            for n in range(self._n_workers)
        ]
        for t in threads:
            t.start()
        for i, args in enumerate(jobs):
            q.put(Job(i, op, args))
        for _ in threads:
            q.put(None)
        for t in threads:
            t.join()
        last = stop_at[0]
        for i in sorted(errors):
            if i <= last:
                raise errors[i]
        logger.debug(f"{op}: {len(jobs)} jobs on {self._n_workers} workers, stopped at {last}")
        return [r if i <= last else None for i, r in enumerate(results)]
