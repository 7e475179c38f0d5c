import pytest

from soficmaps.scheduler import WorkerPool


def square(x):
    return x * x


@pytest.mark.parametrize("n_workers", [1, 4])
def test_results_keep_job_order(n_workers):
    pool = WorkerPool({"sq": square}, n_workers=n_workers)
    assert pool.map("sq", list(range(20))) == [x * x for x in range(20)]


@pytest.mark.parametrize("n_workers", [1, 4])
def test_stop_when_drops_later_jobs(n_workers):
    pool = WorkerPool({"sq": square}, n_workers=n_workers)
    out = pool.map("sq", [1, 2, 3, 4, 5, 6, 7, 8], stop_when=lambda r: r >= 16)
    assert out == [1, 4, 9, 16, None, None, None, None]


def test_errors_reach_the_caller():
    def boom(x):
        if x == 3:
            raise ValueError("three")
        return x

    pool = WorkerPool({"boom": boom}, n_workers=3)
    with pytest.raises(ValueError, match="three"):
        pool.map("boom", list(range(6)))


def test_unknown_handler():
    with pytest.raises(KeyError):
        WorkerPool({}).map("missing", [1])


def test_worker_count_floor():
    assert WorkerPool({}, n_workers=0).n_workers == 1
