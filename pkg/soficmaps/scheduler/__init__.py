"""Thread pool for partitioned searches."""

from .pool import Job, WorkerPool

__all__ = ["Job", "WorkerPool"]
