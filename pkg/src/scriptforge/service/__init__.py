from .api import create_app
from .context import ServiceContext
from .jobs import Job, JobKind, JobManager, JobState
from .review import Lease, PairRepository, ReviewQueue

__all__ = [
    "create_app",
    "ServiceContext",
    "Job",
    "JobKind",
    "JobManager",
    "JobState",
    "Lease",
    "PairRepository",
    "ReviewQueue",
]
