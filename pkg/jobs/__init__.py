"""
Run queue and worker threads for executing experiment runs.
"""
from jobs.queue import RunQueue
from jobs.manager import RunManager
from jobs.models import RunRequest, RunStatus, RunResult

__all__ = ['RunQueue', 'RunManager', 'RunRequest', 'RunStatus', 'RunResult']
