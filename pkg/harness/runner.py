"""
Experiment execution: expand a spec into runs and execute them.
"""
from dataclasses import dataclass, field
from typing import List, Optional
from config.settings import settings
from harness.methods import MethodFactory, initial_guesses
from harness.spec import ExperimentSpec, RunPlan
from jobs.manager import RunManager
from jobs.models import RunRequest, RunStatus
from utils.logger import get_logger
from utils.exceptions import DelayDDError, ExperimentError
from waveform.models import ConvergenceHistory
from waveform.phases import PhaseExecutor

logger = get_logger(__name__)


@dataclass
class ExperimentResult:
    """Histories of one spec, ordered by (tag, parameter)."""
    spec: ExperimentSpec
    histories: List[ConvergenceHistory] = field(default_factory=list)

    @property
    def all_converged(self) -> bool:
        return all(history.converged for history in self.histories)

    @property
    def non_converged(self) -> List[ConvergenceHistory]:
        return [history for history in self.histories if not history.converged]


def _run_task(spec: ExperimentSpec, plan: RunPlan, executor: PhaseExecutor):
    def task() -> ConvergenceHistory:
        try:
            runner = MethodFactory.create(plan.method.name)
            problem = spec.problem()
            layout = runner.layout(spec, problem, plan.method, plan.parameter, plan.subdomains)
            guesses = initial_guesses(layout, runner.trace_count(layout), spec.guess)
            history = runner.run(problem, layout, guesses, plan.method, plan.parameter, executor)
        except DelayDDError as e:
            raise ExperimentError(
                f"{spec.name}: {plan.tag} with parameter {plan.parameter:g} failed: {e}",
                spec_name=spec.name,
                method=plan.method.name,
            ) from e
        history.metadata.update({"spec": spec.name, "tag": plan.tag, "nx": layout.grid.nx, "nt": layout.grid.nt})
        return history

    return task


def run_experiment(
    spec: ExperimentSpec,
    workers: Optional[int] = None,
    phase_workers: Optional[int] = None,
) -> ExperimentResult:
    """
    Execute every run of a spec.

    Args:
        spec: Validated experiment spec
        workers: Concurrent runs (default: settings.WORKERS)
        phase_workers: Threads per iteration phase (default: settings.PHASE_WORKERS)

    Returns:
        ExperimentResult with histories sorted by method, subdomain count and parameter

    Raises:
        ExperimentError: If a run fails; the first failure in run order is raised
    """
    workers = workers or settings.WORKERS
    phase_workers = phase_workers or settings.PHASE_WORKERS
    plans = spec.runs()
    log = logger.bind(spec_name=spec.name)
    log.info("experiment_started", runs=len(plans), workers=workers, phase_workers=phase_workers)

    with PhaseExecutor(phase_workers) as executor:
        requests = [
            RunRequest(
                spec_name=spec.name,
                method=plan.method.name,
                parameter=plan.parameter,
                subdomains=plan.subdomains,
                label=plan.tag,
                task=_run_task(spec, plan, executor),
            )
            for plan in plans
        ]
        results = RunManager(num_workers=workers).run_all(requests)

    for result in results:
        if result.status is RunStatus.FAILED:
            log.error("experiment_failed", run_id=result.run_id, error=result.error)
            if isinstance(result.exception, ExperimentError):
                raise result.exception
            raise ExperimentError(
                f"{spec.name}: {result.request.label} failed: {result.error}",
                spec_name=spec.name,
                method=result.request.label,
            ) from result.exception

    ordered = sorted(results, key=lambda r: r.request.sort_key)
    histories = [result.history for result in ordered]
    experiment = ExperimentResult(spec=spec, histories=histories)
    log.info(
        "experiment_completed",
        runs=len(histories),
        converged=sum(h.converged for h in histories),
        iterations=[h.iterations_run for h in histories],
    )
    return experiment
