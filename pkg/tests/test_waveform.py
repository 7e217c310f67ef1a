"""
Tests for partitions, interface updates and the DNWR/NNWR iterations.
"""
import threading
import time
import numpy as np
import pytest
from discretization.field import InterfaceTrace
from discretization.problem import DelayProblem, ParabolicFamily
from discretization.solver import monolithic_solve
from utils.exceptions import LengthMismatch, NonConforming, ValidationError
from waveform.interface import error_norm, interface_error, interface_update
from waveform.models import ConvergenceHistory, Norm, WrConfig
from waveform.multi import dnwr_multi_run, middle_index
from waveform.nnwr import nnwr_run
from waveform.dnwr import dnwr_run
from waveform.partition import Partition, build_partition
from waveform import phases
from waveform.phases import PhaseExecutor


def _t_squared(partition):
    return InterfaceTrace.from_function(partition.grid.times, lambda t: t ** 2)


def _case1(domain=(0.0, 6.0)):
    return DelayProblem.error_equation(ParabolicFamily(a1=1.0, a2=2.3, nu=1.0), tau=1.5, domain=domain, T=6.0)


# fixture names of the equal-split reference problems
SYMMETRIC_PROBLEMS = ["case1_problem", "case2_problem", "wave_problem", "neutral_problem"]


class TestInterfaceUpdate:
    """Test the relaxed interface update and error norms"""

    def test_half_relaxation(self):
        """Test theta=0.5 averages the two traces"""
        updated = interface_update(InterfaceTrace([0.0, 0.0]), InterfaceTrace([2.0, 4.0]), 0.5)

        assert np.array_equal(updated.values, [1.0, 2.0])

    def test_theta_weights_candidate(self):
        """Test the candidate gets weight theta"""
        updated = interface_update(InterfaceTrace([1.0]), InterfaceTrace([3.0]), 0.25)

        assert updated.values[0] == pytest.approx(1.5)

    def test_length_mismatch(self):
        """Test traces of different lengths are rejected"""
        with pytest.raises(LengthMismatch):
            interface_update(InterfaceTrace([1.0, 2.0]), InterfaceTrace([1.0]), 0.5)

    def test_sup_norm_of_initial_guess(self):
        """Test the sup norm of t^2 on (0, 6] is 36"""
        partition = build_partition(_case1(), dt=0.1, nx=61)

        assert error_norm(_t_squared(partition), Norm.SUP) == pytest.approx(36.0)

    def test_l2_norm(self):
        """Test the discrete l2 norm over time"""
        trace = InterfaceTrace([3.0, 4.0])

        assert error_norm(trace, "l2", dt=0.25) == pytest.approx(2.5)

    def test_l2_norm_needs_dt(self):
        """Test the l2 norm without a time step fails"""
        with pytest.raises(ValidationError):
            error_norm(InterfaceTrace([1.0]), Norm.L2)

    def test_interface_error_takes_maximum(self):
        """Test the error over several interfaces is the maximum"""
        traces = [InterfaceTrace([1.0, 1.0]), InterfaceTrace([0.0, 5.0])]
        references = [InterfaceTrace.zeros(2), InterfaceTrace([0.0, 1.0])]

        assert interface_error(traces, references, Norm.SUP, 0.1) == pytest.approx(4.0)


class TestWrConfig:
    """Test WR configuration validation"""

    @pytest.mark.parametrize("theta", [0.0, 1.0, -0.2, 1.5])
    def test_theta_outside_unit_interval(self, theta):
        """Test theta must lie in (0,1)"""
        with pytest.raises(ValidationError, match=r"theta out of \(0,1\)"):
            WrConfig(theta=theta)

    def test_nnwr_theta_above_half_warns(self, mocker):
        """Test NNWR accepts theta in [1/2, 1) with a warning"""
        mock_logger = mocker.patch('utils.validation.logger')

        cfg = WrConfig(theta=0.7, method="nnwr")

        assert cfg.theta == 0.7
        mock_logger.warning.assert_called_once()

    def test_defaults(self):
        """Test default stopping settings"""
        cfg = WrConfig(theta=0.5)

        assert cfg.tol == 1e-10
        assert cfg.max_iters == 100
        assert cfg.norm is Norm.SUP


class TestConvergenceHistory:
    """Test convergence history helpers"""

    def test_relative_errors_and_ratios(self):
        """Test relative errors and successive ratios"""
        history = ConvergenceHistory(method="dnwr", parameter=0.3, errors=[8.0, 4.0, 2.0, 1.0])

        assert np.allclose(history.relative_errors, [1.0, 0.5, 0.25, 0.125])
        assert np.allclose(history.successive_ratios(), 0.5)
        assert history.fitted_rate() == pytest.approx(0.5)
        assert history.iterations_to(0.3) == 2
        assert history.iterations_run == 3

    def test_zero_initial_error(self):
        """Test a zero initial error gives zero relative errors"""
        history = ConvergenceHistory(method="dnwr", parameter=0.5, errors=[0.0], converged=True)

        assert history.final_relative_error == 0.0
        assert np.isnan(history.fitted_rate())

    def test_to_dict(self):
        """Test dictionary conversion"""
        history = ConvergenceHistory(method="nnwr", parameter=0.25, errors=[1.0, 0.0], converged=True)

        result = history.to_dict()

        assert result['method'] == "nnwr"
        assert result['iterations'] == 1
        assert result['converged'] is True


class TestPartition:
    """Test partition construction"""

    def test_equal_split(self, case1_grid):
        """Test an equal two-way split puts the interface at the midpoint"""
        partition = Partition.from_grid(case1_grid)

        assert partition.interface_nodes == (30,)
        assert [grid.nx for grid in partition.subgrids()] == [31, 31]

    def test_explicit_boundaries(self, case1_grid):
        """Test explicit boundaries map to grid nodes"""
        partition = Partition.from_grid(case1_grid, [0.0, 4.0, 6.0])

        assert partition.interface_nodes == (40,)
        assert [grid.nx for grid in partition.subgrids()] == [41, 21]

    def test_non_conforming_interface(self, case1_grid):
        """Test an interface between grid nodes is rejected"""
        with pytest.raises(NonConforming):
            Partition.from_grid(case1_grid, [0.0, 3.05, 6.0])

    def test_boundaries_must_span_domain(self, case1_grid):
        """Test boundaries must start and end at the domain ends"""
        with pytest.raises(ValidationError):
            Partition.from_grid(case1_grid, [0.0, 3.0, 5.0])

    def test_too_narrow_subdomain(self, case1_grid):
        """Test a subdomain with fewer than three nodes is rejected"""
        with pytest.raises(ValidationError):
            Partition.from_grid(case1_grid, [0.0, 0.1, 6.0])

    def test_points_per_subdomain(self):
        """Test points per subdomain sets the global resolution"""
        problem = DelayProblem.error_equation(ParabolicFamily(a1=0.0, a2=0.028), tau=0.03, domain=(0.0, 5.0), T=0.1)

        partition = build_partition(problem, dt=0.002, n_subdomains=4, points_per_subdomain=10)

        assert partition.grid.nx == 37
        assert all(grid.nx == 10 for grid in partition.subgrids())

    def test_resolution_given_once(self):
        """Test the resolution must be given exactly once"""
        with pytest.raises(ValidationError):
            build_partition(_case1(), dt=0.1, nx=61, dx=0.1)

    def test_dx_must_divide_domain(self):
        """Test a spacing that does not divide the domain is rejected"""
        with pytest.raises(ValidationError):
            build_partition(_case1(), dt=0.1, dx=0.7)


class TestDnwr:
    """Test Dirichlet-Neumann waveform relaxation on two subdomains"""

    @pytest.mark.parametrize("name", SYMMETRIC_PROBLEMS)
    def test_half_relaxation_converges_immediately(self, request, name):
        """Test theta=1/2 on equal subdomains converges within two iterations"""
        problem = request.getfixturevalue(name)
        partition = build_partition(problem, dt=0.1, dx=0.1)

        history = dnwr_run(problem, partition, _t_squared(partition), WrConfig(theta=0.5))

        assert history.converged
        assert history.iterations_run <= 2
        assert history.relative_errors[min(2, history.iterations_run)] <= 1e-10

    @pytest.mark.parametrize("theta", [0.1, 0.3, 0.7])
    def test_linear_rate_on_equal_subdomains(self, theta):
        """Test the error contracts by |1 - 2 theta| per iteration"""
        problem = _case1()
        partition = build_partition(problem, dt=0.1, dx=0.1)
        cfg = WrConfig(theta=theta, tol=1e-14, max_iters=8)

        history = dnwr_run(problem, partition, _t_squared(partition), cfg)

        expected = abs(1 - 2 * theta)
        assert not history.converged
        assert history.iterations_run == 8
        assert history.fitted_rate(1, 8) == pytest.approx(expected, rel=0.1)
        assert np.allclose(history.successive_ratios(), expected, rtol=1e-6)

    def test_unequal_subdomains_converge_fast(self):
        """Test theta=1/2 on (0,4) and (4,6) decreases monotonically below 1e-6"""
        problem = _case1()
        partition = build_partition(problem, dt=0.1, dx=0.1, boundaries=[0.0, 4.0, 6.0])
        cfg = WrConfig(theta=0.5, tol=1e-6, max_iters=10)

        history = dnwr_run(problem, partition, _t_squared(partition), cfg)

        assert history.converged
        assert history.final_relative_error < 1e-6
        assert np.all(np.diff(history.errors) < 0)

    def test_unequal_neutral_subdomains(self, neutral_problem):
        """Test the neutral family on (0,4.5) and (4.5,6) decreases monotonically below 1e-6"""
        partition = build_partition(neutral_problem, dt=0.1, dx=0.1, boundaries=[0.0, 4.5, 6.0])
        cfg = WrConfig(theta=0.5, tol=1e-6, max_iters=10)

        history = dnwr_run(neutral_problem, partition, _t_squared(partition), cfg)

        assert history.converged
        assert history.final_relative_error < 1e-6
        assert np.all(np.diff(history.errors) < 0)

    def test_general_data_matches_monolithic(self):
        """Test the converged interface trace equals the monolithic solution"""
        problem = DelayProblem(
            family=ParabolicFamily(a1=1.0, a2=2.3, nu=1.0),
            tau=0.5,
            domain=(0.0, 2.0),
            T=1.0,
            history=lambda x, t: np.sin(np.pi * x / 2.0),
            forcing=lambda x, t: x * (2.0 - x) * t,
            boundary_left=lambda t: t,
            boundary_right=lambda t: 0.5 * t ** 2,
        )
        partition = build_partition(problem, dt=0.05, nx=41)

        history = dnwr_run(problem, partition, InterfaceTrace.zeros(partition.grid.nt), WrConfig(theta=0.5))

        reference = monolithic_solve(problem, partition.grid).trace(partition.interface_nodes[0])
        assert history.converged
        assert np.allclose(history.traces[0].values, reference.values, atol=1e-10)

    def test_zero_guess_in_error_mode(self, case1_problem):
        """Test a zero guess in error-equation mode is already converged"""
        partition = build_partition(case1_problem, dt=0.1, nx=61)

        history = dnwr_run(case1_problem, partition, InterfaceTrace.zeros(60), WrConfig(theta=0.3))

        assert history.converged
        assert history.iterations_run == 0

    def test_guess_length_checked(self, case1_problem):
        """Test a guess of the wrong length is rejected"""
        partition = build_partition(case1_problem, dt=0.1, nx=61)

        with pytest.raises(LengthMismatch):
            dnwr_run(case1_problem, partition, InterfaceTrace.zeros(10), WrConfig(theta=0.5))

    def test_needs_two_subdomains(self, case1_problem):
        """Test two-subdomain DNWR rejects more subdomains"""
        partition = build_partition(case1_problem, dt=0.1, nx=61, n_subdomains=3)

        with pytest.raises(ValidationError):
            dnwr_run(case1_problem, partition, InterfaceTrace.zeros(60), WrConfig(theta=0.5))

    def test_one_sided_flux_still_converges(self):
        """Test the one-sided flux variant converges on equal subdomains"""
        problem = _case1()
        partition = build_partition(problem, dt=0.1, dx=0.1)
        cfg = WrConfig(theta=0.5, tol=1e-6, max_iters=30, flux="one_sided")

        history = dnwr_run(problem, partition, _t_squared(partition), cfg)

        assert history.converged


class TestNnwr:
    """Test Neumann-Neumann waveform relaxation"""

    @pytest.mark.parametrize("name", SYMMETRIC_PROBLEMS)
    def test_quarter_relaxation_converges_immediately(self, request, name):
        """Test theta=1/4 on equal subdomains converges within two iterations"""
        problem = request.getfixturevalue(name)
        partition = build_partition(problem, dt=0.1, dx=0.1)

        history = nnwr_run(problem, partition, [_t_squared(partition)], WrConfig(theta=0.25, method="nnwr"))

        assert history.converged
        assert history.iterations_run <= 2
        assert history.relative_errors[min(2, history.iterations_run)] <= 1e-10

    @pytest.mark.parametrize("theta", [0.1, 0.2, 0.3, 0.4])
    def test_linear_rate_on_equal_subdomains(self, theta):
        """Test the error contracts by |1 - 4 theta| per iteration"""
        problem = _case1()
        partition = build_partition(problem, dt=0.1, dx=0.1)
        cfg = WrConfig(theta=theta, tol=1e-14, max_iters=8, method="nnwr")

        history = nnwr_run(problem, partition, _t_squared(partition), cfg)

        expected = abs(1 - 4 * theta)
        assert history.fitted_rate(1, 8) == pytest.approx(expected, rel=0.1)
        assert np.allclose(history.successive_ratios(), expected, rtol=1e-6)

    @pytest.mark.parametrize(
        "name, boundaries",
        [("case1_problem", [0.0, 4.0, 6.0]), ("neutral_problem", [0.0, 4.5, 6.0])],
    )
    def test_unequal_subdomains_converge_fast(self, request, name, boundaries):
        """Test theta=1/4 on an unequal split decreases monotonically below 1e-6"""
        problem = request.getfixturevalue(name)
        partition = build_partition(problem, dt=0.1, dx=0.1, boundaries=boundaries)
        cfg = WrConfig(theta=0.25, tol=1e-6, max_iters=10, method="nnwr")

        history = nnwr_run(problem, partition, [_t_squared(partition)], cfg)

        assert history.converged
        assert history.final_relative_error < 1e-6
        assert np.all(np.diff(history.errors) < 0)

    def test_theta_warning_without_method_hint(self, case1_problem, mocker):
        """Test an NNWR theta above 1/2 is flagged even with the default config method"""
        mock_warn = mocker.patch("waveform.nnwr.warn_outside")
        partition = build_partition(case1_problem, dt=0.1, dx=0.1)

        nnwr_run(case1_problem, partition, [_t_squared(partition)], WrConfig(theta=0.7, max_iters=1))

        mock_warn.assert_called_once_with(0.7, "theta", 0.0, 0.5, context="nnwr")

    def test_theta_warning_not_repeated(self, case1_problem, mocker):
        """Test an nnwr config already checked theta, so the iteration does not warn again"""
        mock_warn = mocker.patch("waveform.nnwr.warn_outside")
        partition = build_partition(case1_problem, dt=0.1, dx=0.1)

        nnwr_run(case1_problem, partition, [_t_squared(partition)], WrConfig(theta=0.7, max_iters=1, method="nnwr"))

        mock_warn.assert_not_called()

    def test_parallel_phases_match_sequential(self):
        """Test a threaded executor reproduces the sequential history"""
        problem = _case1()
        partition = build_partition(problem, dt=0.1, dx=0.1, n_subdomains=3)
        guesses = [_t_squared(partition)] * 2
        cfg = WrConfig(theta=0.25, tol=1e-8, max_iters=20, method="nnwr")

        sequential = nnwr_run(problem, partition, guesses, cfg)
        with PhaseExecutor(max_workers=3) as executor:
            threaded = nnwr_run(problem, partition, guesses, cfg, executor=executor)

        assert np.array_equal(sequential.errors, threaded.errors)

    def test_trace_count_per_interface(self, case1_problem):
        """Test NNWR needs one guess per interface"""
        partition = build_partition(case1_problem, dt=0.1, nx=61, n_subdomains=3)

        with pytest.raises(LengthMismatch):
            nnwr_run(case1_problem, partition, [InterfaceTrace.zeros(60)], WrConfig(theta=0.25, method="nnwr"))


class TestMultiSubdomain:
    """Test DNWR and NNWR on more than two subdomains"""

    @staticmethod
    def _problem():
        family = ParabolicFamily(a1=0.0, a2=0.028, nu=1.0)
        return DelayProblem.error_equation(family, tau=0.03, domain=(0.0, 5.0), T=0.1)

    @pytest.mark.parametrize("n, expected", [(2, 0), (3, 1), (4, 1), (5, 2), (8, 3)])
    def test_middle_index(self, n, expected):
        """Test the first Dirichlet subdomain is the (left) middle one"""
        assert middle_index(n) == expected

    def test_two_subdomains_reproduce_dnwr(self):
        """Test the multi-subdomain sweep equals two-subdomain DNWR"""
        problem = _case1()
        partition = build_partition(problem, dt=0.1, dx=0.1, boundaries=[0.0, 4.0, 6.0])
        cfg = WrConfig(theta=0.3, tol=1e-12, max_iters=6)

        single = dnwr_run(problem, partition, _t_squared(partition), cfg)
        multi = dnwr_multi_run(problem, partition, [_t_squared(partition)], cfg)

        assert np.array_equal(single.errors, multi.errors)

    def test_dnwr_iterations_grow_with_subdomains(self):
        """Test DNWR iterations to 1e-6 do not decrease with the subdomain count"""
        problem = self._problem()
        counts = {}
        for n in (2, 4, 8):
            partition = build_partition(problem, dt=0.002, n_subdomains=n, points_per_subdomain=10)
            guesses = [_t_squared(partition)] * (n - 1)
            history = dnwr_multi_run(problem, partition, guesses, WrConfig(theta=0.5, tol=1e-6, max_iters=60))
            assert history.converged
            assert history.subdomains == n
            counts[n] = history.iterations_run

        assert counts[2] <= counts[4] <= counts[8]

    def test_nnwr_iterations_grow_with_subdomains(self):
        """Test NNWR iterations to 1e-6 do not decrease with the subdomain count"""
        problem = self._problem()
        counts = {}
        for n in (2, 4, 8):
            partition = build_partition(problem, dt=0.002, n_subdomains=n, points_per_subdomain=10)
            guesses = [_t_squared(partition)] * (n - 1)
            cfg = WrConfig(theta=0.25, tol=1e-6, max_iters=60, method="nnwr")
            history = nnwr_run(problem, partition, guesses, cfg)
            assert history.converged
            counts[n] = history.iterations_run

        assert counts[2] <= counts[4] <= counts[8]


class TestPhaseExecutor:
    """Test phase execution"""

    def test_results_in_submission_order(self):
        """Test threaded results come back in task order"""
        with PhaseExecutor(max_workers=3) as executor:
            results = executor.run_phase([lambda i=i: i * i for i in range(5)])

        assert results == [0, 1, 4, 9, 16]

    def test_shared_executor_starts_one_pool(self, mocker):
        """Test runs on two threads sharing an executor start a single pool"""
        real_pool = phases.ThreadPoolExecutor

        def slow_pool(*args, **kwargs):
            time.sleep(0.05)
            return real_pool(*args, **kwargs)

        pool_factory = mocker.patch("waveform.phases.ThreadPoolExecutor", side_effect=slow_pool)
        executor = PhaseExecutor(max_workers=2)
        barrier = threading.Barrier(2)
        results = []

        def run():
            barrier.wait()
            results.append(executor.run_phase([lambda: 1, lambda: 2]))

        threads = [threading.Thread(target=run) for _ in range(2)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        executor.shutdown()

        assert pool_factory.call_count == 1
        assert results == [[1, 2], [1, 2]]

    def test_single_worker_runs_inline(self, mocker):
        """Test one worker never starts a pool"""
        pool_factory = mocker.patch("waveform.phases.ThreadPoolExecutor")

        assert PhaseExecutor(1).run_phase([lambda: "a", lambda: "b"]) == ["a", "b"]
        pool_factory.assert_not_called()
