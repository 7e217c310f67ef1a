"""
Experiment harness: spec parsing, run execution, CSV output and the CLI.
"""
from harness.spec import ExperimentSpec, MethodSpec, RunPlan, load_spec, parse_spec
from harness.methods import MethodFactory
from harness.runner import ExperimentResult, run_experiment
from harness.writer import write_experiment, write_history_csv, write_summary_csv
from harness.plot_script import render_plot_script

__all__ = [
    'ExperimentSpec',
    'MethodSpec',
    'RunPlan',
    'load_spec',
    'parse_spec',
    'MethodFactory',
    'ExperimentResult',
    'run_experiment',
    'write_experiment',
    'write_history_csv',
    'write_summary_csv',
    'render_plot_script',
]
