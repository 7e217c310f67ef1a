"""
Dirichlet-Neumann and Neumann-Neumann waveform relaxation.
"""
from waveform.partition import Partition, build_partition
from waveform.models import ConvergenceHistory, Norm, WrConfig
from waveform.interface import error_norm, interface_update
from waveform.phases import PhaseExecutor
from waveform.dnwr import dnwr_run
from waveform.nnwr import nnwr_run
from waveform.multi import dnwr_multi_run

__all__ = [
    'Partition',
    'build_partition',
    'ConvergenceHistory',
    'Norm',
    'WrConfig',
    'error_norm',
    'interface_update',
    'PhaseExecutor',
    'dnwr_run',
    'nnwr_run',
    'dnwr_multi_run',
]
