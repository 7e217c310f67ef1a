"""
Schwarz waveform relaxation baselines.
"""
from schwarz.base import OverlappingPair, SchwarzConfig, build_overlapping_pair
from schwarz.classical import classical_schwarz_run
from schwarz.optimized import optimized_schwarz_run

__all__ = [
    'OverlappingPair',
    'SchwarzConfig',
    'build_overlapping_pair',
    'classical_schwarz_run',
    'optimized_schwarz_run',
]
