"""
Contraction symbols of the interface iterations.
"""
from theory.symbols import SymbolQuery, contraction_profile, contraction_symbol, predicted_rate

__all__ = [
    'SymbolQuery',
    'contraction_symbol',
    'contraction_profile',
    'predicted_rate',
]
