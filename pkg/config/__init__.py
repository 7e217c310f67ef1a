"""
Experiment spec loading and process settings.
"""

from .yaml_loader import YAMLLoader
from .config_manager import SpecManager
from .schema_validator import SchemaValidator
from .settings import Settings, settings

__all__ = [
    'YAMLLoader',
    'SpecManager',
    'SchemaValidator',
    'Settings',
    'settings',
]
