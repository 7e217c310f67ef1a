"""
Spec manager for listing and loading experiment specs.
"""
from pathlib import Path
from typing import Dict, Any, Optional, List
from utils.logger import get_logger
from .yaml_loader import YAMLLoader
from .schema_validator import SchemaValidator
from .settings import settings
from utils.exceptions import ConfigurationError

logger = get_logger(__name__)


class SpecManager:
    """
    Manages the experiment specs of a spec directory.
    """

    def __init__(self, spec_dir: Optional[str] = None):
        """
        Initialize the spec manager.

        Args:
            spec_dir: Directory holding <name>.yaml specs (default: settings.SPEC_DIR)
        """
        self.spec_dir = Path(spec_dir) if spec_dir else Path(settings.SPEC_DIR)

    def resolve(self, spec_name: str) -> Path:
        """Path of a spec given by name or by file path."""
        candidate = Path(spec_name)
        if candidate.suffix in (".yaml", ".yml") and candidate.exists():
            return candidate
        return self.spec_dir / f"{spec_name}.yaml"

    def load_spec(self, spec_name: str, validate: bool = True) -> Dict[str, Any]:
        """
        Load a spec document by name.

        Args:
            spec_name: Name of the spec (file name without .yaml) or a path
            validate: Whether to validate against the schema

        Returns:
            Spec document dictionary

        Raises:
            ConfigurationError: If the spec is not found
            ParseError: If the YAML is malformed
            ValidationError: If the document violates the schema
        """
        spec_file = self.resolve(spec_name)

        if not spec_file.exists():
            raise ConfigurationError(
                f"Spec not found: {spec_name} (available: {', '.join(self.list_specs()) or 'none'})",
                str(spec_file)
            )

        document = YAMLLoader.load_yaml(str(spec_file))

        if validate:
            SchemaValidator.validate_and_raise(document)

        logger.info("spec_loaded", spec_name=spec_name, path=str(spec_file))
        return document

    def list_specs(self) -> List[str]:
        """
        List all available specs.

        Returns:
            Sorted spec names
        """
        if not self.spec_dir.is_dir():
            return []
        return sorted(file.stem for file in self.spec_dir.glob("*.yaml"))
