"""
YAML loader for experiment specs with environment variable substitution.
"""
import os
import re
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
from utils.logger import get_logger
from utils.exceptions import ConfigurationError, ParseError

logger = get_logger(__name__)


class SpecYamlLoader(yaml.SafeLoader):
    """SafeLoader that also reads exponent floats without a dot (1e-10)."""


SpecYamlLoader.add_implicit_resolver(
    'tag:yaml.org,2002:float',
    re.compile(r'''^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
                    |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
                    |\.[0-9_]+(?:[eE][-+]?[0-9]+)?
                    |[-+]?\.(?:inf|Inf|INF)
                    |\.(?:nan|NaN|NAN))$''', re.X),
    list('-+0123456789.'),
)


class YAMLLoader:
    """
    Loads YAML documents and substitutes environment variables.
    """

    # Pattern to match ${VAR_NAME} or ${VAR_NAME:default_value}
    ENV_VAR_PATTERN = re.compile(r'\$\{([^}:]+)(?::([^}]*))?\}')

    @staticmethod
    def _substitute_env_vars(value: Any) -> Any:
        """
        Recursively substitute environment variables in configuration values.
        Supports ${VAR_NAME} and ${VAR_NAME:default_value} syntax; a value that
        is a single reference is re-read as a YAML scalar so numbers stay numbers.
        """
        if isinstance(value, str):
            def replace_match(match):
                var_name = match.group(1)
                default_value = match.group(2) if match.lastindex >= 2 else None
                env_value = os.getenv(var_name, default_value)
                if env_value is None:
                    logger.warning("env_var_not_found", var_name=var_name)
                    return match.group(0)
                return env_value

            substituted = YAMLLoader.ENV_VAR_PATTERN.sub(replace_match, value)
            if substituted != value and YAMLLoader.ENV_VAR_PATTERN.fullmatch(value):
                return yaml.load(substituted, Loader=SpecYamlLoader)
            return substituted
        elif isinstance(value, dict):
            return {k: YAMLLoader._substitute_env_vars(v) for k, v in value.items()}
        elif isinstance(value, list):
            return [YAMLLoader._substitute_env_vars(item) for item in value]
        else:
            return value

    @staticmethod
    def _parse(content: str, source: Optional[str] = None) -> Any:
        try:
            return yaml.load(content, Loader=SpecYamlLoader)
        except yaml.MarkedYAMLError as e:
            line = e.problem_mark.line + 1 if e.problem_mark is not None else None
            raise ParseError(f"Failed to parse YAML ({source or 'string'}) at line {line}: {e.problem}", line=line, config_path=source) from e
        except yaml.YAMLError as e:
            raise ParseError(f"Failed to parse YAML ({source or 'string'}): {e}", config_path=source) from e

    @staticmethod
    def load_yaml(file_path: str, substitute_env: bool = True) -> Dict[str, Any]:
        """
        Load a YAML file and optionally substitute environment variables.

        Args:
            file_path: Path to YAML file
            substitute_env: Whether to substitute environment variables

        Returns:
            Parsed YAML as dictionary

        Raises:
            ConfigurationError: If the file is missing, empty or not a mapping
            ParseError: If the YAML is malformed
        """
        path = Path(file_path)
        if not path.exists():
            raise ConfigurationError(f"Spec file not found: {file_path}", str(file_path))

        try:
            text = path.read_text(encoding='utf-8')
        except OSError as e:
            raise ConfigurationError(f"Failed to read spec file {file_path}: {e}", str(file_path)) from e

        content = YAMLLoader._parse(text, str(file_path))
        if content is None:
            raise ConfigurationError(f"Spec file is empty: {file_path}", str(file_path))
        if not isinstance(content, dict):
            raise ParseError(f"Spec file {file_path} must hold a mapping", config_path=str(file_path))

        if substitute_env:
            content = YAMLLoader._substitute_env_vars(content)

        logger.debug("yaml_loaded", file_path=str(file_path))
        return content

    @staticmethod
    def load_from_string(content: str, substitute_env: bool = True) -> Dict[str, Any]:
        """
        Load YAML from a string.

        Raises:
            ParseError: If the YAML is malformed or not a mapping
        """
        data = YAMLLoader._parse(content)
        if not isinstance(data, dict):
            raise ParseError("spec document must be a mapping")
        if substitute_env:
            data = YAMLLoader._substitute_env_vars(data)
        return data
