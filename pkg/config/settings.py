import os
from pathlib import Path
from dotenv import load_dotenv
from utils.exceptions import ConfigurationError

# Load environment variables from a .env file
load_dotenv()

SHIPPED_SPEC_DIR = Path(__file__).resolve().parent / "specs"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got '{raw}'") from e
    if value < 1:
        raise ConfigurationError(f"{name} must be >= 1, got {value}")
    return value


class Settings:
    """
    Singleton class to hold process-wide settings.
    Loads settings from environment variables.
    """
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Settings, cls).__new__(cls)
            cls._instance._load_config()
        return cls._instance

    def _load_config(self):
        """Loads all settings from environment variables."""

        # Locations
        self.SPEC_DIR = os.getenv("DELAY_DD_SPEC_DIR", str(SHIPPED_SPEC_DIR))
        self.OUTPUT_DIR = os.getenv("DELAY_DD_OUTPUT_DIR", "results")

        # Concurrency
        self.WORKERS = _int_env("DELAY_DD_WORKERS", 1)
        self.PHASE_WORKERS = _int_env("DELAY_DD_PHASE_WORKERS", 1)

    def reload(self) -> "Settings":
        """Re-read the environment."""
        self._load_config()
        return self


settings = Settings()
