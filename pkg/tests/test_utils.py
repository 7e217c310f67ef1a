"""
Tests for utility functions.
"""
import math
import numpy as np
import pytest
from utils.exceptions import (
    BranchFailure,
    ConfigurationError,
    DelayDDError,
    ExperimentError,
    GridError,
    NonConforming,
    NonIntegerDelay,
    OutputError,
    ParseError,
    ValidationError,
    ZeroPivot,
)
from utils.logger import get_logger
from utils.validation import (
    validate_choice,
    validate_finite,
    validate_increasing,
    validate_open_interval,
    validate_positive,
    validate_positive_int,
    warn_outside,
)


class TestExceptions:
    """Test custom exceptions"""

    @pytest.mark.parametrize(
        "error",
        [
            GridError("g"),
            NonIntegerDelay("d"),
            ZeroPivot("z", index=3),
            NonConforming("n", location=3.05),
            BranchFailure("b"),
            ConfigurationError("c"),
            ParseError("p", line=2),
            ValidationError("v", "theta"),
            ExperimentError("e", spec_name="fig1_left", method="dnwr"),
            OutputError("o", path="/tmp/x.csv"),
        ],
    )
    def test_rooted_at_delay_dd_error(self, error):
        """Test every error is a DelayDDError"""
        assert isinstance(error, DelayDDError)

    def test_parse_error_is_configuration_error(self):
        """Test ParseError keeps line and path"""
        error = ParseError("bad", line=4, config_path="spec.yaml")

        assert isinstance(error, ConfigurationError)
        assert error.line == 4
        assert error.config_path == "spec.yaml"

    def test_attributes(self):
        """Test error payloads"""
        assert ValidationError("msg", "grid.dx").field == "grid.dx"
        assert ZeroPivot("msg", index=7).index == 7
        assert NonConforming("msg", location=1.5).location == 1.5
        assert str(OutputError("cannot write", path="a.csv")) == "cannot write"


class TestValidation:
    """Test numeric validation helpers"""

    def test_finite(self):
        """Test ints and numpy scalars are accepted as floats"""
        assert validate_finite(3, "x") == 3.0
        assert validate_finite(np.float64(0.5), "x") == 0.5

    @pytest.mark.parametrize("value", [math.nan, math.inf, "1.0", True, None])
    def test_finite_rejects(self, value):
        """Test non-finite and non-numeric values"""
        with pytest.raises(ValidationError) as exc_info:
            validate_finite(value, "tau")

        assert exc_info.value.field == "tau"

    def test_positive(self):
        """Test the zero switch"""
        assert validate_positive(0.0, "dt", allow_zero=True) == 0.0
        with pytest.raises(ValidationError, match="dt must be > 0"):
            validate_positive(0.0, "dt")

    def test_positive_int(self):
        """Test integer counts and their minimum"""
        assert validate_positive_int(np.int64(4), "n") == 4
        with pytest.raises(ValidationError):
            validate_positive_int(2.0, "n")
        with pytest.raises(ValidationError, match=">= 2"):
            validate_positive_int(1, "n", minimum=2)

    @pytest.mark.parametrize("theta", [0.0, 1.0, -0.1, 1.5])
    def test_open_interval(self, theta):
        """Test the interval is open at both ends"""
        with pytest.raises(ValidationError, match=r"theta out of \(0,1\)"):
            validate_open_interval(theta, "theta", 0.0, 1.0)

    def test_choice(self):
        """Test choices are exact strings"""
        assert validate_choice("sup", "norm", ["sup", "l2"]) == "sup"
        with pytest.raises(ValidationError):
            validate_choice("max", "norm", ["sup", "l2"])

    def test_increasing(self):
        """Test boundary vectors must increase strictly"""
        assert validate_increasing([0, 4, 6], "boundaries").tolist() == [0.0, 4.0, 6.0]
        with pytest.raises(ValidationError):
            validate_increasing([0, 4, 4], "boundaries")
        with pytest.raises(ValidationError):
            validate_increasing([0], "boundaries")

    def test_warn_outside_logs(self, mocker):
        """Test a warning is logged outside the recommended range"""
        mock_logger = mocker.patch("utils.validation.logger")

        assert warn_outside(0.2, "theta", 0.0, 0.5)
        assert not warn_outside(0.7, "theta", 0.0, 0.5, context="nnwr")

        mock_logger.warning.assert_called_once()
        assert mock_logger.warning.call_args.kwargs["value"] == 0.7


class TestLogger:
    """Test structured logging"""

    def test_json_event(self, caplog):
        """Test events are rendered as JSON records"""
        logger = get_logger("tests.logger")

        logger.warning("probe_event", spec_name="demo")

        assert '"event": "probe_event"' in caplog.text
        assert '"spec_name": "demo"' in caplog.text
