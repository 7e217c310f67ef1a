"""
Gnuplot script rendering for convergence plots.
"""
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union
from jinja2 import Environment, FileSystemLoader
from harness.writer import format_parameter, history_file_name, history_tag
from utils.logger import get_logger
from utils.exceptions import OutputError
from waveform.models import ConvergenceHistory

logger = get_logger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"
TEMPLATE_NAME = "convergence.gp.j2"


class PlotScriptBuilder:
    """
    Renders gnuplot scripts from templates.
    """

    def __init__(self, template_dir: Optional[str] = None):
        """
        Initialize plot script builder.

        Args:
            template_dir: Directory containing templates (default: the package templates)
        """
        self.template_dir = Path(template_dir) if template_dir else TEMPLATE_DIR
        self.env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            autoescape=False,
            keep_trailing_newline=True,
        )

    def render(self, template_name: str, context: Dict[str, Any]) -> str:
        try:
            template = self.env.get_template(template_name)
            return template.render(**context)
        except Exception as e:
            logger.error("plot_template_error", template=template_name, error=str(e))
            raise OutputError(f"Failed to render template {template_name}: {e}") from e


def render_plot_script(spec_name: str, histories: Sequence[ConvergenceHistory], title: str = "") -> str:
    """Gnuplot script plotting every run's error history on a log axis."""
    curves = [
        {
            "file": history_file_name(spec_name, h),
            "label": f"{history_tag(h)} {format_parameter(h.parameter)}",
        }
        for h in histories
    ]
    return PlotScriptBuilder().render(
        TEMPLATE_NAME, {"spec_name": spec_name, "title": title or spec_name, "curves": curves}
    )


def write_plot_script(spec_name: str, histories: Sequence[ConvergenceHistory], directory: Union[str, Path], title: str = "") -> Path:
    """
    Raises:
        OutputError: If the script cannot be rendered or written
    """
    path = Path(directory) / f"{spec_name}.gp"
    script = render_plot_script(spec_name, histories, title)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(script, encoding="utf-8")
    except OSError as e:
        raise OutputError(f"Failed to write {path}: {e}", str(path)) from e
    return path
