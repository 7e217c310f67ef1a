"""
Experiment specs: the validated form of a spec document.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union
from config.config_manager import SpecManager
from config.schema_validator import SchemaValidator
from config.yaml_loader import YAMLLoader
from discretization.problem import DelayFamily, DelayProblem, FamilyFactory
from utils.logger import get_logger
from utils.exceptions import ValidationError
from utils.validation import validate_open_interval, validate_positive, validate_positive_int

logger = get_logger(__name__)

WR_METHODS = ("dnwr", "nnwr")
SCHWARZ_METHODS = ("csw", "osw")
GUESSES = ("t^2", "zero", "ones")

# keys each method accepts besides the stopping settings
_PARAMETER_KEYS = {
    "dnwr": ("theta", "thetas"),
    "nnwr": ("theta", "thetas"),
    "csw": ("overlap_cells",),
    "osw": ("robin_p", "robin_ps", "overlap_cells"),
}
_ALL_PARAMETER_KEYS = ("theta", "thetas", "robin_p", "robin_ps", "overlap_cells")


@dataclass(frozen=True)
class MethodSpec:
    """
    One method block: the method name, the parameter values to sweep
    (theta, Robin p, or the overlap for classical Schwarz) and stopping settings.
    """
    name: str
    parameters: Tuple[float, ...]
    overlap_cells: int = 2
    tol: float = 1e-10
    max_iters: int = 100
    norm: str = "sup"
    flux: str = "conservative"

    @property
    def is_schwarz(self) -> bool:
        return self.name in SCHWARZ_METHODS


@dataclass(frozen=True)
class RunPlan:
    """A single run: method, parameter value and subdomain count."""
    method: MethodSpec
    parameter: float
    subdomains: int
    tag: str


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    family: DelayFamily
    tau: float
    T: float
    domain: Tuple[float, float]
    dt: float
    methods: Tuple[MethodSpec, ...]
    dx: Optional[float] = None
    nx: Optional[int] = None
    points_per_subdomain: Optional[int] = None
    subdomains: Tuple[int, ...] = (2,)
    boundaries: Union[str, Tuple[float, ...]] = "equal"
    split: Optional[float] = None
    guess: str = "t^2"
    output_dir: Optional[str] = None
    plot_script: bool = False
    description: str = ""
    source: Optional[str] = field(default=None, compare=False)

    def problem(self) -> DelayProblem:
        """Error-equation problem of the spec."""
        return DelayProblem.error_equation(self.family, tau=self.tau, domain=self.domain, T=self.T)

    def runs(self) -> List[RunPlan]:
        """
        Expand the spec into runs: every parameter of every method and, for
        the waveform methods, every subdomain count.
        """
        plans = []
        sweep = len(self.subdomains) > 1
        for method in self.methods:
            counts = (2,) if method.is_schwarz else self.subdomains
            for n in counts:
                tag = f"{method.name}-n{n}" if sweep and not method.is_schwarz else method.name
                for parameter in method.parameters:
                    plans.append(RunPlan(method=method, parameter=parameter, subdomains=n, tag=tag))
        return plans


def _one_of(block: Dict[str, Any], single: str, many: str, path: str) -> Tuple[float, ...]:
    if (single in block) == (many in block):
        raise ValidationError(f"{path}: exactly one of '{single}' or '{many}' is required", f"{path}.{single}")
    values = [block[single]] if single in block else list(block[many])
    return tuple(float(v) for v in values)


def _method_spec(block: Dict[str, Any], path: str) -> MethodSpec:
    name = block["name"]
    for key in _ALL_PARAMETER_KEYS:
        if key in block and key not in _PARAMETER_KEYS[name]:
            raise ValidationError(f"{path}: '{key}' does not apply to {name}", f"{path}.{key}")

    overlap = validate_positive_int(block.get("overlap_cells", 2), f"{path}.overlap_cells", minimum=0)
    if name in WR_METHODS:
        parameters = tuple(
            validate_open_interval(theta, "theta", 0.0, 1.0) for theta in _one_of(block, "theta", "thetas", path)
        )
    elif name == "osw":
        parameters = tuple(validate_positive(p, f"{path}.robin_p") for p in _one_of(block, "robin_p", "robin_ps", path))
    else:
        if overlap < 1:
            raise ValidationError(f"{path}: classical Schwarz needs overlap_cells >= 1", f"{path}.overlap_cells")
        parameters = (float(overlap),)

    return MethodSpec(
        name=name,
        parameters=parameters,
        overlap_cells=overlap,
        tol=float(block.get("tol", 1e-10)),
        max_iters=int(block.get("max_iters", 100)),
        norm=block.get("norm", "sup"),
        flux=block.get("flux", "conservative"),
    )


def spec_from_document(document: Dict[str, Any], source: Optional[str] = None) -> ExperimentSpec:
    """
    Build an ExperimentSpec from a parsed document.

    Raises:
        ValidationError: If the document violates the schema or a semantic rule
    """
    SchemaValidator.validate_and_raise(document)

    problem = document["problem"]
    grid = document["grid"]
    partition = document.get("partition", {})
    output = document.get("output", {})

    family = FamilyFactory.create(problem["family"], problem["coefficients"])
    x_min, x_max = (float(v) for v in problem["domain"])
    if not x_max > x_min:
        raise ValidationError("problem.domain must satisfy x_min < x_max", "problem.domain")

    resolution = [key for key in ("dx", "nx") if key in grid]
    if "points_per_subdomain" in partition:
        resolution.append("partition.points_per_subdomain")
    if len(resolution) != 1:
        raise ValidationError(
            f"exactly one of grid.dx, grid.nx or partition.points_per_subdomain is required, got {resolution or 'none'}",
            "grid",
        )

    blocks = document["method"] if isinstance(document["method"], list) else [document["method"]]
    methods = tuple(
        _method_spec(block, "method" if len(blocks) == 1 else f"method.{i}") for i, block in enumerate(blocks)
    )

    subdomains = partition.get("subdomains", 2)
    subdomains = tuple(subdomains) if isinstance(subdomains, list) else (subdomains,)
    boundaries = partition.get("boundaries", "equal")
    if not isinstance(boundaries, str):
        boundaries = tuple(float(b) for b in boundaries)
        if len(subdomains) > 1 or subdomains[0] != len(boundaries) - 1:
            if "subdomains" in partition:
                raise ValidationError("partition.subdomains disagrees with partition.boundaries", "partition.subdomains")
            subdomains = (len(boundaries) - 1,)
        if "points_per_subdomain" in partition:
            raise ValidationError("points_per_subdomain requires equal boundaries", "partition.points_per_subdomain")

    split = partition.get("split")
    if any(method.is_schwarz for method in methods):
        if len(subdomains) > 1 or subdomains[0] != 2:
            raise ValidationError("Schwarz methods run on two subdomains", "partition.subdomains")
        if split is None and not isinstance(boundaries, str):
            split = boundaries[1]

    spec = ExperimentSpec(
        name=document["name"],
        description=document.get("description", ""),
        family=family,
        tau=float(problem["tau"]),
        T=float(problem["T"]),
        domain=(x_min, x_max),
        dt=float(grid["dt"]),
        dx=float(grid["dx"]) if "dx" in grid else None,
        nx=grid.get("nx"),
        points_per_subdomain=partition.get("points_per_subdomain"),
        methods=methods,
        subdomains=subdomains,
        boundaries=boundaries,
        split=float(split) if split is not None else None,
        guess=document.get("guess", "t^2"),
        output_dir=output.get("directory"),
        plot_script=bool(output.get("plot_script", False)),
        source=source,
    )
    logger.debug("spec_parsed", spec_name=spec.name, runs=len(spec.runs()))
    return spec


def parse_spec(text: str) -> ExperimentSpec:
    """
    Parse a spec document given as YAML text.

    Raises:
        ParseError: If the YAML is malformed
        ValidationError: If the document is invalid
    """
    return spec_from_document(YAMLLoader.load_from_string(text))


def load_spec(spec_name: str, spec_dir: Optional[str] = None) -> ExperimentSpec:
    """Load a shipped spec by name, or any spec file by path."""
    manager = SpecManager(spec_dir)
    document = manager.load_spec(spec_name, validate=False)
    return spec_from_document(document, source=str(manager.resolve(spec_name)))
