"""
Run configuration.

A run is described by a YAML file (see docs/configuration.md) naming a
scenario, the methods to compare, the static clusterer and the
replication settings. Named presets live in configs/presets/.

Parsing produces frozen dataclasses; unknown keys and invalid values raise
ConfigError (scenario invariants raise BadConfig, a ConfigError).
"""

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import yaml

from affect.baselines import MethodSpec
from affect.clustering.base import Clusterer, get_clusterer
from affect.clustering.hierarchical import LINKAGES
from affect.clustering.spectral import SpectralVariant
from affect.errors import ConfigError
from affect.proximity.matrix import Kind
from affect.tracking.affect import AffectOptions
from sim.backends.boids import BoidsConfig
from sim.backends.gmm import DynamicGmmConfig, GmmEvent, MeanWalk

SCENARIO_TYPES = ("gmm", "boids", "csv")
CLUSTERER_TYPES = ("hierarchical", "kmeans", "spectral")

TOP_LEVEL_KEYS = {
    "scenario", "methods", "method", "affect", "clusterer", "k", "runs",
    "seed", "workers", "output_dir", "logging", "mse", "write_labels",
}


def get_repo_root() -> Path:
    """Return repository root directory."""
    return Path(__file__).resolve().parents[1]


def presets_dir() -> Path:
    return get_repo_root() / "configs" / "presets"


# ------------------------------------------------------------
# Utility functions
# ------------------------------------------------------------

def load_yaml(path: Path) -> Dict[str, Any]:
    """Load a YAML configuration file."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Configuration file not found: {path}")

    try:
        with path.open("r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc

    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def _check_keys(section: Mapping, allowed, where: str) -> None:
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ConfigError(f"Unknown key(s) in {where}: {', '.join(unknown)}")


def _section(data: Mapping, key: str) -> Dict[str, Any]:
    value = data.get(key) or {}
    if not isinstance(value, dict):
        raise ConfigError(f"'{key}' must be a mapping")
    return dict(value)


# ------------------------------------------------------------
# Sections
# ------------------------------------------------------------

@dataclass(frozen=True)
class ClustererConfig:
    """
    Static clusterer and its cluster count.

    ``k`` is fixed, or None with ``k_range`` (inclusive) for modularity
    selection, which only spectral clustering supports.
    """

    type: str
    k: Optional[int] = None
    k_range: Optional[Tuple[int, int]] = None
    linkage: str = "complete"
    variant: str = "normalized_cut"
    n_init: int = 10

    def __post_init__(self) -> None:
        if self.type not in CLUSTERER_TYPES:
            raise ConfigError(f"Unsupported clusterer: {self.type}")
        if (self.k is None) == (self.k_range is None):
            raise ConfigError("Give k as an integer or as {modularity: [lo, hi]}")
        if self.k is not None and self.k < 1:
            raise ConfigError("k must be positive")
        if self.k_range is not None:
            if self.type != "spectral":
                raise ConfigError("Modularity selection of k needs the spectral clusterer")
            lo, hi = self.k_range
            if not 1 <= lo <= hi:
                raise ConfigError(f"Invalid modularity range [{lo}, {hi}]")
        if self.linkage not in LINKAGES:
            raise ConfigError(f"Unknown linkage {self.linkage!r}; expected one of {LINKAGES}")
        try:
            object.__setattr__(self, "variant", SpectralVariant.parse(self.variant).value)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.n_init < 1:
            raise ConfigError("n_init must be at least 1")

    @property
    def kind(self) -> Kind:
        return Kind.DISSIMILARITY if self.type == "hierarchical" else Kind.SIMILARITY

    def build(self, seed: int = 0) -> Clusterer:
        if self.type == "hierarchical":
            return get_clusterer("hierarchical", k=self.k, linkage=self.linkage)
        if self.type == "kmeans":
            return get_clusterer("kmeans", k=self.k, seed=seed, n_init=self.n_init)
        return get_clusterer(
            "spectral", variant=self.variant, k=self.k, k_range=self.k_range, seed=seed
        )


@dataclass(frozen=True, eq=False)
class ScenarioConfig:
    """Exactly one scenario source."""

    type: str
    gmm: Optional[DynamicGmmConfig] = None
    boids: Optional[BoidsConfig] = None
    csv_dir: Optional[Path] = None
    kind: Kind = Kind.SIMILARITY
    proximity: str = "dot"
    rho: float = 20.0

    def __post_init__(self) -> None:
        sources = [s for s in (self.gmm, self.boids, self.csv_dir) if s is not None]
        if len(sources) != 1:
            raise ConfigError("A scenario needs exactly one source")


@dataclass(frozen=True, eq=False)
class RunConfig:
    scenario: ScenarioConfig
    methods: Tuple[MethodSpec, ...]
    clusterer: ClustererConfig
    affect: AffectOptions = field(default_factory=AffectOptions)
    runs: int = 1
    seed: int = 0
    workers: int = 1
    output_dir: Path = Path("results")
    mse: bool = True
    write_labels: bool = False
    logging_enabled: bool = True
    log_interval: int = 1

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.log_interval < 1:
            raise ConfigError("logging.interval must be at least 1")
        if not self.methods:
            raise ConfigError("At least one method is required")
        labels = [m.label for m in self.methods]
        if len(set(labels)) != len(labels):
            raise ConfigError("Method names must be unique")
        if self.scenario.kind != self.clusterer.kind:
            raise ConfigError(
                f"{self.clusterer.type} clustering needs {self.clusterer.kind.value} "
                f"proximities, scenario gives {self.scenario.kind.value}"
            )

    def with_overrides(
        self,
        runs: Optional[int] = None,
        seed: Optional[int] = None,
        output_dir: Optional[Path] = None,
        workers: Optional[int] = None
    ) -> "RunConfig":
        """Command-line overrides of the file settings."""
        changes = {}
        if runs is not None:
            changes["runs"] = runs
        if seed is not None:
            changes["seed"] = seed
        if output_dir is not None:
            changes["output_dir"] = Path(output_dir)
        if workers is not None:
            changes["workers"] = workers
        return replace(self, **changes) if changes else self


# ------------------------------------------------------------
# Parsing
# ------------------------------------------------------------

GMM_KEYS = {"type", "means", "covariances", "weights", "n", "T", "walks", "events", "seed"}
WALK_KEYS = {"mode", "dimension", "step", "delta", "components", "start", "end"}
EVENT_KEYS = {"t", "covariances", "weights"}
BOIDS_KEYS = {
    "type", "flock_sizes", "cube", "gap", "cohesion", "separation_radius",
    "alignment", "speed", "goal", "moves_per_step", "switches_per_step", "T",
    "scatter_at", "scatter_radius", "regroup_at", "regroup_flocks", "seed",
    "proximity", "rho",
}
CSV_KEYS = {"type", "dir", "kind"}


def _parse_gmm(section: Dict[str, Any]) -> DynamicGmmConfig:
    _check_keys(section, GMM_KEYS, "scenario (gmm)")
    for key in ("means", "covariances", "weights", "n", "T"):
        if key not in section:
            raise ConfigError(f"GMM scenario needs '{key}'")

    walks = []
    for entry in section.get("walks") or []:
        _check_keys(entry, WALK_KEYS, "scenario.walks")
        walks.append(MeanWalk(**entry))

    events = []
    for entry in section.get("events") or []:
        _check_keys(entry, EVENT_KEYS, "scenario.events")
        if "t" not in entry:
            raise ConfigError("Every GMM event needs a time 't'")
        events.append(GmmEvent(**entry))

    return DynamicGmmConfig(
        means=section["means"],
        covariances=section["covariances"],
        weights=tuple(section["weights"]),
        n=int(section["n"]),
        T=int(section["T"]),
        walks=tuple(walks),
        events=tuple(events),
        seed=int(section.get("seed", 0)),
    )


def _parse_scenario(section: Dict[str, Any], base_dir: Path) -> ScenarioConfig:
    kind = section.get("type")
    if kind not in SCENARIO_TYPES:
        raise ConfigError(f"scenario.type must be one of {SCENARIO_TYPES}, got {kind!r}")

    if kind == "gmm":
        return ScenarioConfig(type="gmm", gmm=_parse_gmm(section), proximity="dot")

    if kind == "boids":
        _check_keys(section, BOIDS_KEYS, "scenario (boids)")
        params = {k: v for k, v in section.items() if k not in ("type", "proximity", "rho")}
        if "flock_sizes" in params:
            params["flock_sizes"] = tuple(params["flock_sizes"])
        proximity = section.get("proximity", "distance")
        if proximity not in ("distance", "gaussian"):
            raise ConfigError(f"Boids proximity must be distance or gaussian, got {proximity!r}")
        return ScenarioConfig(
            type="boids",
            boids=BoidsConfig(**params),
            kind=Kind.DISSIMILARITY if proximity == "distance" else Kind.SIMILARITY,
            proximity=proximity,
            rho=float(section.get("rho", 20.0)),
        )

    _check_keys(section, CSV_KEYS, "scenario (csv)")
    if "dir" not in section:
        raise ConfigError("CSV scenario needs 'dir'")
    directory = Path(section["dir"])
    if not directory.is_absolute():
        directory = base_dir / directory
    try:
        csv_kind = Kind.parse(section.get("kind", "similarity"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return ScenarioConfig(type="csv", csv_dir=directory, kind=csv_kind, proximity="")


def _parse_clusterer(section: Dict[str, Any], k_value) -> ClustererConfig:
    _check_keys(section, {"type", "linkage", "variant", "n_init"}, "clusterer")
    if "type" not in section:
        raise ConfigError("clusterer.type is required")

    k, k_range = None, None
    if isinstance(k_value, dict):
        _check_keys(k_value, {"modularity"}, "k")
        bounds = k_value.get("modularity")
        if not isinstance(bounds, (list, tuple)) or len(bounds) != 2:
            raise ConfigError("k.modularity must be a [lo, hi] pair")
        k_range = (int(bounds[0]), int(bounds[1]))
    elif k_value is not None:
        k = int(k_value)

    return ClustererConfig(
        type=str(section["type"]).lower(),
        k=k,
        k_range=k_range,
        linkage=section.get("linkage", "complete"),
        variant=section.get("variant", "normalized_cut"),
        n_init=int(section.get("n_init", 10)),
    )


def parse_config(data: Mapping[str, Any], base_dir: Path = Path(".")) -> RunConfig:
    """
    Build a RunConfig from a loaded YAML mapping.

    Relative paths are resolved against ``base_dir``.

    Raises
    ------
    ConfigError
        On unknown keys, missing sections or invalid values.
    """

    _check_keys(data, TOP_LEVEL_KEYS, "configuration")

    if "methods" in data and "method" in data:
        raise ConfigError("Give either 'methods' or 'method', not both")
    raw_methods = data.get("methods", data.get("method"))
    if raw_methods is None:
        raise ConfigError("No method given")
    if isinstance(raw_methods, str):
        raw_methods = [raw_methods]
    methods = tuple(MethodSpec.parse(m) for m in raw_methods)

    scenario = _parse_scenario(_section(data, "scenario"), base_dir)
    clusterer = _parse_clusterer(_section(data, "clusterer"), data.get("k"))

    affect_section = _section(data, "affect")
    _check_keys(affect_section, {"iterations", "init_policy", "match_labels"}, "affect")
    try:
        options = AffectOptions(**affect_section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"affect: {exc}") from None

    logging_section = _section(data, "logging")
    _check_keys(logging_section, {"enable", "interval"}, "logging")

    if any(m.kind == "oracle" for m in methods) and scenario.type == "boids":
        raise ConfigError("The oracle method needs true moments (gmm or a dumped gmm sequence)")

    output_dir = Path(data.get("output_dir", "results"))
    if not output_dir.is_absolute():
        output_dir = base_dir / output_dir

    return RunConfig(
        scenario=scenario,
        methods=methods,
        clusterer=clusterer,
        affect=options,
        runs=int(data.get("runs", 1)),
        seed=int(data.get("seed", 0)),
        workers=int(data.get("workers", 1)),
        output_dir=output_dir,
        mse=bool(data.get("mse", True)),
        write_labels=bool(data.get("write_labels", False)),
        logging_enabled=bool(logging_section.get("enable", True)),
        log_interval=int(logging_section.get("interval", 1)),
    )


def load_config(path: Path) -> RunConfig:
    """Load and parse a configuration file; relative paths are taken from the working directory."""
    return parse_config(load_yaml(Path(path)), base_dir=Path("."))


def load_preset(name: str) -> RunConfig:
    """Load ``configs/presets/<name>.yaml``."""
    path = presets_dir() / f"{name}.yaml"
    if not path.exists():
        available = sorted(p.stem for p in presets_dir().glob("*.yaml"))
        raise ConfigError(f"Unknown preset {name!r}; available: {', '.join(available)}")
    return parse_config(load_yaml(path))
