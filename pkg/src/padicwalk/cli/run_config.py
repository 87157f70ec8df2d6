"""
JSON run configuration.

The pydantic models validate a config file and turn it into the library
objects a command needs. Paths inside a config resolve against the config
file's directory.
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union
import hashlib
import json
import logging

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError, field_validator, model_validator

from ..embedding import embed, load_distance_csv, parse_dendrogram, to_measure_tree
from ..exceptions import ConfigError
from ..kernels import RateProfile, build_profile
from ..measures import (
    ConstantTail,
    HaarTail,
    MeasureTree,
    PowerTail,
    TailModel,
    random_measure,
    uniform_ball,
)
from ..padic import Base, Window, ball_from_path
from ..spectral import PiecewiseFunction
from . import config as cli_config

logger = logging.getLogger(__name__)

LeafTable = Dict[str, Union[str, int, float]]


def _check_rationals(table: LeafTable) -> LeafTable:
    for path, value in table.items():
        try:
            Fraction(str(value))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Leaf {path!r}: {value!r} is not a rational") from e
    return table


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MeasureSpec(_Spec):
    """Inline leaf table, a measure file, or a named generator."""
    leaves: Optional[LeafTable] = None
    file: Optional[str] = None
    generator: Optional[Literal["uniform_ball", "indicator_of_embedding", "random"]] = None
    ball: str = ""
    density: Union[str, int, float] = "1"
    input: Optional[str] = None
    seed: int = 0
    zero_fraction: float = Field(default=0.2, ge=0.0, lt=1.0)

    @field_validator("leaves")
    @classmethod
    def _rational_leaves(cls, v):
        return None if v is None else _check_rationals(v)

    @model_validator(mode="after")
    def _one_source(self):
        sources = [s for s in (self.leaves, self.file, self.generator) if s is not None]
        if len(sources) != 1:
            raise ValueError("measure needs exactly one of 'leaves', 'file' or 'generator'")
        if self.generator == "indicator_of_embedding" and not self.input:
            raise ValueError("generator 'indicator_of_embedding' needs 'input'")
        if Fraction(str(self.density)) <= 0:
            raise ValueError("density must be positive")
        return self


class KernelSpec(_Spec):
    type: Literal["vladimirov", "table"]
    alpha: Optional[float] = Field(default=None, gt=0)
    values: Optional[Dict[str, float]] = None
    tail: str = "vanishing"

    @model_validator(mode="after")
    def _required_fields(self):
        if self.type == "vladimirov" and self.alpha is None:
            raise ValueError("vladimirov kernel needs 'alpha'")
        if self.type == "table" and not self.values:
            raise ValueError("table kernel needs 'values'")
        return self


class InitialSpec(_Spec):
    """scale * Omega(ball), or a leaf table."""
    ball: Optional[str] = None
    scale: float = 1.0
    leaves: Optional[LeafTable] = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.ball is None) == (self.leaves is None):
            raise ValueError("initial needs exactly one of 'ball' or 'leaves'")
        return self


class PotentialSpec(_Spec):
    U: Optional[LeafTable] = None
    file: Optional[str] = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.U is None) == (self.file is None):
            raise ValueError("potential needs exactly one of 'U' or 'file'")
        return self


class TailSpec(_Spec):
    type: Literal["constant", "haar", "power"] = "constant"
    c: Optional[float] = Field(default=None, gt=0)
    degree: float = 1.0
    beta: float = Field(default_factory=lambda: cli_config.DEFAULT_BETA, gt=1.0)
    horizon: int = Field(default_factory=lambda: cli_config.DEFAULT_GROWTH_HORIZON, ge=4)


class RunConfig(_Spec):
    p: int = Field(ge=2, le=36)
    gamma_min: int
    gamma_max: int
    measure: MeasureSpec
    kernel: KernelSpec
    initial: Optional[InitialSpec] = None
    times: List[float] = Field(default_factory=lambda: list(cli_config.DEFAULT_TIMES))
    seed: int = Field(default_factory=lambda: cli_config.DEFAULT_SEED, ge=0, lt=2 ** 64)
    paths: int = Field(default_factory=lambda: cli_config.DEFAULT_PATHS, ge=1)
    sign: Literal["+", "-"] = "+"
    initial_leaf: Optional[str] = None
    horizon: float = Field(default_factory=lambda: cli_config.DEFAULT_HORIZON, ge=0.0)
    potential: Optional[PotentialSpec] = None
    tail: Optional[TailSpec] = None

    _base_dir: Optional[Path] = PrivateAttr(default=None)

    @field_validator("times")
    @classmethod
    def _nonnegative_times(cls, v):
        if any(t < 0 for t in v):
            raise ValueError("times must be non-negative")
        return v

    @model_validator(mode="after")
    def _window(self):
        if self.gamma_min > self.gamma_max:
            raise ValueError(f"gamma_min={self.gamma_min} exceeds gamma_max={self.gamma_max}")
        if self.kernel.values is not None:
            levels = {int(i) for i in self.kernel.values}
            missing = set(range(self.gamma_min, self.gamma_max + 1)) - levels
            if missing:
                raise ValueError(f"kernel table misses levels {sorted(missing)}")
        return self

    # -- loading ------------------------------------------------------------

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read config {path}: {e}") from e
        config = cls.from_dict(raw)
        config._base_dir = path.parent
        return config

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "RunConfig":
        try:
            return cls.model_validate(raw)
        except ValidationError as e:
            raise ConfigError(f"Invalid run config:\n{e}") from e

    @property
    def base_dir(self) -> Path:
        return self._base_dir or Path.cwd()

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form of the validated config."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    # -- builders -----------------------------------------------------------

    @property
    def base(self) -> Base:
        return Base(self.p)

    @property
    def window(self) -> Window:
        return Window(self.gamma_min, self.gamma_max)

    def _resolve(self, name: str) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self.base_dir / path

    def _read_table(self, name: str, key: str) -> LeafTable:
        path = self._resolve(name)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read {path}: {e}") from e
        if (data.get("p"), data.get("gamma_min"), data.get("gamma_max")) != (
            self.p, self.gamma_min, self.gamma_max
        ):
            raise ConfigError(f"{path} is declared on a different base or window")
        if key not in data:
            raise ConfigError(f"{path} has no {key!r} table")
        return _check_rationals(data[key])

    def build_tree(self) -> MeasureTree:
        spec = self.measure
        try:
            if spec.leaves is not None:
                return MeasureTree.from_leaf_table(self.p, self.gamma_min, self.gamma_max, spec.leaves)
            if spec.file is not None:
                table = self._read_table(spec.file, "leaves")
                return MeasureTree.from_leaf_table(self.p, self.gamma_min, self.gamma_max, table)
            if spec.generator == "uniform_ball":
                ball = ball_from_path(self.base, self.window, spec.ball)
                return uniform_ball(self.base, self.window, ball, Fraction(str(spec.density)))
            if spec.generator == "random":
                return random_measure(self.base, self.window, spec.seed, spec.zero_fraction)

            source = self._resolve(spec.input)
            if source.suffix.lower() == ".csv":
                space = load_distance_csv(source)
            else:
                space = parse_dendrogram(source.read_text())
            result = embed(space, self.base)
            return to_measure_tree(result, self.window, Fraction(str(spec.density)))
        except OSError as e:
            raise ConfigError(f"Cannot build measure: {e}") from e
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"Invalid measure: {e}") from e

    def build_kernel(self) -> RateProfile:
        return build_profile(self.kernel.model_dump(exclude_none=True), self.window, self.base)

    def build_initial(self, tree: MeasureTree) -> PiecewiseFunction:
        if self.initial is None:
            raise ConfigError("This command needs an 'initial' condition in the config")
        if self.initial.leaves is not None:
            return PiecewiseFunction.from_leaf_table(tree, self.initial.leaves)
        ball = ball_from_path(self.base, self.window, self.initial.ball)
        return PiecewiseFunction.indicator(tree, ball) * self.initial.scale

    def build_potential(self, tree: MeasureTree) -> PiecewiseFunction:
        if self.potential is None:
            raise ConfigError("This command needs a 'potential' in the config")
        table = self.potential.U
        if table is None:
            table = self._read_table(self.potential.file, "U")
        return PiecewiseFunction.from_leaf_table(tree, table, exact=True)

    def build_tail(self, tree: MeasureTree) -> TailModel:
        spec = self.tail or TailSpec()
        if spec.type == "constant":
            total = spec.c if spec.c is not None else float(tree.total_measure())
            if total <= 0:
                raise ConfigError("Constant tail needs a positive total measure")
            return ConstantTail(total)
        if spec.type == "haar":
            return HaarTail(spec.c or 1.0, self.p)
        return PowerTail(spec.c or 1.0, spec.degree)

    def initial_leaf_index(self, tree: MeasureTree) -> int:
        """Leaf to start the walk from; the first support leaf by default."""
        if self.initial_leaf is None:
            support = tree.support_leaves()
            if not support:
                raise ConfigError("The measure is identically zero")
            return tree.leaf_index(support[0])
        ball = ball_from_path(self.base, self.window, self.initial_leaf)
        if ball.level != self.gamma_min:
            raise ConfigError(f"initial_leaf {self.initial_leaf!r} is not a full leaf path")
        return tree.leaf_index(ball)
