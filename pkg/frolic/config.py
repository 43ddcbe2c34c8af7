import json
import os

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from frolic.errors import InvalidParameter
from frolic.log import get_logger

logger = get_logger(__name__)

OUTPUT_FORMATS = ("json", "csv", "text")
SEED_ENV = "FROLIC_SEED"


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every command: seed, trial count, tolerance and output format."""

    seed: int = 42
    trials: int = 50
    tol: float = 1e-8
    output: str = "json"

    def __post_init__(self):
        if int(self.seed) != self.seed or self.seed < 0:
            raise InvalidParameter(f"seed must be a non-negative integer, got {self.seed}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise InvalidParameter(f"trials must be a positive integer, got {self.trials}")
        if not self.tol > 0:
            raise InvalidParameter(f"tol must be positive, got {self.tol}")
        if self.output not in OUTPUT_FORMATS:
            raise InvalidParameter(f"output must be one of {OUTPUT_FORMATS}, got {self.output}")

    @classmethod
    def from_args(cls, args: Any, environ: Optional[Mapping[str, str]] = None) -> "RunConfig":
        """
        Builds a config from parsed command-line arguments.

        ``FROLIC_SEED`` in ``environ`` takes precedence over ``--seed``.
        """
        environ = os.environ if environ is None else environ
        defaults = cls()
        seed = getattr(args, "seed", None)
        if environ.get(SEED_ENV):
            try:
                seed = int(environ[SEED_ENV])
            except ValueError as e:
                raise InvalidParameter(f"{SEED_ENV} is not an integer: {environ[SEED_ENV]!r}") from e
            logger.debug(f"Seed {seed} taken from {SEED_ENV}")

        def pick(name: str, fallback):
            given = getattr(args, name, None)
            return fallback if given is None else given

        return cls(
            seed=defaults.seed if seed is None else seed,
            trials=pick("trials", defaults.trials),
            tol=pick("tol", defaults.tol),
            output=pick("format", defaults.output),
        )


@dataclass(frozen=True)
class GroupSpec:
    """A builtin group name with its parameters, as given on the command line."""

    kind: str
    params: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """
        Accepts a bare name, ``{"group": name, ...params}`` or
        ``{"kind": name, "params": {...}}``.

        :raises InvalidParameter: If the text is neither a name nor a spec object.
        """
        text = text.strip()
        if not text.startswith("{"):
            if not text:
                raise InvalidParameter("empty group spec")
            return cls(text)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidParameter(f"group spec is not valid JSON: {e}") from e
        if "group" in data:
            return cls(str(data["group"]), {k: v for k, v in data.items() if k != "group"})
        if "kind" in data:
            params = data.get("params", {})
            if not isinstance(params, dict):
                raise InvalidParameter(f"params must be an object, got {params!r}")
            return cls(str(data["kind"]), dict(params))
        raise InvalidParameter(f"group spec needs a 'group' or 'kind' key: {text}")

    @classmethod
    def load(cls, argument: str) -> "GroupSpec":
        """Parses ``argument``, reading it from a file when it starts with '@'."""
        if argument.startswith("@"):
            path = Path(argument[1:])
            try:
                return cls.parse(path.read_text())
            except OSError as e:
                raise InvalidParameter(f"cannot read group spec {path}: {e}") from e
        return cls.parse(argument)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "params": dict(self.params)}


def parse_coordinates(text: str) -> list:
    """Comma-separated reals, e.g. "1,0,0"."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InvalidParameter(f"coordinates must be comma-separated reals, got {text!r}") from e
