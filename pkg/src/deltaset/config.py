"""Configuration loading and validation for deltaset."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from deltaset.lp import PIVOT_RULES


class ConfigError(Exception):
    """Raised when configuration is invalid or cannot be loaded."""

    pass


CONFIG_FILE_NAME = ".deltasetrc.yaml"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class Config:
    """Solver, search and sampling defaults for the command line.

    Attributes:
        pivot_rule: Simplex pivot rule, "bland" or "dantzig"
        node_budget: Branch-and-bound node limit for clique search (None = unlimited)
        max_tries: Sampling budget for lifted codes
        margin_divisor: Default code margin is threshold / margin_divisor
        grid_denominator: Denominator of the code sampling grid
        radius: Radius for the sharp bound, as a rational string
        log_level: Logging level name
    """

    DEFAULT_CONFIG = {
        "pivot_rule": "bland",
        "node_budget": None,
        "max_tries": 2000,
        "margin_divisor": 10,
        "grid_denominator": 2**16,
        "radius": "2",
        "log_level": "WARNING",
    }

    def __init__(
        self,
        pivot_rule: str = "bland",
        node_budget: Optional[int] = None,
        max_tries: int = 2000,
        margin_divisor: int = 10,
        grid_denominator: int = 2**16,
        radius: str = "2",
        log_level: str = "WARNING",
    ) -> None:
        self.pivot_rule = pivot_rule
        self.node_budget = node_budget
        self.max_tries = max_tries
        self.margin_divisor = margin_divisor
        self.grid_denominator = grid_denominator
        self.radius = radius
        self.log_level = log_level.upper() if isinstance(log_level, str) else log_level

        self._validate()

    @staticmethod
    def _is_positive_int(value: Any) -> bool:
        return isinstance(value, int) and not isinstance(value, bool) and value > 0

    def _validate(self) -> None:
        """Validate configuration values.

        Raises:
            ConfigError: If configuration values are invalid
        """
        if self.pivot_rule not in PIVOT_RULES:
            available = ", ".join(PIVOT_RULES)
            raise ConfigError(
                f"pivot_rule must be one of {available}, got: {self.pivot_rule}"
            )

        if self.node_budget is not None and not self._is_positive_int(self.node_budget):
            raise ConfigError(
                f"node_budget must be a positive integer or null, got: {self.node_budget}"
            )

        for name in ("max_tries", "margin_divisor", "grid_denominator"):
            value = getattr(self, name)
            if not self._is_positive_int(value):
                raise ConfigError(f"{name} must be a positive integer, got: {value}")

        if not isinstance(self.radius, str):
            raise ConfigError(
                f"radius must be a rational string such as \"2\" or \"7/3\", got: {self.radius!r}"
            )
        try:
            radius = Fraction(self.radius)
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"radius is not a rational: {e}") from e
        if radius <= 0:
            raise ConfigError(f"radius must be positive, got: {self.radius}")

        if self.log_level not in LOG_LEVELS:
            raise ConfigError(
                f"log_level must be one of {', '.join(LOG_LEVELS)}, got: {self.log_level}"
            )

    @property
    def radius_value(self) -> Fraction:
        return Fraction(self.radius)

    @property
    def logging_level(self) -> int:
        return int(getattr(logging, self.log_level))

    @classmethod
    def from_file(cls, config_path: Optional[Path] = None) -> "Config":
        """Load configuration from a YAML file.

        Args:
            config_path: Path to configuration file. If None, searches for
                        .deltasetrc.yaml in current directory.

        Returns:
            Config instance with loaded configuration

        Raises:
            ConfigError: If file cannot be read or contains invalid YAML/config
        """
        if config_path is None:
            config_path = Path.cwd() / CONFIG_FILE_NAME
        else:
            config_path = Path(config_path)

        if not config_path.exists():
            return cls()

        try:
            with config_path.open("r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in config file '{config_path}': {e}") from e
        except Exception as e:
            raise ConfigError(f"Failed to read config file '{config_path}': {e}") from e

        if data is None:
            return cls()

        if not isinstance(data, dict):
            raise ConfigError(
                f"Config file must contain a YAML dictionary, got: {type(data).__name__}"
            )

        unknown = sorted(set(data) - set(cls.DEFAULT_CONFIG))
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(map(str, unknown))}")

        config_dict = cls.DEFAULT_CONFIG.copy()
        config_dict.update(data)
        # YAML reads 2 and 7/3 differently; radius is always a string here
        if isinstance(config_dict["radius"], int) and not isinstance(config_dict["radius"], bool):
            config_dict["radius"] = str(config_dict["radius"])

        try:
            return cls(**config_dict)  # type: ignore[arg-type]
        except ConfigError:
            raise
        except Exception as e:
            raise ConfigError(f"Failed to create config from file '{config_path}': {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pivot_rule": self.pivot_rule,
            "node_budget": self.node_budget,
            "max_tries": self.max_tries,
            "margin_divisor": self.margin_divisor,
            "grid_denominator": self.grid_denominator,
            "radius": self.radius,
            "log_level": self.log_level,
        }

    def __repr__(self) -> str:
        """String representation of Config."""
        return (
            f"Config(pivot_rule={self.pivot_rule}, "
            f"node_budget={self.node_budget}, "
            f"max_tries={self.max_tries}, "
            f"margin_divisor={self.margin_divisor}, "
            f"grid_denominator={self.grid_denominator}, "
            f"radius={self.radius}, "
            f"log_level={self.log_level})"
        )
