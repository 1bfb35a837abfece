# app/middleware/validation.py
import math
import re
from typing import Dict, Optional

from loguru import logger
from pydantic import ValidationError

from ..models.errors import ConfigError
from ..models.experiments import AxisSpec
from ..models.run_config import Method


# Keys accepted in a key = value config file (dashes and underscores are interchangeable)
CONFIG_KEYS = (
    "alpha", "beta", "gamma", "lambda", "n", "d", "normalization", "method",
    "x", "y", "out", "svg", "svg_range", "area_mode", "scaling", "preset",
)

_KEY_PATTERN = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")


def _float(text: str, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{what}: '{text}' is not a number") from None
    if not math.isfinite(value):
        raise ConfigError(f"{what}: '{text}' is not finite")
    return value


class ConfigValidation:
    """Parsing and validation of command-line and config-file values"""

    @staticmethod
    def parse_axis_spec(text: str) -> AxisSpec:
        """
        name:lo:hi:count gives count evenly spaced values; name:v1,v2,... lists
        them explicitly
        """
        if not text or ":" not in text:
            raise ConfigError(f"axis spec '{text}' must look like name:lo:hi:count or name:v1,v2")
        name, _, rest = text.partition(":")
        parts = rest.split(":")
        try:
            if len(parts) == 3:
                lo = _float(parts[0], f"axis {name} lower bound")
                hi = _float(parts[1], f"axis {name} upper bound")
                if not parts[2].strip().isdigit() or int(parts[2]) < 1:
                    raise ConfigError(f"axis {name}: count '{parts[2]}' must be a positive integer")
                if hi < lo:
                    raise ConfigError(f"axis {name}: upper bound {hi} below lower bound {lo}")
                return AxisSpec.linspace(name, lo, hi, int(parts[2]))
            if len(parts) == 1:
                values = [_float(v, f"axis {name} value") for v in parts[0].split(",") if v.strip()]
                if not values:
                    raise ConfigError(f"axis {name} lists no values")
                return AxisSpec(name=name, values=tuple(values))
        except ValidationError as exc:
            raise ConfigError(f"axis spec '{text}': {exc.errors()[0]['msg']}") from None
        raise ConfigError(f"axis spec '{text}' must look like name:lo:hi:count or name:v1,v2")

    @staticmethod
    def parse_methods(text: str) -> tuple[Method, ...]:
        names = [part.strip().lower() for part in text.split(",") if part.strip()]
        if not names:
            raise ConfigError("at least one method must be selected")
        methods = []
        for name in names:
            try:
                methods.append(Method(name))
            except ValueError:
                raise ConfigError(
                    f"unknown method '{name}', expected a subset of {[m.value for m in Method]}"
                ) from None
        return tuple(methods)

    @staticmethod
    def parse_svg_range(text: str) -> tuple[float, float]:
        parts = text.split(":")
        if len(parts) != 2:
            raise ConfigError(f"svg range '{text}' must look like lo:hi")
        lo, hi = (_float(p, "svg range") for p in parts)
        if not lo < hi:
            raise ConfigError(f"svg range '{text}' needs lo < hi")
        return lo, hi

    @staticmethod
    def parse_bool(text: str, key: str) -> bool:
        lowered = text.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: '{text}' is not a boolean")

    @staticmethod
    def normalize_key(key: str) -> str:
        return key.strip().lower().replace("-", "_")

    @staticmethod
    def parse_config_file(text: Optional[str]) -> Dict[str, str]:
        """
        Flat key = value lines; blank lines and # comments are skipped,
        unknown or repeated keys are rejected
        """
        values: Dict[str, str] = {}
        if not text:
            return values
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"config line {number}: expected key = value, got '{raw.strip()}'")
            key, _, value = line.partition("=")
            if not _KEY_PATTERN.match(key.strip()):
                raise ConfigError(f"config line {number}: invalid key '{key.strip()}'")
            key = ConfigValidation.normalize_key(key)
            if key not in CONFIG_KEYS:
                raise ConfigError(f"config line {number}: unknown key '{key}'")
            if key in values:
                raise ConfigError(f"config line {number}: '{key}' given twice")
            values[key] = value.strip()
        logger.debug(f"Config file supplied keys: {sorted(values)}")
        return values
