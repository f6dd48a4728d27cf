"""
Engine configuration: which search to run, which SAT-heuristic
enhancements to enable, the binary-search pivot ratio and the timeout.

Labels are the engine name followed by `+flag` suffixes, e.g.
`ofp-bs+pi+so`; they are what the CLI and the bench runner accept.
"""

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

from src.utils.config import DEFAULT_ENGINE, DEFAULT_RHO, DEFAULT_TIMEOUT
from src.utils.errors import EngineError


class EngineKind(Enum):
    OFP_BS = "ofp-bs"
    OBV_BS = "obv-bs"
    OMT_LINEAR = "omt-lin"
    OMT_BINARY = "omt-bin"


ENHANCEMENT_FLAGS = ("bp", "pi", "so")


def _to_fraction(value: Union[str, int, float, Fraction]) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise EngineError(f"rho must be a rational number, got {value!r}") from None


@dataclass(frozen=True)
class EngineConfig:
    engine: EngineKind = EngineKind(DEFAULT_ENGINE)
    bp: bool = False
    pi: bool = False
    so: bool = False
    rho: Fraction = DEFAULT_RHO
    timeout: Optional[float] = DEFAULT_TIMEOUT

    def __post_init__(self):
        if not isinstance(self.engine, EngineKind):
            try:
                object.__setattr__(self, "engine", EngineKind(self.engine))
            except ValueError:
                raise EngineError(f"unknown engine '{self.engine}'") from None
        object.__setattr__(self, "rho", _to_fraction(self.rho))
        if not 0 < self.rho < 1:
            raise EngineError(f"rho must lie strictly between 0 and 1, got {self.rho}")
        if self.so and not (self.bp or self.pi):
            raise EngineError("'so' restricts bp/pi and needs at least one of them")
        if self.timeout is not None and self.timeout <= 0:
            raise EngineError(f"timeout must be positive, got {self.timeout}")

    @property
    def label(self) -> str:
        flags = [f for f in ENHANCEMENT_FLAGS if getattr(self, f)]
        return "+".join([self.engine.value] + flags)

    @property
    def any_hints(self) -> bool:
        return self.bp or self.pi

    def with_timeout(self, timeout: Optional[float]) -> "EngineConfig":
        return replace(self, timeout=timeout)

    @classmethod
    def from_label(cls, label: str, **overrides) -> "EngineConfig":
        engine, *flags = label.strip().split("+")
        unknown = [f for f in flags if f not in ENHANCEMENT_FLAGS]
        if unknown:
            raise EngineError(f"unknown enhancement(s) {', '.join(unknown)} in '{label}'")
        values = {f: f in flags for f in ENHANCEMENT_FLAGS}
        values.update(overrides)
        return cls(engine=engine, **values)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "EngineConfig":
        """Build from a TOML table: engine, bp, pi, so, rho, timeout."""
        allowed = {"engine", "bp", "pi", "so", "rho", "timeout"}
        extra = set(data) - allowed
        if extra:
            raise EngineError(f"unknown configuration key(s): {', '.join(sorted(extra))}")
        values = dict(data)
        for flag in ENHANCEMENT_FLAGS:
            if flag in values and not isinstance(values[flag], bool):
                raise EngineError(f"'{flag}' must be true or false")
        if "timeout" in values and values["timeout"] is not None:
            values["timeout"] = float(values["timeout"])
        return cls(**values)
