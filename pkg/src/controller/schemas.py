"""
Pydantic schemas for command-line runs
A RunConfig is validated completely before any suite starts
"""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, field_validator, model_validator

from src.algebra.ham_vec import HamElement
from src.algebra.ring import resolve_ring
from src.utils.config import (
    DEFAULT_BOUNDS,
    DEGENERATION_SUITES,
    H2_ACTIONS,
    LEFSCHETZ_ACTIONS,
    RELATION_SUITES,
    W_SUITES,
    default_jobs,
    default_max_degree,
)
from src.utils.utils import parse_rational


class Command(str, Enum):
    """Top-level subcommands"""
    RELATIONS = "check-relations"
    W = "check-w"
    H2 = "h2"
    DEGENERATE = "degenerate"
    LEFSCHETZ = "lefschetz"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


SUITES_BY_COMMAND = {
    Command.RELATIONS: RELATION_SUITES,
    Command.W: W_SUITES,
    Command.H2: H2_ACTIONS,
    Command.DEGENERATE: DEGENERATION_SUITES,
    Command.LEFSCHETZ: LEFSCHETZ_ACTIONS,
}

NEEDS_INSTANCE = {Command.RELATIONS, Command.W, Command.DEGENERATE}


class RunConfig(BaseModel):
    """One CLI invocation: command, suite selector, bounds and output options"""
    command: Command
    suite: str
    instance: Optional[str] = None
    max_degree: int = default_max_degree()
    max_index: int = DEFAULT_BOUNDS["max_index"]
    max_length: int = DEFAULT_BOUNDS["max_length"]
    order: int = DEFAULT_BOUNDS["order"]
    window: int = DEFAULT_BOUNDS["window"]
    index_cap: int = DEFAULT_BOUNDS["index_cap"]
    degree_cap: int = DEFAULT_BOUNDS["degree_cap"]
    interp_max: int = DEFAULT_BOUNDS["interp_max"]
    r: str = "1"
    chi: str = "0"
    seed: int = 0
    count: int = 50
    jobs: int = default_jobs()
    format: OutputFormat = OutputFormat.TEXT
    path: Optional[str] = None
    operands: List[str] = []

    @field_validator(
        "max_degree", "max_index", "max_length", "order", "window",
        "index_cap", "degree_cap", "interp_max", "count", "jobs",
    )
    @classmethod
    def positive_bound(cls, value: int, info) -> int:
        if value <= 0:
            raise ValueError(f"{info.field_name} must be positive, got {value}")
        return value

    @field_validator("seed")
    @classmethod
    def non_negative_seed(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f"seed must be >= 0, got {value}")
        return value

    @field_validator("r", "chi")
    @classmethod
    def rational_text(cls, value: str, info) -> str:
        parsed = parse_rational(value)
        if info.field_name == "r" and parsed == 0:
            raise ValueError("r must be nonzero")
        return str(parsed)

    @model_validator(mode="after")
    def check_selection(self) -> "RunConfig":
        allowed = SUITES_BY_COMMAND[self.command]
        if self.suite not in allowed:
            raise ValueError(f"{self.command.value} has no suite {self.suite!r}; choose from {allowed}")
        if self.command in NEEDS_INSTANCE:
            if not self.instance:
                raise ValueError(f"{self.command.value} needs --instance")
            try:
                resolve_ring(self.instance)
            except OSError as e:
                raise ValueError(f"cannot read instance {self.instance!r}: {e}") from e
        if self.command == Command.LEFSCHETZ and self.suite != "random" and not self.path:
            raise ValueError(f"lefschetz {self.suite} needs an input file")
        if self.command == Command.H2 and self.suite == "bracket":
            if len(self.operands) != 2:
                raise ValueError(f"h2 bracket takes two operands, got {len(self.operands)}")
            for text in self.operands:
                HamElement.parse(text)
        return self
