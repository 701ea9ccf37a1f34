"""Iterated evaluation: k-step configurations, traces, full runs and result reporting."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .binding import FreshSupply
from .stepper import Pop, Rule, Step, StuckError, step
from .syntax import Config, Declare, Null, Store

DEFAULT_BUDGET = 1_000_000


class Outcome(enum.Enum):
    CONVERGED = "Converged"
    BUDGET_EXHAUSTED = "StepBudgetExhausted"
    STUCK = "Stuck"

    def __str__(self):
        return self.value


@dataclass
class TraceEntry:
    """One recorded step: the configuration reached and the rules that produced it."""
    index: int
    rules: tuple[Rule, ...]
    config: Config

    @property
    def lineage(self) -> str:
        out = str(self.rules[-1])
        for r in reversed(self.rules[:-1]):
            out = f"{r}({out})"
        return out


@dataclass
class RunReport:
    outcome: Outcome
    steps_taken: int
    final: Config
    popped: list[Pop] = field(default_factory=list)
    rules_fired: list[Rule] = field(default_factory=list)
    stuck: Optional[StuckError] = None
    entries: list[TraceEntry] = field(default_factory=list)

    @property
    def final_store(self) -> Store:
        return self.final.store


def initial_config(program) -> Config:
    """A program is a declaration; it runs as ``declare d`` from the empty store."""
    return Config(Declare(program), ())


def many_steps(cfg: Config, k: int, supply: Optional[FreshSupply] = None) -> Config:
    """The configuration reached after ``k`` steps; ``null`` absorbs the remainder.

    A stuck step raises :class:`StuckError` with ``steps`` set to the steps consumed.
    """
    supply = supply or FreshSupply()
    for i in range(k):
        try:
            s = step(cfg, supply)
        except StuckError as err:
            err.steps = i
            raise
        if s is None:
            return cfg
        cfg = Config(s.node, s.store)
    return cfg


def trace(cfg: Config, k: int, supply: Optional[FreshSupply] = None) -> list[Config]:
    """Successor configurations for up to ``k`` steps, stopping at null or a stuck state."""
    return [e.config for e in _run(cfg, k, supply or FreshSupply(), True)[0].entries]


def full_eval(cfg: Config, budget: int = DEFAULT_BUDGET, record: bool = False,
              supply: Optional[FreshSupply] = None) -> RunReport:
    report, _ = _run(cfg, budget, supply or FreshSupply(), record)
    return report


def _run(cfg, budget, supply, record):
    report = RunReport(Outcome.BUDGET_EXHAUSTED, 0, cfg)
    for i in range(budget + 1):
        if isinstance(cfg.cmd, Null):
            report.outcome = Outcome.CONVERGED
            break
        if i == budget:
            break
        try:
            s: Optional[Step] = step(cfg, supply)
        except StuckError as err:
            report.outcome, report.stuck = Outcome.STUCK, err
            break
        cfg = Config(s.node, s.store)
        report.steps_taken += 1
        report.rules_fired.append(s.rules[-1])
        report.popped.extend(s.pops)
        if record:
            report.entries.append(TraceEntry(i + 1, s.rules, cfg))
    report.final = cfg
    return report, supply


def report_top_level(report: RunReport) -> list[tuple[str, object]]:
    """Final values of the program's own declarations, in declaration order.

    Inner declarations are released first, so the depth-0 pops arrive in
    reverse declaration order.
    """
    return [(p.name, p.value) for p in reversed(report.popped) if p.depth == 0]


def run_program(program, budget: int = DEFAULT_BUDGET, record: bool = False) -> RunReport:
    return full_eval(initial_config(program), budget, record)
