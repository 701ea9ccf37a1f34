"""``loopw check | run | trace`` over ``.lw`` source files.

Exit codes: 0 ok, 1 type error, 2 stuck, 3 parse error, 4 I/O error, 5 step budget exhausted.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass

import click

from .driver import DEFAULT_BUDGET, Outcome, RunReport, initial_config, full_eval, report_top_level
from .parser import ParseError, read_program
from .pretty import pp_store, pp_value
from .stepper import describe
from .syntax import UNINIT, BoolV, IntV
from .typer import TypeCheckError, check_program

EXIT_OK, EXIT_TYPE, EXIT_STUCK, EXIT_PARSE, EXIT_IO, EXIT_BUDGET = range(6)


@dataclass
class CliConfig:
    subcommand: str
    path: str
    max_steps: int = DEFAULT_BUDGET
    format: str = "text"
    show_rules: bool = False


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def _fail(code: int, message: str):
    click.echo(message, err=True)
    raise _Exit(code)


def _load(path: str, typecheck: bool = True):
    try:
        program = read_program(path)
    except OSError as err:
        _fail(EXIT_IO, f"{path}: {err.strerror or err}")
    except UnicodeDecodeError as err:
        _fail(EXIT_IO, f"{path}: not valid UTF-8 ({err.reason})")
    except ParseError as err:
        _fail(EXIT_PARSE, f"parse error: {err}")
    if typecheck:
        try:
            check_program(program)
        except TypeCheckError as err:
            _fail(EXIT_TYPE, f"{path}:{err}")
    return program


def json_value(v):
    match v:
        case IntV(n):
            return n
        case BoolV(b):
            return b
        case _ if v is UNINIT:
            return None
    return pp_value(v)


def text_value(v) -> str:
    return str(v.n) if isinstance(v, IntV) else pp_value(v)


def json_store(mu) -> list[dict]:
    return [{"name": x, "value": json_value(v)} for x, v in mu]


def _stuck_exit(report: RunReport, path: str):
    err = report.stuck
    lines = [f"{path}: stuck after {report.steps_taken} steps: [{err.rule}] {err.reason}",
             f"  command: {describe(err.node)}",
             f"  store:   {pp_store(err.store)}"]
    _fail(EXIT_STUCK, "\n".join(lines))


def _budget_exit(report: RunReport, path: str):
    _fail(EXIT_BUDGET, f"{path}: step budget of {report.steps_taken} exhausted before termination")


def cmd_check(cfg: CliConfig) -> int:
    _load(cfg.path)
    click.echo("ok")
    return EXIT_OK


def cmd_run(cfg: CliConfig) -> int:
    program = _load(cfg.path)
    report = full_eval(initial_config(program), cfg.max_steps)
    if report.outcome is Outcome.STUCK:
        _stuck_exit(report, cfg.path)
    if report.outcome is Outcome.BUDGET_EXHAUSTED:
        _budget_exit(report, cfg.path)
    results = report_top_level(report)
    if cfg.format == "json":
        click.echo(json.dumps([{"name": x, "value": json_value(v)} for x, v in results]))
    else:
        for x, v in results:
            click.echo(f"{x} = {text_value(v)}")
    return EXIT_OK


def cmd_trace(cfg: CliConfig) -> int:
    program = _load(cfg.path)
    report = full_eval(initial_config(program), cfg.max_steps, record=True)
    if cfg.format == "json":
        click.echo(json.dumps([
            {"step": e.index, "rule": e.lineage if cfg.show_rules else str(e.rules[-1]),
             "command": describe(e.config.cmd), "store": json_store(e.config.store)}
            for e in report.entries], indent=1))
    else:
        for e in report.entries:
            rule = e.lineage if cfg.show_rules else str(e.rules[-1])
            click.echo(f"step {e.index} [{rule}]: {describe(e.config.cmd)} | {pp_store(e.config.store)}")
    if report.outcome is Outcome.STUCK:
        _stuck_exit(report, cfg.path)
    if report.outcome is Outcome.BUDGET_EXHAUSTED and cfg.max_steps > 0:
        _budget_exit(report, cfg.path)
    return EXIT_OK


# ---------------------------------------------------------------- click surface

_max_steps = click.option(
    "--max-steps", type=click.IntRange(min=0), default=DEFAULT_BUDGET, envvar="LOOPW_MAX_STEPS",
    show_default=True, help="Step budget (also read from LOOPW_MAX_STEPS).")
_format = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                       show_default=True)
_path = click.argument("path", type=click.Path(dir_okay=False))


def _dispatch(fn, cfg: CliConfig):
    try:
        code = fn(cfg)
    except _Exit as e:
        code = e.code
    sys.exit(code)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Type checker and small-step interpreter for Loop-omega programs."""


@main.command()
@_path
def check(path):
    """Parse and type check PATH."""
    _dispatch(cmd_check, CliConfig("check", path))


@main.command()
@_path
@_max_steps
@_format
def run(path, max_steps, fmt):
    """Run PATH and print the final values of its top-level declarations."""
    _dispatch(cmd_run, CliConfig("run", path, max_steps, fmt))


@main.command()
@_path
@_max_steps
@_format
@click.option("--show-rules", is_flag=True, help="Print the full derivation path of each step.")
def trace(path, max_steps, fmt, show_rules):
    """Print each configuration of the run of PATH."""
    _dispatch(cmd_trace, CliConfig("trace", path, max_steps, fmt, show_rules))


if __name__ == "__main__":
    main()
