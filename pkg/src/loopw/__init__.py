"""Loop-omega: parser, type checker and small-step interpreter with explicit aliasing."""

from .driver import full_eval, initial_config, many_steps, report_top_level, run_program, trace
from .parser import ParseError, parse_program, read_program
from .typer import TypeCheckError, check_program

__all__ = [
    "ParseError", "TypeCheckError", "check_program", "full_eval", "initial_config", "many_steps",
    "parse_program", "read_program", "report_top_level", "run_program", "trace",
]
