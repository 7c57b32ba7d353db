"""Suite running and report formatting."""

from .battery import random_form, random_polynomial
from .definitions import DefinitionResolver, space_from_definition
from .reporter import SuiteReporter, load_report
from .runner import SuiteRunner
from .suites import SUITES, SuiteContext, run_suite

__all__ = [
    "DefinitionResolver",
    "space_from_definition",
    "random_form",
    "random_polynomial",
    "SuiteContext",
    "SUITES",
    "run_suite",
    "SuiteRunner",
    "SuiteReporter",
    "load_report",
]
