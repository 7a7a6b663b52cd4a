"""Brute-force oracles, finite searches, suites and reports."""

from .brute import MAX_BRUTE_COORDINATES, TooManyCoordinates, brute_measure, brute_meets_or_avoids
from .report import ExperimentReport, Verdict, default_report_path, read_report, write_report
from .search import SearchBoundError, SearchResult, brute_search_reduction
from .suites import SUITES, SuiteConfigError, UnknownSuite, replay, run_suite, suite_defaults

__all__ = [
    "MAX_BRUTE_COORDINATES",
    "TooManyCoordinates",
    "brute_measure",
    "brute_meets_or_avoids",
    "ExperimentReport",
    "Verdict",
    "default_report_path",
    "read_report",
    "write_report",
    "SearchBoundError",
    "SearchResult",
    "brute_search_reduction",
    "SUITES",
    "SuiteConfigError",
    "UnknownSuite",
    "replay",
    "run_suite",
    "suite_defaults",
]
