"""Generic trigraded spectral-sequence engine."""

from .definitions import Definition, load_definition, parse_definition
from .models import (
    CellCounts,
    DifferentialRule,
    DifferentialShift,
    FactorImage,
    LogEntry,
    NoRoomCandidate,
    Page,
    SpectralRun,
    SpectralSequence,
    TrigradedClass,
)
from .runner import differential_log, initial_page, leibniz_extend, no_room_report, run, turn_page

__all__ = [
    "CellCounts",
    "Definition",
    "DifferentialRule",
    "DifferentialShift",
    "FactorImage",
    "LogEntry",
    "NoRoomCandidate",
    "Page",
    "SpectralRun",
    "SpectralSequence",
    "TrigradedClass",
    "differential_log",
    "initial_page",
    "leibniz_extend",
    "load_definition",
    "no_room_report",
    "parse_definition",
    "run",
    "turn_page",
]
