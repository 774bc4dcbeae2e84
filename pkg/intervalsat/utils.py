"""
Utility functions for the interval satisfiability engine
"""

import logging
import sys
from fractions import Fraction
from typing import Optional, Union


class InternalInconsistencyError(RuntimeError):
    """A result failed its own verification (witness or model check)"""


def setup_logger(log_level: int = logging.INFO, log_file: Optional[str] = None):
    """
    Setup logging configuration

    Args:
        log_level: Logging level
        log_file: Optional log file path
    """
    root_log = logging.getLogger()
    root_log.setLevel(log_level)

    # Clear existing handlers
    root_log.handlers.clear()

    # Console handler; stdout is reserved for command results
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_formatter = logging.Formatter(
        "[%(levelname)s] %(message)s"
    )
    console_handler.setFormatter(console_formatter)
    root_log.addHandler(console_handler)

    # File handler (if specified)
    if log_file:
        file_handler = logging.FileHandler(log_file, mode="a", encoding="utf-8")
        file_handler.setLevel(log_level)
        file_formatter = logging.Formatter(
            "[%(asctime)s][%(levelname)s][%(funcName)s] %(message)s"
        )
        file_handler.setFormatter(file_formatter)
        root_log.addHandler(file_handler)


def to_fraction(value: Union[Fraction, int, str]) -> Fraction:
    """
    Convert a value to an exact rational

    Strings may be integers, fractions ("3/12") or decimals ("42.3");
    decimals are read exactly. Floats are rejected since they are not exact.

    Args:
        value: Value to convert

    Returns:
        Fraction equal to the value
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rational numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational number: {value!r}") from e
    if isinstance(value, float):
        raise ValueError(f"float {value!r} is not exact; pass a string or Fraction")
    # Decimal and other numbers.Rational implementations
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """
    Format a rational as p/q (integers without denominator)

    Args:
        value: Rational value

    Returns:
        Text such as "5", "-1/4"
    """
    return str(Fraction(value))
