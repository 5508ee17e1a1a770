"""Ramanujan primes: exact tables, explicit bounds and verification campaigns."""

from .bounds import BoundId, eval_bound, lemma51_params
from .errors import (
    DependencyError,
    DomainError,
    OutOfRangeError,
    PreconditionError,
    RamanujanPiError,
    SieveResourceError,
    TableFormatError,
)
from .prime_core import PrimeStore, SieveConfig, nth_prime, pi, sieve, sieve_to
from .ramanujan import RamanujanTable, build_table, compute_table, load_table, save_table

__version__ = "0.1.0"

__all__ = [
    "BoundId",
    "DependencyError",
    "DomainError",
    "OutOfRangeError",
    "PreconditionError",
    "PrimeStore",
    "RamanujanPiError",
    "RamanujanTable",
    "SieveConfig",
    "SieveResourceError",
    "TableFormatError",
    "build_table",
    "compute_table",
    "eval_bound",
    "lemma51_params",
    "load_table",
    "nth_prime",
    "pi",
    "save_table",
    "sieve",
    "sieve_to",
]
