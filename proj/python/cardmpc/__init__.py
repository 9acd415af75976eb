"""Card-based multi-party computation engine.

Simulates three card-matrix protocols (equality, set-size, set), checks them
exhaustively against brute-force oracles, and audits transcript
indistinguishability over the full randomness universe.
"""

from cardmpc._core import (
    DEFAULT_BUDGET,
    PROTOCOLS,
    BudgetExceeded,
    check_security,
    check_security_sampled,
    cost_model,
    decode,
    encode,
    oracle_equality,
    oracle_set,
    oracle_set_size,
    run,
    transcript_distribution,
    verify_correctness,
)

__all__ = [
    "DEFAULT_BUDGET",
    "PROTOCOLS",
    "BudgetExceeded",
    "check_security",
    "check_security_sampled",
    "cost_model",
    "decode",
    "encode",
    "oracle_equality",
    "oracle_set",
    "oracle_set_size",
    "run",
    "transcript_distribution",
    "verify_correctness",
]
