"""TB tridiagonal systems and Leonard triples in exact arithmetic.

Documents are plain dicts following the JSON schemas of the ``tbtd`` CLI.
"""

from ._core import TbtdError, build, classify, generate, reduce_word, triple, triple_checks, verify

__all__ = ["TbtdError", "build", "classify", "generate", "reduce_word", "triple", "triple_checks", "verify", "all_passed"]


def all_passed(reports):
    """True when every report in a list returned by verify or triple_checks passed."""
    return all(r["passed"] for r in reports)
