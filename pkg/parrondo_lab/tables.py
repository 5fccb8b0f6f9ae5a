"""Tabular output in the three supported return types.

Reports are built as lists of flat dictionaries and converted at the end:

- ``"json"``: the list is returned unchanged;
- ``"pandas"``: a ``pandas.DataFrame``;
- ``"polars"``: a ``polars.DataFrame``.
"""
import logging
from typing import Any, List

import pandas as pd
import polars as pl

logger = logging.getLogger(__name__)

RETURN_TYPES = ("json", "pandas", "polars")


def validate_return_type(return_type: str) -> str:
    """Return ``return_type`` unchanged or raise ValueError."""
    if return_type not in RETURN_TYPES:
        raise ValueError(
            f"Invalid return_type: {return_type}. "
            f"Must be one of {', '.join(RETURN_TYPES)}"
        )
    return return_type


def format_records(records: List[dict], return_type: str = "json") -> Any:
    """Convert a list of record dictionaries to ``return_type``.

    Empty record lists give empty frames for pandas and polars.
    """
    validate_return_type(return_type)
    logger.debug("Formatting %d records as %s", len(records), return_type)
    if return_type == "json":
        return records
    elif return_type == "pandas":
        return pd.DataFrame(records)
    return pl.DataFrame(records)
