"""tempolake: temporal data-lake discovery.

Groups lake tables into version families, infers each family's
chronological lineage and inter-version change logs, indexes the
result, and answers discovery queries that pick both a dataset and a
version, reconstructing non-materialized versions by time travel.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import TempolakeError  # noqa: F401
from .tables import Cell, ColType, ColumnRef, Table, Timestamp, load_table  # noqa: F401
