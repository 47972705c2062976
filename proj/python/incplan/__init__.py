"""Incremental motion planning with independent per-query planner calls.

The heavy lifting lives in the compiled extension ``incplan._core``; this
package re-exports the user-facing pieces.
"""

from ._core import (
    World,
    __version__,
    oracle_shortest_path,
    plan_fully_sensed,
    planner_ids,
    run_trial,
)

__all__ = [
    "World",
    "__version__",
    "oracle_shortest_path",
    "plan_fully_sensed",
    "planner_ids",
    "run_trial",
]
