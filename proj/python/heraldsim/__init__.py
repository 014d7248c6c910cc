from ._heraldsim import (
    channel_transmission,
    link_budget,
    qndm_probabilities,
    rate_vs_distance,
    sweep_logical_error,
    time_budget,
)

__all__ = [
    "channel_transmission",
    "link_budget",
    "qndm_probabilities",
    "rate_vs_distance",
    "sweep_logical_error",
    "time_budget",
]
