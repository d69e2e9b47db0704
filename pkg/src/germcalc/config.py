"""Run configuration shared by the report pipeline, CLI and service."""

from __future__ import annotations

from dataclasses import dataclass


T_ROUTES = ("auto", "source", "target", "both")
FORMATS = ("json", "table")


@dataclass(frozen=True)
class Config:
    """Knobs for one computation run.

    jet_bound: initial jet/degree bound for presentations and standard
        bases; None picks the per-germ default.
    max_jet_bound: hard ceiling for all retry protocols.
    t_route: which triple-point route(s) to compute; "auto" means both
        for mono-germs and target for multi-germs.
    alt_order: recompute every colength under a second admissible local
        ordering (reversed variable sequence); used by robustness checks.
    """

    jet_bound: int | None = None
    max_jet_bound: int = 64
    t_route: str = "auto"
    alt_order: bool = False

    def __post_init__(self):
        if self.t_route not in T_ROUTES:
            raise ValueError(f"unknown t_route {self.t_route!r}")
        if self.jet_bound is not None and self.jet_bound > self.max_jet_bound:
            raise ValueError("jet_bound exceeds max_jet_bound")
