"""On-line chain partition game on semi-orders: engine, adversaries and
verification workbench."""

from .backend import BACKEND
from .order import IntervalRepresentation, SemiOrder
from .partition import ALGORITHMS, ChainPartition, NEW_CHAIN
from .spoiler import ForcingPlan, forcing_plan, game_value
from .arena import GameConfig, GameSession, Transcript, Verdict, replay, run_game

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BACKEND",
    "ChainPartition",
    "ForcingPlan",
    "GameConfig",
    "GameSession",
    "IntervalRepresentation",
    "NEW_CHAIN",
    "SemiOrder",
    "Transcript",
    "Verdict",
    "forcing_plan",
    "game_value",
    "replay",
    "run_game",
]
