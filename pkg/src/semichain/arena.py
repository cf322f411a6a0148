"""Referee, game loop, transcripts and interactive sessions.

The referee owns legality: every Present is re-validated against the
semi-order axioms, the width budget and the mode, and every Assign against
chain validity, no matter who produced the move.  The transcript is the
single source of truth; diagnostics replay transcripts rather than trusting
live state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    InvalidChain,
    ModeMismatch,
    NotMaximal,
    NotYourTurn,
    OrderError,
    PointCapExceeded,
    SemichainError,
    UnknownStrategy,
    WidthExceeded,
)
from .order import SemiOrder
from .partition import ALGORITHMS, ChainPartition
from .spoiler import SPOILER_MODES, forcing_plan, game_value, make_spoiler

MODES = ("up_growing", "general")


@dataclass(frozen=True)
class GameConfig:
    mode: str
    w: int
    spoiler: str
    algorithm: str
    seed: int = 0
    max_points: Optional[int] = None
    n_points: Optional[int] = None  # random spoiler length; omitted when None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.w < 1:
            raise ValueError("width budget must be >= 1")

    def point_cap(self) -> int:
        if self.max_points is not None:
            return self.max_points
        plan = forcing_plan(self.w)
        k = len(plan.quotas) - 2
        cap = 10 * self.w * (k + 2) + 2 * self.w
        if self.n_points is not None:
            cap = max(cap, self.n_points)
        return cap

    def to_json_obj(self) -> dict:
        obj = {
            "mode": self.mode,
            "w": self.w,
            "spoiler": self.spoiler,
            "algorithm": self.algorithm,
            "seed": self.seed,
        }
        if self.n_points is not None:
            obj["n_points"] = self.n_points
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "GameConfig":
        return cls(
            mode=obj["mode"],
            w=obj["w"],
            spoiler=obj["spoiler"],
            algorithm=obj["algorithm"],
            seed=obj.get("seed", 0),
            n_points=obj.get("n_points"),
        )


@dataclass(frozen=True)
class PresentEvent:
    id: int
    down: tuple[int, ...]
    up: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {"present": {"id": self.id, "down": list(self.down), "up": list(self.up)}}


@dataclass(frozen=True)
class AssignEvent:
    id: int
    chain: int

    def to_json_obj(self) -> dict:
        return {"assign": {"id": self.id, "chain": self.chain}}


Event = PresentEvent | AssignEvent

OUTCOMES = ("completed", "spoiler_fault", "algorithm_fault")


@dataclass
class Transcript:
    config: GameConfig
    events: list[Event] = field(default_factory=list)
    chains_used: int = 0
    outcome: str = "completed"

    def to_json_obj(self) -> dict:
        return {
            "config": self.config.to_json_obj(),
            "events": [e.to_json_obj() for e in self.events],
            "chains_used": self.chains_used,
            "outcome": self.outcome,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Transcript":
        events: list[Event] = []
        for entry in obj["events"]:
            if "present" in entry:
                p = entry["present"]
                events.append(
                    PresentEvent(p["id"], tuple(p["down"]), tuple(p["up"]))
                )
            elif "assign" in entry:
                a = entry["assign"]
                events.append(AssignEvent(a["id"], a["chain"]))
            else:
                raise ValueError(f"unknown event {entry!r}")
        return cls(
            config=GameConfig.from_json_obj(obj["config"]),
            events=events,
            chains_used=obj["chains_used"],
            outcome=obj["outcome"],
        )

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        return cls.from_json_obj(json.loads(text))

    @classmethod
    def load(cls, path: str) -> "Transcript":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.loads(fh.read())


@dataclass(frozen=True)
class Verdict:
    ok: bool
    fault: Optional[str] = None  # spoiler_fault | algorithm_fault | mismatch
    event_index: Optional[int] = None
    message: str = ""


def _check_config(config: GameConfig) -> None:
    if config.spoiler not in SPOILER_MODES:
        raise UnknownStrategy(f"unknown spoiler {config.spoiler!r}")
    if config.algorithm not in ALGORITHMS:
        raise UnknownStrategy(f"unknown algorithm {config.algorithm!r}")
    if config.mode not in SPOILER_MODES[config.spoiler]:
        raise ModeMismatch(
            f"spoiler {config.spoiler!r} does not play mode {config.mode!r}"
        )
    if config.mode not in ALGORITHMS[config.algorithm][1]:
        raise ModeMismatch(
            f"algorithm {config.algorithm!r} does not play mode {config.mode!r}"
        )


class GameSession:
    """One game in progress; either seat may be taken by a human.

    ``next_actor`` alternates "spoiler" -> "algorithm" -> ... until "done".
    Automated seats advance via :meth:`step`; human moves come in through
    :meth:`human_present` / :meth:`human_assign` and are validated by the
    same referee path.  Rejected moves leave the session unchanged.
    """

    def __init__(self, config: GameConfig, human_role: str = "none"):
        if human_role not in ("none", "algorithm", "spoiler"):
            raise ValueError(f"unknown human role {human_role!r}")
        _check_config(config)
        self.config = config
        self.human_role = human_role
        self.order = SemiOrder()
        self.partition = ChainPartition()
        self.events: list[Event] = []
        self.outcome: Optional[str] = None
        self.next_actor = "spoiler"
        self.pending_point: Optional[int] = None
        self.last_assignment: Optional[tuple[int, int]] = None
        self.bound = game_value(config.w)
        self._spoiler = (
            None
            if human_role == "spoiler"
            else make_spoiler(
                config.spoiler, config.mode, config.w, config.seed, config.n_points
            )
        )
        self._algorithm = ALGORITHMS[config.algorithm][0]
        self._cap = config.point_cap()

    # -- shared referee paths ---------------------------------------------

    @property
    def chains_used(self) -> int:
        return self.partition.chain_count

    def _apply_present(self, down, up) -> int:
        if self.outcome is not None:
            raise NotYourTurn("game is over")
        if self.order.size >= self._cap:
            raise PointCapExceeded(f"point cap {self._cap} reached")
        if self.config.mode == "up_growing" and up:
            raise NotMaximal("up-growing play requires an empty up-set")
        pid = self.order.add_point(down, up)
        if self.order.width() > self.config.w:
            self.order.remove_last()
            raise WidthExceeded(
                f"width budget {self.config.w} exceeded"
            )
        self.events.append(PresentEvent(pid, tuple(sorted(down)), tuple(sorted(up))))
        self.pending_point = pid
        self.next_actor = "algorithm"
        return pid

    def _apply_assign(self, choice: Optional[int]) -> int:
        if self.outcome is not None or self.pending_point is None:
            raise NotYourTurn("no point awaits assignment")
        p = self.pending_point
        chain = self.partition.assign(self.order, p, choice)
        self.events.append(AssignEvent(p, chain))
        self.last_assignment = (p, chain)
        self.pending_point = None
        self.next_actor = "spoiler"
        return chain

    def _finish(self, outcome: str) -> None:
        self.outcome = outcome
        self.next_actor = "done"

    # -- automated play -----------------------------------------------------

    def step(self) -> bool:
        """Advance one automated half-move; returns False when nothing moved."""
        if self.outcome is not None:
            return False
        if self.next_actor == "spoiler":
            if self.human_role == "spoiler":
                raise NotYourTurn("waiting for the human spoiler")
            move = self._spoiler.next(self.last_assignment)
            if move is None:
                self._finish("completed")
                return True
            try:
                self._apply_present(move.down, move.up)
            except (OrderError, WidthExceeded, NotMaximal):
                self._finish("spoiler_fault")
            return True
        if self.next_actor == "algorithm":
            if self.human_role == "algorithm":
                raise NotYourTurn("waiting for the human algorithm")
            choice = self._algorithm(
                self.order, self.partition, self.pending_point, self.config.seed
            )
            try:
                self._apply_assign(choice)
            except InvalidChain:
                self._finish("algorithm_fault")
            return True
        return False

    # -- human play -----------------------------------------------------------

    def human_present(self, down, up=()) -> int:
        if self.human_role != "spoiler" or self.next_actor != "spoiler":
            raise NotYourTurn("it is not the human spoiler's turn")
        return self._apply_present(down, up)

    def human_assign(self, choice: Optional[int]) -> int:
        if self.human_role != "algorithm" or self.next_actor != "algorithm":
            raise NotYourTurn("it is not the human algorithm's turn")
        return self._apply_assign(choice)

    def stop(self) -> None:
        """Explicit early stop; the game counts as completed."""
        if self.outcome is not None:
            raise NotYourTurn("game is over")
        if self.pending_point is not None:
            raise NotYourTurn("a point awaits assignment")
        self._finish("completed")

    # -- results ----------------------------------------------------------------

    def transcript(self) -> Transcript:
        return Transcript(
            config=self.config,
            events=list(self.events),
            chains_used=self.partition.chain_count,
            outcome=self.outcome or "completed",
        )


def run_game(config: GameConfig) -> Transcript:
    """Play the configured strategies against each other to completion."""
    _check_config(config)
    session = GameSession(config)
    while session.outcome is None:
        session.step()
    return session.transcript()


def replay(transcript: Transcript) -> Verdict:
    """Re-validate every event of a transcript; never raises on bad data."""
    order = SemiOrder()
    partition = ChainPartition()
    pending: Optional[int] = None
    cfg = transcript.config
    for idx, event in enumerate(transcript.events):
        if isinstance(event, PresentEvent):
            if pending is not None:
                return Verdict(False, "spoiler_fault", idx, "present out of turn")
            if event.id != order.size:
                return Verdict(False, "spoiler_fault", idx, "non-dense point id")
            if cfg.mode == "up_growing" and event.up:
                return Verdict(
                    False, "spoiler_fault", idx, "non-maximal point in up-growing play"
                )
            try:
                order.add_point(event.down, event.up)
            except (OrderError, ValueError) as exc:
                return Verdict(False, "spoiler_fault", idx, str(exc))
            if order.width() > cfg.w:
                return Verdict(False, "spoiler_fault", idx, "width budget exceeded")
            pending = event.id
        else:
            if pending is None or event.id != pending:
                return Verdict(False, "algorithm_fault", idx, "assign out of turn")
            choice = event.chain if event.chain < partition.chain_count else None
            if choice is None and event.chain != partition.chain_count:
                return Verdict(False, "algorithm_fault", idx, "non-dense chain id")
            try:
                partition.assign(order, event.id, choice)
            except InvalidChain as exc:
                return Verdict(False, "algorithm_fault", idx, str(exc))
            pending = None
    if pending is not None:
        return Verdict(False, "algorithm_fault", len(transcript.events), "unassigned point")
    if partition.chain_count != transcript.chains_used:
        return Verdict(
            False,
            "mismatch",
            None,
            f"chains_used {transcript.chains_used} != replayed {partition.chain_count}",
        )
    return Verdict(True)


def materialize(transcript: Transcript) -> tuple[SemiOrder, ChainPartition]:
    """Rebuild final order and partition from a transcript, trusting it."""
    order = SemiOrder()
    partition = ChainPartition()
    for event in transcript.events:
        if isinstance(event, PresentEvent):
            order.add_point(event.down, event.up)
        else:
            choice = event.chain if event.chain < partition.chain_count else None
            partition.assign(order, event.id, choice)
    return order, partition
