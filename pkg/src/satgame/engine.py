"""The alternating edge-adding game, including the variant where the
maximising player may pass.

Two players take turns adding edges to an initially empty graph while it
stays free of the forbidden family; the game ends when the graph is
saturated. Prolonger maximises the final edge count, Shortener minimises it.
The score is the terminal edge count, so the standard game and the
pass-allowed variant are directly comparable (in the standard game it equals
the number of moves).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Protocol

from .families import (
    ForbiddenFamily,
    Move,
    creates_forbidden,
    family_name,
    has_legal_move,
    parse_family,
)
from .graph import Graph, from_graph6, norm_edge, to_graph6


class Player(Enum):
    PROLONGER = "P"
    SHORTENER = "S"

    @property
    def other(self) -> "Player":
        return Player.SHORTENER if self is Player.PROLONGER else Player.PROLONGER


class Variant(Enum):
    STANDARD = "standard"
    PROLONGER_MAY_PASS = "pass"


@dataclass(frozen=True)
class Action:
    edge: Optional[Move]  # None means pass

    @property
    def is_pass(self) -> bool:
        return self.edge is None

    @staticmethod
    def play(u: int, v: int) -> "Action":
        return Action(norm_edge(u, v))

    def __str__(self) -> str:
        return "pass" if self.edge is None else f"{self.edge[0]}-{self.edge[1]}"

    @staticmethod
    def parse(text: str) -> "Action":
        if text == "pass":
            return PASS
        u, _, v = text.partition("-")
        return Action.play(int(u), int(v))


PASS = Action(None)


@dataclass(frozen=True)
class GameState:
    graph: Graph
    to_move: Player
    family: ForbiddenFamily
    variant: Variant = Variant.STANDARD
    first_mover: Player = Player.PROLONGER


def initial_state(
    n: int,
    family: ForbiddenFamily,
    variant: Variant = Variant.STANDARD,
    first_mover: Player = Player.PROLONGER,
) -> GameState:
    return GameState(Graph.empty(n), first_mover, family, variant, first_mover)


class IllegalMoveError(Exception):
    pass


class IllegalStrategyActionError(IllegalMoveError):
    """A strategy returned an illegal action; carries the offending state."""

    def __init__(self, message: str, state: GameState, action: Action):
        super().__init__(message)
        self.state = state
        self.action = action


def is_terminal(state: GameState) -> bool:
    return not has_legal_move(state.graph, state.family)


def apply_action(state: GameState, action: Action) -> GameState:
    if action.is_pass:
        if state.variant is not Variant.PROLONGER_MAY_PASS:
            raise IllegalMoveError("pass is only allowed in the pass variant")
        if state.to_move is not Player.PROLONGER:
            raise IllegalMoveError("only the maximising player may pass")
        return replace(state, to_move=state.to_move.other)
    u, v = action.edge
    try:
        if creates_forbidden(state.graph, state.family, norm_edge(u, v)):
            raise IllegalMoveError(f"edge {u}-{v} would create a forbidden subgraph")
        graph = state.graph.add_edge(u, v)
    except ValueError as exc:  # self-loop, duplicate edge, vertex out of range
        raise IllegalMoveError(str(exc)) from exc
    return replace(state, graph=graph, to_move=state.to_move.other)


class StrategyLike(Protocol):
    name: str

    def __call__(self, state: GameState) -> Action: ...


@dataclass(frozen=True)
class GameRecord:
    n: int
    family: ForbiddenFamily
    variant: Variant
    first_mover: Player
    actions: tuple[tuple[Player, Action], ...]
    terminal: Graph
    score: int

    def replay(self) -> list[GameState]:
        """All states G_0..G_T; raises if any recorded action is illegal."""
        state = initial_state(self.n, self.family, self.variant, self.first_mover)
        states = [state]
        for player, action in self.actions:
            if player is not state.to_move:
                raise IllegalMoveError("recorded action out of turn")
            state = apply_action(state, action)
            states.append(state)
        return states

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "family": family_name(self.family),
                "variant": self.variant.value,
                "first": self.first_mover.value,
                "actions": [
                    {"player": p.value, "move": str(a)} for p, a in self.actions
                ],
                "score": self.score,
                "terminal_graph6": to_graph6(self.terminal),
            },
            separators=(",", ":"),
        )

    @staticmethod
    def from_json(line: str) -> "GameRecord":
        obj = json.loads(line)
        return GameRecord(
            n=obj["n"],
            family=parse_family(obj["family"]),
            variant=Variant(obj["variant"]),
            first_mover=Player(obj["first"]),
            actions=tuple(
                (Player(a["player"]), Action.parse(a["move"])) for a in obj["actions"]
            ),
            terminal=from_graph6(obj["terminal_graph6"]),
            score=obj["score"],
        )


def play(
    n: int,
    family: ForbiddenFamily,
    variant: Variant = Variant.STANDARD,
    first_mover: Player = Player.PROLONGER,
    strategy_p: Optional[StrategyLike] = None,
    strategy_s: Optional[StrategyLike] = None,
) -> GameRecord:
    """Run one full game and return its record.

    Each strategy must return a legal action for every non-terminal state it
    is handed; an illegal action aborts with the offending state attached.
    """
    if strategy_p is None or strategy_s is None:
        raise ValueError("both strategies are required")
    state = initial_state(n, family, variant, first_mover)
    actions: list[tuple[Player, Action]] = []
    while not is_terminal(state):
        strat = strategy_p if state.to_move is Player.PROLONGER else strategy_s
        action = strat(state)
        try:
            nxt = apply_action(state, action)
        except IllegalMoveError as exc:
            raise IllegalStrategyActionError(
                f"strategy {strat.name!r} returned illegal action {action} "
                f"on graph {to_graph6(state.graph)} ({state.to_move.value} to move): {exc}",
                state,
                action,
            ) from exc
        actions.append((state.to_move, action))
        state = nxt
    return GameRecord(
        n=n,
        family=family,
        variant=variant,
        first_mover=first_mover,
        actions=tuple(actions),
        terminal=state.graph,
        score=state.graph.m,
    )
