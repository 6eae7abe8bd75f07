"""Per-state grammar of legal utterances.

When the single-utterance language is small it is enumerated exactly;
when a PARTIAL_EVALUATOR makes the expansion exceed the limit, the
grammar degrades to per-slot token pools that over-approximate the
language, and the utterance validator catches anything illegal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .errors import InterpreterTurnExhausted
from .records import View
from .staging import (
    DialogState,
    TurnContext,
    apply_token,
    legal_first_slots,
    normalize,
    unfilled_slots,
)
from .utterance import RESERVED

EXACT = "EXACT"
OVER_APPROXIMATION = "OVER_APPROXIMATION"


@dataclass(frozen=True)
class GrammarDoc:
    version: int
    mode: str
    reserved: tuple[str, ...]
    sequences: tuple[tuple[str, ...], ...]
    token_pool: dict[str, tuple[str, ...]]

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "mode": self.mode,
            "reserved": list(self.reserved),
            "sequences": [list(seq) for seq in self.sequences],
            "token_pool": {slot: list(values) for slot, values in self.token_pool.items()},
        }


def _utterance_shapes(state: DialogState, weights: dict[str, int], limit: int) -> list[tuple[str, ...]] | None:
    """All slot sequences speakable in one utterance, or None once the
    value-expanded total would exceed the limit."""
    shapes: list[tuple[str, ...]] = []
    total = 0

    def dfs(current: DialogState, turn: TurnContext, shape: tuple[str, ...], weight: int) -> bool:
        nonlocal total
        for slot in legal_first_slots(current):
            forked = turn.fork()
            try:
                after = apply_token(current, forked, slot, "")
            except InterpreterTurnExhausted:
                continue
            new_shape = shape + (slot,)
            new_weight = weight * weights[slot]
            total += new_weight
            if total > limit:
                return False
            shapes.append(new_shape)
            if not dfs(after, forked, new_shape, new_weight):
                return False
        return True

    if not dfs(state, TurnContext(), (), 1):
        return None
    return shapes


def emit_grammar(state: DialogState, view: View, limit: int = 512, version: int = 1) -> GrammarDoc:
    """Enumerate the legal single-utterance phrase sequences if that stays
    within ``limit`` expanded possibilities; otherwise fall back to per-slot
    token pools, any order and count, validated at apply time."""
    state = normalize(state)
    pools = {slot: view.available_values(slot) for slot in unfilled_slots(state.tree)}
    weights = {slot: len(values) for slot, values in pools.items()}
    shapes = _utterance_shapes(state, weights, limit)
    if shapes is None:
        return GrammarDoc(version, OVER_APPROXIMATION, RESERVED, (), pools)
    sequences = tuple(
        combo
        for shape in shapes
        for combo in itertools.product(*(pools[slot] for slot in shape))
    )
    assert len(sequences) == sum(prod(weights[s] for s in shape) for shape in shapes)
    return GrammarDoc(version, EXACT, RESERVED, sequences, {})
