"""Stager trees and the staging transformations that drive a dialog.

A dialog is a tree whose leaves are input slots and whose composite nodes
carry a stager: an INTERPRETER solicits slots strictly in order, one token
per utterance; a PARTIAL_EVALUATOR accepts any of its children's first
slots (out-of-turn input); a CURRYER accepts only prefixes of its children.

Filling a slot rewrites the tree: the filled leaf disappears, and every
PARTIAL_EVALUATOR ancestor whose entered child is still incomplete is
restructured into a CURRYER that forces that child to finish first.  Once
the focused child completes, normalization collapses the wrapper and the
original flexibility resurfaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    EnumerationTooLarge,
    InterpreterTurnExhausted,
    SlotAlreadyFilled,
    SlotNotLegal,
)


class StagerKind(Enum):
    INTERPRETER = "i"
    PARTIAL_EVALUATOR = "pe"
    CURRYER = "c"


@dataclass(frozen=True)
class Leaf:
    """An unfilled input slot."""

    slot: str


@dataclass(frozen=True)
class Composite:
    """A staged group of subdialogs; children is never empty."""

    id: str
    stager: StagerKind
    children: tuple["DialogTree", ...]
    restructured_from: StagerKind | None = None

    def __post_init__(self):
        if not self.children:
            raise ValueError(f"composite {self.id!r} has no children")


DialogTree = Leaf | Composite


@dataclass(frozen=True)
class DialogState:
    """Immutable snapshot of a dialog: remaining tree plus received fillings.

    ``tree`` is None once every slot has been filled or dropped.  Fillings
    keep insertion order, which is the order tokens were received.
    """

    tree: DialogTree | None
    fillings: tuple[tuple[str, str], ...] = ()

    def filling_map(self) -> dict[str, str]:
        return dict(self.fillings)


@dataclass
class TurnContext:
    """Tracks which INTERPRETER nodes consumed a token in this utterance."""

    charged: set[str] = field(default_factory=set)

    def fork(self) -> "TurnContext":
        return TurnContext(set(self.charged))


def unfilled_slots(tree: DialogTree | None) -> tuple[str, ...]:
    """Leaves of the tree in document (depth-first, left-to-right) order."""
    if tree is None:
        return ()
    if isinstance(tree, Leaf):
        return (tree.slot,)
    out: list[str] = []
    for child in tree.children:
        out.extend(unfilled_slots(child))
    return tuple(out)


def _strip(tree: DialogTree, filled: frozenset[str]) -> DialogTree | None:
    if isinstance(tree, Leaf):
        return None if tree.slot in filled else tree
    children = tuple(c for c in (_strip(ch, filled) for ch in tree.children) if c is not None)
    if not children:
        return None
    if len(children) == 1 and tree.stager is not StagerKind.INTERPRETER:
        # Unary collapse: when a restructured focus child completes, the
        # wrapping CURRYER vanishes and its surviving sibling (typically the
        # saved PARTIAL_EVALUATOR) resurfaces.  INTERPRETER nodes survive
        # until empty: collapsing one would lift its single-token-per-
        # utterance restriction while the dialog is still running.
        return children[0]
    return Composite(tree.id, tree.stager, children, tree.restructured_from)


def normalize(state: DialogState) -> DialogState:
    """Remove filled leaves, drop empty composites, collapse unary ones."""
    if state.tree is None:
        return state
    filled = frozenset(slot for slot, _ in state.fillings)
    return DialogState(_strip(state.tree, filled), state.fillings)


def is_complete(state: DialogState) -> bool:
    return normalize(state).tree is None


def legal_first_slots(state: DialogState) -> tuple[str, ...]:
    """Slots an utterance may legally start with, in canonical order.

    Leaf: itself.  INTERPRETER and CURRYER composites: whatever their first
    child allows.  PARTIAL_EVALUATOR composites: the union over all
    children.  Empty exactly when the dialog is complete.
    """

    def walk(tree: DialogTree) -> list[str]:
        if isinstance(tree, Leaf):
            return [tree.slot]
        if tree.stager is StagerKind.PARTIAL_EVALUATOR:
            out: list[str] = []
            for child in tree.children:
                out.extend(walk(child))
            return out
        return walk(tree.children[0])

    tree = normalize(state).tree
    return () if tree is None else tuple(walk(tree))


def current_solicitation(state: DialogState) -> str | None:
    """The slot rendered as hyperlinks; other legal slots are out-of-turn."""
    legal = legal_first_slots(state)
    return legal[0] if legal else None


def restructure(tree: Composite, entered_child_index: int) -> DialogTree:
    """Refocus a PARTIAL_EVALUATOR node on its entered, incomplete child.

    The node becomes a CURRYER over [entered child, PE over the remaining
    children], so the entered subdialog must finish before anything else.
    With no remaining siblings the entered child simply takes the node's
    place.  The slot multiset is preserved.
    """
    if tree.stager is not StagerKind.PARTIAL_EVALUATOR:
        raise ValueError("restructure applies only to PARTIAL_EVALUATOR nodes")
    entered = tree.children[entered_child_index]
    others = tree.children[:entered_child_index] + tree.children[entered_child_index + 1 :]
    if not others:
        return entered
    saved = Composite(tree.id + "+", StagerKind.PARTIAL_EVALUATOR, others)
    return Composite(
        tree.id,
        StagerKind.CURRYER,
        (entered, saved),
        restructured_from=StagerKind.PARTIAL_EVALUATOR,
    )


def _contains(tree: DialogTree, slot: str) -> bool:
    if isinstance(tree, Leaf):
        return tree.slot == slot
    return any(_contains(c, slot) for c in tree.children)


def _interpreters_on_path(tree: DialogTree, slot: str) -> list[str]:
    ids: list[str] = []
    node = tree
    while isinstance(node, Composite):
        if node.stager is StagerKind.INTERPRETER:
            ids.append(node.id)
        node = next(c for c in node.children if _contains(c, slot))
    return ids


def _fill(tree: DialogTree, slot: str) -> DialogTree | None:
    """Remove the leaf for ``slot`` and restructure PE ancestors on its path."""
    if isinstance(tree, Leaf):
        return None
    idx = next(i for i, c in enumerate(tree.children) if _contains(c, slot))
    sub = _fill(tree.children[idx], slot)
    if sub is None:
        children = tree.children[:idx] + tree.children[idx + 1 :]
        if not children:
            return None
        return Composite(tree.id, tree.stager, children, tree.restructured_from)
    if tree.stager is StagerKind.PARTIAL_EVALUATOR:
        # The entered child is still incomplete: force it to finish first.
        updated = Composite(tree.id, tree.stager, tree.children[:idx] + (sub,) + tree.children[idx + 1 :])
        return restructure(updated, idx)
    children = tree.children[:idx] + (sub,) + tree.children[idx + 1 :]
    return Composite(tree.id, tree.stager, children, tree.restructured_from)


def apply_token(state: DialogState, turn: TurnContext, slot: str, value: str) -> DialogState:
    """Record one token and rewrite the tree along its path.

    Raises SlotAlreadyFilled / SlotNotLegal when the slot is not currently
    addressable, and InterpreterTurnExhausted when the path crosses an
    INTERPRETER that already consumed a token in this utterance.
    """
    state = normalize(state)
    if slot in state.filling_map():
        raise SlotAlreadyFilled(f"slot {slot!r} already has a value")
    if state.tree is None or slot not in legal_first_slots(state):
        raise SlotNotLegal(f"slot {slot!r} is not addressable now")
    interpreter_ids = _interpreters_on_path(state.tree, slot)
    already = [i for i in interpreter_ids if i in turn.charged]
    if already:
        raise InterpreterTurnExhausted(
            f"slot {slot!r} needs interpreter {already[0]!r}, which already took a token this utterance"
        )
    turn.charged.update(interpreter_ids)
    tree = _fill(state.tree, slot)
    return normalize(DialogState(tree, state.fillings + ((slot, value),)))


def fill_without_restructuring(state: DialogState, slot: str, value: str) -> DialogState:
    """Record a system-made filling; never refocuses the dialog.

    Used by pruning auto-fills: restructuring models user focus-taking, so
    the tree just loses the leaf and renormalizes.
    """
    state = normalize(state)
    if slot in state.filling_map():
        raise SlotAlreadyFilled(f"slot {slot!r} already has a value")
    if state.tree is None or not _contains(state.tree, slot):
        raise SlotNotLegal(f"slot {slot!r} is not in the dialog")
    return normalize(DialogState(state.tree, state.fillings + ((slot, value),)))


def drop_slot(state: DialogState, slot: str) -> DialogState:
    """Remove a slot from the dialog without recording a value."""
    state = normalize(state)
    if state.tree is None or not _contains(state.tree, slot):
        return state
    return DialogState(_strip(state.tree, frozenset({slot})), state.fillings)


def enumerate_sequences(state: DialogState, bound: int = 8) -> set[tuple[str, ...]]:
    """Every complete slot ordering reachable by repeated apply_token.

    Brute force: each candidate permutation of the unfilled slots is
    replayed token by token, each token in its own turn, and kept only if
    every token is accepted.  Serves as the oracle for legal_first_slots
    and as the exact-grammar feeder.
    """
    state = normalize(state)
    slots = unfilled_slots(state.tree)
    if len(slots) > bound:
        raise EnumerationTooLarge(f"{len(slots)} unfilled slots exceeds bound {bound}")
    if not slots:
        return {()}
    accepted: set[tuple[str, ...]] = set()
    for perm in itertools.permutations(slots):
        current = state
        for tok in perm:
            try:
                current = apply_token(current, TurnContext(), tok, "")
            except (SlotNotLegal, SlotAlreadyFilled, InterpreterTurnExhausted):
                break
        else:
            if is_complete(current):
                accepted.add(perm)
    return accepted
