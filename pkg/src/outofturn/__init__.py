"""Out-of-turn dialog engine: stager trees over record views."""

from .staging import (
    Composite,
    DialogState,
    DialogTree,
    Leaf,
    StagerKind,
    TurnContext,
    apply_token,
    current_solicitation,
    enumerate_sequences,
    is_complete,
    legal_first_slots,
    normalize,
    restructure,
)

__all__ = [
    "Composite",
    "DialogState",
    "DialogTree",
    "Leaf",
    "StagerKind",
    "TurnContext",
    "apply_token",
    "current_solicitation",
    "enumerate_sequences",
    "is_complete",
    "legal_first_slots",
    "normalize",
    "restructure",
]
