"""Uniform validation of typed utterances and hyperlink clicks.

Free text is tokenized against the live vocabulary by greedy longest
match, left to right; words that match nothing are ignored with notice
(keyword spotting), while matched-but-illegal tokens are rejected with a
reason.  Clicks skip tokenization and ambiguity resolution but flow
through the identical token-application path, so both media land in the
same states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ReservedPhraseCollision
from .records import View, normalize_phrase
from .staging import DialogState, legal_first_slots, unfilled_slots

RESERVED = ("show me results", "what may i say", "yes", "no")

SHOW_RESULTS, HELP, YES, NO = RESERVED


@dataclass(frozen=True)
class Vocabulary:
    """What can currently be said: normalized phrase to its slot bindings."""

    entries: dict[str, tuple[tuple[str, str], ...]]
    reserved: tuple[str, ...] = RESERVED
    max_words: int = 1


@dataclass
class ApplyReport:
    """What one input did: accepted and rejected tokens, ignored fragments,
    the motivator outcome, and a small delta of the resulting page."""

    accepted: list[dict] = field(default_factory=list)
    rejected: list[dict] = field(default_factory=list)
    ignored: list[str] = field(default_factory=list)
    motivators: dict = field(default_factory=dict)
    delta: dict = field(default_factory=dict)
    help: dict | None = None

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "rejected": self.rejected,
            "ignored": self.ignored,
            "motivators": self.motivators,
            "delta": self.delta,
            "help": self.help,
        }


def build_vocabulary(state: DialogState, view: View) -> Vocabulary:
    """One entry per (unfilled slot, available value); phrases normalized.

    A data phrase that collides with a reserved phrase is a seeding error.
    """
    entries: dict[str, list[tuple[str, str]]] = {}
    for slot in unfilled_slots(state.tree):
        for value in view.available_values(slot):
            phrase = normalize_phrase(value)
            if phrase in RESERVED:
                raise ReservedPhraseCollision(
                    f"value {value!r} of slot {slot!r} collides with reserved phrase {phrase!r}"
                )
            entries.setdefault(phrase, []).append((slot, value))
    max_words = max((len(p.split()) for p in entries), default=1)
    return Vocabulary({p: tuple(b) for p, b in entries.items()}, RESERVED, max_words)


def tokenize(vocabulary: Vocabulary, text: str) -> tuple[list[tuple[str, tuple[tuple[str, str], ...]]], list[str]]:
    """Greedy longest-match scan; returns (matched tokens, ignored words)."""
    words = normalize_phrase(text).split()
    tokens: list[tuple[str, tuple[tuple[str, str], ...]]] = []
    ignored: list[str] = []
    i = 0
    while i < len(words):
        for width in range(min(vocabulary.max_words, len(words) - i), 0, -1):
            phrase = " ".join(words[i : i + width])
            if phrase in vocabulary.entries:
                tokens.append((phrase, vocabulary.entries[phrase]))
                i += width
                break
        else:
            ignored.append(words[i])
            i += 1
    return tokens, ignored


def resolve_binding(
    state: DialogState,
    slot_order: tuple[str, ...],
    bindings: tuple[tuple[str, str], ...],
) -> tuple[str, str] | None:
    """Pick the slot a phrase fills: prefer currently legal slots, then
    canonical order; a multi-slot phrase with no legal reading is ambiguous."""
    rank = {slot: i for i, slot in enumerate(slot_order)}
    ordered = sorted(bindings, key=lambda b: rank.get(b[0], len(rank)))
    legal = set(legal_first_slots(state))
    for slot, value in ordered:
        if slot in legal:
            return slot, value
    if len(ordered) == 1:
        return ordered[0]  # let the engine report the precise reason
    return None
