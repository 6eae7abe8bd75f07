"""Housekeeping rules applied after every utterance, run to a fixpoint.

Pruning removes slots no live record can answer and auto-fills slots with
exactly one supported value; completion ends the dialog once a unique
record is identified or nothing is left to ask.  Unlike the original
behaviour this module reports every auto-fill and removal so the page can
notify the user.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .records import Record, View
from .staging import DialogState, drop_slot, fill_without_restructuring, unfilled_slots

IN_PROGRESS = "in_progress"
COMPLETE = "complete"


@dataclass
class MotivatorReport:
    auto_filled: list[tuple[str, str]] = field(default_factory=list)
    removed_slots: list[str] = field(default_factory=list)
    removed_values: dict[str, tuple[str, ...]] = field(default_factory=dict)
    status: str = IN_PROGRESS
    results: tuple[Record, ...] | None = None

    def as_dict(self) -> dict:
        return {
            "auto_filled": [{"slot": s, "value": v} for s, v in self.auto_filled],
            "removed_slots": list(self.removed_slots),
            "removed_values": {s: list(v) for s, v in self.removed_values.items()},
            "status": self.status,
        }


def prune_dialog(
    state: DialogState, view: View, baseline: View | None = None
) -> tuple[DialogState, View, MotivatorReport]:
    """Drop unanswerable slots and auto-fill forced ones until nothing changes.

    ``baseline`` is the view before the utterance being settled; offer-set
    shrinkage is reported against it.  Auto-fills restrict the view and may
    cascade; they never trigger restructuring (pruning is not the user
    taking focus).  The loop runs at most (#slots + 1) times.
    """
    report = MotivatorReport()
    if baseline is not None:
        for slot in unfilled_slots(state.tree):
            before = baseline.available_values(slot)
            now = set(view.available_values(slot))
            lost = tuple(v for v in before if v not in now)
            if lost:
                report.removed_values[slot] = lost
    changed = True
    while changed:
        changed = False
        for slot in unfilled_slots(state.tree):
            available = view.available_values(slot)
            if not available:
                state = drop_slot(state, slot)
                report.removed_slots.append(slot)
                changed = True
            elif len(available) == 1:
                value = available[0]
                state = fill_without_restructuring(state, slot, value)
                view = view.restrict(slot, value)
                report.auto_filled.append((slot, value))
                changed = True
    return state, view, report


def complete_dialog(state: DialogState, view: View) -> tuple[DialogState, str, tuple[Record, ...] | None]:
    """Finish when a unique record is identified or no slots remain.

    Any slots still standing are unnecessary and get dropped.
    """
    if view.record_count() == 1 or state.tree is None:
        for slot in unfilled_slots(state.tree):
            state = drop_slot(state, slot)
        return state, COMPLETE, view.records()
    return state, IN_PROGRESS, None


def collect_results(view: View) -> tuple[Record, ...]:
    """Flat listing of the records still live; the dialog ends here."""
    return view.records()


def apply_motivators(
    state: DialogState, view: View, baseline: View | None = None
) -> tuple[DialogState, View, MotivatorReport]:
    """The per-utterance pipeline: prune to fixpoint, then check completion."""
    state, view, report = prune_dialog(state, view, baseline)
    state, report.status, report.results = complete_dialog(state, view)
    return state, view, report
