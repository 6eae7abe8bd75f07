"""Dialog sessions: seeding, input handling, and page models.

A session ties one bound dialog spec to one progressively restricted view
and owns everything a page needs to render.  The render model is rebuilt
exactly once per state change and cached, so reads are side-effect free
and replaying the same inputs reproduces identical models byte for byte.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from pathlib import Path

from .dialogxml import BoundSpec, DialogSpec, bind_to_catalog, parse_dialog_spec
from .errors import (
    ConfirmationPending,
    DialogError,
    SessionComplete,
    StaleLink,
    UnboundSlot,
    UnknownDataset,
    UnknownSpec,
)
from .grammar import emit_grammar
from .motivators import COMPLETE, IN_PROGRESS, MotivatorReport, apply_motivators, collect_results
from .records import Catalog, Record, View, ingest_csv, normalize_phrase
from .staging import (
    DialogState,
    TurnContext,
    apply_token,
    current_solicitation,
    legal_first_slots,
    normalize,
)
from .utterance import (
    HELP,
    NO,
    RESERVED,
    SHOW_RESULTS,
    YES,
    ApplyReport,
    build_vocabulary,
    resolve_binding,
    tokenize,
)


@dataclass
class Snapshot:
    state: DialogState
    view: View
    breadcrumb: list[tuple[str, str, str]]


@dataclass
class Pending:
    slot: str
    value: str
    saved: Snapshot


class Session:
    """One user's dialog; all mutation goes through say() and click()."""

    def __init__(
        self,
        session_id: str,
        dataset: str,
        spec_name: str,
        bound: BoundSpec,
        grammar_limit: int = 512,
    ):
        self.id = session_id
        self.dataset = dataset
        self.spec_name = spec_name
        self.bound = bound
        self.grammar_limit = grammar_limit
        self.slot_meta = bound.spec.slot_meta
        self.slot_order = bound.spec.slots
        self.state = normalize(DialogState(bound.spec.root))
        self.view = bound.catalog.fresh_view()
        self.pending: Pending | None = None
        self.breadcrumb: list[tuple[str, str, str]] = []
        self.prompt_counts: dict[str, int] = {slot: 0 for slot in self.slot_order}
        self.status = IN_PROGRESS
        self.results: tuple[Record, ...] | None = None
        self.revision = 0
        self.input_log: list[dict] = []
        self._render: dict = {}
        build_vocabulary(self.state, self.view)  # fail fast on reserved-phrase collisions
        report = ApplyReport()
        self._run_motivators(report, baseline=self.view)
        self._finish(report)

    # -- public entry points (shared verbatim by the HTTP service and the CLI)

    def say(self, text: str) -> tuple[ApplyReport, dict]:
        report = self._apply_utterance(text)
        self.input_log.append({"say": text})
        return report, self._render

    def click(self, slot: str, value: str) -> tuple[ApplyReport, dict]:
        report = self._apply_click(slot, value)
        self.input_log.append({"click": {"slot": slot, "value": value}})
        return report, self._render

    def render_model(self) -> dict:
        return self._render

    def grammar(self) -> dict:
        return emit_grammar(self.state, self.view, self.grammar_limit, version=self.revision).as_dict()

    def help(self) -> dict:
        """Summary of what may be said right now."""
        slots = []
        for slot in legal_first_slots(self.state):
            slots.append(
                {
                    "slot": slot,
                    "prompt": self.slot_meta[slot].prompts[0],
                    "values": list(self.view.available_values(slot)),
                }
            )
        return {"reserved": list(RESERVED), "slots": slots}

    def snapshot(self) -> dict:
        """Replayable description of this session; exact by determinism."""
        return {
            "session_id": self.id,
            "dataset": self.dataset,
            "spec": self.spec_name,
            "inputs": list(self.input_log),
        }

    # -- utterance processing

    def _apply_utterance(self, text: str) -> ApplyReport:
        phrase = normalize_phrase(text)
        if self.pending is not None:
            if phrase == YES:
                return self._commit_pending()
            if phrase == NO:
                return self._rollback_pending()
            raise ConfirmationPending(f"confirm {self.pending.slot!r} first: say yes or no")
        if phrase == SHOW_RESULTS:
            return self._collect_results()
        if phrase == HELP:
            report = ApplyReport(help=self.help())
            report.motivators = MotivatorReport(status=self.status).as_dict()
            report.delta = self._delta()
            return report
        if phrase in (YES, NO):
            report = ApplyReport(rejected=[{"phrase": phrase, "reason": "NothingToConfirm"}])
            return self._finish(report)
        if self.status == COMPLETE:
            raise SessionComplete("the dialog already completed; only reserved phrases apply")
        vocabulary = build_vocabulary(self.state, self.view)
        tokens, ignored = tokenize(vocabulary, text)
        return self._apply_tokens(tokens, ignored)

    def _apply_click(self, slot: str, value: str) -> ApplyReport:
        if self.pending is not None:
            raise ConfirmationPending(f"confirm {self.pending.slot!r} first: say yes or no")
        if self.status == COMPLETE:
            raise SessionComplete("the dialog already completed")
        slot = slot.strip().lower()
        phrase = normalize_phrase(value)
        solicitation = self._render.get("solicitation") or {}
        offered = {link["value"] for link in solicitation.get("offered", ())}
        if solicitation.get("slot") != slot or phrase not in offered:
            raise StaleLink(f"({slot}, {value}) is not offered on the current page")
        return self._apply_tokens([(phrase, ((slot, phrase),))], [])

    def _apply_tokens(self, tokens, ignored) -> ApplyReport:
        report = ApplyReport(ignored=list(ignored))
        baseline = self.view
        turn = TurnContext()
        for phrase, bindings in tokens:
            if self.pending is not None:
                report.rejected.append({"phrase": phrase, "reason": ConfirmationPending.code})
                continue
            resolved = resolve_binding(self.state, self.slot_order, bindings)
            if resolved is None:
                report.rejected.append({"phrase": phrase, "reason": "Ambiguous"})
                continue
            slot, value = resolved
            try:
                new_state = apply_token(self.state, turn, slot, value)
            except DialogError as exc:
                report.rejected.append({"phrase": phrase, "reason": exc.code})
                continue
            if self.slot_meta[slot].confirm:
                saved = Snapshot(self.state, self.view, list(self.breadcrumb))
                self.pending = Pending(slot, value, saved)
            self.state = new_state
            self.view = self.view.restrict(slot, value)
            self.breadcrumb.append((slot, value, "user"))
            report.accepted.append({"phrase": phrase, "slot": slot, "value": value})
        if self.pending is None and report.accepted:
            self._run_motivators(report, baseline)
        else:
            report.motivators = MotivatorReport(status=self.status).as_dict()
        return self._finish(report)

    # -- confirmation gate

    def _commit_pending(self) -> ApplyReport:
        pending = self.pending
        self.pending = None
        report = ApplyReport()
        self._run_motivators(report, baseline=pending.saved.view)
        return self._finish(report, extra=[{"kind": "confirmed", "slot": pending.slot, "value": pending.value}])

    def _rollback_pending(self) -> ApplyReport:
        pending = self.pending
        self.pending = None
        self.state = pending.saved.state
        self.view = pending.saved.view
        self.breadcrumb = pending.saved.breadcrumb
        report = ApplyReport()
        report.motivators = MotivatorReport(status=self.status).as_dict()
        return self._finish(report, extra=[{"kind": "rolled_back", "slot": pending.slot, "value": pending.value}])

    # -- results collection

    def _collect_results(self) -> ApplyReport:
        records = collect_results(self.view)
        self.status = COMPLETE
        self.results = records
        report = ApplyReport()
        report.motivators = MotivatorReport(status=COMPLETE, results=records).as_dict()
        return self._finish(report, extra=[{"kind": "results_requested"}])

    # -- shared plumbing

    def _run_motivators(self, report: ApplyReport, baseline: View) -> None:
        state, view, motivators = apply_motivators(self.state, self.view, baseline)
        self.state, self.view = state, view
        for slot, value in motivators.auto_filled:
            self.breadcrumb.append((slot, value, "auto"))
        if motivators.status == COMPLETE:
            self.status = COMPLETE
            self.results = motivators.results
        report.motivators = motivators.as_dict()

    def _delta(self) -> dict:
        return {
            "status": self.status,
            "solicitation": None if self.status == COMPLETE else current_solicitation(self.state),
        }

    def _finish(self, report: ApplyReport, extra: list[dict] | None = None) -> ApplyReport:
        report.delta = self._delta()
        self._rebuild_render(report, extra or [])
        self.revision += 1
        return report

    def _rebuild_render(self, report: ApplyReport, extra: list[dict]) -> None:
        catalog = self.bound.catalog
        notifications: list[dict] = list(extra)
        motivators = report.motivators or {}
        for item in motivators.get("auto_filled", ()):
            notifications.append({"kind": "auto_filled", "slot": item["slot"], "value": item["value"]})
        for slot in motivators.get("removed_slots", ()):
            notifications.append({"kind": "removed_slot", "slot": slot})
        for slot, values in motivators.get("removed_values", {}).items():
            notifications.append({"kind": "removed_values", "slot": slot, "values": values})
        for rejection in report.rejected:
            notifications.append({"kind": "rejected", "phrase": rejection["phrase"], "reason": rejection["reason"]})
        if report.ignored:
            notifications.append({"kind": "ignored", "fragments": list(report.ignored)})

        solicitation = None
        out_of_turn_slots: list[str] = []
        if self.status != COMPLETE and self.pending is None:
            slot = current_solicitation(self.state)
            if slot is not None:
                prompt = self.slot_meta[slot].prompt_for(self.prompt_counts[slot])
                self.prompt_counts[slot] += 1
                solicitation = {
                    "slot": slot,
                    "prompt": prompt,
                    "offered": [
                        {"value": value, "label": catalog.display_form(slot, value)}
                        for value in self.view.available_values(slot)
                    ],
                }
                out_of_turn_slots = [s for s in legal_first_slots(self.state) if s != slot]

        pending = None
        if self.pending is not None:
            label = catalog.display_form(self.pending.slot, self.pending.value)
            pending = {
                "slot": self.pending.slot,
                "value": self.pending.value,
                "prompt": f"You said {label!r} for {self.pending.slot}. Is that right? Say yes or no.",
            }

        self._render = {
            "status": self.status,
            "solicitation": solicitation,
            "out_of_turn": {
                "slots": out_of_turn_slots,
                "hint": ("You may also say: " + ", ".join(out_of_turn_slots) + ".") if out_of_turn_slots else None,
            },
            "breadcrumb": [
                {
                    "slot": slot,
                    "value": value,
                    "label": catalog.display_form(slot, value),
                    "source": source,
                }
                for slot, value, source in self.breadcrumb
            ],
            "notifications": notifications,
            "pending_confirmation": pending,
            "results": None if self.results is None else [self._record_dict(r) for r in self.results],
        }

    def _record_dict(self, record: Record) -> dict:
        return {
            "id": record.id,
            "name": record.label(),
            "attrs": {k: v for k, v in record.display.items() if v is not None},
        }


class Registry:
    """Datasets and dialog specs discovered in a data directory.

    Datasets are ``*.csv`` files, specs are ``*.xml`` files, both keyed by
    stem; a (dataset, spec) pair is served when every slot of the spec
    binds to a catalog attribute.
    """

    def __init__(self, data_dir: str | Path, grammar_limit: int = 512):
        self.data_dir = Path(data_dir)
        self.grammar_limit = grammar_limit
        self.catalogs: dict[str, Catalog] = {}
        self.specs: dict[str, DialogSpec] = {}
        for path in sorted(self.data_dir.glob("*.csv")):
            self.catalogs[path.stem] = ingest_csv(path.read_text())
        for path in sorted(self.data_dir.glob("*.xml")):
            self.specs[path.stem] = parse_dialog_spec(path.read_text())

    def pairs(self) -> list[dict]:
        out = []
        for dataset, catalog in sorted(self.catalogs.items()):
            for name, spec in sorted(self.specs.items()):
                try:
                    bind_to_catalog(spec, catalog)
                except UnboundSlot:
                    continue
                out.append({"dataset": dataset, "spec": name})
        return out

    def create_session(self, dataset: str, spec_name: str, session_id: str | None = None) -> Session:
        if dataset not in self.catalogs:
            raise UnknownDataset(f"no dataset {dataset!r}")
        if spec_name not in self.specs:
            raise UnknownSpec(f"no dialog spec {spec_name!r}")
        bound = bind_to_catalog(self.specs[spec_name], self.catalogs[dataset])
        return Session(
            session_id or secrets.token_urlsafe(12),
            dataset,
            spec_name,
            bound,
            self.grammar_limit,
        )

    def restore_session(self, snapshot: dict) -> Session:
        """Rebuild a session by replaying its input log."""
        session = self.create_session(snapshot["dataset"], snapshot["spec"], snapshot.get("session_id"))
        for step in snapshot.get("inputs", ()):
            if "say" in step:
                session.say(step["say"])
            else:
                session.click(step["click"]["slot"], step["click"]["value"])
        return session


def default_data_dir() -> Path:
    """The packaged desk-scale fixtures."""
    return Path(__file__).resolve().parent / "data"
