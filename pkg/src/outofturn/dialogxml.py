"""DialogXML: the on-disk dialog format, parsed into stager trees.

A document is a ``<dialog-spec>`` wrapping a single ``<dialog>`` element.
``<dialog>`` carries a ``stager`` attribute (``i``, ``c``, or ``pe``,
case-insensitive) and nests further ``<dialog>`` or ``<dialog-item>``
elements; items name the input slots.  Per-item extras: ``prompt`` (with
``prompt2``..``promptN`` for tapered reprompts) and ``confirm``.  The
``next`` and ``type`` attributes seen in the wild are accepted and
ignored; their meaning is undefined.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import (
    DuplicateSlot,
    EmptyDialog,
    MalformedDocument,
    UnboundSlot,
    UnknownStager,
)
from .staging import Composite, DialogTree, Leaf, StagerKind, unfilled_slots

if TYPE_CHECKING:
    from .records import Catalog

_STAGERS = {"i": StagerKind.INTERPRETER, "c": StagerKind.CURRYER, "pe": StagerKind.PARTIAL_EVALUATOR}
_PROMPT_ATTR = re.compile(r"^prompt([2-9]\d*)?$")
_TRUTHY = {"true", "yes", "1"}
_FALSY = {"false", "no", "0", ""}


@dataclass(frozen=True)
class SlotMeta:
    """Presentation metadata for one slot: tapered prompts and confirm flag."""

    prompts: tuple[str, ...]
    confirm: bool = False

    def prompt_for(self, solicitation_count: int) -> str:
        return self.prompts[min(solicitation_count, len(self.prompts) - 1)]


@dataclass(frozen=True)
class DialogSpec:
    root: DialogTree
    slot_meta: dict[str, SlotMeta] = field(default_factory=dict)

    @property
    def slots(self) -> tuple[str, ...]:
        """Slot names in canonical (document) order."""
        return unfilled_slots(self.root)


@dataclass(frozen=True)
class BoundSpec:
    """A dialog spec whose every slot names an attribute of the catalog."""

    spec: DialogSpec
    catalog: "Catalog"


def parse_dialog_spec(document: str) -> DialogSpec:
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise MalformedDocument(f"not well-formed XML: {exc}") from exc
    if root.tag != "dialog-spec":
        raise MalformedDocument(f"expected <dialog-spec> root, found <{root.tag}>")
    dialogs = list(root)
    if len(dialogs) != 1 or dialogs[0].tag != "dialog":
        raise MalformedDocument("expected exactly one top-level <dialog> element")

    slot_meta: dict[str, SlotMeta] = {}
    seen_ids: set[str] = set()
    counter = iter(range(1, 10_000))

    def parse_dialog(elem: ET.Element) -> Composite:
        stager_attr = elem.get("stager", "").strip().lower()
        if stager_attr not in _STAGERS:
            raise UnknownStager(f"unknown stager {elem.get('stager')!r}")
        dialog_id = elem.get("id") or f"d{next(counter)}"
        if dialog_id in seen_ids:
            raise MalformedDocument(f"duplicate dialog id {dialog_id!r}")
        seen_ids.add(dialog_id)
        children: list[DialogTree] = []
        for child in elem:
            if child.tag == "dialog":
                children.append(parse_dialog(child))
            elif child.tag == "dialog-item":
                children.append(parse_item(child))
            else:
                raise MalformedDocument(f"unexpected element <{child.tag}> inside <dialog>")
        if not children:
            raise EmptyDialog(f"dialog {dialog_id!r} has no items or subdialogs")
        return Composite(dialog_id, _STAGERS[stager_attr], tuple(children))

    def parse_item(elem: ET.Element) -> Leaf:
        name = (elem.get("name") or "").strip().lower()
        if not name:
            raise MalformedDocument("<dialog-item> requires a non-empty name")
        if name in slot_meta:
            raise DuplicateSlot(f"slot {name!r} declared more than once")
        prompts: list[tuple[int, str]] = []
        for attr, value in elem.attrib.items():
            match = _PROMPT_ATTR.match(attr)
            if match:
                prompts.append((int(match.group(1) or 1), value))
        prompts.sort()
        if not prompts:
            prompts = [(1, f"Choose a {name}.")]
        confirm_attr = (elem.get("confirm") or "").strip().lower()
        if confirm_attr not in _TRUTHY | _FALSY:
            raise MalformedDocument(f"confirm={elem.get('confirm')!r} is not a boolean")
        slot_meta[name] = SlotMeta(tuple(p for _, p in prompts), confirm_attr in _TRUTHY)
        return Leaf(name)

    tree = parse_dialog(dialogs[0])
    return DialogSpec(tree, slot_meta)


def serialize_dialog_spec(spec: DialogSpec) -> str:
    """Emit DialogXML that re-parses to a structurally equal spec."""
    root = ET.Element("dialog-spec")

    def emit(tree: DialogTree, parent: ET.Element) -> None:
        if isinstance(tree, Leaf):
            meta = spec.slot_meta[tree.slot]
            attrs = {"name": tree.slot}
            for i, prompt in enumerate(meta.prompts):
                attrs["prompt" if i == 0 else f"prompt{i + 1}"] = prompt
            if meta.confirm:
                attrs["confirm"] = "true"
            ET.SubElement(parent, "dialog-item", attrs)
            return
        elem = ET.SubElement(parent, "dialog", {"id": tree.id, "stager": tree.stager.value})
        for child in tree.children:
            emit(child, elem)

    if isinstance(spec.root, Leaf):
        raise MalformedDocument("cannot serialize a bare slot without a <dialog> wrapper")
    emit(spec.root, root)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def bind_to_catalog(spec: DialogSpec, catalog: "Catalog") -> BoundSpec:
    """Check that every slot matches a catalog attribute name."""
    missing = [slot for slot in spec.slots if slot not in catalog.attributes]
    if missing:
        raise UnboundSlot(f"slot {missing[0]!r} has no matching catalog attribute")
    return BoundSpec(spec, catalog)
