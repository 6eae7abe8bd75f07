"""Error taxonomy shared by the engine, the session service, and the CLI.

Every error carries a stable ``code`` string used for token-level rejection
reasons in reports and for the ``error`` field of HTTP error bodies.
"""

from __future__ import annotations


class DialogError(Exception):
    """Base class for all engine errors."""

    code = "DialogError"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code


# dialog-core
class SlotNotLegal(DialogError):
    code = "SlotNotLegal"


class SlotAlreadyFilled(DialogError):
    code = "SlotAlreadyFilled"


class InterpreterTurnExhausted(DialogError):
    code = "InterpreterTurnExhausted"


class EnumerationTooLarge(DialogError):
    code = "EnumerationTooLarge"


# dialogxml
class MalformedDocument(DialogError):
    code = "MalformedDocument"


class UnknownStager(DialogError):
    code = "UnknownStager"


class DuplicateSlot(DialogError):
    code = "DuplicateSlot"


class EmptyDialog(DialogError):
    code = "EmptyDialog"


class UnboundSlot(DialogError):
    code = "UnboundSlot"


# view-engine
class RaggedRow(DialogError):
    code = "RaggedRow"


class DuplicateHeader(DialogError):
    code = "DuplicateHeader"


class EmptyCatalog(DialogError):
    code = "EmptyCatalog"


class UnknownAttribute(DialogError):
    code = "UnknownAttribute"


# utterance / session
class ReservedPhraseCollision(DialogError):
    code = "ReservedPhraseCollision"


class Ambiguous(DialogError):
    code = "Ambiguous"


class SessionComplete(DialogError):
    code = "SessionComplete"


class ConfirmationPending(DialogError):
    code = "ConfirmationPending"


class StaleLink(DialogError):
    code = "StaleLink"


# session-server
class UnknownDataset(DialogError):
    code = "UnknownDataset"


class UnknownSpec(DialogError):
    code = "UnknownSpec"


class UnknownSession(DialogError):
    code = "UnknownSession"
