"""Transcript parsing and selection of intent-bearing customer utterances.

A transcript file is UTF-8 JSON lines, one dialogue per line:

    {"dialogue_id": str,
     "turns": [{"speaker_role": "Agent"|"Customer", "utterance": str,
                "dialog_acts": [str], "intents": [str]}]}

Only Customer turns are clustering units.  A turn qualifies when its dialog
acts contain the configured act name ("InformIntent" by default).  Acts come
either from the transcript itself (gold mode) or from an external sidecar of
predicted acts keyed by utterance id (predicted mode).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from .errors import FormatError, ValidationError

SpeakerRole = Literal["Agent", "Customer"]

_ROLES = ("Agent", "Customer")


@dataclass(frozen=True)
class Turn:
    """One utterance within a dialogue; ``index`` is its 0-based position."""

    index: int
    speaker_role: SpeakerRole
    utterance: str
    dialog_acts: tuple[str, ...] = ()
    intents: tuple[str, ...] = ()


@dataclass(frozen=True)
class Dialogue:
    dialogue_id: str
    turns: tuple[Turn, ...]


@dataclass(frozen=True)
class UtteranceRecord:
    """One clustering unit: a selected customer turn with its join key."""

    utterance_id: str
    dialogue_id: str
    turn_index: int
    text: str
    reference_intent: str | None = None


@dataclass(frozen=True)
class ActSource:
    """Where dialog acts come from: transcript annotations or a predicted sidecar."""

    mode: Literal["gold", "predicted"] = "gold"
    act_name: str = "InformIntent"

    def __post_init__(self):
        if self.mode not in ("gold", "predicted"):
            raise ValueError(f"unknown act source mode: {self.mode!r}")
        if not self.act_name:
            raise ValueError("act_name must be non-empty")


def utterance_id(dialogue_id: str, turn_index: int) -> str:
    """Stable join key binding a turn to its embedding row."""
    return f"{dialogue_id}#{turn_index}"


def _string_list(value, what: str, path, line_no: int) -> tuple[str, ...]:
    if value is None:
        return ()
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError(f"{what} must be a list of strings", path=path, line=line_no)
    return tuple(value)


def _parse_dialogue(obj, path, line_no: int) -> Dialogue:
    if not isinstance(obj, dict):
        raise FormatError("dialogue record must be a JSON object", path=path, line=line_no)
    dialogue_id = obj.get("dialogue_id")
    if not isinstance(dialogue_id, str) or not dialogue_id:
        raise FormatError("missing or invalid dialogue_id", path=path, line=line_no)
    raw_turns = obj.get("turns")
    if not isinstance(raw_turns, list) or not raw_turns:
        raise FormatError("turns must be a non-empty list", path=path, line=line_no)
    turns = []
    for idx, raw in enumerate(raw_turns):
        if not isinstance(raw, dict):
            raise FormatError(f"turn {idx} must be a JSON object", path=path, line=line_no)
        role = raw.get("speaker_role")
        if role not in _ROLES:
            raise FormatError(
                f"turn {idx} has invalid speaker_role {role!r}", path=path, line=line_no
            )
        text = raw.get("utterance")
        if not isinstance(text, str):
            raise FormatError(f"turn {idx} has no utterance text", path=path, line=line_no)
        turns.append(
            Turn(
                index=idx,
                speaker_role=role,
                utterance=text,
                dialog_acts=_string_list(raw.get("dialog_acts"), "dialog_acts", path, line_no),
                intents=_string_list(raw.get("intents"), "intents", path, line_no),
            )
        )
    return Dialogue(dialogue_id=dialogue_id, turns=tuple(turns))


def load_transcripts(path) -> list[Dialogue]:
    """Read a JSON-lines transcript file into Dialogue objects, in file order.

    Raises OSError if the file cannot be read, FormatError (with line number)
    on malformed lines, and ValidationError on duplicate dialogue ids.
    """
    dialogues: list[Dialogue] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON ({exc.msg})", path=path, line=line_no) from exc
            dialogue = _parse_dialogue(obj, path, line_no)
            if dialogue.dialogue_id in seen:
                raise ValidationError(f"duplicate dialogue_id {dialogue.dialogue_id!r} in {path}")
            seen.add(dialogue.dialogue_id)
            dialogues.append(dialogue)
    return dialogues


def load_predicted_acts(path) -> dict[str, list[str]]:
    """Read a predicted-acts sidecar: one {"utterance_id", "dialog_acts"} object per line."""
    acts: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON ({exc.msg})", path=path, line=line_no) from exc
            uid = obj.get("utterance_id") if isinstance(obj, dict) else None
            if not isinstance(uid, str) or not uid:
                raise FormatError("missing or invalid utterance_id", path=path, line=line_no)
            if uid in acts:
                raise ValidationError(f"duplicate utterance_id {uid!r} in {path}")
            acts[uid] = list(_string_list(obj.get("dialog_acts"), "dialog_acts", path, line_no))
    return acts


def select_intent_turns(
    dialogues: Sequence[Dialogue],
    source: ActSource,
    predicted_acts: Mapping[str, Sequence[str]] | None = None,
) -> list[UtteranceRecord]:
    """Select the Customer turns whose act list contains ``source.act_name``.

    In predicted mode the act list comes from ``predicted_acts`` (utterances
    without an entry are treated as having no acts); agent turns are never
    selected.  Output order is corpus order, and ``reference_intent`` is the
    turn's first intent label when one is annotated.
    """
    if predicted_acts is None:
        predicted_acts = {}
    records: list[UtteranceRecord] = []
    for dialogue in dialogues:
        for turn in dialogue.turns:
            if turn.speaker_role != "Customer":
                continue
            uid = utterance_id(dialogue.dialogue_id, turn.index)
            acts = turn.dialog_acts if source.mode == "gold" else predicted_acts.get(uid, ())
            if source.act_name not in acts:
                continue
            records.append(
                UtteranceRecord(
                    utterance_id=uid,
                    dialogue_id=dialogue.dialogue_id,
                    turn_index=turn.index,
                    text=turn.utterance,
                    reference_intent=turn.intents[0] if turn.intents else None,
                )
            )
    return records


def reference_labels(records: Sequence[UtteranceRecord]) -> list[str]:
    """Project the reference intent of every record, preserving order."""
    labels = []
    for record in records:
        if record.reference_intent is None:
            raise ValidationError(f"record {record.utterance_id!r} has no reference intent")
        labels.append(record.reference_intent)
    return labels
