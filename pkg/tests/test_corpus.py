import json

import pytest

from intentbench.corpus import (
    ActSource,
    load_predicted_acts,
    load_transcripts,
    reference_labels,
    select_intent_turns,
)
from intentbench.errors import FormatError, ValidationError


def write_lines(path, objs):
    with open(path, "w", encoding="utf-8") as fh:
        for obj in objs:
            fh.write(json.dumps(obj) + "\n")
    return path


def dialogue(did, turns):
    return {"dialogue_id": did, "turns": turns}


def turn(role, text, acts=None, intents=None):
    out = {"speaker_role": role, "utterance": text}
    if acts is not None:
        out["dialog_acts"] = acts
    if intents is not None:
        out["intents"] = intents
    return out


class TestLoadTranscripts:
    def test_two_dialogue_fixture(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            [
                dialogue("d1", [turn("Agent", "hi"), turn("Customer", "need a quote"), turn("Agent", "sure")]),
                dialogue("d2", [turn("Customer", "cancel please")]),
            ],
        )
        dialogues = load_transcripts(path)
        assert [d.dialogue_id for d in dialogues] == ["d1", "d2"]
        assert [len(d.turns) for d in dialogues] == [3, 1]
        assert [t.index for t in dialogues[0].turns] == [0, 1, 2]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        assert load_transcripts(path) == []

    def test_missing_act_and_intent_fields_become_empty(self, tmp_path):
        path = write_lines(tmp_path / "t.jsonl", [dialogue("d1", [turn("Customer", "hello")])])
        (d,) = load_transcripts(path)
        assert d.turns[0].dialog_acts == ()
        assert d.turns[0].intents == ()

    def test_malformed_json_reports_line_number(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text(json.dumps(dialogue("d1", [turn("Customer", "x")])) + "\n{oops\n")
        with pytest.raises(FormatError, match="line 2"):
            load_transcripts(path)

    def test_bad_role_reports_line_number(self, tmp_path):
        path = write_lines(tmp_path / "t.jsonl", [dialogue("d1", [turn("Robot", "x")])])
        with pytest.raises(FormatError, match="line 1"):
            load_transcripts(path)

    def test_empty_turns_rejected(self, tmp_path):
        path = write_lines(tmp_path / "t.jsonl", [dialogue("d1", [])])
        with pytest.raises(FormatError):
            load_transcripts(path)

    def test_duplicate_dialogue_id(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            [dialogue("d1", [turn("Customer", "a")]), dialogue("d1", [turn("Customer", "b")])],
        )
        with pytest.raises(ValidationError, match="d1"):
            load_transcripts(path)

    def test_unreadable_path(self, tmp_path):
        with pytest.raises(OSError, match="nope"):
            load_transcripts(tmp_path / "nope.jsonl")


class TestSelectIntentTurns:
    def build(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            [
                dialogue(
                    "d1",
                    [
                        turn("Agent", "hello", acts=["InformIntent"], intents=["AgentIntent"]),
                        turn("Customer", "need a quote", acts=["InformIntent"], intents=["GetQuote"]),
                        turn("Customer", "thanks", acts=[]),
                    ],
                ),
                dialogue(
                    "d2",
                    [turn("Customer", "cancel and refund", acts=["InformIntent"], intents=["Cancel", "Refund"])],
                ),
            ],
        )
        return load_transcripts(path)

    def test_gold_selection(self, tmp_path):
        records = select_intent_turns(self.build(tmp_path), ActSource("gold"))
        assert [r.utterance_id for r in records] == ["d1#1", "d2#0"]
        assert records[0].reference_intent == "GetQuote"
        assert records[0].text == "need a quote"

    def test_agent_turns_never_selected(self, tmp_path):
        records = select_intent_turns(self.build(tmp_path), ActSource("gold"))
        assert all(r.utterance_id != "d1#0" for r in records)

    def test_multi_intent_takes_first_label(self, tmp_path):
        records = select_intent_turns(self.build(tmp_path), ActSource("gold"))
        assert records[1].reference_intent == "Cancel"

    def test_predicted_mode_uses_sidecar(self, tmp_path):
        dialogues = self.build(tmp_path)
        predicted = {"d1#2": ["InformIntent"]}  # no entry for d1#1 or d2#0 -> no act
        records = select_intent_turns(dialogues, ActSource("predicted"), predicted)
        assert [r.utterance_id for r in records] == ["d1#2"]
        assert records[0].reference_intent is None

    def test_selection_is_idempotent(self, tmp_path):
        dialogues = self.build(tmp_path)
        a = select_intent_turns(dialogues, ActSource("gold"))
        b = select_intent_turns(dialogues, ActSource("gold"))
        assert a == b

    def test_custom_act_name(self, tmp_path):
        dialogues = self.build(tmp_path)
        assert select_intent_turns(dialogues, ActSource("gold", act_name="Other")) == []

    def test_fixture_counts(self, transcripts_path):
        dialogues = load_transcripts(transcripts_path)
        records = select_intent_turns(dialogues, ActSource("gold"))
        assert len(records) == 60
        assert len(set(reference_labels(records))) == 3


class TestReferenceLabels:
    def test_projection_preserves_order(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            [
                dialogue("d1", [turn("Customer", "a", acts=["InformIntent"], intents=["x"])]),
                dialogue("d2", [turn("Customer", "b", acts=["InformIntent"], intents=["x"])]),
                dialogue("d3", [turn("Customer", "c", acts=["InformIntent"], intents=["y"])]),
            ],
        )
        records = select_intent_turns(load_transcripts(path), ActSource("gold"))
        assert reference_labels(records) == ["x", "x", "y"]

    def test_empty_list(self):
        assert reference_labels([]) == []

    def test_missing_reference_names_the_utterance(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            [dialogue("d9", [turn("Customer", "a", acts=["InformIntent"])])],
        )
        records = select_intent_turns(load_transcripts(path), ActSource("gold"))
        with pytest.raises(ValidationError, match="d9#0"):
            reference_labels(records)


class TestPredictedActsSidecar:
    def test_round_trip(self, tmp_path):
        path = write_lines(
            tmp_path / "acts.jsonl",
            [{"utterance_id": "d1#0", "dialog_acts": ["InformIntent"]}],
        )
        assert load_predicted_acts(path) == {"d1#0": ["InformIntent"]}

    def test_duplicate_id_rejected(self, tmp_path):
        path = write_lines(
            tmp_path / "acts.jsonl",
            [{"utterance_id": "u", "dialog_acts": []}, {"utterance_id": "u", "dialog_acts": []}],
        )
        with pytest.raises(ValidationError):
            load_predicted_acts(path)
