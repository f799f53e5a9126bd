from pathlib import Path

import pytest

from wakit.documents import TextDocument
from wakit.engines.ged import GedEngine
from wakit.engines.gec import GecEngine
from wakit.engines.resources import ConfusionTable

DATA = Path(__file__).parents[1] / "src" / "wakit" / "data"


@pytest.fixture(scope="module")
def ged():
    return GedEngine(ConfusionTable.load(DATA / "confusion.tsv"))


@pytest.fixture(scope="module")
def gec(ged):
    return GecEngine(ged)


def spans(text, diagnostics):
    doc = TextDocument("u", 0, text)
    return [(d.code,) + doc.range_to_offsets(d.range) for d in diagnostics]


class TestGed:
    def test_empty_text(self, ged):
        assert ged.run("") == []

    def test_repeated_word(self, ged):
        text = "the the cat"
        # Second "the" occupies offsets 4..7; the document-initial
        # lowercase "the" independently trips sentence-case.
        assert spans(text, ged.run(text)) == [
            ("sentence-case", 0, 3),
            ("repeated-word", 4, 7),
        ]

    def test_repeated_word_case_insensitive(self, ged):
        text = "The the cat"
        assert spans(text, ged.run(text)) == [("repeated-word", 4, 7)]

    def test_a_before_vowel(self, ged):
        text = "He ate a apple"
        assert spans(text, ged.run(text)) == [("a-an", 7, 8)]

    def test_an_before_consonant(self, ged):
        text = "He saw an dog"
        assert spans(text, ged.run(text)) == [("a-an", 7, 9)]

    def test_a_an_exceptions(self, ged):
        assert ged.run("He spent an hour there") == []
        assert ged.run("She attends a university") == []

    def test_sentence_initial_lowercase(self, ged):
        text = "hello. world"
        assert spans(text, ged.run(text)) == [
            ("sentence-case", 0, 5),
            ("sentence-case", 7, 12),
        ]

    def test_confusion_table(self, ged):
        text = "Teh cat"
        assert spans(text, ged.run(text)) == [("confusion", 0, 3)]

    def test_double_space(self, ged):
        text = "Fine  day"
        assert spans(text, ged.run(text)) == [("double-space", 4, 6)]

    def test_overlapping_rules_all_reported(self, ged):
        text = "Go. teh teh"
        # "teh" at 4..7 (sentence-case + confusion), second at 8..11
        # (repeated-word + confusion). All four findings survive.
        assert spans(text, ged.run(text)) == [
            ("confusion", 4, 7),
            ("sentence-case", 4, 7),
            ("confusion", 8, 11),
            ("repeated-word", 8, 11),
        ]

    def test_sorted_by_start(self, ged):
        text = "teh  cat cat"
        offsets = [s[1] for s in spans(text, ged.run(text))]
        assert offsets == sorted(offsets)

    def test_deterministic(self, ged):
        text = "teh teh  a apple. oops"
        first = [d.to_json() for d in ged.run(text)]
        second = [d.to_json() for d in ged.run(text)]
        assert first == second


def apply_action(text, action):
    doc = TextDocument("u", 0, text)
    assert len(action.edits) == 1
    edit = action.edits[0]
    start, end = doc.range_to_offsets(edit.range)
    return text[:start] + edit.newText + text[end:]


class TestGec:
    def test_a_an_fix(self, ged, gec):
        text = "He ate a apple"
        diag = ged.run(text)[0]
        actions = gec.actions_for("u", text, diag)
        assert actions[0].title == 'Replace "a" with "an"'
        assert apply_action(text, actions[0]) == "He ate an apple"

    def test_repeated_word_fix_removes_leading_space(self, ged, gec):
        text = "The the cat"
        diag = ged.run(text)[0]
        fixed = apply_action(text, gec.actions_for("u", text, diag)[0])
        assert fixed == "The cat"

    def test_sentence_case_fix(self, ged, gec):
        text = "hello. world"
        diags = ged.run(text)
        fixed = apply_action(text, gec.actions_for("u", text, diags[0])[0])
        assert fixed == "Hello. world"

    def test_confusion_multiple_rights_in_table_order(self, ged, gec):
        text = "Go ther now"
        diag = ged.run(text)[0]
        actions = gec.actions_for("u", text, diag)
        assert [a.edits[0].newText for a in actions] == ["there", "their"]

    def test_confusion_preserves_capitalization(self, ged, gec):
        text = "Teh cat"
        diag = ged.run(text)[0]
        assert apply_action(text, gec.actions_for("u", text, diag)[0]) == "The cat"

    def test_double_space_fix(self, ged, gec):
        text = "a  b"
        diag = next(d for d in ged.run(text) if d.code == "double-space")
        assert apply_action(text, gec.actions_for("u", text, diag)[0]) == "a b"

    def test_stale_diagnostic_yields_no_actions(self, ged, gec):
        text = "the the cat"
        diag = ged.run(text)[0]
        assert gec.actions_for("u", "totally different", diag) == []

    def test_fixpoint_first_action_removes_code_at_range(self, ged, gec):
        texts = [
            "the the cat",
            "He ate a apple",
            "hello. world",
            "Teh cat sat",
            "Fine  day today",
            "Go. teh teh",
        ]
        for text in texts:
            for diag in ged.run(text):
                doc = TextDocument("u", 0, text)
                start, end = doc.range_to_offsets(diag.range)
                actions = gec.actions_for("u", text, diag)
                assert actions, (text, diag)
                fixed = apply_action(text, actions[0])
                fixed_doc = TextDocument("u", 0, fixed)
                e_start, _ = doc.range_to_offsets(actions[0].edits[0].range)
                delta = len(actions[0].edits[0].newText) - (
                    doc.range_to_offsets(actions[0].edits[0].range)[1] - e_start
                )
                for new_diag in ged.run(fixed):
                    ns, ne = fixed_doc.range_to_offsets(new_diag.range)
                    if new_diag.code != diag.code:
                        continue
                    # No same-code diagnostic overlapping the edited span.
                    edit_lo = e_start
                    edit_hi = e_start + len(actions[0].edits[0].newText)
                    assert ne <= edit_lo or ns >= edit_hi, (text, fixed, new_diag)
