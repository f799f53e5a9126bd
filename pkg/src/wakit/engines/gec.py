"""Rule-based grammatical error correction: a fix per detection rule."""

from __future__ import annotations

from ..capabilities import CodeAction, Diagnostic, TextEdit
from ..documents import TextDocument
from . import ged as rules
from .ged import GedEngine


def _match_case(replacement: str, original: str) -> str:
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


class GecEngine:
    """Produces code actions for diagnostics the GED engine emitted."""

    def __init__(self, ged: GedEngine):
        self.ged = ged

    def actions_for(
        self, uri: str, text: str, diagnostic: Diagnostic
    ) -> list[CodeAction]:
        """Actions fixing one diagnostic; [] if it is stale for this text."""
        doc = TextDocument(uri, 0, text)
        try:
            start, end = doc.range_to_offsets(diagnostic.range)
        except Exception:
            return []
        if not self._still_present(text, diagnostic.code, start, end):
            return []
        fragment = text[start:end]
        code = diagnostic.code

        if code == rules.R_REPEATED:
            # Delete the repeat together with the whitespace before it.
            del_start = start
            while del_start > 0 and text[del_start - 1].isspace():
                del_start -= 1
            return [
                self._action(
                    f'Remove repeated "{fragment}"',
                    code,
                    uri,
                    doc,
                    del_start,
                    end,
                    "",
                )
            ]

        if code == rules.R_ARTICLE:
            swapped = "an" if fragment.casefold() == "a" else "a"
            swapped = _match_case(swapped, fragment)
            return [
                self._action(
                    f'Replace "{fragment}" with "{swapped}"',
                    code,
                    uri,
                    doc,
                    start,
                    end,
                    swapped,
                )
            ]

        if code == rules.R_SENTENCE_CASE:
            fixed = fragment[:1].upper() + fragment[1:]
            return [
                self._action(
                    f'Capitalize "{fragment}"', code, uri, doc, start, end, fixed
                )
            ]

        if code == rules.R_CONFUSION:
            actions = []
            for right in self.ged.confusion.corrections(fragment):
                fixed = _match_case(right, fragment)
                actions.append(
                    self._action(
                        f'Replace "{fragment}" with "{fixed}"',
                        code,
                        uri,
                        doc,
                        start,
                        end,
                        fixed,
                    )
                )
            return actions

        if code == rules.R_DOUBLE_SPACE:
            return [
                self._action(
                    "Collapse to a single space", code, uri, doc, start, end, " "
                )
            ]

        return []

    def _still_present(self, text: str, code: str, start: int, end: int) -> bool:
        doc = TextDocument("mem:gec", 0, text)
        for diag in self.ged.run(text):
            s, e = doc.range_to_offsets(diag.range)
            if diag.code == code and s == start and e == end:
                return True
        return False

    @staticmethod
    def _action(
        title: str,
        code: str,
        uri: str,
        doc: TextDocument,
        start: int,
        end: int,
        new_text: str,
    ) -> CodeAction:
        edit = TextEdit(uri, doc.offsets_to_range(start, end), new_text)
        return CodeAction(title, (code,), (edit,))
