from wakit.engines.tokenize import sentence_starts, tokenize


def words(text):
    return [t.text for t in tokenize(text)]


def test_strips_surrounding_punctuation():
    assert words('"Hello," she said.') == ["Hello", "she", "said"]


def test_preserves_inner_apostrophes_and_hyphens():
    assert words("don't half-baked") == ["don't", "half-baked"]


def test_offsets_point_at_stripped_core():
    toks = tokenize("(tea)")
    assert toks[0].text == "tea"
    assert (toks[0].start, toks[0].end) == (1, 4)


def test_sentence_starts_period_question_exclamation():
    text = "One. Two? Three! Four"
    assert sentence_starts(text) == [0, 4, 9, 16]


def test_abbreviations_do_not_end_sentences():
    text = "Mr. Smith waved. e.g. apples"
    assert sentence_starts(text) == [0, 16]


def test_sentence_initial_flags():
    toks = tokenize("hello there. world ends")
    flags = [(t.text, t.sentence_initial) for t in toks]
    assert flags == [
        ("hello", True),
        ("there", False),
        ("world", True),
        ("ends", False),
    ]


def test_case_fold():
    toks = tokenize("TEA")
    assert toks[0].folded == "tea"


def test_punctuation_only_runs_produce_no_tokens():
    assert words("... --- !!!") == []
