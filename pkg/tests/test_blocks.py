import pytest
from hypothesis import given, settings, strategies as st

from scriptforge.synthesis import CharacterProfile, NarrativeDirectives, Novel, StructuredInput
from scriptforge.synthesis.blocks import (
    extract_block,
    novel_from_text,
    parse_directives_body,
    parse_input,
    serialize_directives,
    serialize_input,
    serialize_novel,
    serialize_stage1,
)

DIRECTIVES = NarrativeDirectives(
    exposition_strategy="Open mid-argument; withhold the letter until the final beat.",
    narrative_pacing="Slow build, then a sharp turn at the midpoint.",
    character_action="Maya paces; Jonas blocks the door.",
    character_emotion="Suppressed anger giving way to relief.",
)

NOVEL = Novel(paragraphs=["First paragraph of prose.", "Second paragraph follows."])

BRIEF = StructuredInput(
    outline="Maya confronts Jonas over the ledger.",
    previous_context="Maya found the altered entry.",
    character_profiles=[
        CharacterProfile("Maya", "archivist", "sharp", "sister of Jonas"),
        CharacterProfile("Jonas", "clerk", "anxious", "brother of Maya"),
    ],
    metadata=["Keep the scene under two minutes.", "End on the reveal."],
)


def test_directives_round_trip():
    text = serialize_directives(DIRECTIVES)
    assert text.startswith("<directives>") and text.rstrip().endswith("</directives>")
    body = extract_block("directives", text)
    assert parse_directives_body(body) == DIRECTIVES


def test_directive_labels_present():
    text = serialize_directives(DIRECTIVES)
    for label in ["Exposition Strategy:", "Narrative Pacing:", "Character Action:",
                  "Character Emotion:"]:
        assert label in text


def test_novel_round_trip():
    text = serialize_novel(NOVEL)
    again = novel_from_text(extract_block("novel", text))
    assert again.paragraphs == NOVEL.paragraphs


def test_input_round_trip():
    text = serialize_input(BRIEF)
    again = parse_input(text)
    assert again == BRIEF


def test_input_block_order():
    text = serialize_input(BRIEF)
    idx = [text.index(t) for t in
           ["<outline>", "<previous_context>", "<characters>", "<metadata>"]]
    assert idx == sorted(idx)
    assert text.startswith("<input>")


def test_stage1_order_directives_then_novel():
    text = serialize_stage1(DIRECTIVES, NOVEL)
    assert text.index("<directives>") < text.index("<novel>")


def test_extract_block_missing_returns_none():
    assert extract_block("novel", "no tags here") is None


def test_structured_input_validation():
    with pytest.raises(ValueError):
        StructuredInput(outline="", previous_context="x", character_profiles=[], metadata=[])
    with pytest.raises(ValueError):
        StructuredInput(
            outline="o",
            previous_context="x",
            character_profiles=[
                CharacterProfile("A", "b", "p", "r"),
                CharacterProfile("A", "b2", "p2", "r2"),
            ],
            metadata=[],
        )


def test_novel_requires_paragraphs():
    with pytest.raises(ValueError):
        Novel(paragraphs=[])


_TEXT = st.text(
    alphabet=st.characters(blacklist_characters="<>{}", blacklist_categories=("Cs", "Cc")),
    min_size=1,
    max_size=60,
).map(lambda s: " ".join(s.split())).filter(
    lambda s: s and not s.startswith("-") and ":" not in s
)


@settings(max_examples=100, deadline=None)
@given(outline=_TEXT, prev=_TEXT, meta=st.lists(_TEXT, max_size=3))
def test_input_round_trip_property(outline, prev, meta):
    brief = StructuredInput(
        outline=outline,
        previous_context=prev,
        character_profiles=[CharacterProfile("Maya", "b", "p", "r")],
        metadata=meta,
    )
    assert parse_input(serialize_input(brief)) == brief
