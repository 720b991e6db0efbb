from pathlib import Path

import pytest

from minipencil.adapter import ast_to_blocks
from minipencil.blocks import (
    BlockDocument,
    MarkupError,
    MarkupKind,
    from_markup,
    layout,
    project_text,
    to_markup,
)
from minipencil.lang import format_program, parse
from conftest import SIGN_CHECK, OCTAGON_WALK
from program_gen import program_corpus

GOLDEN = Path(__file__).parent / "golden"


def doc_for(source: str) -> BlockDocument:
    return ast_to_blocks(parse(source))


def test_single_block_markup():
    markup = to_markup(doc_for("fd 100\n"))
    assert markup == '<block type="fd" id="1">fd <socket name="args">100</socket></block>\n'


def test_empty_document_markup():
    assert to_markup(BlockDocument()) == ""
    assert from_markup("") == BlockDocument()


@pytest.mark.parametrize("name, source", [
    ("fd", "fd 100\n"),
    ("sign_check", SIGN_CHECK),
    ("octagon_walk", OCTAGON_WALK),
])
def test_golden_markup_files(name, source):
    expected = (GOLDEN / f"{name}.blx").read_text(encoding="utf-8")
    assert to_markup(doc_for(source)) == expected
    assert from_markup(expected) == doc_for(source)


def test_markup_round_trip_on_generated_programs():
    for program in program_corpus(150, seed=21):
        doc = ast_to_blocks(program)
        assert from_markup(to_markup(doc)) == doc


def test_markup_byte_stable_across_runs():
    for program in program_corpus(40, seed=22):
        source = format_program(program)
        first = to_markup(ast_to_blocks(parse(source)))
        second = to_markup(ast_to_blocks(parse(source)))
        assert first == second


def test_projection_matches_canonical_text():
    for program in program_corpus(150, seed=23):
        assert project_text(ast_to_blocks(program)) == format_program(program)


def test_special_characters_escaped():
    doc = doc_for("write 'a < b & c > d'\n")
    markup = to_markup(doc)
    assert "&lt;" in markup and "&amp;" in markup and "&gt;" in markup
    assert from_markup(markup) == doc


@pytest.mark.parametrize(
    "markup",
    [
        '<block type="fd" id="1">',  # unclosed block
        '<socket name="x">1</socket>',  # socket outside any block
        '<block type="fd" id="1">fd </block></block>',  # stray end tag
        '<block type="fd" id="1"><block type="rt" id="1"></block></block>',  # dup id
        '<block type="fd" id="x"></block>',  # non-integer id
        '<block id="1" type="fd"></block>',  # wrong attribute order
        '<block type="fd" id="1"><socket name="a">1\n2</socket></block>',  # newline in socket
        "</socket>",
        "<bogus>",
    ],
)
def test_malformed_markup_rejected(markup):
    with pytest.raises(MarkupError) as err:
        from_markup(markup)
    assert err.value.diagnostics[0].code == "MARKUP_MALFORMED"
    assert err.value.offset >= 0


def test_socket_inside_socket_rejected():
    bad = '<block type="fd" id="1"><socket name="a"><socket name="b"></socket></socket></block>'
    with pytest.raises(MarkupError):
        from_markup(bad)


def test_layout_rows_and_spacing_rule():
    rows = layout(doc_for("fd 100\nrt 45\n"))
    assert [r.row_index for r in rows] == [0, 1]
    assert [r.depth for r in rows] == [0, 0]
    assert rows[0].leading_blank is False
    assert rows[1].leading_blank is True  # fd -> rt is a type change


def test_layout_same_type_has_no_blank():
    rows = layout(doc_for("fd 100\nfd 50\nrt 45\n"))
    assert [r.leading_blank for r in rows] == [False, False, True]


def test_layout_depths_follow_nesting():
    rows = layout(doc_for(OCTAGON_WALK))
    assert [r.depth for r in rows] == [0, 0, 0, 1, 1]
    # block ids are assigned in document order starting at 1
    assert [list(r.block_ids) for r in rows] == [[1], [2], [3], [4], [5]]


def test_layout_empty_document():
    assert layout(BlockDocument()) == []


def test_layout_else_rows_sit_inside_their_block():
    rows = layout(doc_for(SIGN_CHECK))
    # assign, if-header, then-row, else-row, else-body-row
    assert [r.depth for r in rows] == [0, 0, 1, 1, 1]
    assert [list(r.block_ids) for r in rows] == [[1], [2], [3], [], [4]]


def test_block_ids_unique_and_ordered():
    for program in program_corpus(60, seed=24):
        doc = ast_to_blocks(program)
        ids = doc.block_ids()
        assert ids == sorted(ids)
        assert len(set(ids)) == len(ids)
        if ids:
            assert ids[0] == 1
