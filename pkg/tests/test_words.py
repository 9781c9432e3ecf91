import pytest

from qtree.words import (Alphabet, common_prefix_length, enumerate_words, parse_word, render_word,
                         split_prefix, words_upto)


def test_enumerate_counts_and_order():
    assert enumerate_words(2, 0) == [()]
    assert enumerate_words(3, 2)[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert len(enumerate_words(Alphabet(4), 3)) == 64
    assert len(words_upto(2, 3)) == 15


def test_render_parse_roundtrip():
    for w in words_upto(3, 3):
        assert parse_word(render_word(w)) == w
    assert render_word(()) == "e"


def test_prefix_helpers():
    assert split_prefix((0, 1, 2), 1) == ((0,), (1, 2))
    assert common_prefix_length((0, 1, 2), (0, 1, 0)) == 2
    assert common_prefix_length((), (1,)) == 0
    with pytest.raises(ValueError):
        split_prefix((0,), 2)


@pytest.mark.parametrize("bad", ["", "0a", "x"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_word(bad)


def test_alphabet_bounds():
    with pytest.raises(ValueError):
        Alphabet(1)
    with pytest.raises(ValueError):
        Alphabet(11)
    with pytest.raises(ValueError):
        parse_word("02", 2)
