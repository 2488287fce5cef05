import itertools

import pytest
from hypothesis import given, settings, strategies as st

from octaspec.errors import ResourceError
from octaspec.exactalg import LETTERS, format_word, parse_word, translation_length, word_codes, word_matrix
from octaspec.words import (
    a_transform, bracelet_key, canonical, class_of, dihedral_orbit_size, enumerate_classes,
    max_word_length, orbit, orbit_size, rotate, star, trace_filter_disagreements, twist_residues,
)

from oracles import brute_force_classes, partition_by_closure

# rows: moves applied at the second site, columns: moves at the first site
COORDINATE_TABLE = [
    ["SR1", "L1R2", "R2R"],
    ["S1S2", "L2S", "RS1"],
    ["S2L", "LL1", "R1L2"],
]

words = st.lists(st.sampled_from(LETTERS), min_size=1, max_size=8).map(tuple)


def apply_moves(word, site, times):
    for _ in range(times):
        word = a_transform(word, site)
    return word


def test_coordinate_change_table():
    base = parse_word("SR1")
    for r, row in enumerate(COORDINATE_TABLE):
        for c, expected in enumerate(row):
            w = apply_moves(apply_moves(base, 0, c), 1, r)
            assert format_word(w) == expected


def test_coordinate_change_has_order_three():
    w = parse_word("SRL2R1")
    for i in range(len(w)):
        assert apply_moves(w, i, 3) == w


def test_coordinate_changes_commute():
    w = parse_word("SRL2R1")
    assert a_transform(a_transform(w, 1), 3) == a_transform(a_transform(w, 3), 1)


def test_single_letter_move_twists_twice():
    assert format_word(a_transform(parse_word("S"), 0)) == "L2"


def test_star_example():
    assert format_word(star(parse_word("SR1"))) == "RS1"


@given(words)
@settings(max_examples=200, deadline=None)
def test_star_is_involution(w):
    assert star(star(w)) == w


@given(words)
@settings(max_examples=200, deadline=None)
def test_moves_preserve_length(w):
    l = translation_length(word_matrix(w).trace())
    images = [rotate(w), star(w)] + [a_transform(w, i) for i in range(len(w))]
    for v in images:
        assert translation_length(word_matrix(v).trace()) == pytest.approx(l, abs=1e-9)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_orbits_partition_words(k):
    parts = partition_by_closure(k)
    assert sum(len(p) for p in parts) == 9 ** k
    for p in parts:
        sizes = {orbit_size(w) for w in p}
        assert sizes == {len(p)}
        assert {canonical(w) for w in p} == {min(p, key=word_codes)}


def test_canonical_is_orbit_minimum_length_four():
    for p in partition_by_closure(4):
        best = min(p, key=word_codes)
        sample = list(p)[:: max(1, len(p) // 7)]
        for w in sample:
            assert canonical(w) == best
            assert orbit_size(w) == len(p)


def test_residues_are_the_complete_invariant_length_three():
    parts = partition_by_closure(3)
    keys = [{bracelet_key(twist_residues(w)) for w in p} for p in parts]
    assert all(len(k) == 1 for k in keys)
    assert len({next(iter(k)) for k in keys}) == len(parts)


def test_dihedral_orbit_size():
    assert dihedral_orbit_size((0, 0, 0)) == 1
    assert dihedral_orbit_size((0, 1, 2)) == 6
    assert dihedral_orbit_size((0, 0, 1, 1)) == 4
    assert dihedral_orbit_size((0, 0, 1, 2)) == 8
    assert dihedral_orbit_size((0, 0, 1, 1, 2)) == 10


def test_class_of_fields():
    wc = class_of("R1SS")
    assert wc.name == "SSR1"
    assert wc.orbit_size == len(orbit(parse_word("SSR1"))) == 162
    assert wc.length == 3
    assert wc.trace == word_matrix(wc.canonical).trace()


@pytest.mark.parametrize("b", [2.5, 3.0, 3.5])
def test_enumeration_matches_brute_force(b):
    fast = enumerate_classes(0.0, b, max_word_len=5)
    ref = brute_force_classes(0.0, b, 5)
    got = {tuple(word_codes(ln.word_class.canonical)): ln for ln in fast}
    assert set(got) == set(ref)
    for key, (size, length, lam) in ref.items():
        wc = got[key].word_class
        assert wc.orbit_size == size
        assert wc.translation_length == pytest.approx(length, abs=1e-9)
        assert got[key].intensity == pytest.approx(lam, abs=1e-12)


def test_shortest_length_three_line_is_minimum_over_all_words():
    lengths = [translation_length(word_matrix(w).trace()) for w in itertools.product(LETTERS, repeat=3)]
    shortest = min(l for l in lengths if l > 0)
    lines = enumerate_classes(0.0, 3.0, max_word_len=3)
    assert lines[0].word_class.translation_length == pytest.approx(shortest, abs=1e-12)


def test_interval_is_closed():
    l = class_of("SSR1").translation_length
    names = {ln.word_class.name for ln in enumerate_classes(l, l, max_word_len=4)}
    assert "SSR1" in names


def test_empty_interval_and_guards():
    assert enumerate_classes(0.0, 0.0) == []
    with pytest.raises(ValueError):
        enumerate_classes(2.0, 1.0)
    with pytest.raises(ResourceError):
        enumerate_classes(0.0, 7.0)


def test_word_length_cap_grows_with_b():
    caps = [max_word_length(b) for b in (1.0, 2.0, 3.0, 4.0, 5.0)]
    assert caps == sorted(caps)
    assert max_word_length(0.0) == 0


def test_trace_filters_agree_on_small_spectrum():
    lines = enumerate_classes(0.0, 3.5, max_word_len=6)
    assert trace_filter_disagreements(lines) == []
    strict = enumerate_classes(0.0, 3.5, max_word_len=6, strict_trace=True)
    assert len(strict) == len(lines)
