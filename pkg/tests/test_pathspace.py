"""Path moves, backtrack detection, and the pasting-scheme words."""

import pytest
from hypothesis import given, settings, strategies as st

from gerbekit.errors import InapplicableGeneratorError
from gerbekit.pathspace import (DELETE, INSERT, LOOP_DELETE, LOOP_INSERT,
                                TwoCellGenerator, apply_generator,
                                detect_backtrack, face_scheme_words,
                                tetra_sweep_word, word_to_text)
from gerbekit.simplicial import standard_simplex

CX = standard_simplex(4)


def gen(kind, verts, pos):
    return TwoCellGenerator(kind, tuple(verts), pos)


def test_insert_vertex():
    assert apply_generator(CX, (0, 1), gen(INSERT, (0, 2, 1), 0)) == (0, 2, 1)


def test_loop_insert_on_constant_pair():
    assert apply_generator(CX, (0, 0), gen(LOOP_INSERT, (0, 2, 1), 0)) == (0, 2, 1, 0)


def test_identity_insert_leaves_path():
    path = (0, 1)
    assert apply_generator(CX, path, gen(INSERT, (0, 0, 1), 0)) == path
    assert apply_generator(CX, path, gen(INSERT, (0, 1, 1), 0)) == path


def test_inapplicable_generator_raises():
    with pytest.raises(InapplicableGeneratorError):
        apply_generator(CX, (0, 1), gen(DELETE, (0, 2, 1), 0))
    with pytest.raises(InapplicableGeneratorError):
        apply_generator(CX, (0, 1), gen(INSERT, (1, 2, 0), 0))


def test_detect_backtrack_examples():
    assert detect_backtrack((0, 2, 0, 1)) == [1]
    assert detect_backtrack((0, 1, 2)) == []
    assert detect_backtrack((0, 2, 0, 3, 0)) == [1, 3]


@given(st.lists(st.integers(0, 4), min_size=1, max_size=12))
def test_detect_backtrack_against_scan_oracle(vs):
    path = tuple(vs)
    oracle = [i for i in range(1, len(path) - 1)
              if path[i - 1] == path[i + 1] and path[i] != path[i - 1]]
    assert detect_backtrack(path) == oracle


@st.composite
def walks(draw):
    """Random edge paths on the 4-simplex (all vertices adjacent)."""
    n = draw(st.integers(2, 8))
    return tuple(draw(st.integers(0, 4)) for _ in range(n))


@settings(max_examples=60)
@given(walks(), st.data())
def test_insert_delete_inverse_law(path, data):
    i = data.draw(st.integers(0, len(path) - 2))
    x, y = path[i], path[i + 1]
    z = data.draw(st.integers(0, 4))
    ins = gen(INSERT, (x, z, y), i)
    if z == x or z == y:
        assert apply_generator(CX, path, ins) == path
        return
    longer = apply_generator(CX, path, ins)
    assert longer == path[:i + 1] + (z,) + path[i + 1:]
    back = apply_generator(CX, longer, gen(DELETE, (x, z, y), i))
    assert back == path


def test_no_normalization_of_repeats():
    # consecutive repeats and backtracks survive every move that touches them
    path = (0, 1, 1, 2)
    out = apply_generator(CX, path, gen(INSERT, (1, 3, 2), 2))
    assert out == (0, 1, 1, 3, 2)


def test_tetra_sweep_word_path_sequence():
    word = tetra_sweep_word(CX, 0, 1, 2, 3)
    paths = word.replay(CX)
    assert paths == [(0, 0), (0, 1, 3, 0), (0, 1, 2, 3, 0), (0, 1, 2, 0), (0, 0)]
    assert len(word) == 4


def test_face_scheme_words_are_closed_sweeps():
    words = face_scheme_words(CX, 0, 1, 2, 3, 4)
    for w in words:
        paths = w.replay(CX)
        assert paths[0] == (0, 0) and paths[-1] == (0, 0)


def test_face_scheme_f5_has_eight_steps():
    words = face_scheme_words(CX, 0, 1, 2, 3, 4)
    assert [len(w) for w in words] == [4, 4, 4, 4, 8]
    # the two horizontal composites carry two generators each
    assert sorted(len(layer) for layer in words[4].steps) == [1, 1, 1, 1, 1, 1, 2, 2]


def test_face_schemes_cover_all_tetrahedra():
    words = face_scheme_words(CX, 0, 1, 2, 3, 4)
    swept = []
    for w in words:
        cells = set()
        for g in w.generators():
            cells.add(tuple(sorted(set(g.vertices) | {w.start[0]}))
                      if g.kind in (LOOP_INSERT, LOOP_DELETE)
                      else tuple(sorted(g.vertices)))
        swept.append(cells)
    # the first four words sweep the four base-containing tetrahedra
    for w_cells, tet in zip(swept[:4], [(0, 1, 2, 3), (0, 1, 3, 4),
                                        (0, 2, 3, 4), (0, 1, 2, 4)]):
        faces = {tet[:k] + tet[k + 1:] for k in range(4)}
        assert w_cells == faces


def test_face_scheme_requires_adjacency():
    cx = standard_simplex(3)
    with pytest.raises(InapplicableGeneratorError):
        tetra_sweep_word(cx, 0, 1, 2, 4)


def test_word_to_text():
    word = tetra_sweep_word(CX, 0, 1, 2, 3)
    assert word_to_text(word) == "[0130]* ; [123]* ; [230] ; [0120]"
