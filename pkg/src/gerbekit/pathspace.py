"""Edge paths and the generating 2-arrows of the path 2-groupoid.

Paths are plain vertex tuples; repeats and backtracks are genuine data and
never normalized away.  2-arrows are stored as generator words; the path
sequence they sweep out is recovered by replay.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InapplicableGeneratorError
from .simplicial import SimplicialComplex

INSERT = "insert"
DELETE = "delete"
LOOP_INSERT = "loop_insert"
LOOP_DELETE = "loop_delete"


def validate_path(cx: SimplicialComplex, path: Sequence[int]) -> None:
    if len(path) == 0:
        raise InapplicableGeneratorError("empty path")
    for a, b in zip(path, path[1:]):
        if a != b and not cx.adjacent(a, b):
            raise InapplicableGeneratorError(f"vertices {a}, {b} not adjacent")


@dataclass(frozen=True)
class TwoCellGenerator:
    """One generating 2-arrow, located at ``position`` in the running path.

    kind        pattern            path action at site i
    ----        -------            ---------------------
    insert      (x, z, y)          (.., x, y, ..)       -> (.., x, z, y, ..)
    delete      (x, z, y)          (.., x, z, y, ..)    -> (.., x, y, ..)
    loop_insert (x, z, y)          (.., x, x, ..)       -> (.., x, z, y, x, ..)
    loop_delete (x, z, y)          (.., x, z, y, x, ..) -> (.., x, x, ..)
    """

    kind: str
    vertices: Tuple[int, ...]
    position: int

    def is_identity_step(self, path: Sequence[int]) -> bool:
        """Inserting a vertex equal to one of its neighbours is the identity
        2-arrow and leaves the path unchanged; same for the matching deletion."""
        if self.kind in (INSERT, DELETE):
            x, z, y = self.vertices
            return z == x or z == y
        return False


def apply_generator(cx: SimplicialComplex, path: Sequence[int],
                    gen: TwoCellGenerator) -> Tuple[int, ...]:
    """Apply one generator to a path, returning the new path."""
    path = tuple(path)
    i = gen.position
    kind = gen.kind
    if kind == INSERT:
        x, z, y = gen.vertices
        if i < 0 or i + 1 >= len(path) or path[i] != x or path[i + 1] != y:
            raise InapplicableGeneratorError(
                f"insert {gen.vertices} does not match path at {i}")
        if gen.is_identity_step(path):
            return path
        if not (cx.adjacent(x, z) or x == z) or not (cx.adjacent(z, y) or z == y):
            raise InapplicableGeneratorError(
                f"vertex {z} is not a common neighbour of {x}, {y}")
        return path[:i + 1] + (z,) + path[i + 1:]
    if kind == DELETE:
        x, z, y = gen.vertices
        if i + 2 >= len(path) or path[i:i + 3] != (x, z, y):
            raise InapplicableGeneratorError(
                f"delete {gen.vertices} does not match path at {i}")
        if gen.is_identity_step(path):
            return path
        return path[:i + 1] + path[i + 2:]
    if kind == LOOP_INSERT:
        x, z, y = gen.vertices
        if i + 1 >= len(path) or path[i] != x or path[i + 1] != x:
            raise InapplicableGeneratorError(
                f"loop insert {gen.vertices} needs ({x}, {x}) at {i}")
        for a, b in ((x, z), (z, y), (y, x)):
            if not cx.adjacent(a, b):
                raise InapplicableGeneratorError(f"vertices {a}, {b} not adjacent")
        return path[:i + 1] + (z, y) + path[i + 1:]
    if kind == LOOP_DELETE:
        x, z, y = gen.vertices
        if i + 3 >= len(path) or path[i:i + 4] != (x, z, y, x):
            raise InapplicableGeneratorError(
                f"loop delete {gen.vertices} does not match path at {i}")
        return path[:i + 1] + path[i + 3:]
    raise InapplicableGeneratorError(f"unknown generator kind {kind!r}")


def detect_backtrack(path: Sequence[int]) -> List[int]:
    """Indices i with path[i-1] = path[i+1] != path[i]."""
    return [i for i in range(1, len(path) - 1)
            if path[i - 1] == path[i + 1] != path[i]]


@dataclass(frozen=True)
class HomotopyWord:
    """A 2-arrow as a sequence of steps; each step is a tuple of generators
    applied left to right (horizontal composites keep several per step)."""

    start: Tuple[int, ...]
    steps: Tuple[Tuple[TwoCellGenerator, ...], ...]

    def __len__(self) -> int:
        return len(self.steps)

    def generators(self):
        for layer in self.steps:
            yield from layer

    def replay(self, cx: SimplicialComplex) -> List[Tuple[int, ...]]:
        """All intermediate paths, starting path included."""
        path = tuple(self.start)
        out = [path]
        for layer in self.steps:
            for gen in layer:
                path = apply_generator(cx, path, gen)
            out.append(path)
        return out

    def end(self, cx: SimplicialComplex) -> Tuple[int, ...]:
        return self.replay(cx)[-1]


def _gen(kind, verts, pos):
    return TwoCellGenerator(kind, tuple(verts), pos)


def tetra_sweep_word(cx: SimplicialComplex, v: int, w: int, x: int, y: int) -> HomotopyWord:
    """Closed sweep of the tetrahedron {v, w, x, y} from the constant path at v.

    Path sequence: (v,v) -> (v,w,y,v) -> (v,w,x,y,v) -> (v,w,x,v) -> (v,v),
    sweeping the faces {v,w,y}, {w,x,y}, {v,x,y}, {v,w,x} in that order.
    """
    for a, b in ((v, w), (v, x), (v, y), (w, x), (w, y), (x, y)):
        if not cx.adjacent(a, b):
            raise InapplicableGeneratorError(f"vertices {a}, {b} not adjacent")
    steps = (
        (_gen(LOOP_INSERT, (v, w, y), 0),),
        (_gen(INSERT, (w, x, y), 1),),
        (_gen(DELETE, (x, y, v), 2),),
        (_gen(LOOP_DELETE, (v, w, x), 0),),
    )
    return HomotopyWord((v, v), steps)


def face_scheme_words(cx: SimplicialComplex, v: int, w: int, x: int, y: int,
                      z: int) -> Tuple[HomotopyWord, ...]:
    """The five tetrahedral sweeps of the 4-simplex {v,w,x,y,z}, based at v.

    Each word starts and ends at (v, v).  The first four sweep the tetrahedra
    containing v; the fifth sweeps the opposite tetrahedron {w,x,y,z} through
    v-based paths and is the one with two-generator steps (its displayed
    composition glues pairs of generators horizontally).
    """
    for a in (v, w, x, y, z):
        for b in (v, w, x, y, z):
            if a != b and not cx.adjacent(a, b):
                raise InapplicableGeneratorError(f"vertices {a}, {b} not adjacent")
    F1 = HomotopyWord((v, v), (
        (_gen(LOOP_INSERT, (v, w, y), 0),),
        (_gen(INSERT, (w, x, y), 1),),
        (_gen(DELETE, (x, y, v), 2),),
        (_gen(LOOP_DELETE, (v, w, x), 0),),
    ))
    F2 = HomotopyWord((v, v), (
        (_gen(LOOP_INSERT, (v, z, y), 0),),
        (_gen(INSERT, (v, w, z), 0),),
        (_gen(DELETE, (w, z, y), 1),),
        # closing loop deletion: the starred variant cannot apply here
        (_gen(LOOP_DELETE, (v, w, y), 0),),
    ))
    F3 = HomotopyWord((v, v), (
        (_gen(LOOP_INSERT, (v, z, x), 0),),
        (_gen(INSERT, (x, y, v), 2),),
        (_gen(DELETE, (z, x, y), 1),),
        (_gen(LOOP_DELETE, (v, z, y), 0),),
    ))
    F4 = HomotopyWord((v, v), (
        (_gen(LOOP_INSERT, (v, w, x), 0),),
        (_gen(INSERT, (w, z, x), 1),),
        (_gen(DELETE, (v, w, z), 0),),
        (_gen(LOOP_DELETE, (v, z, x), 0),),
    ))
    F5 = HomotopyWord((v, v), (
        (_gen(LOOP_INSERT, (v, w, x), 0),),
        (_gen(INSERT, (w, z, x), 1), _gen(INSERT, (x, y, v), 3)),
        (_gen(DELETE, (v, w, z), 0), _gen(DELETE, (z, x, y), 1)),
        (_gen(INSERT, (v, w, z), 0),),
        (_gen(DELETE, (w, z, y), 1),),
        (_gen(INSERT, (w, x, y), 1),),
        (_gen(DELETE, (x, y, v), 2),),
        (_gen(LOOP_DELETE, (v, w, x), 0),),
    ))
    return F1, F2, F3, F4, F5


def word_to_text(word: HomotopyWord) -> str:
    """Compact notation for trace output, e.g. '[vwyv]* ; [wxy]* ; [xyv] ; [vwxv]'."""
    parts = []
    for layer in word.steps:
        bits = []
        for g in layer:
            a, b, c = g.vertices
            if g.kind == INSERT:
                bits.append(f"[{a}{b}{c}]*")
            elif g.kind == DELETE:
                bits.append(f"[{a}{b}{c}]")
            elif g.kind == LOOP_INSERT:
                bits.append(f"[{a}{b}{c}{a}]*")
            else:
                bits.append(f"[{a}{b}{c}{a}]")
        parts.append(" x ".join(bits))
    return " ; ".join(parts)
