"""Abstract simplicial complexes with oriented cells up to dimension 5.

Cells are stored once, as ascending vertex tuples; any other ordering is
resolved on the fly through the parity of the sorting permutation.  Based
loops traverse a cell as a closed edge path from its smallest vertex, e.g. a
triangle {x, y, z} gives the loops (x, y, z, x) and (x, z, y, x).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import MalformedCellError, UnsupportedDimensionError

MAX_DIM = 5

Cell = Tuple[int, ...]


def perm_parity(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` ascending."""
    seq = list(seq)
    target = sorted(seq)
    sign = 1
    for i in range(len(seq)):
        if seq[i] != target[i]:
            j = seq.index(target[i], i + 1)
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class OrientedCell:
    """An ordered cell together with its parity relative to ascending order."""

    vertices: Cell
    parity: int

    @classmethod
    def from_vertices(cls, vertices: Sequence[int]) -> "OrientedCell":
        vertices = tuple(int(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise MalformedCellError(f"repeated vertex in cell {vertices}")
        return cls(vertices, perm_parity(vertices))

    @property
    def canonical(self) -> Cell:
        return tuple(sorted(self.vertices))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


def cell_key(cell: Iterable[int]) -> str:
    """Canonical string key: dash-joined ascending ids, e.g. '0-2-3'."""
    return "-".join(str(v) for v in sorted(cell))


def parse_cell_key(key: str) -> Cell:
    return tuple(int(p) for p in key.split("-"))


class SimplicialComplex:
    """Finite abstract simplicial complex, immutable after construction."""

    def __init__(self, n_vertices: int, maximal: Sequence[Cell]):
        self.n_vertices = int(n_vertices)
        self.maximal: Tuple[Cell, ...] = tuple(tuple(sorted(c)) for c in maximal)
        self._cells: Dict[int, Tuple[Cell, ...]] = {}
        sets: Dict[int, set] = {k: set() for k in range(MAX_DIM + 1)}
        for cell in self.maximal:
            if len(set(cell)) != len(cell):
                raise MalformedCellError(f"repeated vertex in cell {cell}")
            if any(v < 0 or v >= self.n_vertices for v in cell):
                raise MalformedCellError(f"vertex id out of range in {cell}")
            if len(cell) - 1 > MAX_DIM:
                raise UnsupportedDimensionError(
                    f"cell {cell} has dimension {len(cell) - 1} > {MAX_DIM}")
            for k in range(1, len(cell) + 1):
                for face in combinations(cell, k):
                    sets[k - 1].add(face)
        for v in range(self.n_vertices):
            sets[0].add((v,))
        for k in range(MAX_DIM + 1):
            self._cells[k] = tuple(sorted(sets[k]))
        self._cell_sets = {k: frozenset(v) for k, v in self._cells.items()}
        self._adj: Tuple[frozenset, ...] = tuple(
            frozenset(b if a == v else a
                      for (a, b) in self._cells[1] if v in (a, b))
            for v in range(self.n_vertices)
        )

    # ---- queries ----------------------------------------------------------

    def cells(self, k: int) -> Tuple[Cell, ...]:
        if not 0 <= k <= MAX_DIM:
            raise UnsupportedDimensionError(f"dimension {k} outside 0..{MAX_DIM}")
        return self._cells[k]

    @property
    def edges(self) -> Tuple[Cell, ...]:
        return self._cells[1]

    @property
    def triangles(self) -> Tuple[Cell, ...]:
        return self._cells[2]

    @property
    def tetrahedra(self) -> Tuple[Cell, ...]:
        return self._cells[3]

    @property
    def four_cells(self) -> Tuple[Cell, ...]:
        return self._cells[4]

    def has_cell(self, cell: Sequence[int]) -> bool:
        cell = tuple(sorted(cell))
        k = len(cell) - 1
        return 0 <= k <= MAX_DIM and cell in self._cell_sets[k]

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def adjacent(self, x: int, y: int) -> bool:
        return y in self._adj[x]

    def __repr__(self):
        counts = ", ".join(f"{len(self._cells[k])} {k}-cells"
                           for k in range(MAX_DIM + 1) if self._cells[k])
        return f"SimplicialComplex({self.n_vertices} vertices; {counts})"

    # ---- serialization ----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"vertices": self.n_vertices,
                           "maximal": [list(c) for c in self.maximal]})

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        data = json.loads(text)
        return cls(data["vertices"], [tuple(c) for c in data["maximal"]])


def build_complex(maximal: Sequence[Sequence[int]],
                  n_vertices: int | None = None) -> SimplicialComplex:
    """Complex generated by the given maximal cells (face closure computed)."""
    maximal = [tuple(int(v) for v in c) for c in maximal]
    if not maximal:
        raise MalformedCellError("no maximal cells given")
    for c in maximal:
        if not c:
            raise MalformedCellError("empty cell")
    if n_vertices is None:
        n_vertices = 1 + max(max(c) for c in maximal)
    return SimplicialComplex(n_vertices, maximal)


def standard_simplex(n: int) -> SimplicialComplex:
    """The full n-simplex with all faces."""
    if not 0 <= n <= MAX_DIM:
        raise UnsupportedDimensionError(f"standard simplex dimension {n} outside 0..{MAX_DIM}")
    return build_complex([tuple(range(n + 1))])


def boundary_complex(n: int) -> SimplicialComplex:
    """The boundary sphere of the n-simplex; for n = 5 a closed 4-manifold."""
    if not 1 <= n <= MAX_DIM:
        raise UnsupportedDimensionError(f"boundary complex dimension {n} outside 1..{MAX_DIM}")
    verts = range(n + 1)
    return build_complex(list(combinations(verts, n)))


def based_loops(cx: SimplicialComplex, k: int) -> List[Cell]:
    """Based loops traversing each k-cell (k = 2 or 3) in both orientations.

    The base point is the smallest vertex; the second orientation is the
    reversed traversal.
    """
    if k == 2:
        out = []
        for (a, b, c) in cx.triangles:
            out.append((a, b, c, a))
            out.append((a, c, b, a))
        return out
    if k == 3:
        out = []
        for (a, b, c, d) in cx.tetrahedra:
            out.append((a, b, c, d, a))
            out.append((a, d, c, b, a))
        return out
    raise UnsupportedDimensionError(f"based loops only for k in (2, 3), got {k}")


def loop_is_degenerate(loop: Sequence[int]) -> bool:
    """True when the traversed vertices repeat (e.g. (x, z, z, x))."""
    body = tuple(loop[:-1])
    return len(set(body)) != len(body)


def loop_reverse(loop: Sequence[int]) -> Cell:
    return tuple(reversed(tuple(loop)))
