"""Combinatorial G-bundles with connection.

A bundle is an assignment of a group element to every oriented edge with
f_yx = f_xy^-1; holonomy multiplies the values along an edge path, and the
curvature is the holonomy of the based triangle loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .cochain import Cochain1, Cochain2
from .errors import LinearizationDomainError, OutOfDomainError
from .liegroup import LieGroup
from .simplicial import SimplicialComplex


@dataclass
class BundleData:
    """Connection data: one group element per canonical edge."""

    group: LieGroup
    cx: SimplicialComplex
    f: Cochain1

    @classmethod
    def from_edge_map(cls, group: LieGroup, cx: SimplicialComplex,
                      values: Dict[tuple, np.ndarray]) -> "BundleData":
        return cls(group, cx, Cochain1(group, "group", values))


BundleGauge = Dict[int, np.ndarray]  # vertex -> group element


def holonomy(b: BundleData, path) -> np.ndarray:
    """Ordered product of the connection along an edge path."""
    out = b.group.eye.copy()
    for i, j in zip(path, path[1:]):
        if i != j:
            out = out @ b.f.read(i, j)
    return out


def curvature_c(b: BundleData) -> Cochain2:
    """Holonomy of every canonical based triangle loop."""
    c = Cochain2(b.group, "group")
    for tri in b.cx.triangles:
        c.set(tri, holonomy(b, tri + (tri[0],)))
    return c


def mult_bianchi_defect(b: BundleData, tetra) -> float:
    """|LHS RHS^-1 - I| for  c_wxyw c_wyzw c_wzxw = f_wx c_xyzx f_xw.

    An algebraic identity in G, so the defect is numerical roundoff only.
    """
    w, x, y, z = tetra[0], tetra[1], tetra[2], tetra[3]
    lhs = (holonomy(b, (w, x, y, w))
           @ holonomy(b, (w, y, z, w))
           @ holonomy(b, (w, z, x, w)))
    rhs = b.f.read(w, x) @ holonomy(b, (x, y, z, x)) @ b.f.read(x, w)
    return float(np.linalg.norm(lhs @ np.linalg.inv(rhs) - b.group.eye))


def gauge_transform(b: BundleData, g: BundleGauge) -> BundleData:
    """f'_xy = g_x^-1 f_xy g_y; curvature conjugates by g at the base point."""
    out = Cochain1(b.group, "group")
    for (i, j) in b.f.edges():
        out.set((i, j), np.linalg.inv(g[i]) @ b.f.read(i, j) @ g[j])
    return BundleData(b.group, b.cx, out)


def linearize_bundle(b: BundleData) -> Cochain1:
    """A = log f, edge by edge; antisymmetric because f inverts on reversal."""
    A = Cochain1(b.group, "algebra")
    for e in b.f.edges():
        try:
            A.set(e, b.group.log(b.f.read(*e)))
        except OutOfDomainError as exc:
            raise LinearizationDomainError(f"edge {e}: {exc}") from exc
    return A


def linearize_curvature(b: BundleData) -> Cochain2:
    """F = log c on every canonical based loop (the group-accurate curvature
    2-form; agrees with the quadratic formula applied to log f through
    second order)."""
    F = Cochain2(b.group, "algebra")
    c = curvature_c(b)
    for tri in c.triangles():
        try:
            F.set(tri, b.group.log(c.read_loop(tri + (tri[0],))))
        except OutOfDomainError as exc:
            raise LinearizationDomainError(f"triangle {tri}: {exc}") from exc
    return F
