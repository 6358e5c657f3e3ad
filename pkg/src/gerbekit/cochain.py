"""V-valued simplicial cochains and the discrete operators on them.

Storage is sparse: one value per canonical cell (ascending vertex ids).
Reading at any other ordering resolves the sign or inverse on demand:

* 1-cochains: the reversed edge reads as the inverse (group values) or the
  negative (algebra/derivation values).
* 2-cochains with algebra/derivation values: fully alternating in the three
  vertices; the base point of a loop carries no extra data at this order.
* 2-cochains with group values: keyed by the loop based at the smallest
  vertex; only the orientation may vary (reversal reads as the inverse).
  Values at other base points are *not* derivable without a connection.
* 3-cochains: alternating in the three swept vertices of a based loop.

The componentwise operator formulas below are normative; in particular the
3-form component on a based loop <v,a,b,c,v> mirrors the four-factor sweep of
the corresponding tetrahedron, so it matches the group-level 3-curvature
through third order.
"""

from __future__ import annotations

import json
from itertools import permutations
from math import factorial
from typing import Dict, Tuple

import numpy as np

from .errors import IncompleteFieldError, LinearizationDomainError
from .liegroup import LieGroup, get_group
from .simplicial import (SimplicialComplex, cell_key, loop_is_degenerate,
                         parse_cell_key, perm_parity)

Edge = Tuple[int, int]
Tri = Tuple[int, int, int]


class Cochain1:
    """Map from oriented edges to values; kind in {'group', 'algebra', 'derivation'}."""

    def __init__(self, group: LieGroup, kind: str, values: Dict[Edge, np.ndarray] | None = None):
        assert kind in ("group", "algebra", "derivation")
        self.group = group
        self.kind = kind
        self.values: Dict[Edge, np.ndarray] = {}
        if values:
            for e, v in values.items():
                self.set(e, v)

    def set(self, edge: Edge, value: np.ndarray) -> None:
        i, j = edge
        if i == j:
            raise IncompleteFieldError(f"degenerate edge {edge} cannot carry a value")
        if i < j:
            self.values[(i, j)] = np.asarray(value)
        else:
            self.values[(j, i)] = self._invert(np.asarray(value))

    def _invert(self, v):
        if self.kind == "group":
            return np.linalg.inv(v)
        return -v

    def read(self, i: int, j: int) -> np.ndarray:
        if i == j:
            if self.kind == "group":
                return self.group.eye.copy()
            return self._zero()
        key = (i, j) if i < j else (j, i)
        try:
            v = self.values[key]
        except KeyError:
            raise IncompleteFieldError(f"no value on edge {key}") from None
        return v if i < j else self._invert(v)

    def _zero(self):
        if self.kind == "derivation":
            return np.zeros((3, 3))
        return np.zeros((self.group.d, self.group.d), dtype=self.group.dtype)

    def edges(self):
        return self.values.keys()

    def map_values(self, fn, kind: str) -> "Cochain1":
        return Cochain1(self.group, kind, {e: fn(v) for e, v in self.values.items()})


class Cochain2:
    """Map from based loops on triangles to values.

    Algebra/derivation values alternate in all three vertices.  Group values
    are anchored at the loop based at the smallest vertex.
    """

    def __init__(self, group: LieGroup, kind: str, values: Dict[Tri, np.ndarray] | None = None):
        assert kind in ("group", "algebra", "derivation")
        self.group = group
        self.kind = kind
        self.values: Dict[Tri, np.ndarray] = {}
        if values:
            for t, v in values.items():
                self.set(t, v)

    def set(self, tri: Tri, value: np.ndarray) -> None:
        """Store the value seen on the loop (t0, t1, t2, t0)."""
        key = tuple(sorted(tri))
        sign = perm_parity(tri)
        value = np.asarray(value)
        if self.kind == "group":
            if tri[0] != key[0]:
                raise IncompleteFieldError(
                    f"group-valued 2-cochain stores loops based at the smallest vertex, got {tri}")
            self.values[key] = value if sign > 0 else np.linalg.inv(value)
        else:
            self.values[key] = sign * value

    def read_loop(self, loop) -> np.ndarray:
        """Value on a based loop (p, a, b, p)."""
        p, a, b = loop[0], loop[1], loop[2]
        if loop_is_degenerate(loop):
            return self._identity()
        key = tuple(sorted((p, a, b)))
        sign = perm_parity((p, a, b))
        if self.kind == "group" and p != key[0]:
            raise IncompleteFieldError(
                f"group-valued 2-cochain has no value for base point {p} of {loop}")
        try:
            v = self.values[key]
        except KeyError:
            raise IncompleteFieldError(f"no value on triangle {key}") from None
        if self.kind == "group":
            return v if sign > 0 else np.linalg.inv(v)
        return sign * v

    def _identity(self):
        if self.kind == "group":
            return self.group.eye.copy()
        if self.kind == "derivation":
            return np.zeros((3, 3))
        return np.zeros((self.group.d, self.group.d), dtype=self.group.dtype)

    def triangles(self):
        return self.values.keys()

    def map_values(self, fn, kind: str) -> "Cochain2":
        out = Cochain2(self.group, kind)
        for t, v in self.values.items():
            out.values[t] = fn(v)
        return out


class Cochain3:
    """Alternating map from based 3-loops (v, a, b, c, v) to algebra values."""

    def __init__(self, group: LieGroup, values: Dict[Tuple[int, ...], np.ndarray] | None = None):
        self.group = group
        self.values: Dict[Tuple[int, ...], np.ndarray] = {}
        if values:
            for c, v in values.items():
                self.set(c, v)

    def set(self, cell, value) -> None:
        key = tuple(sorted(cell))
        self.values[key] = perm_parity(tuple(cell)) * np.asarray(value)

    def read(self, cell) -> np.ndarray:
        key = tuple(sorted(cell))
        try:
            v = self.values[key]
        except KeyError:
            raise IncompleteFieldError(f"no value on 3-cell {key}") from None
        return perm_parity(tuple(cell)) * v


# --------------------------------------------------------------------------
# componentwise operators
# --------------------------------------------------------------------------

def d1(A: Cochain1, loop) -> np.ndarray:
    """Coboundary of a 1-form on the loop (x, y, z, x): A_xy + A_yz + A_zx."""
    x, y, z = loop[0], loop[1], loop[2]
    return A.read(x, y) + A.read(y, z) + A.read(z, x)


def curvature_quadratic(A: Cochain1, loop) -> np.ndarray:
    """Second-order curvature term A_xy A_yz + A_yz A_zx + A_xy A_zx."""
    x, y, z = loop[0], loop[1], loop[2]
    axy, ayz, azx = A.read(x, y), A.read(y, z), A.read(z, x)
    return axy @ ayz + ayz @ azx + axy @ azx


def curvature_full(A: Cochain1, loop) -> np.ndarray:
    """First plus second order: the linearized curvature on a based loop."""
    return d1(A, loop) + curvature_quadratic(A, loop)


def bianchi_residual_linear(A: Cochain1, F: Cochain2, tetra_loop) -> np.ndarray:
    """F_xyzx - F_wxyw - F_wyzw - F_wzxw + [A_wx, F_xyzx] on <w,x,y,z,w>."""
    w, x, y, z = tetra_loop[0], tetra_loop[1], tetra_loop[2], tetra_loop[3]
    Fx = F.read_loop((x, y, z, x))
    awx = A.read(w, x)
    return (Fx
            - F.read_loop((w, x, y, w))
            - F.read_loop((w, y, z, w))
            - F.read_loop((w, z, x, w))
            + awx @ Fx - Fx @ awx)


def nu_component(mu: Cochain1, B: Cochain2, loop) -> np.ndarray:
    """Fake-curvature component on the loop (p, q, r, p):

        nu = mu_pq + mu_qr + mu_rp + mu_qr mu_rp - ad(B_pqrp)
    """
    p, q, r = loop[0], loop[1], loop[2]
    out = (mu.read(p, q) + mu.read(q, r) + mu.read(r, p)
           + mu.read(q, r) @ mu.read(r, p))
    if B is not None:
        out = out - mu.group.ad(B.read_loop(loop))
    return out


def omega_component(mu: Cochain1, B: Cochain2, loop5) -> np.ndarray:
    """3-curvature component on the based loop <v, a, b, c, v>:

        omega = B_vab + B_vbc - B_abc - B_vac - mu_vc . B_abc

    the linear shadow of the four-factor tetrahedron sweep (faces {v,a,b},
    {v,b,c}, {a,b,c}, {v,a,c} with the far face transported along (v,c)).
    """
    v, a, b, c = loop5[0], loop5[1], loop5[2], loop5[3]
    far = B.read_loop((a, b, c, a))
    g = mu.group
    out = (B.read_loop((v, a, b, v)) + B.read_loop((v, b, c, v))
           - far - B.read_loop((v, a, c, v)))
    out = out - g.from_coords(mu.read(v, c) @ g.coords(far))
    return out


def _omega_alternating(mu: Cochain1, B: Cochain2, cache: dict, cell4) -> np.ndarray:
    """Alternating extension of the canonical-order 3-curvature component."""
    key = tuple(sorted(cell4))
    if key not in cache:
        cache[key] = omega_component(mu, B, key + (key[0],))
    return perm_parity(tuple(cell4)) * cache[key]


def _nu_alternating(mu: Cochain1, B: Cochain2, cache: dict, tri) -> np.ndarray:
    key = tuple(sorted(tri))
    if key not in cache:
        cache[key] = nu_component(mu, B, key + (key[0],))
    return perm_parity(tuple(tri)) * cache[key]


def antisym_cup(front_read, back_read, cell, p: int, q: int, combine):
    """Antisymmetrized Alexander-Whitney (p, q)-pairing on a cell.

    Averages sign(s) * combine(front(s[:p+1]), back(s[p:])) over all
    orderings s of the cell's vertices, scaled by p! q! / (p+q)! so the
    pairing reproduces the wedge normalization of alternating forms.
    """
    n = len(cell)
    assert n == p + q + 1
    norm = factorial(p) * factorial(q) / factorial(p + q) / factorial(n)
    total = None
    for sig in permutations(cell):
        term = perm_parity(sig) * combine(front_read(sig[:p + 1]), back_read(sig[p:]))
        total = term if total is None else total + term
    return norm * total


def cup_pair_22(P: Cochain2, Q: Cochain2, cell5) -> np.ndarray:
    """Antisymmetrized (2,2)-pairing of a derivation-valued and an
    algebra-valued 2-form on a 4-cell, landing in the algebra."""
    g = Q.group
    return antisym_cup(
        lambda t: P.read_loop(t + (t[0],)),
        lambda t: Q.read_loop(t + (t[0],)),
        tuple(cell5), 2, 2,
        lambda D, X: g.from_coords(D @ g.coords(X)))


def cup_pair_22_scalar(P: Cochain2, Q: Cochain2, cell5) -> float:
    """Scalar variant: the two slots paired through trace_ad (Q via ad)."""
    g = Q.group
    return float(antisym_cup(
        lambda t: P.read_loop(t + (t[0],)),
        lambda t: Q.read_loop(t + (t[0],)),
        tuple(cell5), 2, 2,
        lambda D, X: np.trace(D @ g.ad(X)).real))


def cocycle_residual_linear(mu: Cochain1, B: Cochain2, cell5) -> np.ndarray:
    """d(omega) + mu . omega - nu . B on the 4-cell (ascending 5-tuple).

    d(omega) is the signed sum of the 3-curvature components of the five
    tetrahedral faces in the frame of the base vertex, the far face carried
    back by the leading-order transport (1 + mu).  The two cup pairings are
    the antisymmetrized (1,3) and (2,2) Alexander-Whitney products.
    """
    cell = tuple(cell5)
    g = mu.group
    wcache: dict = {}
    ncache: dict = {}

    dom = None
    for i in range(5):
        face = cell[:i] + cell[i + 1:]
        val = _omega_alternating(mu, B, wcache, face)
        if i == 0:
            # far face: transport from its base to the cell base
            val = val + g.from_coords(mu.read(cell[0], cell[1]) @ g.coords(val))
        dom = ((-1) ** i) * val if dom is None else dom + ((-1) ** i) * val

    mu_omega = antisym_cup(
        lambda t: mu.read(t[0], t[1]),
        lambda t: _omega_alternating(mu, B, wcache, t),
        cell, 1, 3,
        lambda M, X: g.from_coords(M @ g.coords(X)))

    nu_B = antisym_cup(
        lambda t: _nu_alternating(mu, B, ncache, t),
        lambda t: B.read_loop(t + (t[0],)),
        cell, 2, 2,
        lambda D, X: g.from_coords(D @ g.coords(X)))

    return dom + mu_omega - nu_B


# --------------------------------------------------------------------------
# covariant operators (nabla = d + mu)
# --------------------------------------------------------------------------

def nabla0(mu: Cochain1, xi: Dict[int, np.ndarray], i: int, j: int) -> np.ndarray:
    """(nabla xi)_ij = xi_j - xi_i + mu_ij xi_j - xi_i mu_ij for a
    derivation-valued 0-form xi."""
    m = mu.read(i, j)
    return xi[j] - xi[i] + m @ xi[j] - xi[i] @ m


def nabla1(mu: Cochain1, eta: Cochain1, loop) -> np.ndarray:
    """(nabla eta) on the loop (x, y, z, x):

        eta_xy + eta_yz + eta_zx + mu_xy.eta_yz - mu_xy.eta_zx - mu_yz.eta_zx
    """
    x, y, z = loop[0], loop[1], loop[2]
    g = eta.group
    exy, eyz, ezx = eta.read(x, y), eta.read(y, z), eta.read(z, x)
    act = lambda M, X: g.from_coords(M @ g.coords(X))
    return (exy + eyz + ezx
            + act(mu.read(x, y), eyz)
            - act(mu.read(x, y), ezx)
            - act(mu.read(y, z), ezx))


def nabla2(mu: Cochain1, loop) -> np.ndarray:
    """The curvature of nabla on a loop: d(mu) + mu^2 (nu without the B term)."""
    return nu_component(mu, None, loop)


def gradient_cochain(mu: Cochain1, xi: Dict[int, np.ndarray]) -> Cochain1:
    """The covariant gradient of a derivation-valued 0-form as a 1-cochain."""
    out = Cochain1(mu.group, "derivation")
    for (i, j) in mu.edges():
        out.set((i, j), nabla0(mu, xi, i, j))
    return out


def nabla2_xi(mu: Cochain1, xi: Dict[int, np.ndarray], loop) -> np.ndarray:
    """nabla(nabla xi) on a loop: the curvature pattern dmu + mu_qr mu_rp
    differentiated along mu -> mu + nabla(xi),

        d(nabla xi) + (nabla xi)_qr mu_rp + mu_qr (nabla xi)_rp.

    Agrees with [dmu + mu^2, xi] at leading order in the field scale.
    """
    p, q, r = loop[0], loop[1], loop[2]
    grad = gradient_cochain(mu, xi)
    return (d1(grad, loop)
            + grad.read(q, r) @ mu.read(r, p)
            + mu.read(q, r) @ grad.read(r, p))


def grad_eta_cochain(mu: Cochain1, eta: Cochain1,
                     triangles) -> Cochain2:
    """nabla(eta) collected as an algebra-valued 2-cochain."""
    out = Cochain2(eta.group, "algebra")
    for tri in triangles:
        out.values[tuple(tri)] = nabla1(mu, eta, tuple(tri) + (tri[0],))
    return out


def nabla2_eta(mu: Cochain1, eta: Cochain1, cell4, triangles=None) -> np.ndarray:
    """nabla^2 acting on an algebra-valued 1-form, realized as the
    3-curvature pattern applied to the 2-form nabla(eta)."""
    if triangles is None:
        from itertools import combinations
        triangles = list(combinations(sorted(cell4), 3))
    grad2 = grad_eta_cochain(mu, eta, triangles)
    return omega_component(mu, grad2, tuple(cell4) + (cell4[0],))


# --------------------------------------------------------------------------
# field files
# --------------------------------------------------------------------------

def _encode_matrix(m: np.ndarray):
    if np.iscomplexobj(m):
        return [[[float(x.real), float(x.imag)] for x in row] for row in m]
    return [[float(x) for x in row] for row in m]


def _decode_matrix(data, dtype):
    if dtype is complex:
        return np.array([[complex(a, b) for (a, b) in row] for row in data])
    return np.array(data, dtype=float)


_SECTIONS = {"edges": 1, "triangles": 2, "tetrahedra": 3}


def save_fields(path, group: LieGroup, **sections) -> None:
    """Write cochains to the JSON field-file format, canonical cells only.

    Keyword arguments name the sections ('edges', 'triangles', ...); values
    are Cochain1/Cochain2/Cochain3 instances or plain canonical-key dicts.
    """
    doc = {"group": group.name}
    for name, co in sections.items():
        if co is None:
            continue
        values = co.values if hasattr(co, "values") else co
        doc[name] = {cell_key(c): _encode_matrix(np.asarray(v))
                     for c, v in values.items()}
        doc.setdefault("kinds", {})[name] = getattr(co, "kind", "algebra")
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_fields(path):
    """Read a field file; returns (group, {section: cochain})."""
    with open(path) as fh:
        doc = json.load(fh)
    group = get_group(doc["group"])
    kinds = doc.get("kinds", {})
    out = {}
    for name, values in doc.items():
        if name in ("group", "kinds"):
            continue
        kind = kinds.get(name, "algebra")
        dtype = float if kind == "derivation" else group.dtype
        decoded = {parse_cell_key(k): _decode_matrix(v, dtype)
                   for k, v in values.items()}
        rank = len(next(iter(decoded))) if decoded else _SECTIONS.get(name, 1)
        if rank == 2:
            out[name] = Cochain1(group, kind, decoded)
        elif rank == 3:
            co = Cochain2(group, kind)
            for c, v in decoded.items():
                co.values[c] = v
            out[name] = co
        else:
            co = Cochain3(group)
            for c, v in decoded.items():
                co.values[c] = v
            out[name] = co
    return group, out
