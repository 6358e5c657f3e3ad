"""Gerbe local data in the skeletal fiber model.

Every fiber is the one-object groupoid with arrow set G, so the 1-connection
acts by automorphisms phi_xy, the 2-connection is a family of group elements
K indexed by based loops, and the loop automorphisms beta compare the
composed connection around a triangle with the identity.  All categorical
statements then become matrix identities, checked here:

* naturality of K against phi and beta,
* the group-level 3-curvature of a tetrahedron sweep,
* the pasting defect of the five tetrahedral sweeps of a 4-simplex,
* first-order gauge transformations of the linearized data,
* section transport over the path space, including zigzag moves.

K values on starred generators read as inverses, and K on degenerate loops
reads as the identity (the zigzag condition) unless that mode is disabled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .bundle import BundleData, curvature_c, holonomy
from .cochain import (Cochain1, Cochain2, Cochain3, grad_eta_cochain,
                      gradient_cochain, nabla1, nabla2, nabla2_xi,
                      nu_component, omega_component)
from .errors import (IncompleteFieldError, InapplicableGeneratorError,
                     LinearizationDomainError, OutOfDomainError)
from .liegroup import Automorphism, LieGroup
from .pathspace import (DELETE, INSERT, LOOP_DELETE, LOOP_INSERT, HomotopyWord,
                        TwoCellGenerator, face_scheme_words)
from .simplicial import SimplicialComplex, loop_is_degenerate

BasedTriple = Tuple[int, int, int]


@dataclass
class GerbeData:
    """Local gerbe data (phi, K, beta) on a complex.

    ``k2`` and ``beta`` are keyed by the based triple (p, a, b) meaning the
    loop (p, a, b, p); constructors materialize every base point and
    orientation of each triangle, so reads never move a base point
    implicitly.  ``k1`` values are a cache: K on an insertion generator
    (x, z, y) is the K of the loop (x, z, y, x).
    """

    group: LieGroup
    cx: SimplicialComplex
    phi: Dict[Tuple[int, int], Automorphism]
    k2: Dict[BasedTriple, np.ndarray]
    beta: Dict[BasedTriple, Automorphism]
    zigzag: bool = True

    # ---- reads ------------------------------------------------------------

    def phi_read(self, i: int, j: int) -> Automorphism:
        if i == j:
            return self.group.identity_automorphism()
        if (i, j) in self.phi:
            return self.phi[(i, j)]
        if (j, i) in self.phi:
            return self.phi[(j, i)].inverse()
        raise IncompleteFieldError(f"no connection on edge ({i}, {j})")

    def transport(self, path) -> Automorphism:
        out = self.group.identity_automorphism()
        for i, j in zip(path, path[1:]):
            if i != j:
                out = out @ self.phi_read(i, j)
        return out

    def k2_read(self, loop) -> np.ndarray:
        """K on the based loop (p, a, b, p)."""
        key = (loop[0], loop[1], loop[2])
        if loop_is_degenerate(loop):
            if self.zigzag or key not in self.k2:
                return self.group.eye.copy()
            return self.k2[key]
        try:
            return self.k2[key]
        except KeyError:
            raise IncompleteFieldError(f"no K value on loop {loop}") from None

    def k1_read(self, x: int, z: int, y: int) -> np.ndarray:
        """K on the insertion generator [xzy] (skeletal cache of K2)."""
        return self.k2_read((x, z, y, x))

    def beta_read(self, loop) -> Automorphism:
        key = (loop[0], loop[1], loop[2])
        if loop_is_degenerate(loop):
            return self.group.identity_automorphism()
        try:
            return self.beta[key]
        except KeyError:
            raise IncompleteFieldError(f"no beta value on loop {loop}") from None


@dataclass
class LinearGerbeData:
    """Linearized gerbe data: derivation-valued mu and algebra-valued B."""

    mu: Cochain1
    B: Cochain2


@dataclass
class GerbeGauge:
    """Infinitesimal gauge transformation: xi per vertex, eta per edge."""

    xi: Dict[int, np.ndarray]
    eta: Cochain1


@dataclass
class SectionData:
    """A section of the induced fibered category over an edge path: one group
    element per step of the path."""

    path: Tuple[int, ...]
    entries: Tuple[np.ndarray, ...]

    def composite(self, g: GerbeData) -> np.ndarray:
        """Total transported composition of the entries (an element of the
        fiber at the start point)."""
        out = None
        transporter = g.group.identity_automorphism()
        for (i, j), u in zip(zip(self.path, self.path[1:]), self.entries):
            term = transporter.apply_group(u)
            out = term if out is None else out @ term
            if i != j:
                transporter = transporter @ g.phi_read(i, j)
        return g.group.eye.copy() if out is None else out


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------

def _all_based_triples(tri):
    a, b, c = tri
    return [(a, b, c), (a, c, b), (b, c, a), (b, a, c), (c, a, b), (c, b, a)]


def trivial_gerbe(group: LieGroup, cx: SimplicialComplex) -> GerbeData:
    phi = {e: group.identity_automorphism() for e in cx.edges}
    k2, beta = {}, {}
    for tri in cx.triangles:
        for key in _all_based_triples(tri):
            k2[key] = group.eye.copy()
            beta[key] = group.identity_automorphism()
    return GerbeData(group, cx, phi, k2, beta)


def bundle_induced_gerbe(b: BundleData) -> GerbeData:
    """The coherence witness: phi = Ad(f), K = 1, beta = Ad(c).

    Satisfies every gerbe identity exactly, since all the categorical
    structure collapses to conjugation by holonomies.
    """
    group, cx = b.group, b.cx
    phi = {e: group.Ad(b.f.read(*e)) for e in cx.edges}
    k2, beta = {}, {}
    for tri in cx.triangles:
        for key in _all_based_triples(tri):
            k2[key] = group.eye.copy()
            beta[key] = group.Ad(holonomy(b, key + (key[0],)))
    return GerbeData(group, cx, phi, k2, beta)


def linearize_gerbe(g: GerbeData) -> LinearGerbeData:
    """mu = log phi (a derivation per edge), B = log K on canonical loops."""
    group = g.group
    from .liegroup import SO3  # automorphism matrices live in SO(3)
    mu = Cochain1(group, "derivation")
    for e in g.phi:
        try:
            mu.set(e, SO3.log(g.phi[e].matrix))
        except OutOfDomainError as exc:
            raise LinearizationDomainError(f"edge {e}: {exc}") from exc
    B = Cochain2(group, "algebra")
    for tri in g.cx.triangles:
        try:
            B.set(tri, group.log(g.k2_read(tri + (tri[0],))))
        except OutOfDomainError as exc:
            raise LinearizationDomainError(f"triangle {tri}: {exc}") from exc
    return LinearGerbeData(mu, B)


# --------------------------------------------------------------------------
# curvature data
# --------------------------------------------------------------------------

def fake_curvature(g: GerbeData) -> Cochain2:
    """Fake curvature nu on every canonical based loop, from the linearized
    data via the component formula."""
    L = linearize_gerbe(g)
    return fake_curvature_linear(L, g.cx)


def fake_curvature_linear(L: LinearGerbeData, cx: SimplicialComplex) -> Cochain2:
    nu = Cochain2(L.mu.group, "derivation")
    for tri in cx.triangles:
        nu.values[tri] = nu_component(L.mu, L.B, tri + (tri[0],))
    return nu


def fake_curvature_defect(g: GerbeData, loop) -> float:
    """|(beta - 1) - nu| on a based loop, measured in the derivation span."""
    L = linearize_gerbe(g)
    nu = nu_component(L.mu, L.B, loop)
    diff = (g.beta_read(loop).matrix - np.eye(3)) - nu
    return g.group.derivation_residual_norm(diff)


def omega_group(g: GerbeData, loop5) -> np.ndarray:
    """Group-level 3-curvature of the tetrahedron sweep <v, a, b, c, v>:

        Omega = K_vab . K_vbc . phi_vc(K_cab^-1) . K_vac^-1

    with the factors ordered exactly as the sweep composes them.
    """
    v, a, b, c = loop5[0], loop5[1], loop5[2], loop5[3]
    f1 = g.k2_read((v, a, b, v))
    f2 = g.k2_read((v, b, c, v))
    f3 = g.phi_read(v, c).apply_group(np.linalg.inv(g.k2_read((c, a, b, c))))
    f4 = np.linalg.inv(g.k2_read((v, a, c, v)))
    return f1 @ f2 @ f3 @ f4


# --------------------------------------------------------------------------
# word evaluation (skeletal section transport)
# --------------------------------------------------------------------------

def _word_engine(g: GerbeData, path, entries, gen: TwoCellGenerator,
                 pasting: bool):
    """Apply one generator to (path, entries).

    ``pasting=False`` follows the sweeping-functor formulas verbatim
    (insertions multiply by K, deletions by K^-1).  ``pasting=True`` flips
    the K exponents, matching the composition direction of the pasting
    schemes (starred generators are the insertions there).
    """
    group = g.group
    i = gen.position
    path = list(path)
    entries = list(entries)

    def kpow(k, inserting):
        flip = inserting == pasting
        return np.linalg.inv(k) if flip else k

    kind = gen.kind
    if kind == INSERT:
        x, z, y = gen.vertices
        if path[i] != x or path[i + 1] != y:
            raise InapplicableGeneratorError(f"insert {gen.vertices} at {i}")
        if gen.is_identity_step(path):
            return tuple(path), tuple(entries)
        entries[i] = entries[i] @ kpow(g.k1_read(x, z, y), True)
        entries.insert(i + 1, group.eye.copy())
        tw = g.beta_read((y, z, x, y))
        for j in range(i + 2, len(entries)):
            entries[j] = tw.apply_group(entries[j])
        path.insert(i + 1, z)
    elif kind == DELETE:
        x, z, y = gen.vertices
        if tuple(path[i:i + 3]) != (x, z, y):
            raise InapplicableGeneratorError(f"delete {gen.vertices} at {i}")
        if gen.is_identity_step(path):
            return tuple(path), tuple(entries)
        merged = entries[i] @ g.phi_read(x, z).apply_group(entries[i + 1])
        entries[i] = merged @ kpow(g.k1_read(x, z, y), False)
        del entries[i + 1]
        tw = g.beta_read((y, x, z, y))
        for j in range(i + 1, len(entries)):
            entries[j] = tw.apply_group(entries[j])
        del path[i + 1]
    elif kind == LOOP_INSERT:
        x, z, y = gen.vertices
        if path[i] != x or path[i + 1] != x:
            raise InapplicableGeneratorError(f"loop insert {gen.vertices} at {i}")
        entries[i] = entries[i] @ kpow(g.k2_read((x, z, y, x)), True)
        entries.insert(i + 1, group.eye.copy())
        entries.insert(i + 2, group.eye.copy())
        tw = g.beta_read((x, y, z, x))
        for j in range(i + 3, len(entries)):
            entries[j] = tw.apply_group(entries[j])
        path.insert(i + 1, z)
        path.insert(i + 2, y)
    elif kind == LOOP_DELETE:
        x, z, y = gen.vertices
        if tuple(path[i:i + 4]) != (x, z, y, x):
            raise InapplicableGeneratorError(f"loop delete {gen.vertices} at {i}")
        pxz = g.phi_read(x, z)
        merged = entries[i] @ pxz.apply_group(entries[i + 1])
        merged = merged @ (pxz @ g.phi_read(z, y)).apply_group(entries[i + 2])
        entries[i] = merged @ kpow(g.k2_read((x, z, y, x)), False)
        del entries[i + 2]
        del entries[i + 1]
        tw = g.beta_read((x, z, y, x))
        for j in range(i + 1, len(entries)):
            entries[j] = tw.apply_group(entries[j])
        del path[i + 1]
        del path[i + 1]
    else:
        raise InapplicableGeneratorError(f"unknown generator kind {kind!r}")
    return tuple(path), tuple(entries)


def sweep_section(g: GerbeData, s: SectionData,
                  step: TwoCellGenerator) -> SectionData:
    """Transport a section through one generating 2-arrow (verbatim sweeping
    functor: new middle entries are identities, entries beyond the site are
    twisted by the beta of the swept 2-cell)."""
    path, entries = _word_engine(g, s.path, s.entries, step, pasting=False)
    return SectionData(path, entries)


def word_value(g: GerbeData, word: HomotopyWord) -> np.ndarray:
    """Skeletal value of a closed homotopy word: transport the trivial
    section through the word (pasting orientation) and read off the single
    remaining entry."""
    path = tuple(word.start)
    entries = tuple(g.group.eye.copy() for _ in range(len(path) - 1))
    for layer in word.steps:
        for gen in layer:
            path, entries = _word_engine(g, path, entries, gen, pasting=True)
    if len(path) != 2 or path[0] != path[1] or path != tuple(word.start):
        raise InapplicableGeneratorError("word is not a closed sweep")
    return entries[0]


def cocycle_defect_group(g: GerbeData, cell5) -> np.ndarray:
    """F5^-1 (F1 F2 F3 F4) for the five pasting-scheme sweeps of a 4-cell."""
    v, w, x, y, z = tuple(cell5)
    words = face_scheme_words(g.cx, v, w, x, y, z)
    vals = [word_value(g, wd) for wd in words]
    prod = vals[0] @ vals[1] @ vals[2] @ vals[3]
    return np.linalg.inv(vals[4]) @ prod


# --------------------------------------------------------------------------
# naturality and zigzag
# --------------------------------------------------------------------------

def naturality_defect(g: GerbeData, tri, u: np.ndarray) -> float:
    """Defect of the two naturality squares on a triangle, for a sample
    arrow u; both are exact identities for a coherent gerbe."""
    x, y, z = tuple(tri)
    eye = g.group.eye

    k1 = g.k1_read(x, z, y)
    lhs = g.phi_read(x, y).apply_group(u) @ k1
    rhs = k1 @ (g.phi_read(x, z) @ g.phi_read(z, y)
                @ g.beta_read((y, z, x, y))).apply_group(u)
    d3 = np.linalg.norm(lhs @ np.linalg.inv(rhs) - eye)

    k2 = g.k2_read((x, z, y, x))
    C = g.phi_read(x, z) @ g.phi_read(z, y) @ g.phi_read(y, x)
    lhs = u @ k2
    rhs = k2 @ (C @ g.beta_read((x, y, z, x))).apply_group(u)
    d4 = np.linalg.norm(lhs @ np.linalg.inv(rhs) - eye)
    return float(max(d3, d4))


def beta_inverse_defect(g: GerbeData, tri) -> float:
    """|beta_xyzx . beta_xzyx - id| on a triangle."""
    x, y, z = tuple(tri)
    m = (g.beta_read((x, y, z, x)) @ g.beta_read((x, z, y, x))).matrix
    return float(np.linalg.norm(m - np.eye(3)))


def zigzag_check(g: GerbeData, tol: float = 1e-10) -> List[Tuple[BasedTriple, float]]:
    """Degenerate loops whose stored K deviates from the identity.

    The transport formulas read degenerate K as 1 when zigzag mode is on;
    this reports any stored data that would violate that convention.
    """
    out = []
    seen = set()
    for key, val in g.k2.items():
        if loop_is_degenerate(key + (key[0],)):
            dev = float(np.linalg.norm(val - g.group.eye))
            if dev > tol:
                out.append((key, dev))
            seen.add(key)
    for (i, j) in g.cx.edges:
        for key in ((i, j, j), (j, i, i), (i, i, j), (j, j, i)):
            if key not in seen and key in g.k2:
                dev = float(np.linalg.norm(g.k2[key] - g.group.eye))
                if dev > tol:
                    out.append((key, dev))
    return out


# --------------------------------------------------------------------------
# gauge transformations (first order)
# --------------------------------------------------------------------------

@dataclass
class GaugeTransformResult:
    fields: LinearGerbeData
    nu_pred: Cochain2
    omega_pred: Cochain3


def gauge_transform_linear(L: LinearGerbeData, h: GerbeGauge,
                           cx: SimplicialComplex) -> GaugeTransformResult:
    """First-order gauge transformation of (mu, B), with the predicted
    transformed fake curvature and 3-curvature:

        mu' = mu + d(xi) + [mu, xi]          (per edge)
        B'  = B - xi.B - (d(eta) + mu.eta)   (per canonical loop, xi in the
                                              loop's base-point frame)
        nu' = nu + nabla^2(xi) + ad(xi.B + nabla(eta))
        om' = om - xi.om - nabla^2(eta)

    The nu' line fixes the sign of the B-term for consistency with the
    curvature convention nu = dmu + mu^2 - ad(B): shifting B by
    -(xi.B + nabla eta) raises nu by +ad of the same amount.  The xi.om term
    applies xi through the faces of each tetrahedron in their own storage
    frames, with the covariant correction on the transported far face, so the
    predictions are the exact first derivatives of the recomputed curvatures.
    """
    mu, B = L.mu, L.B
    g = mu.group
    xi, eta = h.xi, h.eta
    act = lambda D, X: g.from_coords(D @ g.coords(X))

    mu2 = Cochain1(g, "derivation")
    grad_xi = gradient_cochain(mu, xi)
    for (i, j) in mu.edges():
        mu2.set((i, j), mu.read(i, j) + grad_xi.read(i, j))

    B2 = Cochain2(g, "algebra")
    nu_pred = Cochain2(g, "derivation")
    for tri in B.triangles():
        loop = tri + (tri[0],)
        base = tri[0]
        Bv = B.read_loop(loop)
        grad = nabla1(mu, eta, loop)
        B2.values[tri] = Bv - act(xi[base], Bv) - grad
        nu_pred.values[tri] = (nu_component(mu, B, loop)
                               + nabla2_xi(mu, xi, loop)
                               + g.ad(act(xi[base], Bv) + grad))

    grad2 = grad_eta_cochain(mu, eta, cx.triangles)
    omega_pred = Cochain3(g)
    for tet in cx.tetrahedra:
        v, a, b, c = tet
        loop5 = tet + (tet[0],)
        om = omega_component(mu, B, loop5)
        far = B.read_loop((a, b, c, a))
        xi_om = (act(xi[v], B.read_loop((v, a, b, v)))
                 + act(xi[v], B.read_loop((v, b, c, v)))
                 - act(xi[a], far)
                 - act(xi[v], B.read_loop((v, a, c, v)))
                 - act(mu.read(v, c), act(xi[a], far))
                 + act(grad_xi.read(v, c), far))
        omega_pred.values[tet] = (om - xi_om
                                  - omega_component(mu, grad2, loop5))
    return GaugeTransformResult(LinearGerbeData(mu2, B2), nu_pred, omega_pred)
