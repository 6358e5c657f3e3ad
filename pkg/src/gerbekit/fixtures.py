"""Deterministic random-field generators for tests and the check harness.

Two kinds of ensembles appear:

* plain ensembles (haar-random connections, unstructured cochains) for the
  exact group-level identities, which hold for arbitrary data;
* scaling ensembles for the eps-order tests.  These model a smooth field
  sampled on an infinitesimal simplex: a p-form scales like eps^p and its
  coboundary like eps^(p+1).  Concretely the 1-form part is dominated by a
  coboundary, A = eps d(lambda) + eps^2 a, so that curvature-type quantities
  come out one order below the connection, which is the regime in which the
  discrete identities hold at their nominal orders.
"""

from __future__ import annotations

import zlib
from typing import Dict, Tuple

import numpy as np

from .bundle import BundleData
from .cochain import Cochain1, Cochain2
from .gerbe import (GerbeData, GerbeGauge, LinearGerbeData, _all_based_triples)
from .liegroup import Automorphism, LieGroup
from .simplicial import SimplicialComplex


def rng_for(seed: int, tag: str) -> np.random.Generator:
    """Independent deterministic stream per (seed, tag)."""
    return np.random.default_rng([seed, zlib.crc32(tag.encode())])


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log|y| against log(x), the scaling-order fit."""
    xs = np.asarray(xs, dtype=float)
    ys = np.maximum(np.asarray(ys, dtype=float), 1e-300)
    return float(np.polyfit(np.log10(xs), np.log10(ys), 1)[0])


# --------------------------------------------------------------------------
# bundles
# --------------------------------------------------------------------------

def random_bundle(group: LieGroup, cx: SimplicialComplex,
                  rng: np.random.Generator) -> BundleData:
    """Haar-random connection; for identities that hold for arbitrary f."""
    values = {e: group.random_element(rng) for e in cx.edges}
    return BundleData.from_edge_map(group, cx, values)


def smooth_bundle(group: LieGroup, cx: SimplicialComplex, eps: float,
                  rng: np.random.Generator) -> BundleData:
    """f = exp(eps d(lambda) + eps^2 a): connection of size eps whose
    curvature is of size eps^2, like a smooth field on a small simplex."""
    lam = {v: group.random_algebra(rng, 1.0) for v in range(cx.n_vertices)}
    values = {}
    for (i, j) in cx.edges:
        X = eps * (lam[j] - lam[i]) + eps ** 2 * group.random_algebra(rng, 1.0)
        values[(i, j)] = group.exp(X)
    return BundleData.from_edge_map(group, cx, values)


def random_gauge_elements(group: LieGroup, cx: SimplicialComplex,
                          rng: np.random.Generator) -> Dict[int, np.ndarray]:
    return {v: group.random_element(rng) for v in range(cx.n_vertices)}


# --------------------------------------------------------------------------
# linear gerbe fields
# --------------------------------------------------------------------------

def random_linear_gerbe(group: LieGroup, cx: SimplicialComplex, eps: float,
                        rng: np.random.Generator,
                        smooth: bool = True) -> LinearGerbeData:
    """(mu, B) = (eps m, eps^2 b) with the smooth-ensemble structure on m
    (gradient part at order eps, curl part at order eps^2) unless disabled."""
    mu = Cochain1(group, "derivation")
    if smooth:
        L = {v: group.random_derivation(rng, 1.0) for v in range(cx.n_vertices)}
        for (i, j) in cx.edges:
            mu.set((i, j), eps * (L[j] - L[i])
                   + eps ** 2 * group.random_derivation(rng, 1.0))
    else:
        for (i, j) in cx.edges:
            mu.set((i, j), eps * group.random_derivation(rng, 1.0))
    B = Cochain2(group, "algebra")
    for tri in cx.triangles:
        B.set(tri, eps ** 2 * group.random_algebra(rng, 1.0))
    return LinearGerbeData(mu, B)


def exponentiated_gerbe(group: LieGroup, cx: SimplicialComplex,
                        L: LinearGerbeData) -> GerbeData:
    """Gerbe with phi = exp(mu) and K = exp(B) on every based loop (the B
    values read with the alternating sign law), with beta derived from the
    naturality relation so the even-orientation loops satisfy it exactly and
    reversed loops are exact inverses."""
    phi = {}
    for e in L.mu.edges():
        m = L.mu.read(*e)
        phi[e] = group.exp_derivation(m)
    k2: Dict[Tuple[int, int, int], np.ndarray] = {}
    for tri in cx.triangles:
        for key in _all_based_triples(tri):
            k2[key] = group.exp(L.B.read_loop(key + (key[0],)))
    g = GerbeData(group, cx, phi, k2, {})
    beta: Dict[Tuple[int, int, int], Automorphism] = {}
    for tri in cx.triangles:
        a, b, c = tri
        for key in ((a, b, c), (b, c, a), (c, a, b)):
            x, y, z = key
            # C_xzyx beta_xyzx = Ad(K_xzyx^-1), so beta = C^-1 Ad(K^-1)
            C_rev = g.phi_read(x, z) @ g.phi_read(z, y) @ g.phi_read(y, x)
            adk = group.Ad(np.linalg.inv(g.k2_read((x, z, y, x))))
            beta[key] = C_rev.inverse() @ adk
        for key in ((a, c, b), (c, b, a), (b, a, c)):
            rev = (key[0], key[2], key[1])
            beta[key] = beta[rev].inverse()
    g.beta = beta
    return g


def random_gerbe(group: LieGroup, cx: SimplicialComplex, eps: float,
                 rng: np.random.Generator, smooth: bool = True) -> GerbeData:
    return exponentiated_gerbe(group, cx,
                               random_linear_gerbe(group, cx, eps, rng, smooth))


# --------------------------------------------------------------------------
# gauge parameters
# --------------------------------------------------------------------------

def random_gauge(group: LieGroup, cx: SimplicialComplex, eps: float,
                 rng: np.random.Generator) -> GerbeGauge:
    """Gauge parameters in the smooth ensemble: xi is a constant derivation
    plus an eps-size variation per vertex, eta an eps-size 1-form."""
    xi_const = group.random_derivation(rng, 1.0)
    xi = {v: xi_const + eps * group.random_derivation(rng, 1.0)
          for v in range(cx.n_vertices)}
    eta = Cochain1(group, "algebra")
    for e in cx.edges:
        eta.set(e, eps * group.random_algebra(rng, 1.0))
    return GerbeGauge(xi=xi, eta=eta)
