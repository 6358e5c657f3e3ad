"""Numeric carriers for the symmetry group G, its algebra, Aut(G) and derivations.

Built-in groups are SU(2) (2x2 complex) and SO(3) (3x3 real).  Both have a
three-dimensional algebra with an orthogonal basis in which the structure
constants are the Levi-Civita symbol, so

* algebra elements are encoded by their coordinate 3-vector,
* ad(X) is the cross-product matrix of the coordinates of X,
* automorphisms (all inner here) act through real 3x3 matrices which are
  exactly the rotation matrices Ad(g), and
* derivations of the algebra form the span of ad = antisymmetric 3x3 matrices.

Group elements and algebra elements are plain ndarrays; ``Automorphism`` is a
small wrapper because applying an automorphism to a group element far from the
identity needs a group representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OutOfDomainError

_SIGMA = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]

# validity / exactness tolerances (spec'd defaults, overridable per call site)
TOL_STRUCTURE = 1e-8
TOL_EXACT = 1e-10

LOG_RADIUS = 1.0  # operator-norm distance from I inside which log is taken


def _cross_matrix(u):
    return np.array([
        [0.0, -u[2], u[1]],
        [u[2], 0.0, -u[0]],
        [-u[1], u[0], 0.0],
    ])


class LieGroup:
    """Descriptor object for one of the built-in matrix groups."""

    def __init__(self, name: str):
        if name == "su2":
            self.d = 2
            self.dtype = complex
            # X_k = -(i/2) sigma_k, [X_i, X_j] = eps_ijk X_k, tr(X_i X_j) = -delta/2
            self.basis = np.array([-0.5j * s for s in _SIGMA])
            self._coord_scale = -2.0  # v_k = -2 tr(X X_k)
        elif name == "so3":
            self.d = 3
            self.dtype = float
            # (L_k)_ij = -eps_ijk, so [L_i, L_j] = eps_ijk L_k and tr(L_i L_j) = -2 delta
            self.basis = np.array([_cross_matrix(np.eye(3)[k]) for k in range(3)])
            self._coord_scale = -0.5  # v_k = -tr(X L_k)/2
        else:
            raise ValueError(f"unknown group {name!r}; use 'su2' or 'so3'")
        self.name = name
        self.dim_algebra = 3
        self.eye = np.eye(self.d, dtype=self.dtype)

    def __repr__(self):
        return f"LieGroup({self.name!r})"

    # ---- coordinates ------------------------------------------------------

    def coords(self, X) -> np.ndarray:
        """Coordinate 3-vector of an algebra element in the fixed basis."""
        return np.array([
            (self._coord_scale * np.trace(X @ self.basis[k])).real
            for k in range(3)
        ])

    def from_coords(self, v) -> np.ndarray:
        return np.einsum("k,kmn->mn", np.asarray(v, dtype=float), self.basis)

    # ---- projections and norms -------------------------------------------

    def project_algebra(self, M) -> np.ndarray:
        """Closest algebra element: anti-Hermitian traceless / antisymmetric part."""
        A = 0.5 * (M - M.conj().T)
        if self.name == "su2":
            A = A - (np.trace(A) / self.d) * self.eye
        return A

    @staticmethod
    def project_derivation(D) -> np.ndarray:
        """Projection of a 3x3 matrix onto the derivation span (antisymmetric part)."""
        return 0.5 * (D - D.T)

    def algebra_residual_norm(self, M) -> float:
        """Norm of the algebra part of a matrix; drops Hermitian/trace junk
        that lives outside the algebra in the ambient matrix space."""
        return float(np.linalg.norm(self.coords(self.project_algebra(M))))

    @staticmethod
    def derivation_residual_norm(D) -> float:
        return float(np.linalg.norm(0.5 * (D - D.T)))

    # ---- exp / log --------------------------------------------------------

    def exp(self, X) -> np.ndarray:
        """Group exponential (closed form; exact to machine precision)."""
        u = self.coords(self.project_algebra(X))
        th = float(np.linalg.norm(u))
        if self.name == "su2":
            # X^2 = -(th/2)^2 I
            if th < 1e-30:
                return self.eye + X
            half = 0.5 * th
            return np.cos(half) * self.eye + (np.sin(half) / half) * X
        # Rodrigues
        if th < 1e-30:
            return self.eye + X
        K = self.from_coords(u)
        return self.eye + (np.sin(th) / th) * K + ((1 - np.cos(th)) / th ** 2) * (K @ K)

    def log(self, g, radius: float = LOG_RADIUS) -> np.ndarray:
        """Group logarithm; requires ``g`` within the injectivity radius."""
        dist = float(np.linalg.norm(g - self.eye, ord=2))
        if dist >= radius:
            raise OutOfDomainError(
                f"log outside injectivity radius: |g - I| = {dist:.3f} >= {radius}")
        if self.name == "su2":
            c = float(np.clip((np.trace(g) / 2).real, -1.0, 1.0))
            half = float(np.arccos(c))
            A = self.project_algebra(g)
            if half < 1e-12:
                return A
            return (half / np.sin(half)) * A
        c = float(np.clip((np.trace(g) - 1) / 2, -1.0, 1.0))
        th = float(np.arccos(c))
        A = 0.5 * (g - g.T)
        if th < 1e-12:
            return A
        return (th / np.sin(th)) * A

    # ---- adjoint maps -----------------------------------------------------

    def ad(self, X) -> np.ndarray:
        """ad(X) as a 3x3 derivation matrix: ad(X)Y = [X, Y]."""
        return _cross_matrix(self.coords(X))

    def inv_ad(self, D) -> np.ndarray:
        """Algebra element whose ad is the (antisymmetrized) derivation D."""
        A = 0.5 * (D - D.T)
        return self.from_coords([A[2, 1], A[0, 2], A[1, 0]])

    def Ad(self, g) -> "Automorphism":
        """Adjoint automorphism Y -> g Y g^-1 in the algebra basis."""
        ginv = np.linalg.inv(g)
        cols = [self.coords(g @ self.basis[k] @ ginv) for k in range(3)]
        return Automorphism(self, np.column_stack(cols), rep=np.asarray(g))

    def identity_automorphism(self) -> "Automorphism":
        return Automorphism(self, np.eye(3), rep=self.eye.copy())

    def exp_derivation(self, D) -> "Automorphism":
        """Automorphism exp(D) for a derivation D; rep = exp of inv_ad(D)."""
        rep = self.exp(self.inv_ad(D))
        return self.Ad(rep)

    # ---- random elements --------------------------------------------------

    def random_algebra(self, rng, scale: float) -> np.ndarray:
        """Random algebra element with Frobenius norm equal to ``scale``."""
        if scale == 0:
            return np.zeros((self.d, self.d), dtype=self.dtype)
        v = rng.normal(size=3)
        X = self.from_coords(v)
        return X * (scale / np.linalg.norm(X))

    def random_derivation(self, rng, scale: float) -> np.ndarray:
        if scale == 0:
            return np.zeros((3, 3))
        D = _cross_matrix(rng.normal(size=3))
        return D * (scale / np.linalg.norm(D))

    def random_element(self, rng) -> np.ndarray:
        """Haar-ish random group element (random axis, random angle)."""
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        su2 = np.array([[q[0] + 1j * q[3], q[2] + 1j * q[1]],
                        [-q[2] + 1j * q[1], q[0] - 1j * q[3]]])
        if self.name == "su2":
            return su2
        return SU2.Ad(su2).matrix  # double-cover image lands in SO(3)

    # ---- validity checks --------------------------------------------------

    def is_group_element(self, g, tol: float = 1e-9) -> bool:
        unitary = np.linalg.norm(g @ g.conj().T - self.eye) <= tol
        return bool(unitary and abs(np.linalg.det(g) - 1) <= tol)

    def is_algebra_element(self, X, tol: float = 1e-9) -> bool:
        return bool(np.linalg.norm(X - self.project_algebra(X)) <= tol)

    def is_derivation(self, D, tol: float = TOL_STRUCTURE) -> bool:
        """Leibniz rule on basis pairs: D[X,Y] = [DX,Y] + [X,DY]."""
        for i in range(3):
            for j in range(3):
                Xi, Xj = self.basis[i], self.basis[j]
                DXi = self.from_coords(D @ np.eye(3)[i])
                DXj = self.from_coords(D @ np.eye(3)[j])
                lhs = self.from_coords(D @ self.coords(Xi @ Xj - Xj @ Xi))
                rhs = (DXi @ Xj - Xj @ DXi) + (Xi @ DXj - DXj @ Xi)
                if np.linalg.norm(lhs - rhs) > tol:
                    return False
        return True

    def is_automorphism_matrix(self, M, tol: float = TOL_STRUCTURE) -> bool:
        """Bracket preservation on basis pairs: M[X,Y] = [MX, MY]."""
        for i in range(3):
            for j in range(3):
                Xi, Xj = self.basis[i], self.basis[j]
                MXi = self.from_coords(M @ np.eye(3)[i])
                MXj = self.from_coords(M @ np.eye(3)[j])
                lhs = self.from_coords(M @ self.coords(Xi @ Xj - Xj @ Xi))
                rhs = MXi @ MXj - MXj @ MXi
                if np.linalg.norm(lhs - rhs) > tol:
                    return False
        return True


@dataclass(frozen=True)
class Automorphism:
    """Automorphism of G stored through its 3x3 action on the algebra.

    Inner automorphisms keep a group representative so they can act exactly on
    group elements arbitrarily far from the identity; without one the action
    falls back to exp(M log g), valid inside the log radius.
    """

    group: LieGroup
    matrix: np.ndarray
    rep: Optional[np.ndarray] = None

    def act(self, X) -> np.ndarray:
        """Apply to an algebra element."""
        return self.group.from_coords(self.matrix @ self.group.coords(X))

    def apply_group(self, g) -> np.ndarray:
        """Apply to a group element."""
        if self.rep is not None:
            return self.rep @ g @ np.linalg.inv(self.rep)
        return self.group.exp(self.group.from_coords(
            self.matrix @ self.group.coords(self.group.log(g))))

    def compose(self, other: "Automorphism") -> "Automorphism":
        rep = None
        if self.rep is not None and other.rep is not None:
            rep = self.rep @ other.rep
        return Automorphism(self.group, self.matrix @ other.matrix, rep)

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        return self.compose(other)

    def inverse(self) -> "Automorphism":
        rep = None if self.rep is None else np.linalg.inv(self.rep)
        return Automorphism(self.group, np.linalg.inv(self.matrix), rep)

    def deviation_from_identity(self) -> float:
        return float(np.linalg.norm(self.matrix - np.eye(3)))


def exp_map(group: LieGroup, X) -> np.ndarray:
    return group.exp(X)


def log_map(group: LieGroup, g) -> np.ndarray:
    return group.log(g)


def adjoint_group(group: LieGroup, g) -> Automorphism:
    return group.Ad(g)


def adjoint_algebra(group: LieGroup, X) -> np.ndarray:
    return group.ad(X)


def trace_ad_pairing(D1, D2) -> float:
    """tr(D1 D2) for two derivation matrices: the ad-invariant pairing."""
    return float(np.trace(np.asarray(D1) @ np.asarray(D2)).real)


SU2 = LieGroup("su2")
SO3 = LieGroup("so3")

_GROUPS = {"su2": SU2, "so3": SO3}


def get_group(name: str) -> LieGroup:
    try:
        return _GROUPS[name]
    except KeyError:
        raise ValueError(f"unknown group {name!r}; use 'su2' or 'so3'") from None
