"""From a label cover instance to a norm-maximization problem over a
constraint subspace.

A vector field assigns b_v in C^n to every vertex v. The constraint
subspace H consists of fields whose projection-block sums agree across
every edge: for each edge e = (u, v) and small label j,

    sum_{i in pi_eu^-1(j)} b_u(i)  =  sum_{i in pi_ev^-1(j)} b_v(i).

One-hot fields of fully satisfying assignments lie in H and witness
E_v ||f(b_v)|| >= eta (the completeness certificate). Conversely, fields in
H whose averaged embedding norm exceeds tau + 4*eps can be decoded back to
an assignment by sampling labels at coordinates of large magnitude.

The L2(V) geometry is the vertex-averaged one: ||b||^2 = E_v ||b_v||^2, so
one-hot fields always have norm exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse

from . import clifford, commutative
from .config import (CERTIFICATE_SLACK, DEFAULT_ITERS, DEFAULT_RESTARTS,
                     ENUMERATION_CAP, SUBSPACE_RESIDUAL_TOL)
from .labelcover import LabelCoverInstance, check_assignment, satisfied_fraction


class DecodeInvariantError(RuntimeError):
    """A vertex in V0 produced an empty candidate label set, which the large-
    coordinate bound rules out; indicates inconsistent decoder parameters."""


# ---------------------------------------------------------------------------
# Constraint subspace


@dataclass(eq=False)
class ConstraintSystem:
    """Sparse homogeneous system over fields, one row per (edge, small label).

    Row (e=(u,v), j) holds +1 on columns (u, i) for i in pi_eu^-1(j) and -1 on
    (v, i) for i in pi_ev^-1(j); the column of (v, i) is v*n + i.
    """

    matrix: scipy.sparse.csr_matrix
    rows: list[tuple[int, int]]
    num_vertices: int
    n: int
    k: int


def build_constraints(inst: LabelCoverInstance) -> ConstraintSystem:
    data, row_idx, col_idx, rows = [], [], [], []
    r = 0
    for e_idx, e in enumerate(inst.edges):
        for j in range(inst.k):
            for i in np.flatnonzero(e.pi_u == j):
                data.append(1.0)
                row_idx.append(r)
                col_idx.append(e.u * inst.n + int(i))
            for i in np.flatnonzero(e.pi_v == j):
                data.append(-1.0)
                row_idx.append(r)
                col_idx.append(e.v * inst.n + int(i))
            rows.append((e_idx, j))
            r += 1
    shape = (r, inst.num_vertices * inst.n)
    matrix = scipy.sparse.csr_matrix((data, (row_idx, col_idx)), shape=shape)
    return ConstraintSystem(matrix=matrix, rows=rows,
                            num_vertices=inst.num_vertices, n=inst.n, k=inst.k)


@dataclass(eq=False)
class SubspaceBasis:
    """Orthonormal basis of the constraint nullspace under the vertex-averaged
    inner product <u, w> = E_v <u_v, w_v>.

    Columns are real (the constraints are real); complex coordinates span the
    complex subspace. ||basis @ z||_{L2(V)} = ||z||_2 for any complex z.
    """

    basis: np.ndarray  # (num_vertices * n, dim), real
    num_vertices: int
    n: int

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def to_field(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.complex128).reshape(-1)
        flat = self.basis @ coords
        return flat.reshape(self.num_vertices, self.n)

    def coords_of(self, fld) -> np.ndarray:
        flat = np.asarray(fld, dtype=np.complex128).reshape(-1)
        return (self.basis.T @ flat) / self.num_vertices

    def project(self, fld) -> np.ndarray:
        return self.to_field(self.coords_of(fld))


def subspace_basis(cs: ConstraintSystem) -> SubspaceBasis:
    dim_total = cs.num_vertices * cs.n
    dense = cs.matrix.toarray()
    if dense.shape[0] == 0 or not dense.any():
        euclidean = np.eye(dim_total)
    else:
        euclidean = scipy.linalg.null_space(dense)
    # Euclidean-orthonormal columns scaled by sqrt(|V|) are orthonormal under
    # the vertex-averaged inner product.
    return SubspaceBasis(basis=euclidean * math.sqrt(cs.num_vertices),
                         num_vertices=cs.num_vertices, n=cs.n)


def field_l2_norm(fld) -> float:
    """Vertex-averaged norm sqrt(E_v ||b_v||_2^2)."""
    fld = np.asarray(fld, dtype=np.complex128)
    return float(np.sqrt(np.mean(np.sum(np.abs(fld) ** 2, axis=1))))


def constraint_residual(cs: ConstraintSystem, fld) -> float:
    flat = np.asarray(fld, dtype=np.complex128).reshape(-1)
    if cs.matrix.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(cs.matrix @ flat)))


def assignment_to_field(inst: LabelCoverInstance, labels) -> np.ndarray:
    """One-hot field b_v = e_{A(v)}; unit L2(V) norm, and inside the
    constraint subspace exactly when the assignment satisfies every edge."""
    labels = check_assignment(inst, labels)
    fld = np.zeros((inst.num_vertices, inst.n), dtype=np.complex128)
    fld[np.arange(inst.num_vertices), labels] = 1.0
    return fld


# ---------------------------------------------------------------------------
# Embedding backends


@dataclass(eq=False)
class EmbeddingBackend:
    """A concrete embedding f with its dictatorship-test constants.

    norm(a) evaluates ||f(a)||; norm_and_gradient additionally returns the
    complex-packed subgradient used by the ascent. bound(a) is the analytic
    upper bound on norm(a); delta(eps), when available, is the spread
    threshold paired with (eta, tau).
    """

    name: str
    n: int
    eta: float
    tau: float
    is_real: bool
    _norm: object
    _norm_and_gradient: object
    _bound: object
    _delta: object = None

    def norm(self, a) -> float:
        return self._norm(a)

    def norm_and_gradient(self, a):
        return self._norm_and_gradient(a)

    def bound(self, a) -> float:
        return self._bound(a)

    def delta(self, eps: float) -> float:
        if self._delta is None:
            raise ValueError(f"backend {self.name!r} has no derived spread threshold; "
                             "pass delta explicitly")
        return self._delta(eps)


def clifford_backend(n: int, mode: str = "exhaustive", *, seed: int | None = None,
                     sample_count: int | None = None,
                     enumeration_cap: int = ENUMERATION_CAP) -> EmbeddingBackend:
    family = clifford.build_phase_family(n, mode, seed=seed, sample_count=sample_count,
                                         enumeration_cap=enumeration_cap)
    spec = clifford.EmbeddingSpec(n=n)
    return EmbeddingBackend(
        name="clifford", n=n, eta=spec.eta, tau=spec.tau, is_real=False,
        _norm=lambda a: clifford.dictator_embedding_norm(a, family).value,
        _norm_and_gradient=lambda a: clifford.embedding_norm_and_gradient(a, family),
        _bound=clifford.embedding_norm_bound,
        _delta=spec.delta,
    )


def _comm_backend(n: int, fld: str, tau: float, mode: str, seed, sample_count) -> EmbeddingBackend:
    ens = commutative.SignEnsemble(field=fld, n=n, mode=mode, seed=seed,
                                   sample_count=sample_count)
    return EmbeddingBackend(
        name=f"comm_{fld}", n=n, eta=1.0, tau=tau, is_real=(fld == "real"),
        _norm=lambda a: commutative.embedding_l1_norm(a, ens).value,
        _norm_and_gradient=lambda a: commutative.embedding_l1_gradient(a, ens),
        _bound=lambda a: float(np.linalg.norm(np.asarray(a).reshape(-1))),
        _delta=None,
    )


def comm_real_backend(n: int, mode: str = "exhaustive", *, seed: int | None = None,
                      sample_count: int | None = None) -> EmbeddingBackend:
    return _comm_backend(n, "real", commutative.REAL_LIMIT, mode, seed, sample_count)


def comm_complex_backend(n: int, mode: str = "exhaustive", *, seed: int | None = None,
                         sample_count: int | None = None) -> EmbeddingBackend:
    return _comm_backend(n, "complex", commutative.COMPLEX_LIMIT, mode, seed, sample_count)


BACKEND_BUILDERS = {
    "clifford": clifford_backend,
    "comm_real": comm_real_backend,
    "comm_complex": comm_complex_backend,
}


def apply_norm_F(fld, backend: EmbeddingBackend) -> float:
    """||F(b)||_{L1} = E_v ||f(b_v)||."""
    fld = np.asarray(fld, dtype=np.complex128)
    if fld.ndim != 2 or fld.shape[1] != backend.n:
        raise ValueError(f"field shape {fld.shape} does not match backend n={backend.n}")
    return float(np.mean([backend.norm(row) for row in fld]))


# ---------------------------------------------------------------------------
# Completeness certificate


@dataclass
class CertificateResult:
    in_subspace: bool
    residual: float
    value: float
    passed: bool


def completeness_certificate(inst: LabelCoverInstance, labels,
                             backend: EmbeddingBackend,
                             cs: ConstraintSystem | None = None) -> CertificateResult:
    """Check that the one-hot field of the assignment lies in the constraint
    subspace and that its averaged embedding norm reaches eta."""
    if cs is None:
        cs = build_constraints(inst)
    fld = assignment_to_field(inst, labels)
    residual = constraint_residual(cs, fld)
    in_subspace = residual <= SUBSPACE_RESIDUAL_TOL
    value = apply_norm_F(fld, backend)
    passed = in_subspace and value >= backend.eta - CERTIFICATE_SLACK
    return CertificateResult(in_subspace=in_subspace, residual=residual,
                             value=value, passed=passed)


# ---------------------------------------------------------------------------
# Soundness decoder


@dataclass
class DecoderParams:
    """eps is the norm-excess slack, delta the spread threshold; the magnitude
    scale is beta = delta^2 * eps^3 and candidate labels need |b_v(i)| of at
    least beta/4 (beta/(4t) for the wider auxiliary set)."""

    eps: float
    delta: float
    t: int
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise ValueError("eps must lie in (0, 1)")
        if not (0.0 < self.delta <= 1.0):
            raise ValueError("delta must lie in (0, 1]")
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if self.beta > self.delta:
            raise ValueError("beta = delta^2 eps^3 exceeds delta; parameters inconsistent")

    @property
    def beta(self) -> float:
        return self.delta**2 * self.eps**3


@dataclass
class DecodeStats:
    v0_size: int
    v0_fraction: float
    beta: float
    a1_sizes: list[int]
    a2_sizes: list[int]
    a1_bound: float
    a2_bound: float
    satisfied_fraction: float


def decode(fld, params: DecoderParams, inst: LabelCoverInstance):
    """Decode a field into an assignment.

    V0 collects vertices with ||b_v||_4 > delta*eps and ||b_v||_2 <= 1/eps;
    each such vertex samples a label uniformly from
    A1_v = {i : |b_v(i)| >= beta/4}, which is nonempty because every vertex
    in V0 has ||b_v||_inf >= beta. Vertices outside V0 get the fixed label 0.
    Returns (labels, DecodeStats).
    """
    fld = np.asarray(fld, dtype=np.complex128)
    if fld.shape != (inst.num_vertices, inst.n):
        raise ValueError(f"field shape {fld.shape} does not match instance")
    if not np.any(fld):
        labels = np.zeros(inst.num_vertices, dtype=int)
        stats = DecodeStats(v0_size=0, v0_fraction=0.0, beta=params.beta,
                            a1_sizes=[], a2_sizes=[],
                            a1_bound=16.0 / (params.eps**2 * params.beta**2),
                            a2_bound=16.0 * params.t**2 / (params.eps**2 * params.beta**2),
                            satisfied_fraction=satisfied_fraction(inst, labels))
        return labels, stats

    rng = np.random.default_rng(params.seed)
    mags = np.abs(fld)
    l2 = np.sqrt((mags**2).sum(axis=1))
    l4 = ((mags**4).sum(axis=1)) ** 0.25
    in_v0 = (l4 > params.delta * params.eps) & (l2 <= 1.0 / params.eps)

    beta = params.beta
    labels = np.zeros(inst.num_vertices, dtype=int)
    a1_sizes, a2_sizes = [], []
    for v in np.flatnonzero(in_v0):
        a1 = np.flatnonzero(mags[v] >= beta / 4.0)
        if a1.size == 0:
            raise DecodeInvariantError(
                f"vertex {v} is in V0 but has no coordinate above beta/4 = {beta / 4.0}")
        a2 = np.flatnonzero(mags[v] >= beta / (4.0 * params.t))
        a1_sizes.append(int(a1.size))
        a2_sizes.append(int(a2.size))
        labels[v] = int(a1[rng.integers(0, a1.size)])

    v0_size = int(in_v0.sum())
    stats = DecodeStats(
        v0_size=v0_size,
        v0_fraction=v0_size / inst.num_vertices,
        beta=beta,
        a1_sizes=a1_sizes,
        a2_sizes=a2_sizes,
        a1_bound=16.0 / (params.eps**2 * beta**2),
        a2_bound=16.0 * params.t**2 / (params.eps**2 * beta**2),
        satisfied_fraction=satisfied_fraction(inst, labels),
    )
    return labels, stats


# ---------------------------------------------------------------------------
# Norm maximization over the subspace


@dataclass
class AscentResult:
    value: float
    field: np.ndarray
    degenerate: bool = False
    restarts_run: int = 0


def _objective_and_gradient(coords, basis: SubspaceBasis, backend: EmbeddingBackend):
    """h(z) = E_v ||f((basis @ z)_v)|| and its complex-packed gradient in z."""
    fld = basis.to_field(coords)
    value = 0.0
    grad_flat = np.zeros(basis.num_vertices * basis.n, dtype=np.complex128)
    for v in range(basis.num_vertices):
        val, g = backend.norm_and_gradient(fld[v])
        value += val
        grad_flat[v * basis.n:(v + 1) * basis.n] = g
    value /= basis.num_vertices
    grad_flat /= basis.num_vertices
    # chain rule onto coordinates; basis is real so a plain transpose suffices
    grad_coords = basis.basis.T @ grad_flat
    if backend.is_real:
        grad_coords = grad_coords.real.astype(np.complex128)
    return value, grad_coords


def operator_norm_lower_bound(inst: LabelCoverInstance, backend: EmbeddingBackend, *,
                              restarts: int = DEFAULT_RESTARTS, iters: int = DEFAULT_ITERS,
                              seed: int = 0, cs: ConstraintSystem | None = None,
                              basis: SubspaceBasis | None = None) -> AscentResult:
    """Best value of E_v ||f(b_v)|| over unit-norm fields b in the constraint
    subspace, via projected subgradient ascent with backtracking line search
    and random restarts. A certified lower bound on the operator norm.
    """
    if cs is None:
        cs = build_constraints(inst)
    if basis is None:
        basis = subspace_basis(cs)
    if basis.dim == 0:
        return AscentResult(value=0.0,
                            field=np.zeros((inst.num_vertices, inst.n), dtype=np.complex128),
                            degenerate=True)

    rng = np.random.default_rng(seed)
    best_value = -np.inf
    best_coords = None
    for _ in range(restarts):
        z = rng.normal(size=basis.dim)
        if not backend.is_real:
            z = z + 1j * rng.normal(size=basis.dim)
        z = z / np.linalg.norm(z)
        value, grad = _objective_and_gradient(z, basis, backend)
        step = 0.5
        for _ in range(iters):
            improved = False
            while step >= 1e-12:
                cand = z + step * grad
                cand = cand / np.linalg.norm(cand)
                cand_value, cand_grad = _objective_and_gradient(cand, basis, backend)
                if cand_value > value + 1e-15:
                    z, value, grad = cand, cand_value, cand_grad
                    step *= 1.3
                    improved = True
                    break
                step *= 0.5
            if not improved:
                break
        if value > best_value:
            best_value = value
            best_coords = z
    return AscentResult(value=float(best_value), field=basis.to_field(best_coords),
                        degenerate=False, restarts_run=restarts)
