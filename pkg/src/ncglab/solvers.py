"""Lifting operator-norm problems into four-index bilinear forms over pairs
of unitaries, and a heuristic alternating maximizer for the latter.

A little operator F: C^n -> (d x d matrices, normalized trace norm) is given
by its images f(e_1)..f(e_n). With the inner product <X, Y> = d^-1 Tr(X* Y)
its adjoint sends a matrix A to the vector u with u_m = d^-1 Tr(f(e_m)* A),
and the lifted tensor

    T_{ijkl} = d^-2 sum_m conj(f(e_m)_{ij}) f(e_m)_{kl}

represents T(A, B) = <F*(A), F*(B)> as the contraction
sum T_{ijkl} A_{ij} conj(B_{kl}). Its optimum over pairs of unitaries equals
||F||^2, so alternating closed-form polar steps on T give certified lower
bounds for the squared operator norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import clifford, commutative
from .config import DEFAULT_ITERS, DEFAULT_RESTARTS, DEFAULT_TOL
from .linalg import as_matrix, polar_unitary

# Largest n * d^2 for which a little operator is lifted densely.
LIFT_CAP = 1 << 22


@dataclass(eq=False)
class LittleOperator:
    """Linear map into d x d matrices, stored as the images of basis vectors."""

    images: np.ndarray  # (n, d, d) complex

    def __post_init__(self):
        self.images = np.asarray(self.images, dtype=np.complex128)
        if self.images.ndim != 3 or self.images.shape[1] != self.images.shape[2]:
            raise ValueError("images must be a stack of square matrices")

    @property
    def n(self) -> int:
        return self.images.shape[0]

    @property
    def d(self) -> int:
        return self.images.shape[1]

    def apply(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.complex128).reshape(-1)
        if a.size != self.n:
            raise ValueError("vector length does not match operator")
        return np.tensordot(a, self.images, axes=(0, 0))


def little_op_from_comm(ens: commutative.SignEnsemble) -> LittleOperator:
    """Materialize the sign/phase embedding: f(e_i) is the diagonal matrix of
    the i-th coordinate over all ensemble members, so the normalized trace
    norm of f(a) is exactly E|<a, Z>|."""
    members = commutative.exhaustive_members(ens)
    images = np.stack([np.diag(members[:, i]).astype(np.complex128)
                       for i in range(ens.n)])
    return LittleOperator(images=images)


def little_op_from_clifford(n: int, *, max_n: int = 3) -> LittleOperator:
    """Materialize the phase-averaged matrix embedding at tiny n:
    f(e_i) = (+)_w w_i C_i over the exhaustive phase family."""
    if n > max_n:
        raise ValueError(f"clifford materialization limited to n <= {max_n}")
    gens = clifford.make_generators(n)
    family = clifford.build_phase_family(n, "exhaustive")
    dim = gens.dim * family.size
    images = np.zeros((n, dim, dim), dtype=np.complex128)
    for i in range(n):
        blocks = [w[i] * gens.matrices[i] for w in family.phases]
        for b_idx, block in enumerate(blocks):
            lo = b_idx * gens.dim
            images[i, lo:lo + gens.dim, lo:lo + gens.dim] = block
    return LittleOperator(images=images)


def adjoint_apply(op: LittleOperator, a_mat) -> np.ndarray:
    """F*(A): the vector u with <u, a> = <A, F(a)> for every a, both inner
    products taken with the d^-1 Tr normalization on matrices."""
    a_mat = as_matrix(a_mat)
    if a_mat.shape != (op.d, op.d):
        raise ValueError(f"matrix shape {a_mat.shape} does not match operator d={op.d}")
    return np.einsum("mij,ij->m", op.images.conj(), a_mat) / op.d


@dataclass(eq=False)
class NcgTensor:
    """Sparse four-index coefficient array of a bilinear form over pairs of
    d x d matrices, evaluated as sum T_{ijkl} A_{ij} conj(B_{kl})."""

    d: int
    indices: np.ndarray  # (nnz, 4) int
    coeffs: np.ndarray  # (nnz,) complex

    def __post_init__(self):
        self.indices = np.asarray(self.indices, dtype=np.int64).reshape(-1, 4)
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1)
        if self.indices.shape[0] != self.coeffs.shape[0]:
            raise ValueError("index and coefficient counts differ")
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= self.d):
            raise ValueError("tensor index out of range")
        if self.indices.shape[0]:
            uniq = np.unique(self.indices, axis=0)
            if uniq.shape[0] != self.indices.shape[0]:
                raise ValueError("duplicate index quadruples")

    @property
    def nnz(self) -> int:
        return self.coeffs.shape[0]


def tensor_from_matrix(m) -> NcgTensor:
    """Commutative special case: T_{iijj} = M_{ij}, zeros elsewhere, so the
    bilinear form only sees the diagonals of its unitary arguments."""
    m = as_matrix(m)
    d = m.shape[0]
    idx, coef = [], []
    for i in range(d):
        for j in range(d):
            if m[i, j] != 0:
                idx.append((i, i, j, j))
                coef.append(m[i, j])
    return NcgTensor(d=d, indices=np.array(idx, dtype=np.int64).reshape(-1, 4),
                     coeffs=np.array(coef, dtype=np.complex128))


def lift_little_to_big(op: LittleOperator, *, cap: int = LIFT_CAP) -> NcgTensor:
    """Tensor of the bilinear form (A, B) -> <F*(A), F*(B)>."""
    if op.n * op.d**2 > cap:
        raise ValueError(f"lift size n*d^2 = {op.n * op.d**2} exceeds cap {cap}")
    dense = np.einsum("mij,mkl->ijkl", op.images.conj(), op.images) / op.d**2
    nz = np.argwhere(dense != 0)
    coeffs = dense[tuple(nz.T)] if nz.size else np.zeros(0, dtype=np.complex128)
    return NcgTensor(d=op.d, indices=nz, coeffs=coeffs)


def evaluate_bilinear(tensor: NcgTensor, a_mat, b_mat) -> complex:
    """Exact sparse contraction sum T_{ijkl} A_{ij} conj(B_{kl})."""
    a_mat = as_matrix(a_mat)
    b_mat = as_matrix(b_mat)
    if a_mat.shape != (tensor.d, tensor.d) or b_mat.shape != (tensor.d, tensor.d):
        raise ValueError("matrix shapes do not match tensor dimension")
    if tensor.nnz == 0:
        return 0j
    i, j, k, l = tensor.indices.T
    return complex(np.sum(tensor.coeffs * a_mat[i, j] * np.conj(b_mat[k, l])))


def _contract_b(tensor: NcgTensor, b_mat: np.ndarray) -> np.ndarray:
    """M_B with (M_B)_{ij} = sum_{kl} T_{ijkl} conj(B_{kl})."""
    out = np.zeros((tensor.d, tensor.d), dtype=np.complex128)
    if tensor.nnz:
        i, j, k, l = tensor.indices.T
        np.add.at(out, (i, j), tensor.coeffs * np.conj(b_mat[k, l]))
    return out


def _contract_a(tensor: NcgTensor, a_mat: np.ndarray) -> np.ndarray:
    """P with P_{kl} = sum_{ij} T_{ijkl} A_{ij}."""
    out = np.zeros((tensor.d, tensor.d), dtype=np.complex128)
    if tensor.nnz:
        i, j, k, l = tensor.indices.T
        np.add.at(out, (k, l), tensor.coeffs * a_mat[i, j])
    return out


@dataclass
class NcgResult:
    value: float
    a: np.ndarray
    b: np.ndarray
    histories: list[list[float]] = field(default_factory=list)
    unitarity_residual_a: float = 0.0
    unitarity_residual_b: float = 0.0
    restarts_run: int = 0


def _haar_unitary(d: int, rng) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _unitarity_residual(u: np.ndarray) -> float:
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def ncg_opt_lower_bound(tensor: NcgTensor, *, restarts: int = DEFAULT_RESTARTS,
                        iters: int = DEFAULT_ITERS, tol: float = DEFAULT_TOL,
                        seed: int = 0) -> NcgResult:
    """Alternating maximization of |sum T_{ijkl} A_{ij} conj(B_{kl})| over
    pairs of unitaries.

    With B fixed the objective is |<A-entries, M_B>| and the exact argmax is
    the polar unitary of conj(M_B), achieving the un-normalized singular
    value sum of M_B; symmetrically for B. Each half-step is therefore an
    exact maximization over a compact set and the objective value never
    decreases along a run. The result is a certified lower bound (the
    problem is nonconvex; no optimality claim), with per-restart half-step
    value histories for monotonicity audits.
    """
    if tensor.d < 1:
        raise ValueError("tensor dimension must be >= 1")
    rng = np.random.default_rng(seed)
    best = None
    histories = []
    for _ in range(restarts):
        b_mat = _haar_unitary(tensor.d, rng)
        a_mat = np.eye(tensor.d, dtype=np.complex128)
        history = []
        prev = -np.inf
        for _ in range(iters):
            m_b = _contract_b(tensor, b_mat)
            if np.any(m_b):
                a_mat = polar_unitary(np.conj(m_b))
            history.append(float(np.abs(evaluate_bilinear(tensor, a_mat, b_mat))))
            p = _contract_a(tensor, a_mat)
            if np.any(p):
                b_mat = polar_unitary(p)
            value = float(np.abs(evaluate_bilinear(tensor, a_mat, b_mat)))
            history.append(value)
            if abs(value - prev) <= tol * max(1.0, abs(value)):
                prev = value
                break
            prev = value
        histories.append(history)
        if best is None or prev > best[0]:
            best = (prev, a_mat, b_mat)
    value, a_mat, b_mat = best
    return NcgResult(value=float(value), a=a_mat, b=b_mat, histories=histories,
                     unitarity_residual_a=_unitarity_residual(a_mat),
                     unitarity_residual_b=_unitarity_residual(b_mat),
                     restarts_run=restarts)


def little_norm_lower_bound(op: LittleOperator, *, restarts: int = DEFAULT_RESTARTS,
                            iters: int = DEFAULT_ITERS, seed: int = 0):
    """Heuristic lower bound on sup_{||a||=1} ||F(a)||_S1 by sphere ascent
    with the trace-norm subgradient (polar factor of the current image).

    Returns (value, maximizing vector).
    """
    rng = np.random.default_rng(seed)

    def norm_and_grad(a):
        m = op.apply(a)
        u, s, vh = np.linalg.svd(m)
        value = float(s.sum()) / op.d
        direction = u @ vh
        # complex-packed subgradient: conj of (1/d) Tr(direction^H f_m)
        return value, np.einsum("mij,ij->m", op.images.conj(), direction) / op.d

    best_value, best_a = -np.inf, None
    for _ in range(restarts):
        a = rng.normal(size=op.n) + 1j * rng.normal(size=op.n)
        a = a / np.linalg.norm(a)
        value, grad = norm_and_grad(a)
        step = 0.5
        for _ in range(iters):
            improved = False
            while step >= 1e-12:
                cand = a + step * grad
                cand = cand / np.linalg.norm(cand)
                cand_value, cand_grad = norm_and_grad(cand)
                if cand_value > value + 1e-15:
                    a, value, grad = cand, cand_value, cand_grad
                    step *= 1.3
                    improved = True
                    break
                step *= 0.5
            if not improved:
                break
        if value > best_value:
            best_value, best_a = value, a
    return float(best_value), best_a
