"""Anticommuting Pauli-string generators and the phase-averaged matrix
embedding built on them.

The pieces, in dependency order:

* generators ``C_1 .. C_{2m}`` (``m = ceil(n/2)``): Hermitian, unitary,
  trace-zero matrices of size ``2^m`` that pairwise anticommute, assembled
  as ``Z x ... x Z x {X or Y} x I x ... x I``;
* the linear map ``C(a) = a_1 C_1 + ... + a_n C_n``;
* the parallelogram area ``L(a)`` spanned by ``Re a`` and ``Im a``, which
  controls the two-level singular value split of ``C(a)``;
* the exact trace-norm formula
  ``||C(a)||_S1 = (sqrt(s + 2 L) + sqrt(s - 2 L)) / 2`` with ``s = ||a||_2^2``;
* phase families over ``{1, i, -1, -i}^n`` (exhaustive, pairwise independent,
  or sampled) and the phase-averaged embedding norm
  ``E_w ||C(a o w)||_S1``, which equals the trace norm of the direct sum
  ``(+)_w C(a o w)`` because equal-size blocks average.

The direct sum itself has dimension ``4^n * 2^m`` and is only materialized
for tiny ``n`` (cross-checking); everything else works through the formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .config import DENSE_DIM_CAP, ENUMERATION_CAP, RADICAND_CLAMP

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

PHASE_VALUES = np.array([1, 1j, -1, -1j], dtype=np.complex128)


@dataclass
class CliffordGenerators:
    """The 2*ceil(n/2) anticommuting generator matrices for n coordinates."""

    n: int
    m: int
    matrices: list[np.ndarray]

    @property
    def dim(self) -> int:
        return 2**self.m


def _kron_chain(factors) -> np.ndarray:
    out = np.eye(1, dtype=np.complex128)
    for f in factors:
        out = np.kron(out, f)
    return out


def make_generators(n: int, *, dense_dim_cap: int = DENSE_DIM_CAP) -> CliffordGenerators:
    """Build the 2*ceil(n/2) Pauli-string generators for n coordinates.

    Pair j contributes Z^(j-1) x X x I^(m-j) and Z^(j-1) x Y x I^(m-j).
    Entries are exactly in {0, +-1, +-i}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = (n + 1) // 2
    if 2**m > dense_dim_cap:
        raise ValueError(f"generator dimension 2^{m} exceeds cap {dense_dim_cap}")
    matrices = []
    for j in range(1, m + 1):
        prefix = [PAULI_Z] * (j - 1)
        suffix = [PAULI_I] * (m - j)
        matrices.append(_kron_chain(prefix + [PAULI_X] + suffix))
        matrices.append(_kron_chain(prefix + [PAULI_Y] + suffix))
    return CliffordGenerators(n=n, m=m, matrices=matrices)


def clifford_map(a, gens: CliffordGenerators) -> np.ndarray:
    """C(a) = sum_j a_j C_j. Linear in a; Hermitian with C(x)^2 = ||x||^2 I
    for real x."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    if a.size != gens.n:
        raise ValueError(f"vector length {a.size} does not match generator count n={gens.n}")
    out = np.zeros((gens.dim, gens.dim), dtype=np.complex128)
    for coeff, c in zip(a, gens.matrices):
        out += coeff * c
    return out


def parallelogram(a) -> float:
    """Area of the parallelogram spanned by Re(a) and Im(a)."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    x, y = a.real, a.imag
    radicand = float((x @ x) * (y @ y) - (x @ y) ** 2)
    if radicand < RADICAND_CLAMP:
        raise FloatingPointError(f"parallelogram radicand {radicand} below clamp threshold")
    return math.sqrt(max(radicand, 0.0))


def trace_norm_formula(a) -> float:
    """Closed form for ||C(a)||_S1: (sqrt(s + 2L) + sqrt(s - 2L)) / 2 with
    s = ||a||_2^2 and L the parallelogram area. Restricted to real vectors
    this is just ||a||_2 (L = 0), i.e. the map is a real isometry."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    s = float(np.sum(np.abs(a) ** 2))
    lam = parallelogram(a)
    if s - 2 * lam < -1e-12:
        raise FloatingPointError(f"trace-norm radicand {s - 2 * lam} is negative")
    return 0.5 * math.sqrt(s + 2 * lam) + 0.5 * math.sqrt(max(s - 2 * lam, 0.0))


@dataclass
class PhaseFamily:
    """A weighted family of phase vectors w in {1, i, -1, -i}^n.

    exhaustive: all 4^n members, uniform weights.
    pairwise_independent: affine Z4 evaluations; every coordinate pair is
        exactly uniform over the 16 phase pairs, with only O(n^2) members.
    monte_carlo: seeded i.i.d. samples, uniform weights.
    """

    mode: str
    n: int
    phases: np.ndarray  # (members, n) complex
    weights: np.ndarray  # (members,) summing to 1
    seed: int | None = None
    sample_count: int | None = None

    @property
    def size(self) -> int:
        return self.phases.shape[0]


def _exhaustive_exponents(n: int) -> np.ndarray:
    k = np.arange(4**n)
    return (k[:, None] // 4 ** np.arange(n)) % 4


def _pairwise_exponents(n: int) -> np.ndarray:
    # Tag coordinate j with its binary digits c_j (distinct vectors in {0,1}^r).
    # Member (u, b) in Z4^r x Z4 assigns exponent (c_j . u + b) mod 4; any two
    # distinct coordinates differ in a +-1 entry, which makes the pair exactly
    # uniform over Z4 x Z4.
    r = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    tags = np.array([[(j >> bit) & 1 for bit in range(r)] for j in range(n)])
    us = _exhaustive_exponents(r)  # reuse base-4 digit enumeration for u in Z4^r
    cu = us @ tags.T  # (4^r, n)
    exps = (cu[:, None, :] + np.arange(4)[None, :, None]) % 4  # add global shift b
    return exps.reshape(-1, n)


def build_phase_family(n: int, mode: str = "exhaustive", *, seed: int | None = None,
                       sample_count: int | None = None,
                       enumeration_cap: int = ENUMERATION_CAP) -> PhaseFamily:
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode == "exhaustive":
        if 4**n > enumeration_cap:
            raise ValueError(f"exhaustive family size 4^{n} exceeds cap {enumeration_cap}")
        exps = _exhaustive_exponents(n)
    elif mode == "pairwise_independent":
        exps = _pairwise_exponents(n)
    elif mode == "monte_carlo":
        if sample_count is None or sample_count < 1:
            raise ValueError("monte_carlo mode requires a positive sample_count")
        rng = np.random.default_rng(seed)
        exps = rng.integers(0, 4, size=(sample_count, n))
    else:
        raise ValueError(f"unknown phase family mode {mode!r}")
    phases = PHASE_VALUES[exps]
    weights = np.full(phases.shape[0], 1.0 / phases.shape[0])
    return PhaseFamily(mode=mode, n=n, phases=phases, weights=weights,
                       seed=seed, sample_count=sample_count)


@dataclass
class NormEstimate:
    """A norm value with a standard error (0 for exact enumerations)."""

    value: float
    stderr: float = 0.0


def _family_trace_norms(a: np.ndarray, family: PhaseFamily) -> np.ndarray:
    """Vectorized trace_norm_formula(a o w) over all members w."""
    b = a[None, :] * family.phases
    x, y = b.real, b.imag
    p = (x * x).sum(axis=1)
    q = (y * y).sum(axis=1)
    r = (x * y).sum(axis=1)
    lam = np.sqrt(np.maximum(p * q - r * r, 0.0))
    s = float(np.sum(np.abs(a) ** 2))
    return 0.5 * (np.sqrt(s + 2 * lam) + np.sqrt(np.maximum(s - 2 * lam, 0.0)))


def dictator_embedding_norm(a, family: PhaseFamily) -> NormEstimate:
    """E_w[ ||C(a o w)||_S1 ] under the family, i.e. the trace norm of the
    block-diagonal embedding (+)_w C(a o w).

    Standard basis vectors give exactly 1 (a o w is purely real or purely
    imaginary, so L vanishes). Monte-Carlo mode reports a standard error.
    """
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    if a.size != family.n:
        raise ValueError(f"vector length {a.size} does not match family n={family.n}")
    vals = _family_trace_norms(a, family)
    value = float(vals @ family.weights)
    if family.mode == "monte_carlo":
        stderr = float(vals.std(ddof=1) / math.sqrt(vals.size)) if vals.size > 1 else 0.0
    else:
        stderr = 0.0
    return NormEstimate(value=value, stderr=stderr)


def embedding_norm_bound(a) -> float:
    """Analytic upper bound sqrt((||a||_2^2 + ||a||_4^2) / 2) on the
    phase-averaged embedding norm."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    l2sq = float(np.sum(np.abs(a) ** 2))
    l4sq = math.sqrt(float(np.sum(np.abs(a) ** 4)))
    return math.sqrt((l2sq + l4sq) / 2.0)


def randphase_second_moment(a, family: PhaseFamily) -> float:
    """4 E_w[ L(a o w)^2 ]; equals ||a||_2^4 - ||a||_4^4 exactly under any
    family whose coordinate pairs are uniform (pairwise terms are all the
    proof of that identity uses)."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    if a.size != family.n:
        raise ValueError(f"vector length {a.size} does not match family n={family.n}")
    b = a[None, :] * family.phases
    x, y = b.real, b.imag
    p = (x * x).sum(axis=1)
    q = (y * y).sum(axis=1)
    r = (x * y).sum(axis=1)
    lam2 = p * q - r * r
    return 4.0 * float(lam2 @ family.weights)


def embedding_norm_and_gradient(a, family: PhaseFamily):
    """Value and subgradient of a -> E_w[ ||C(a o w)||_S1 ].

    The gradient is packed as a complex vector g with d/dx_j = Re g_j and
    d/dy_j = Im g_j for a = x + iy, so an ascent step is simply a + t*g.
    Kinks (s = 2L) are handled by clamping the inner inverse square root;
    callers should track best iterates rather than rely on smoothness.
    """
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    if a.size != family.n:
        raise ValueError(f"vector length {a.size} does not match family n={family.n}")
    x, y = a.real, a.imag
    s = float(x @ x + y @ y)
    if s == 0.0:
        return 0.0, np.zeros_like(a)
    c, sn = family.phases.real, family.phases.imag
    rb = c * x - sn * y
    ib = sn * x + c * y
    p = (rb * rb).sum(axis=1)
    q = (ib * ib).sum(axis=1)
    r = (rb * ib).sum(axis=1)
    u = np.maximum(p * q - r * r, 0.0)
    lam = np.sqrt(u)
    sqrt_plus = np.sqrt(s + 2 * lam)
    sqrt_minus = np.sqrt(np.maximum(s - 2 * lam, 0.0))
    vals = 0.5 * (sqrt_plus + sqrt_minus)
    value = float(vals @ family.weights)

    guard = 1e-12 * s
    inv_plus = 1.0 / sqrt_plus
    inv_minus = 1.0 / np.sqrt(np.maximum(s - 2 * lam, guard))
    dgds = 0.25 * (inv_plus + inv_minus)
    # d/d(L^2) has the finite limit -1/(2 s^(3/2)) as L -> 0.
    small = lam < 1e-9 * s
    dgdu = np.where(small, -0.25 / s**1.5,
                    (inv_plus - inv_minus) / (4.0 * np.maximum(lam, 1e-300)))
    dudx = q[:, None] * (2 * rb * c) + p[:, None] * (2 * ib * sn) - 2 * r[:, None] * (ib * c + rb * sn)
    dudy = q[:, None] * (-2 * rb * sn) + p[:, None] * (2 * ib * c) - 2 * r[:, None] * (rb * c - ib * sn)
    w = family.weights
    gx = float(dgds @ w) * 2 * x + ((dgdu * w)[:, None] * dudx).sum(axis=0)
    gy = float(dgds @ w) * 2 * y + ((dgdu * w)[:, None] * dudy).sum(axis=0)
    return value, gx + 1j * gy


def materialize_embedding(a, *, max_n: int = 3) -> np.ndarray:
    """Explicit block-diagonal matrix (+)_w C(a o w) over the exhaustive
    family. Exponential in n; only for cross-checking at n <= max_n."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    n = a.size
    if n > max_n:
        raise ValueError(f"materialization limited to n <= {max_n}")
    gens = make_generators(n)
    family = build_phase_family(n, "exhaustive")
    blocks = [clifford_map(a * w, gens) for w in family.phases]
    return linalg.block_diag(blocks)


@dataclass
class EmbeddingSpec:
    """Dictatorship-test constants of the phase-averaged matrix embedding:
    basis vectors reach norm eta = 1, spread unit vectors stay near
    tau = 1/sqrt(2), and norms above (tau + eps) force an l4/l2 ratio
    above delta(eps) = sqrt(2)*eps."""

    n: int
    eta: float = 1.0
    tau: float = 2**-0.5

    def delta(self, eps: float) -> float:
        return math.sqrt(2.0) * eps
