"""Scalar embeddings into L1 via independent random signs (real) or fourth
roots of unity (complex): f(a)(Z_1..Z_n) = sum_i a_i Z_i.

Basis vectors have L1 norm exactly 1, every vector is dominated by its l2
norm, and for spread vectors the norm approaches sqrt(2/pi) (real) or
sqrt(pi/4) (complex) at a Berry-Esseen rate. The limiting constants are
checked empirically through gap profiles; no concrete Berry-Esseen constant
is ever asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import ENUMERATION_CAP

REAL_LIMIT = math.sqrt(2.0 / math.pi)
COMPLEX_LIMIT = math.sqrt(math.pi / 4.0)

_COMPLEX_PHASES = np.array([1, 1j, -1, -1j], dtype=np.complex128)

# Per-chunk entry budget for streamed Monte-Carlo estimation.
_CHUNK_ENTRIES = 2**22


@dataclass
class SignEnsemble:
    """Distribution over Z in {+-1}^n (real) or {1,i,-1,-i}^n (complex).

    exhaustive mode enumerates all 2^n / 4^n members; monte_carlo draws
    sample_count i.i.d. members from a seeded generator.
    """

    field: str
    n: int
    mode: str = "exhaustive"
    seed: int | None = None
    sample_count: int | None = None
    enumeration_cap: int = ENUMERATION_CAP

    def __post_init__(self):
        if self.field not in ("real", "complex"):
            raise ValueError(f"field must be 'real' or 'complex', got {self.field!r}")
        if self.mode not in ("exhaustive", "monte_carlo"):
            raise ValueError(f"mode must be 'exhaustive' or 'monte_carlo', got {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.mode == "exhaustive":
            base = 2 if self.field == "real" else 4
            if base**self.n > self.enumeration_cap:
                raise ValueError(
                    f"exhaustive ensemble size {base}^{self.n} exceeds cap {self.enumeration_cap}")
        else:
            if self.sample_count is None or self.sample_count < 1:
                raise ValueError("monte_carlo mode requires a positive sample_count")


def exhaustive_members(ens: SignEnsemble) -> np.ndarray:
    """All ensemble members as a (members, n) array."""
    if ens.mode != "exhaustive":
        raise ValueError("members are only enumerable in exhaustive mode")
    if ens.field == "real":
        k = np.arange(2**ens.n)
        bits = (k[:, None] >> np.arange(ens.n)) & 1
        return 1.0 - 2.0 * bits
    k = np.arange(4**ens.n)
    digits = (k[:, None] // 4 ** np.arange(ens.n)) % 4
    return _COMPLEX_PHASES[digits]


def _check_vector(a, ens: SignEnsemble) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    if a.size != ens.n:
        raise ValueError(f"vector length {a.size} does not match ensemble n={ens.n}")
    if ens.field == "real" and np.any(a.imag != 0.0):
        raise ValueError("real ensemble requires a real-valued vector")
    return a


@dataclass
class NormEstimate:
    value: float
    stderr: float = 0.0


def embedding_l1_norm(a, ens: SignEnsemble) -> NormEstimate:
    """E[ |sum_i a_i Z_i| ] under the ensemble.

    Exhaustive mode is exact (stderr 0); monte_carlo streams seeded chunks
    and reports the sample standard error.
    """
    a = _check_vector(a, ens)
    if ens.mode == "exhaustive":
        members = exhaustive_members(ens)
        value = float(np.abs(members @ a).mean())
        return NormEstimate(value=value, stderr=0.0)

    rng = np.random.default_rng(ens.seed)
    chunk = max(1, _CHUNK_ENTRIES // ens.n)
    total = ens.sample_count
    acc = 0.0
    acc_sq = 0.0
    done = 0
    while done < total:
        size = min(chunk, total - done)
        if ens.field == "real":
            z = 1.0 - 2.0 * rng.integers(0, 2, size=(size, ens.n))
            w = z @ a.real
        else:
            z = _COMPLEX_PHASES[rng.integers(0, 4, size=(size, ens.n))]
            w = z @ a
        mags = np.abs(w)
        acc += float(mags.sum())
        acc_sq += float((mags * mags).sum())
        done += size
    mean = acc / total
    var = max(acc_sq / total - mean * mean, 0.0)
    stderr = math.sqrt(var / total)
    return NormEstimate(value=mean, stderr=stderr)


def embedding_l1_gradient(a, ens: SignEnsemble):
    """Value and subgradient of a -> E|<a, Z>| (complex-packed like the
    matrix-embedding gradient: d/dx_j = Re g_j, d/dy_j = Im g_j)."""
    a = _check_vector(a, ens)
    members = exhaustive_members(ens)
    w = members @ a
    mags = np.abs(w)
    value = float(mags.mean())
    nonzero = mags > 0.0
    unit = np.zeros_like(w)
    unit[nonzero] = w[nonzero] / mags[nonzero]
    grad = (unit[:, None] * members.conj()).mean(axis=0)
    if ens.field == "real":
        grad = grad.real.astype(np.complex128)
    return value, grad


def spread_ratio(a) -> float:
    """l_inf / l_2 ratio; small values mean no dominant coordinate."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    l2 = float(np.linalg.norm(a))
    if l2 == 0.0:
        raise ValueError("spread_ratio of the zero vector is undefined")
    return float(np.max(np.abs(a))) / l2


@dataclass
class ProfileRow:
    n: int
    spread: float
    value: float
    stderr: float
    gap: float


def berry_esseen_profile(n_values, field: str, *, mode: str = "auto",
                         sample_count: int | None = None, seed: int | None = None,
                         enumeration_cap: int = ENUMERATION_CAP) -> list[ProfileRow]:
    """L1 norms of the uniform vector (1,..,1)/sqrt(n) for each n, with the
    gap to the limiting constant. The gap shrinks toward 0 as n grows.

    mode='auto' enumerates exactly while the ensemble fits under the cap and
    falls back to Monte-Carlo beyond it.
    """
    if not n_values:
        raise ValueError("n_values must be nonempty")
    limit = REAL_LIMIT if field == "real" else COMPLEX_LIMIT
    rows = []
    for idx, n in enumerate(n_values):
        base = 2 if field == "real" else 4
        if mode == "exhaustive" or (mode == "auto" and base**n <= enumeration_cap):
            ens = SignEnsemble(field=field, n=n, mode="exhaustive",
                               enumeration_cap=enumeration_cap)
        else:
            if sample_count is None:
                raise ValueError("Monte-Carlo profile rows require sample_count")
            row_seed = None if seed is None else seed + idx
            ens = SignEnsemble(field=field, n=n, mode="monte_carlo",
                               seed=row_seed, sample_count=sample_count)
        a = np.full(n, n**-0.5)
        est = embedding_l1_norm(a, ens)
        rows.append(ProfileRow(n=n, spread=n**-0.5, value=est.value,
                               stderr=est.stderr, gap=abs(est.value - limit)))
    return rows
