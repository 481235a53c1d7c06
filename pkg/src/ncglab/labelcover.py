"""Label cover instances on regular graphs with per-edge projection pairs,
plus synthetic generators and structural checkers (smoothness, preimage
bounds, weak expansion).

Instances here are synthetic: `generate_planted` hides a fully satisfying
assignment (for completeness experiments), `generate_random` does not (for
decoder stress). Structural parameters (zeta, gamma, t) are declared on the
instance and checked post hoc, never guaranteed a priori.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class Edge:
    u: int
    v: int
    pi_u: np.ndarray  # (n,) values in [0, k)
    pi_v: np.ndarray


@dataclass(eq=False)
class LabelCoverInstance:
    """Regular connected graph + per-edge projections [n] -> [k].

    Vertices and labels are 0-based internally; the JSON format is 1-based.
    """

    num_vertices: int
    n: int
    k: int
    t: int
    gamma: float
    zeta: float
    edges: list[Edge] = field(default_factory=list)

    def __post_init__(self):
        if self.num_vertices < 1 or self.n < 1 or self.k < 1 or self.t < 1:
            raise ValueError("num_vertices, n, k, t must all be positive")
        for e in self.edges:
            if not (0 <= e.u < self.num_vertices and 0 <= e.v < self.num_vertices):
                raise ValueError("edge endpoint out of range")
            if e.u == e.v:
                raise ValueError("self-loops are not allowed")
            for pi in (e.pi_u, e.pi_v):
                if pi.shape != (self.n,):
                    raise ValueError("projection must be a length-n array")
                if pi.min() < 0 or pi.max() >= self.k:
                    raise ValueError("projection value out of range")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_vertices, dtype=int)
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def is_regular(self) -> bool:
        deg = self.degrees()
        return bool(np.all(deg == deg[0]))

    def is_connected(self) -> bool:
        if self.num_vertices == 1:
            return True
        adj = [[] for _ in range(self.num_vertices)]
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = np.zeros(self.num_vertices, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return bool(seen.all())

    def incident(self, v: int) -> list[tuple[int, np.ndarray]]:
        """(edge index, projection at v) for every edge touching v."""
        out = []
        for i, e in enumerate(self.edges):
            if e.u == v:
                out.append((i, e.pi_u))
            if e.v == v:
                out.append((i, e.pi_v))
        return out

    def max_preimage_size(self) -> int:
        worst = 0
        for e in self.edges:
            for pi in (e.pi_u, e.pi_v):
                worst = max(worst, int(np.bincount(pi, minlength=self.k).max()))
        return worst


def check_assignment(inst: LabelCoverInstance, labels) -> np.ndarray:
    labels = np.asarray(labels, dtype=int).reshape(-1)
    if labels.shape != (inst.num_vertices,):
        raise ValueError("assignment must give one label per vertex")
    if labels.min() < 0 or labels.max() >= inst.n:
        raise ValueError("assignment label out of range")
    return labels


def satisfied_fraction(inst: LabelCoverInstance, labels) -> float:
    """Fraction of edges with pi_u(A(u)) == pi_v(A(v))."""
    labels = check_assignment(inst, labels)
    if inst.num_edges == 0:
        return 1.0
    good = sum(1 for e in inst.edges if e.pi_u[labels[e.u]] == e.pi_v[labels[e.v]])
    return good / inst.num_edges


def _circulant_edges(num_vertices: int, degree: int) -> list[tuple[int, int]]:
    """Edge list of a connected degree-regular circulant graph."""
    if degree < 1 or degree >= num_vertices:
        raise ValueError("degree must satisfy 1 <= degree < num_vertices")
    if degree % 2 == 1 and num_vertices % 2 == 1:
        raise ValueError("odd degree requires an even vertex count")
    offsets = list(range(1, degree // 2 + 1))
    if degree % 2 == 1:
        offsets.append(num_vertices // 2)
    edges = []
    for off in offsets:
        if 2 * off == num_vertices:
            # antipodal offset contributes one edge per vertex pair
            edges.extend((v, (v + off) % num_vertices) for v in range(num_vertices // 2))
        else:
            edges.extend((v, (v + off) % num_vertices) for v in range(num_vertices))
    return edges


def _random_projection(n: int, k: int, t: int, rng) -> np.ndarray:
    """Random total map [n] -> [k] with all preimages of size <= t."""
    pool = np.repeat(np.arange(k), t)
    rng.shuffle(pool)
    return pool[:n].copy()


def generate_planted(num_vertices: int, degree: int, n: int, k: int, t: int, *,
                     seed: int, zeta: float = 0.1):
    """Planted instance: projections are random subject to the preimage bound,
    then one side of each edge is patched so the hidden assignment satisfies
    every edge. Returns (instance, planted_labels); gamma is set to the
    measured smoothness so declared parameters always hold.
    """
    if k * t < n:
        raise ValueError("need k*t >= n so projections with preimage bound t exist")
    rng = np.random.default_rng(seed)
    planted = rng.integers(0, n, size=num_vertices)
    edges = []
    for u, v in _circulant_edges(num_vertices, degree):
        pi_u = _random_projection(n, k, t, rng)
        pi_v = _random_projection(n, k, t, rng)
        target = pi_u[planted[u]]
        if pi_v[planted[v]] != target:
            hits = np.flatnonzero(pi_v == target)
            if hits.size:
                swap = hits[rng.integers(0, hits.size)]
                pi_v[swap], pi_v[planted[v]] = pi_v[planted[v]], pi_v[swap]
            else:
                pi_v[planted[v]] = target
        edges.append(Edge(u=u, v=v, pi_u=pi_u, pi_v=pi_v))
    inst = LabelCoverInstance(num_vertices=num_vertices, n=n, k=k, t=t,
                              gamma=1.0, zeta=zeta, edges=edges)
    if not inst.is_connected():
        raise ValueError("parameters produce a disconnected graph")
    inst.gamma = check_smoothness(inst)
    return inst, planted


def generate_random(num_vertices: int, degree: int, n: int, k: int, t: int, *,
                    seed: int, zeta: float = 0.1) -> LabelCoverInstance:
    """Like generate_planted but with no hidden assignment patched in."""
    if k * t < n:
        raise ValueError("need k*t >= n so projections with preimage bound t exist")
    rng = np.random.default_rng(seed)
    edges = [Edge(u=u, v=v, pi_u=_random_projection(n, k, t, rng),
                  pi_v=_random_projection(n, k, t, rng))
             for u, v in _circulant_edges(num_vertices, degree)]
    inst = LabelCoverInstance(num_vertices=num_vertices, n=n, k=k, t=t,
                              gamma=1.0, zeta=zeta, edges=edges)
    if not inst.is_connected():
        raise ValueError("parameters produce a disconnected graph")
    inst.gamma = check_smoothness(inst)
    return inst


def check_smoothness(inst: LabelCoverInstance) -> float:
    """max over vertices v and label pairs i != j of
    Pr_{e ~ v}[ pi_ev(i) == pi_ev(j) ], computed by exact enumeration."""
    worst = 0.0
    for v in range(inst.num_vertices):
        incident = inst.incident(v)
        if not incident:
            continue
        counts = np.zeros((inst.n, inst.n), dtype=int)
        for _, pi in incident:
            counts += pi[:, None] == pi[None, :]
        np.fill_diagonal(counts, 0)
        worst = max(worst, counts.max() / len(incident))
    return float(worst)


@dataclass
class ExpansionRow:
    delta: float
    subset_size: int
    subsets_checked: int
    exhaustive: bool
    min_edges: int
    required: float
    passed: bool


def check_weak_expansion(inst: LabelCoverInstance, delta_grid, *,
                         subset_samples: int = 200, seed: int = 0,
                         exhaustive_limit: int = 12) -> list[ExpansionRow]:
    """For each delta, verify that vertex subsets of size delta*|V| induce at
    least (delta^2/2)*|E| edges. Exhaustive over all subsets when |V| is at
    most exhaustive_limit, sampled otherwise (sampling certifies only the
    subsets it saw).
    """
    rng = np.random.default_rng(seed)
    us = np.array([e.u for e in inst.edges])
    vs = np.array([e.v for e in inst.edges])
    rows = []
    for delta in delta_grid:
        size = int(round(delta * inst.num_vertices))
        if size < 1 or size > inst.num_vertices:
            continue
        required = (delta**2 / 2.0) * inst.num_edges
        if inst.num_vertices <= exhaustive_limit:
            subsets = itertools.combinations(range(inst.num_vertices), size)
            exhaustive = True
        else:
            subsets = (rng.choice(inst.num_vertices, size=size, replace=False)
                       for _ in range(subset_samples))
            exhaustive = False
        min_edges = None
        checked = 0
        for subset in subsets:
            mask = np.zeros(inst.num_vertices, dtype=bool)
            mask[list(subset)] = True
            induced = int(np.count_nonzero(mask[us] & mask[vs]))
            min_edges = induced if min_edges is None else min(min_edges, induced)
            checked += 1
        rows.append(ExpansionRow(delta=float(delta), subset_size=size,
                                 subsets_checked=checked, exhaustive=exhaustive,
                                 min_edges=int(min_edges), required=required,
                                 passed=min_edges >= required))
    return rows
