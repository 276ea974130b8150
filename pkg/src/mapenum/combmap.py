"""Permutations and labelled combinatorial maps.

A map with ``m`` edges is a pair ``(sigma, alpha)`` of permutations of the
half-edge labels ``1..2m``: cycles of ``sigma`` are vertices, cycles of
``alpha`` are edges and cycles of ``sigma o alpha`` are faces.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class MapError(ValueError):
    pass


class NotAnInvolutionError(MapError):
    """alpha has a fixed point or is not an involution."""


class NotTransitiveError(MapError):
    """sigma and alpha do not generate a transitive group."""


class InvalidSizeError(MapError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Permutation of ``{1, ..., p}`` stored as its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, p: int) -> Permutation:
        return cls(tuple(range(1, p + 1)))

    @classmethod
    def from_cycles(cls, p: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, p + 1))
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if x in seen or not 1 <= x <= p:
                    raise ValueError(f"bad cycle element {x}")
                seen.add(x)
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles ordered by their minimal element, each starting there."""
        seen = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.images[x - 1]
            out.append(tuple(cyc))
        return out

    def num_cycles(self) -> int:
        return len(self.cycles())

    def cycle_type(self) -> Counter:
        return Counter(len(c) for c in self.cycles())

    def conjugate(self, rho: Permutation) -> Permutation:
        """Return ``rho o self o rho^-1``."""
        out = [0] * len(self.images)
        for i, x in enumerate(self.images, 1):
            out[rho(i) - 1] = rho(x)
        return Permutation(tuple(out))

    def __str__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``(p o q)(i) = p(q(i))``."""
    if len(p) != len(q):
        raise ValueError(f"size mismatch: {len(p)} vs {len(q)}")
    return Permutation(tuple(p.images[x - 1] for x in q.images))


def perm(p: int, *cycles: Sequence[int]) -> Permutation:
    """Shorthand: ``perm(4, (1, 3), (2, 4))``."""
    return Permutation.from_cycles(p, cycles)


@dataclass(frozen=True)
class DegreeProfile:
    """Multiset of degrees, stored as sorted ``(degree, count)`` pairs."""

    counts: tuple[tuple[int, int], ...]

    def __init__(self, counts=()):
        if isinstance(counts, dict):
            items = counts.items()
        else:
            items = counts
        merged: Counter = Counter()
        for n, k in items:
            if n < 1 or k < 0:
                raise ValueError(f"bad profile entry {n}: {k}")
            merged[int(n)] += int(k)
        object.__setattr__(
            self, "counts", tuple(sorted((n, k) for n, k in merged.items() if k))
        )

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> DegreeProfile:
        return cls(Counter(degrees))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def total_degree(self) -> int:
        return sum(n * k for n, k in self.counts)

    def num_parts(self) -> int:
        return sum(k for _, k in self.counts)

    def __getitem__(self, n: int) -> int:
        return self.as_dict().get(n, 0)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{n}:{k}" for n, k in self.counts) + "}"


@dataclass(frozen=True)
class MapInvariants:
    vertices: int
    edges: int
    faces: int
    chi: int
    genus: int


@dataclass(frozen=True)
class CombMap:
    sigma: Permutation
    alpha: Permutation

    def __post_init__(self):
        p = len(self.sigma)
        if len(self.alpha) != p:
            raise InvalidSizeError("sigma and alpha act on different sets")
        if p == 0 or p % 2:
            raise InvalidSizeError(f"number of half-edges must be even and positive, got {p}")
        for i in range(1, p + 1):
            j = self.alpha(i)
            if j == i or self.alpha(j) != i:
                raise NotAnInvolutionError(f"alpha is not a fixed-point-free involution at {i}")
        if len(orbit(1, self.sigma, self.alpha)) != p:
            raise NotTransitiveError("sigma and alpha do not act transitively")

    @property
    def size(self) -> int:
        return len(self.sigma)

    @property
    def num_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def phi(self) -> Permutation:
        """Face permutation ``sigma o alpha``."""
        return compose(self.sigma, self.alpha)

    def relabel(self, rho: Permutation) -> CombMap:
        return CombMap(self.sigma.conjugate(rho), self.alpha.conjugate(rho))


def make_map(sigma: Permutation, alpha: Permutation) -> CombMap:
    return CombMap(sigma, alpha)


def orbit(start: int, *gens: Permutation) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g(x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def euler_genus(cmap: CombMap) -> MapInvariants:
    v = cmap.sigma.num_cycles()
    e = cmap.alpha.num_cycles()
    f = cmap.phi.num_cycles()
    chi = v - e + f
    if chi % 2 or chi > 2:
        raise RuntimeError(f"corrupted map: Euler characteristic {chi}")
    return MapInvariants(v, e, f, chi, (2 - chi) // 2)


def genus(cmap: CombMap) -> int:
    return euler_genus(cmap).genus


def dual(cmap: CombMap) -> CombMap:
    return CombMap(cmap.phi, cmap.alpha)


def degree_profile(cmap: CombMap, kind: str = "vertex") -> DegreeProfile:
    if kind == "vertex":
        p = cmap.sigma
    elif kind == "face":
        p = cmap.phi
    else:
        raise ValueError(f"kind must be 'vertex' or 'face', got {kind!r}")
    return DegreeProfile(p.cycle_type())


def _extend_morphism(src: CombMap, dst: CombMap, start: int, image: int) -> list[int] | None:
    # an isomorphism is determined by the image of one half-edge (transitivity)
    p = src.size
    rho = [0] * (p + 1)
    used = [False] * (p + 1)
    rho[start] = image
    used[image] = True
    queue = deque([start])
    while queue:
        x = queue.popleft()
        y = rho[x]
        for s, d in ((src.sigma, dst.sigma), (src.alpha, dst.alpha)):
            x2, y2 = s(x), d(y)
            if rho[x2]:
                if rho[x2] != y2:
                    return None
            else:
                if used[y2]:
                    return None
                rho[x2] = y2
                used[y2] = True
                queue.append(x2)
    return rho


def automorphism_count(cmap: CombMap) -> int:
    """Number of relabellings fixing both sigma and alpha."""
    return sum(
        _extend_morphism(cmap, cmap, 1, x) is not None for x in range(1, cmap.size + 1)
    )


def _bfs_code(sig: Sequence[int], alp: Sequence[int], start: int) -> tuple:
    # relabel in BFS order from ``start``; sigma neighbour visited before alpha
    p = len(sig)
    new = [0] * p
    new[start] = 1
    order = [start]
    nxt = 2
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for y in (sig[x], alp[x]):
            if not new[y]:
                new[y] = nxt
                nxt += 1
                order.append(y)
    s2 = tuple(new[sig[x]] for x in order)
    a2 = tuple(new[alp[x]] for x in order)
    return s2, a2


def canonical_code(cmap: CombMap) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically least BFS relabelling over all starting half-edges.

    Two maps get the same code iff they differ by a relabelling.
    """
    sig = [x - 1 for x in cmap.sigma.images]
    alp = [x - 1 for x in cmap.alpha.images]
    return min(_bfs_code(sig, alp, s) for s in range(cmap.size))


def rooted_code(cmap: CombMap, root: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """BFS relabelling from a fixed root half-edge; a complete invariant of rooted maps."""
    sig = [x - 1 for x in cmap.sigma.images]
    alp = [x - 1 for x in cmap.alpha.images]
    return _bfs_code(sig, alp, root - 1)


def vertex_of(cmap: CombMap) -> dict[int, int]:
    """Half-edge -> vertex id (rank of the vertex's minimal half-edge)."""
    out = {}
    for vid, cyc in enumerate(cmap.sigma.cycles()):
        for h in cyc:
            out[h] = vid
    return out


def graph_distance(cmap: CombMap, va: int, vb: int) -> int:
    vof = vertex_of(cmap)
    nv = max(vof.values()) + 1
    for v in (va, vb):
        if not 0 <= v < nv:
            raise ValueError(f"unknown vertex id {v}")
    dist = distances_from(cmap, va)
    return dist[vb]


def distances_from(cmap: CombMap, v0: int) -> list[int]:
    vof = vertex_of(cmap)
    cycles = cmap.sigma.cycles()
    dist = [-1] * len(cycles)
    dist[v0] = 0
    queue = deque([v0])
    while queue:
        v = queue.popleft()
        for h in cycles[v]:
            w = vof[cmap.alpha(h)]
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def rooted_relabelling(cmap: CombMap, root: int) -> dict[int, int]:
    """Old label -> new label for the BFS relabelling used by :func:`rooted_code`."""
    new = {root: 1}
    order = [root]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for y in (cmap.sigma(x), cmap.alpha(x)):
            if y not in new:
                new[y] = len(new) + 1
                order.append(y)
    return new
