"""Blossom trees, their closure into planar maps, and well-labeled trees.

R-trees and S-trees are plane trees whose leaves are black or white:

* an R-tree is a lone white leaf, or a node whose children contain exactly
  one more R-subtree than black leaves;
* an S-tree is a node whose children contain as many R-subtrees as black leaves.

With ``t`` per node or white leaf and ``v_n`` per node with ``n - 1`` children
their generating functions are the series R and S of the planar solution.

Closure walks the contour in the order the children are listed (this is the
face order of the tree once the rotation at each node is parent, child_1, ...),
treats black leaves as opening and white leaves as closing brackets, and
matches cyclically. Each matched pair becomes an edge; the missing parent slot
of the root becomes an edge to a new degree-1 vertex (the "leg").

Well-labeled trees carry ``t`` per vertex and ``t`` per edge, i.e.
``t^(2 e + 1)``; with that weight the generating function of trees with root
label l is ``R_l = t / (1 - t (R_{l-1} + R_l + R_{l+1}))``, which is the
two-point recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .combmap import CombMap, Permutation, rooted_relabelling
from .series import TSeries, WPolynomial
from .solver import WeightSpec

MAX_TREE_ORDER = 9
MAX_LABELED_ORDER = 11


class TooLargeError(ValueError):
    pass


class WrongClassError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    color: str  # "black" | "white"

    def __repr__(self):
        return "B" if self.color == "black" else "W"


BLACK = Leaf("black")
WHITE = Leaf("white")


@dataclass(frozen=True)
class Node:
    kind: str  # "R" | "S"
    children: tuple

    def __repr__(self):
        return f"{self.kind}{list(self.children)}"


BlossomTree = Union[Leaf, Node]


def tree_class(tree: BlossomTree) -> str:
    if tree == WHITE:
        return "R"
    if isinstance(tree, Node):
        return tree.kind
    raise WrongClassError("a black leaf is not a tree")


def tree_weight(tree) -> int:
    """Power of t: one per node and per white leaf."""
    if isinstance(tree, Leaf):
        return 1 if tree.color == "white" else 0
    return 1 + sum(tree_weight(c) for c in tree.children)


def node_degrees(tree) -> list[int]:
    """Degree ``len(children) + 1`` of every node, in preorder."""
    if isinstance(tree, Leaf):
        return []
    out = [len(tree.children) + 1]
    for c in tree.children:
        out.extend(node_degrees(c))
    return out


def is_valid(tree) -> bool:
    if isinstance(tree, Leaf):
        return tree.color == "white"
    r = sum(1 for c in tree.children if tree_class_or_none(c) == "R")
    b = sum(1 for c in tree.children if c == BLACK)
    target = 1 if tree.kind == "R" else 0
    return r - b == target and all(c == BLACK or is_valid(c) for c in tree.children)


def tree_class_or_none(x):
    if x == BLACK:
        return None
    return tree_class(x)


def trees_of_weight(kind: str, w: int, degrees: tuple[int, ...]) -> list[BlossomTree]:
    """All trees of class ``kind`` with exactly ``w`` factors of t, node degrees in ``degrees``."""
    return list(_trees(kind, w, tuple(sorted(degrees))))


@lru_cache(maxsize=None)
def _trees(kind: str, w: int, degrees: tuple[int, ...]) -> tuple:
    out = []
    if kind == "R" and w == 1:
        out.append(WHITE)
    if w >= 1:
        target = 1 if kind == "R" else 0
        for n in degrees:
            for seq in _sequences(n - 1, w - 1, target, degrees):
                out.append(Node(kind, seq))
    return tuple(out)


@lru_cache(maxsize=None)
def _sequences(length: int, w: int, balance: int, degrees: tuple[int, ...]) -> tuple:
    # sequences of R-trees / S-trees / black leaves with #R - #black = balance
    if length == 0:
        return ((),) if w == 0 and balance == 0 else ()
    if abs(balance) > length:
        return ()
    out = []
    for rest in _sequences(length - 1, w, balance + 1, degrees):
        out.append((BLACK,) + rest)
    for w1 in range(1, w + 1):
        for kind, db in (("R", 1), ("S", 0)):
            firsts = _trees(kind, w1, degrees)
            if not firsts:
                continue
            tails = _sequences(length - 1, w - w1, balance - db, degrees)
            for f in firsts:
                for rest in tails:
                    out.append((f,) + rest)
    return tuple(out)


def tree_monomial(tree, V: WeightSpec) -> WPolynomial:
    """Product of the weights v_n over nodes (t not included)."""
    out = WPolynomial.const(1)
    for d in node_degrees(tree):
        out = out * V[d]
    return out


def enumerate_blossom(kind: str, T: int, V: WeightSpec) -> tuple[list[BlossomTree], TSeries]:
    """Trees of class ``kind`` up to total t-weight ``T`` with their generating function."""
    if kind not in ("R", "S"):
        raise WrongClassError(kind)
    if T > MAX_TREE_ORDER:
        raise TooLargeError(f"order {T} exceeds tree enumeration cap {MAX_TREE_ORDER}")
    degrees = tuple(n for n, _ in V.items())
    trees = []
    coeffs = [WPolynomial() for _ in range(T + 1)]
    for w in range(1, T + 1):
        for tree in _trees(kind, w, degrees):
            trees.append(tree)
            coeffs[w] = coeffs[w] + tree_monomial(tree, V)
    return trees, TSeries(coeffs, T)


@dataclass(frozen=True)
class ClosureResult:
    """Closed map with its marked data (labels are half-edges of ``cmap``).

    ``leg`` is the half-edge at the unweighted degree-1 vertex hanging off the
    root. For S-trees ``face`` is a half-edge on the distinguished face; for
    R-trees ``second_leg`` is the half-edge at the second degree-1 vertex.
    """

    cmap: CombMap
    leg: int
    face: int | None = None
    second_leg: int | None = None


def closure(tree: BlossomTree) -> ClosureResult:
    kind = tree_class(tree)
    if kind != "S":
        raise WrongClassError("closure expects an S-tree; use closure_r for R-trees")
    return _close(tree)


def closure_r(tree: BlossomTree) -> ClosureResult:
    if tree_class(tree) != "R":
        raise WrongClassError("closure_r expects an R-tree")
    return _close(tree)


def _close(tree) -> ClosureResult:
    rotations: list[list[int]] = []
    pairs: list[tuple[int, int]] = []
    contour: list[tuple[str, int]] = []
    counter = [0]

    def new_dart():
        counter[0] += 1
        return counter[0]

    leg = new_dart()
    rotations.append([leg])

    if tree == WHITE:
        contour.append(("white", leg))
        root_slot = None
    else:
        root_slot = new_dart()
        pairs.append((leg, root_slot))

        def build(node, parent_dart):
            rot = [parent_dart]
            rotations.append(rot)
            for c in node.children:
                d = new_dart()
                rot.append(d)
                if isinstance(c, Leaf):
                    contour.append((c.color, d))
                else:
                    up = new_dart()
                    pairs.append((d, up))
                    build(c, up)

        build(tree, root_slot)

    # cyclic bracket matching: black opens, white closes
    stack: list[int] = []
    lone_whites: list[int] = []
    for color, d in contour:
        if color == "black":
            stack.append(d)
        elif stack:
            pairs.append((stack.pop(), d))
        else:
            lone_whites.append(d)
    if len(stack) > len(lone_whites):
        raise AssertionError("unmatched black leaves after cyclic matching")
    wraps = []
    for i, b in enumerate(reversed(stack)):
        pairs.append((b, lone_whites[i]))
        wraps.append((b, lone_whites[i]))
    leftover = lone_whites[len(stack):]
    expected = 1 if tree_class(tree) == "R" else 0
    if len(leftover) != expected:
        raise AssertionError(f"{len(leftover)} white leaves left unmatched, expected {expected}")

    second = None
    if tree == WHITE:
        second = new_dart()
        rotations.append([second])
        pairs = [(leg, second)]
    elif leftover:
        second = new_dart()
        rotations.append([second])
        pairs.append((leftover[0], second))

    p = counter[0]
    sigma = [0] * (p + 1)
    for rot in rotations:
        for i, d in enumerate(rot):
            sigma[d] = rot[(i + 1) % len(rot)]
    alpha = [0] * (p + 1)
    for a, b in pairs:
        alpha[a] = b
        alpha[b] = a
    cmap = CombMap(Permutation(tuple(sigma[1:])), Permutation(tuple(alpha[1:])))

    face = None
    if expected == 0:
        if wraps:
            # outer side of the outermost wrapping arc: corner right after its white leaf
            _, w_last = wraps[-1]
            face = cmap.sigma(w_last)
        else:
            face = leg
    return ClosureResult(cmap, leg, face, second)


def face_orbit(cmap: CombMap, dart: int) -> frozenset[int]:
    out = {dart}
    x = cmap.phi(dart)
    while x != dart:
        out.add(x)
        x = cmap.phi(x)
    return frozenset(out)


def marked_key(res: ClosureResult) -> tuple:
    """Complete invariant of the closed map together with its marks."""
    cmap = res.cmap
    new = rooted_relabelling(cmap, res.leg)
    sig = tuple(new[cmap.sigma(x)] for x in sorted(new, key=new.get))
    alp = tuple(new[cmap.alpha(x)] for x in sorted(new, key=new.get))
    mark = None
    if res.face is not None:
        mark = ("face", min(new[x] for x in face_orbit(cmap, res.face)))
    elif res.second_leg is not None:
        mark = ("leg", new[res.second_leg])
    return sig, alp, mark


@dataclass(frozen=True)
class WellLabeledTree:
    label: int
    children: tuple = ()

    def num_edges(self) -> int:
        return sum(1 + c.num_edges() for c in self.children)

    def labels(self) -> list[int]:
        out = [self.label]
        for c in self.children:
            out.extend(c.labels())
        return out

    def is_well_labeled(self) -> bool:
        return self.label >= 1 and all(
            abs(c.label - self.label) <= 1 and c.is_well_labeled() for c in self.children
        )


@lru_cache(maxsize=None)
def _wl_trees(label: int, edges: int) -> tuple:
    return tuple(WellLabeledTree(label, seq) for seq in _wl_forests(label, edges))


@lru_cache(maxsize=None)
def _wl_forests(parent: int, edges: int) -> tuple:
    # ordered forests hanging below a vertex labelled ``parent`` using ``edges`` edges
    if edges == 0:
        return ((),)
    out = []
    for e1 in range(1, edges + 1):
        for lab in (parent - 1, parent, parent + 1):
            if lab < 1:
                continue
            for first in _wl_trees(lab, e1 - 1):
                for rest in _wl_forests(parent, edges - e1):
                    out.append((first,) + rest)
    return tuple(out)


def enumerate_well_labeled(ell: int, T: int) -> tuple[TSeries, list[WellLabeledTree]]:
    """Well-labeled trees with root label ``ell`` and weight ``t^(2e+1) <= t^T``."""
    if ell < 1:
        raise ValueError("root label must be positive")
    if T > MAX_LABELED_ORDER:
        raise TooLargeError(f"order {T} exceeds cap {MAX_LABELED_ORDER}")
    trees = []
    coeffs = [0] * (T + 1)
    for e in range(0, (T - 1) // 2 + 1):
        batch = _wl_trees(ell, e)
        trees.extend(batch)
        coeffs[2 * e + 1] = len(batch)
    return TSeries(coeffs, T), trees

