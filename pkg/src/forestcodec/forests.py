"""Value types for rooted-forest families and their structural operations.

Vertices are labeled 1..n and a forest is stored as a parent map:
``parents[v - 1]`` is the parent of vertex v, with the sentinel 0 marking a
root.  All values here are immutable; every operation returns a new value,
so bijection steps compose without aliasing surprises.

Family-level constraints (roots being exactly 1..k, a pivot vertex lying in
tree 1, part discipline, special color rules) are *not* type invariants:
intermediate states of the bijections legitimately violate them.  They are
enforced by the functions that need them.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterator, Sequence


class ParseError(ValueError):
    """Malformed forest text; carries the offending character position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --------------------------------------------------------------------------
# Labeled rooted forests
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RootedForest:
    """A forest of rooted trees on {1..n}, as a parent tuple.

    ``parents[v - 1]`` is the parent of vertex v; 0 marks a root.  The
    parent relation must be acyclic and every parent must be a vertex label.
    """

    parents: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.parents)
        for v, p in enumerate(self.parents, start=1):
            if not isinstance(p, int) or not 0 <= p <= n:
                raise ValueError(f"parent of vertex {v} out of range: {p!r}")
            if p == v:
                raise ValueError(f"vertex {v} is its own parent")
        # Acyclicity: follow parents from each vertex, marking finished ones.
        state = [0] * (n + 1)  # 0 unseen, 1 on current path, 2 done
        for start in range(1, n + 1):
            path = []
            v = start
            while v != 0 and state[v] == 0:
                state[v] = 1
                path.append(v)
                v = self.parents[v - 1]
            if v != 0 and state[v] == 1:
                raise ValueError(f"parent map has a cycle through vertex {v}")
            for u in path:
                state[u] = 2

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "RootedForest":
        return cls(tuple(parents))

    @property
    def n(self) -> int:
        return len(self.parents)

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if self.parents[v - 1] == 0)

    @property
    def root_count(self) -> int:
        return sum(1 for p in self.parents if p == 0)

    def has_standard_roots(self, k: int) -> bool:
        """True iff the roots are exactly {1..k}."""
        return self.roots == tuple(range(1, k + 1))


def parent(forest: RootedForest, v: int) -> int:
    _check_vertex(forest, v)
    return forest.parents[v - 1]


def children(forest: RootedForest, x: int) -> tuple[int, ...]:
    _check_vertex(forest, x)
    return tuple(v for v in range(1, forest.n + 1) if forest.parents[v - 1] == x)


def degree(forest: RootedForest, x: int) -> int:
    """Number of children of x; a vertex of degree 0 is a leaf."""
    return len(children(forest, x))


def root_of(forest: RootedForest, v: int) -> int:
    """The root of the tree containing v."""
    _check_vertex(forest, v)
    while forest.parents[v - 1] != 0:
        v = forest.parents[v - 1]
    return v


def is_descendant(forest: RootedForest, y: int, x: int) -> bool:
    """True iff y lies in the subtree rooted at x (reflexively)."""
    _check_vertex(forest, y)
    _check_vertex(forest, x)
    v = y
    while True:
        if v == x:
            return True
        v = forest.parents[v - 1]
        if v == 0:
            return False


def subtree_vertices(forest: RootedForest, x: int) -> frozenset[int]:
    """The vertex set of the subtree rooted at x, including x."""
    _check_vertex(forest, x)
    return frozenset(
        v for v in range(1, forest.n + 1) if is_descendant(forest, v, x)
    )


def detach_subtree(forest: RootedForest, x: int) -> RootedForest:
    """Cut the edge above x, making x a new root; everything else unchanged."""
    if forest.parents[x - 1] == 0:
        raise ValueError(f"vertex {x} is already a root")
    parents = list(forest.parents)
    parents[x - 1] = 0
    return RootedForest(tuple(parents))


def attach_subtree(forest: RootedForest, x: int, v: int) -> RootedForest:
    """Attach the tree rooted at x below v; v must lie outside that tree."""
    if forest.parents[x - 1] != 0:
        raise ValueError(f"vertex {x} is not a root")
    if is_descendant(forest, v, x):
        raise ValueError(f"attaching {x} under {v} would create a cycle")
    parents = list(forest.parents)
    parents[x - 1] = v
    return RootedForest(tuple(parents))


def swap_labels(forest: RootedForest, a: int, b: int) -> RootedForest:
    """Relabel by the transposition (a b); the sentinel 0 is fixed."""
    _check_vertex(forest, a)
    _check_vertex(forest, b)
    if a == b:
        return forest
    sigma = _transposition(a, b)
    parents = [0] * forest.n
    for v in range(1, forest.n + 1):
        parents[sigma(v) - 1] = sigma(forest.parents[v - 1])
    return RootedForest(tuple(parents))


def _transposition(a: int, b: int):
    def sigma(v: int) -> int:
        if v == a:
            return b
        if v == b:
            return a
        return v

    return sigma


def _check_vertex(forest: RootedForest, v: int) -> None:
    if not 1 <= v <= forest.n:
        raise ValueError(f"vertex {v} out of range 1..{forest.n}")


# --------------------------------------------------------------------------
# Part assignments (complete multipartite vertex partitions)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PartAssignment:
    """Partition of {1..n} into contiguous label blocks of the given sizes.

    Part 1 is {1..sizes[0]}, part 2 the next block, and so on.
    """

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("at least one part is required")
        if any(s < 1 for s in self.sizes):
            raise ValueError("every part must be nonempty")

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "PartAssignment":
        return cls(tuple(sizes))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def part_count(self) -> int:
        return len(self.sizes)

    @property
    def _offsets(self) -> tuple[int, ...]:
        total, offs = 0, []
        for s in self.sizes:
            total += s
            offs.append(total)
        return tuple(offs)

    def part_of(self, v: int) -> int:
        """1-based part index of vertex v."""
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range 1..{self.n}")
        return bisect.bisect_left(self._offsets, v) + 1

    def block(self, i: int) -> range:
        """The label range of part i."""
        offs = (0,) + self._offsets
        return range(offs[i - 1] + 1, offs[i] + 1)

    def respects(self, forest: RootedForest) -> bool:
        """True iff no edge of the forest joins two vertices of one part."""
        if forest.n != self.n:
            return False
        return all(
            p == 0 or self.part_of(v) != self.part_of(p)
            for v, p in enumerate(forest.parents, start=1)
        )


# --------------------------------------------------------------------------
# Plane forests (ordered children, optionally unlabeled leaves)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneNode:
    """One vertex of a plane tree: an optional label and ordered children."""

    label: int | None
    children: tuple["PlaneNode", ...] = ()

    def __post_init__(self) -> None:
        if self.label is not None and self.label < 1:
            raise ValueError(f"label must be positive, got {self.label}")

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class PlaneForest:
    """An ordered sequence of plane trees.

    Labeled vertices carry distinct labels.  In the fully labeled family
    every vertex is labeled 1..n; in the leaf-unlabeled family exactly the
    leaves are unlabeled and internal vertices carry 1..(n - leaf count).
    Trees are kept in ascending order of root label.
    """

    trees: tuple[PlaneNode, ...]

    def __post_init__(self) -> None:
        labels = list(self.labels())
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate labels in plane forest")
        if not labels:
            return  # a pure shape forest: no ordering constraint
        roots = [t.label for t in self.trees]
        if any(r is None for r in roots):
            raise ValueError("every tree root must be labeled")
        if list(roots) != sorted(roots):
            raise ValueError("trees must be ordered by ascending root label")

    @classmethod
    def from_trees(cls, trees: Sequence[PlaneNode]) -> "PlaneForest":
        return cls(tuple(trees))

    @property
    def n_vertices(self) -> int:
        return sum(t.size for t in self.trees)

    @property
    def tree_count(self) -> int:
        return len(self.trees)

    @property
    def leaf_count(self) -> int:
        return sum(1 for _, _, node in plane_preorder(self) if node.is_leaf)

    @property
    def labeled_count(self) -> int:
        return sum(1 for _ in self.labels())

    def labels(self) -> Iterator[int]:
        for _, _, node in plane_preorder(self):
            if node.label is not None:
                yield node.label

    def root_labels(self) -> tuple[int, ...]:
        return tuple(t.label for t in self.trees)  # type: ignore[misc]

    def is_fully_labeled(self) -> bool:
        return self.labeled_count == self.n_vertices

    def is_leaf_unlabeled(self) -> bool:
        """True iff a vertex is unlabeled exactly when it is a leaf."""
        return all(
            (node.label is None) == node.is_leaf
            for _, _, node in plane_preorder(self)
        )


Path = tuple[int, ...]


def plane_preorder(pf: PlaneForest) -> Iterator[tuple[int, Path, PlaneNode]]:
    """Yield (tree index, child-index path, node) in global preorder."""

    def walk(node: PlaneNode, ti: int, path: Path):
        yield ti, path, node
        for i, c in enumerate(node.children):
            yield from walk(c, ti, path + (i,))

    for ti, tree in enumerate(pf.trees):
        yield from walk(tree, ti, ())


def plane_leaf_positions(pf: PlaneForest) -> list[tuple[int, Path]]:
    """Positions of all leaves, in global preorder."""
    return [
        (ti, path) for ti, path, node in plane_preorder(pf) if node.is_leaf
    ]


def plane_find_label(pf: PlaneForest, label: int) -> tuple[int, Path]:
    for ti, path, node in plane_preorder(pf):
        if node.label == label:
            return ti, path
    raise ValueError(f"label {label} not present")


def plane_get(pf: PlaneForest, ti: int, path: Path) -> PlaneNode:
    node = pf.trees[ti]
    for i in path:
        node = node.children[i]
    return node


def _rebuild(node: PlaneNode, path: Path, new: PlaneNode | None) -> PlaneNode:
    # Replace the node at `path` with `new`, or delete it when new is None.
    if not path:
        assert new is not None
        return new
    i, rest = path[0], path[1:]
    kids = node.children
    if not rest and new is None:
        return PlaneNode(node.label, kids[:i] + kids[i + 1 :])
    return PlaneNode(
        node.label, kids[:i] + (_rebuild(kids[i], rest, new),) + kids[i + 1 :]
    )


def plane_replace(pf: PlaneForest, ti: int, path: Path, new: PlaneNode) -> PlaneForest:
    trees = list(pf.trees)
    trees[ti] = _rebuild(trees[ti], path, new)
    return PlaneForest(tuple(trees))


def plane_delete(pf: PlaneForest, ti: int, path: Path) -> PlaneForest:
    """Remove the subtree at a non-root position, closing the child gap."""
    if not path:
        raise ValueError("cannot delete a whole tree by path")
    trees = list(pf.trees)
    trees[ti] = _rebuild(trees[ti], path, None)
    return PlaneForest(tuple(trees))


def plane_insert_child(
    pf: PlaneForest, ti: int, path: Path, gap: int, sub: PlaneNode
) -> PlaneForest:
    """Insert `sub` as a child of the node at (ti, path), at gap position."""
    target = plane_get(pf, ti, path)
    if not 0 <= gap <= len(target.children):
        raise ValueError(f"gap {gap} out of range 0..{len(target.children)}")
    new = PlaneNode(
        target.label, target.children[:gap] + (sub,) + target.children[gap:]
    )
    trees = list(pf.trees)
    trees[ti] = _rebuild(trees[ti], path, new) if path else new
    return PlaneForest(tuple(trees))


def plane_relabel(pf: PlaneForest, a: int, b: int) -> PlaneForest:
    """Swap labels a and b, then restore ascending tree order."""
    if a == b:
        return pf

    def sub(node: PlaneNode) -> PlaneNode:
        lab = node.label
        if lab == a:
            lab = b
        elif lab == b:
            lab = a
        return PlaneNode(lab, tuple(sub(c) for c in node.children))

    trees = sorted((sub(t) for t in pf.trees), key=lambda t: t.label)
    return PlaneForest(tuple(trees))


def plane_label_in_tree(pf: PlaneForest, label: int, root: int) -> bool:
    """True iff the vertex carrying `label` lies in the tree rooted `root`."""
    ti, _ = plane_find_label(pf, label)
    return pf.trees[ti].label == root


# --------------------------------------------------------------------------
# Edge-colored forests
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeColoredForest:
    """A rooted forest with a proper edge coloring, keyed by child vertex.

    ``colors[v - 1]`` is the color (1..color_count) of the edge from
    parent(v) into v, and 0 exactly when v is a root.  Properness: all edges
    sharing a vertex carry distinct colors.
    """

    base: RootedForest
    color_count: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.base.n
        if self.color_count < 0:
            raise ValueError("color count must be nonnegative")
        if len(self.colors) != n:
            raise ValueError("one color entry per vertex is required")
        for v in range(1, n + 1):
            c = self.colors[v - 1]
            if self.base.parents[v - 1] == 0:
                if c != 0:
                    raise ValueError(f"root {v} must carry color 0")
            elif not 1 <= c <= self.color_count:
                raise ValueError(f"color of edge into {v} out of range: {c}")
        for x in range(1, n + 1):
            incident = [
                self.colors[v - 1] for v in children(self.base, x)
            ]
            if self.base.parents[x - 1] != 0:
                incident.append(self.colors[x - 1])
            if len(incident) != len(set(incident)):
                raise ValueError(f"edges at vertex {x} repeat a color")

    @property
    def n(self) -> int:
        return self.base.n

    def is_special(self) -> bool:
        """True iff no edge out of any root carries the last color."""
        return all(
            self.colors[v - 1] != self.color_count
            for r in self.base.roots
            for v in children(self.base, r)
        )

    def colors_at(self, x: int) -> frozenset[int]:
        """Colors of all edges incident to x (the edge into x plus those out)."""
        cs = {self.colors[v - 1] for v in children(self.base, x)}
        if self.base.parents[x - 1] != 0:
            cs.add(self.colors[x - 1])
        return frozenset(cs)


def swap_colored_labels(ef: EdgeColoredForest, a: int, b: int) -> EdgeColoredForest:
    """Relabel by (a b); edge colors travel with their child vertices."""
    if a == b:
        return ef
    sigma = _transposition(a, b)
    colors = [0] * ef.n
    for v in range(1, ef.n + 1):
        colors[sigma(v) - 1] = ef.colors[v - 1]
    return EdgeColoredForest(
        swap_labels(ef.base, a, b), ef.color_count, tuple(colors)
    )


# --------------------------------------------------------------------------
# Text formats
# --------------------------------------------------------------------------
#
# Rooted:   "n k p_1 ... p_n"            (p_i = 0 for roots, k = root count)
# Plane:    "1(5,3(4));2"                (trees ; separated, * = unlabeled leaf)
# Colored:  "n k p_1 ... p_n\nc_1 ... c_n"  (c_i = 0 for roots)
#
# The exact grammars live in FORMATS.md at the repository root.


def render_forest(forest: RootedForest) -> str:
    head = [forest.n, forest.root_count]
    return " ".join(str(x) for x in head + list(forest.parents))


def parse_forest(text: str) -> RootedForest:
    tokens = text.split()
    ints = _parse_ints(text, tokens)
    if len(ints) < 2:
        raise ParseError("expected 'n k p_1 ... p_n'", 0)
    n, k = ints[0], ints[1]
    if len(ints) != 2 + n:
        raise ParseError(
            f"expected {n} parent entries, found {len(ints) - 2}", len(text)
        )
    forest = RootedForest(tuple(ints[2:]))
    if forest.root_count != k:
        raise ParseError(
            f"header says {k} roots but parent map has {forest.root_count}", 0
        )
    return forest


def render_colored(ef: EdgeColoredForest) -> str:
    line1 = render_forest(ef.base)
    line2 = " ".join(str(c) for c in ef.colors)
    return line1 + "\n" + line2


def parse_colored(text: str, color_count: int) -> EdgeColoredForest:
    tokens = text.split()
    ints = _parse_ints(text, tokens)
    if len(ints) < 2:
        raise ParseError("expected 'n k p_1 ... p_n c_1 ... c_n'", 0)
    n = ints[0]
    if len(ints) != 2 + 2 * n:
        raise ParseError(
            f"expected {2 * n} entries after the header, found {len(ints) - 2}",
            len(text),
        )
    base = parse_forest(" ".join(str(x) for x in ints[: 2 + n]))
    return EdgeColoredForest(base, color_count, tuple(ints[2 + n :]))


def _parse_ints(text: str, tokens: list[str]) -> list[int]:
    values = []
    for tok in tokens:
        if not tok.lstrip("-").isdigit():
            raise ParseError(f"not an integer: {tok!r}", text.find(tok))
        values.append(int(tok))
    return values


def render_plane(pf: PlaneForest) -> str:
    def term(node: PlaneNode) -> str:
        head = "*" if node.label is None else str(node.label)
        if not node.children:
            return head
        return head + "(" + ",".join(term(c) for c in node.children) + ")"

    return ";".join(term(t) for t in pf.trees)


def parse_plane(text: str) -> PlaneForest:
    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_node() -> PlaneNode:
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ParseError("unexpected end of input", pos)
        if text[pos] == "*":
            pos += 1
            skip_ws()
            if pos < len(text) and text[pos] == "(":
                raise ParseError("unlabeled vertices must be leaves", pos)
            return PlaneNode(None)
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError(f"expected label or '*', found {text[pos]!r}", pos)
        label = int(text[start:pos])
        skip_ws()
        kids: list[PlaneNode] = []
        if pos < len(text) and text[pos] == "(":
            pos += 1
            while True:
                kids.append(parse_node())
                skip_ws()
                if pos >= len(text):
                    raise ParseError("unterminated child list", pos)
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == ")":
                    pos += 1
                    break
                raise ParseError(f"expected ',' or ')', found {text[pos]!r}", pos)
        return PlaneNode(label, tuple(kids))

    trees = [parse_node()]
    skip_ws()
    while pos < len(text) and text[pos] == ";":
        pos += 1
        trees.append(parse_node())
        skip_ws()
    if pos != len(text):
        raise ParseError(f"trailing input {text[pos]!r}", pos)
    return PlaneForest(tuple(trees))
