"""Finite balls in Cayley graphs of automaton groups, plus toy graphs.

build_ball runs breadth-first search from the identity over the genset in
declared order.  Frontier words are canonicalized and deduplicated exactly:
a hit on the canonical word settles equality immediately; otherwise words
are bucketed by their level action at a fixed small depth (equal elements
always share it) and compared inside a bucket with is_identity.  Vertices
are indexed level-major, ties broken by the lexicographically least
canonical word over genset declaration order, so two builds with the same
inputs are identical bit for bit.

Edges are the unordered generator pairs {x, x.s} inside the ball, stored
once per connecting generator with the canonical orientation tail index <
head index; the stored label moves the tail to the head.  Loops cannot
occur because preset generators are not the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .automaton import AutomatonSpec, Word
from .errors import ResourceCapError, ValidationError

DEFAULT_VERTEX_CAP = 2_000_000


@dataclass(frozen=True)
class ToyGraph:
    """A small explicit graph: optionally labeled oriented edges and a
    designated boundary-vertex set (empty means the graph is closed)."""

    n_vertices: int
    edges: tuple[tuple[int, int, str | None], ...]
    boundary: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValidationError("toy graph needs at least one vertex")
        for k, (t, h, _label) in enumerate(self.edges):
            if not (0 <= t < self.n_vertices and 0 <= h < self.n_vertices):
                raise ValidationError(f"edges[{k}]: endpoint outside 0..{self.n_vertices - 1}")
        for v in self.boundary:
            if not 0 <= v < self.n_vertices:
                raise ValidationError(f"boundary vertex {v} outside 0..{self.n_vertices - 1}")


def toy_graph(n_vertices, edges, boundary=()) -> ToyGraph:
    norm = []
    for e in edges:
        if len(e) == 2:
            norm.append((int(e[0]), int(e[1]), None))
        elif len(e) == 3:
            norm.append((int(e[0]), int(e[1]), None if e[2] is None else str(e[2])))
        else:
            raise ValidationError("edges must be [tail, head] or [tail, head, label]")
    return ToyGraph(int(n_vertices), tuple(norm), frozenset(int(v) for v in boundary))


@dataclass(eq=True)
class CayleyBall:
    """All group elements within the given word-length radius.

    words[i] is the canonical word of vertex i (genset letter indices);
    edges hold (tail, head, label letter index) in canonical orientation.
    """

    radius: int
    words: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int], ...]
    distance: tuple[int, ...]
    sphere: frozenset[int]
    interior: frozenset[int]
    spec: AutomatonSpec = field(compare=False, repr=False)
    _canon_to_idx: dict = field(compare=False, repr=False, default_factory=dict)
    _buckets: dict = field(compare=False, repr=False, default_factory=dict)
    _sig_depth: int = field(compare=False, repr=False, default=8)

    @property
    def n_vertices(self) -> int:
        return len(self.words)

    def word_str(self, i: int) -> str:
        return self.spec.join_word(self.spec.names(self.words[i]))

    def find(self, word) -> int | None:
        """Index of the element represented by an arbitrary word, or None
        if it lies outside the ball.  Exact."""
        return self._lookup(self.spec.canonical(self.spec.iword(word)))

    def _lookup(self, cw) -> int | None:
        hit = self._canon_to_idx.get(cw)
        if hit is not None:
            return hit
        spec = self.spec
        sig = spec.level_action(cw, self._sig_depth)
        for idx in self._buckets.get(sig, ()):
            if spec.is_identity(cw + spec.inverse_word(self.words[idx])):
                self._canon_to_idx[cw] = idx
                return idx
        return None

    def _register(self, cw, idx, sig):
        self._canon_to_idx[cw] = idx
        self._buckets.setdefault(sig, []).append(idx)


def build_ball(spec: AutomatonSpec, radius: int,
               cap_vertices: int = DEFAULT_VERTEX_CAP) -> CayleyBall:
    """Deterministic BFS ball of the given radius around the identity."""
    spec.require_exact("build_ball")
    if radius < 0:
        raise ValidationError("radius must be >= 0")
    sig_depth = spec.signature_depth()
    n_letters = len(spec.letters)

    words: list[tuple[int, ...]] = [()]
    distance: list[int] = [0]
    canon_to_idx: dict[tuple[int, ...], int] = {(): 0}
    buckets: dict[tuple[int, ...], list[int]] = {spec.level_action((), sig_depth): [0]}

    def lookup(cw):
        hit = canon_to_idx.get(cw)
        if hit is not None:
            return hit
        sig = spec.level_action(cw, sig_depth)
        for idx in buckets.get(sig, ()):
            if spec.is_identity(cw + spec.inverse_word(words[idx])):
                canon_to_idx[cw] = idx
                return idx
        return None

    prev_level = [()]
    for r in range(1, radius + 1):
        candidates = sorted({spec.canonical(w + (s,))
                             for w in prev_level for s in range(n_letters)})
        new_level = []
        for cw in candidates:
            if lookup(cw) is not None:
                continue
            idx = len(words)
            if idx >= cap_vertices:
                raise ResourceCapError(
                    f"ball exceeded the vertex cap {cap_vertices} at radius {r}",
                    lower_bound=idx + 1)
            words.append(cw)
            distance.append(r)
            canon_to_idx[cw] = idx
            buckets.setdefault(spec.level_action(cw, sig_depth), []).append(idx)
            new_level.append(cw)
        if not new_level:
            break  # the group is exhausted; smaller balls already closed up
        prev_level = new_level

    edge_set = set()
    for i, w in enumerate(words):
        for s in range(n_letters):
            j = lookup(spec.canonical(w + (s,)))
            if j is None or j == i:
                continue
            if i < j:
                edge_set.add((i, j, s))
            else:
                edge_set.add((j, i, spec.inverse_letter[s]))

    n = len(words)
    return CayleyBall(radius=radius, words=tuple(words), edges=tuple(sorted(edge_set)),
                      distance=tuple(distance),
                      sphere=frozenset(i for i in range(n) if distance[i] == radius),
                      interior=frozenset(i for i in range(n) if distance[i] < radius),
                      spec=spec, _canon_to_idx=canon_to_idx, _buckets=buckets,
                      _sig_depth=sig_depth)


def classify_vertices(ball: CayleyBall) -> tuple[frozenset[int], frozenset[int]]:
    """(interior, sphere): sphere is everything at distance exactly radius."""
    return ball.interior, ball.sphere


def oriented_edges(ball: CayleyBall) -> list[tuple[int, int, str]]:
    """Edges with labels as generator names, in canonical order."""
    return [(t, h, ball.spec.genset[s]) for t, h, s in ball.edges]


# -- serialization -----------------------------------------------------------


def ball_to_json(ball: CayleyBall) -> dict:
    return {
        "radius": ball.radius,
        "vertices": [ball.word_str(i) for i in range(ball.n_vertices)],
        "edges": [[t, h, ball.spec.genset[s]] for t, h, s in ball.edges],
        "sphere": sorted(ball.sphere),
    }


def ball_from_json(doc: dict, spec: AutomatonSpec) -> CayleyBall:
    for fieldname in ("radius", "vertices", "edges", "sphere"):
        if fieldname not in doc:
            raise ValidationError(f"ball document: missing field {fieldname!r}")
    words = tuple(spec.iword(spec.split_word(s)) for s in doc["vertices"])
    edges = []
    for k, e in enumerate(doc["edges"]):
        if len(e) != 3:
            raise ValidationError(f"ball document: edges[{k}] must be [tail, head, label]")
        t, h, label = e
        if label not in spec.letter_index:
            raise ValidationError(f"ball document: edges[{k}] has unknown label {label!r}")
        edges.append((int(t), int(h), spec.letter_index[label]))
    n = len(words)
    adj: list[list[int]] = [[] for _ in range(n)]
    for t, h, _s in edges:
        if not (0 <= t < n and 0 <= h < n):
            raise ValidationError("ball document: edge endpoint out of range")
        adj[t].append(h)
        adj[h].append(t)
    distance = [-1] * n
    if n:
        distance[0] = 0
        queue = [0]
        while queue:
            nxt = []
            for u in queue:
                for v in adj[u]:
                    if distance[v] < 0:
                        distance[v] = distance[u] + 1
                        nxt.append(v)
            queue = nxt
    if any(d < 0 for d in distance):
        raise ValidationError("ball document: graph is not connected")
    sphere = frozenset(int(v) for v in doc["sphere"])
    ball = CayleyBall(radius=int(doc["radius"]), words=words, edges=tuple(edges),
                      distance=tuple(distance), sphere=sphere,
                      interior=frozenset(range(n)) - sphere, spec=spec,
                      _sig_depth=spec.signature_depth())
    for i, w in enumerate(words):
        ball._register(w, i, spec.level_action(w, ball._sig_depth))
    return ball


def toy_to_json(toy: ToyGraph) -> dict:
    return {
        "vertices": toy.n_vertices,
        "edges": [[t, h] if label is None else [t, h, label] for t, h, label in toy.edges],
        "boundary": sorted(toy.boundary),
    }


def toy_from_json(doc: dict) -> ToyGraph:
    for fieldname in ("vertices", "edges"):
        if fieldname not in doc:
            raise ValidationError(f"toy graph document: missing field {fieldname!r}")
    return toy_graph(doc["vertices"], doc["edges"], doc.get("boundary", ()))
