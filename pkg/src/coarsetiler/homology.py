"""Chains with Z_p coefficients on finite graphs, and two solvers for the
vertex-charge equation (boundary psi) = c.

The boundary operator sends an oriented edge [x -> y] with value k to +k at
y and -k at x; a reversed edge carries the negated value.  The constructive
solver mimics how one solves the equation on an infinite graph using a
spanning tree, finitized to a ball with its sphere (or any designated
boundary set) playing the role of infinity:

1. Orient the BFS spanning tree away from the root.  A tree edge is
   FINITE when the subtree below it contains no boundary vertex; set psi
   there to the total charge beneath the edge, which settles every vertex
   strictly below a finite edge.
2. The pruned tree of locally-infinite edges is peeled into rays: from its
   root, always descend to the least-index child along a locally-infinite
   edge; the descent can only stop at a boundary vertex.  Solve
   consecutively along the ray so the accumulated excess exits through
   that endpoint, which is exempt.
3. Components of the pruned tree minus the ray hang off ray vertices;
   recurse on each, rooted at its vertex nearest the original root.

The result is supported on tree edges and violates the equation at most on
the boundary.  On a closed graph (empty boundary) a solution exists iff
the total charge is 0 mod p; otherwise UnsolvableOnClosedGraph is raised.

oracle_solve_finite is an independent check: plain Gaussian elimination
over Z_p (p prime) on the full incidence system, no tree structure used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cayley import CayleyBall, ToyGraph
from .errors import (NonPrimeModulusError, UnsolvableOnClosedGraph, ValidationError)

FINITE = "finite"
LOCALLY_INFINITE = "locally-infinite"


def _check_modulus(p) -> int:
    if not isinstance(p, int) or p < 2:
        raise ValidationError("modulus must be an integer >= 2")
    return p


class _ChainBase:
    """Sparse map index -> residue mod p; zero entries are dropped."""

    def __init__(self, p, values=None):
        self.p = _check_modulus(p)
        vals = {}
        if values:
            for k, v in (values.items() if isinstance(values, dict) else values):
                v = int(v) % self.p
                if v:
                    vals[int(k)] = v
        self.values = vals

    def get(self, index: int) -> int:
        return self.values.get(index, 0)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.values.items())

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.values)

    def total(self) -> int:
        return sum(self.values.values()) % self.p

    def __eq__(self, other):
        return (type(self) is type(other) and self.p == other.p
                and self.values == other.values)

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p}, {dict(self.items())})"

    def to_json(self) -> dict:
        return {"p": self.p, "entries": [[k, v] for k, v in self.items()]}

    @classmethod
    def from_json(cls, doc: dict):
        for fieldname in ("p", "entries"):
            if fieldname not in doc:
                raise ValidationError(f"chain document: missing field {fieldname!r}")
        return cls(doc["p"], {int(k): int(v) for k, v in doc["entries"]})


class Chain0(_ChainBase):
    """0-chain: vertex index -> residue."""


class Chain1(_ChainBase):
    """1-chain: edge index (in the owning graph's edge list) -> residue.
    The value on a reversed edge is the negation of the stored one."""


def fundamental_class(n_vertices: int, p: int) -> Chain0:
    """The 0-chain assigning 1 to every vertex."""
    _check_modulus(p)
    return Chain0(p, {v: 1 for v in range(n_vertices)})


def _graph_view(graph, boundary=None):
    """(n_vertices, edges, boundary) for a CayleyBall or ToyGraph."""
    if isinstance(graph, CayleyBall):
        bnd = graph.sphere if boundary is None else frozenset(boundary)
        return graph.n_vertices, graph.edges, bnd
    if isinstance(graph, ToyGraph):
        bnd = graph.boundary if boundary is None else frozenset(boundary)
        return graph.n_vertices, graph.edges, bnd
    raise ValidationError(f"expected a CayleyBall or ToyGraph, got {type(graph).__name__}")


def boundary(psi: Chain1, graph) -> Chain0:
    """Vertex charges induced by an edge chain: +value at head, -value at tail."""
    n, edges, _ = _graph_view(graph)
    p = psi.p
    out: dict[int, int] = {}
    for e, k in psi.values.items():
        if not 0 <= e < len(edges):
            raise ValidationError(f"chain entry {e} is not an edge index of the graph")
        t, h = edges[e][0], edges[e][1]
        out[h] = (out.get(h, 0) + k) % p
        out[t] = (out.get(t, 0) - k) % p
    if any(v >= n for v in out):
        raise ValidationError("edge endpoint outside the graph")
    return Chain0(p, out)


def _adjacency(n, edges):
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (t, h, *_rest) in enumerate(edges):
        adj[t].append((h, k))
        adj[h].append((t, k))
    return adj


def _bfs_distances(n, adj, root=0):
    dist = [-1] * n
    dist[root] = 0
    queue = [root]
    while queue:
        nxt = []
        for u in queue:
            for v, _k in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        queue = nxt
    return dist


@dataclass(frozen=True)
class SpanningTree:
    """BFS tree rooted at vertex 0 with the solver's bookkeeping.

    parent / parent_edge: smallest-index neighbor one level up and the
    smallest edge index realizing it (None at the root).  finite holds the
    tree edges whose below-subtree avoids the boundary; the other tree
    edges are locally infinite.  rays are the vertex paths the solver
    peels off the pruned tree, in deterministic order.
    """

    root: int
    distance: tuple[int, ...]
    parent: tuple[int | None, ...]
    parent_edge: tuple[int | None, ...]
    finite: frozenset[int]
    locally_infinite: frozenset[int]
    rays: tuple[tuple[int, ...], ...]

    def classification(self, edge_index: int) -> str:
        if edge_index in self.finite:
            return FINITE
        if edge_index in self.locally_infinite:
            return LOCALLY_INFINITE
        raise ValidationError(f"edge {edge_index} is not a tree edge")


def spanning_tree(graph, boundary=None) -> SpanningTree:
    """Deterministic BFS spanning tree plus the finite / locally-infinite
    split relative to the graph's boundary (the sphere, for balls)."""
    n, edges, bnd = _graph_view(graph, boundary)
    adj = _adjacency(n, edges)
    dist = _bfs_distances(n, adj)
    if any(d < 0 for d in dist):
        raise ValidationError("graph is not connected")

    parent: list[int | None] = [None] * n
    parent_edge: list[int | None] = [None] * n
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if v == 0:
            continue
        best = None
        for u, k in adj[v]:
            if dist[u] != dist[v] - 1:
                continue
            if best is None or (u, k) < best:
                best = (u, k)
        parent[v], parent_edge[v] = best
    for v in range(1, n):
        children[parent[v]].append(v)
    for u in range(n):
        children[u].sort()

    order = sorted(range(n), key=lambda v: dist[v])
    touches = [False] * n
    for v in reversed(order):
        touches[v] = v in bnd or any(touches[w] for w in children[v])

    finite, locally_infinite = set(), set()
    for v in range(1, n):
        (finite if not touches[v] else locally_infinite).add(parent_edge[v])

    rays: list[tuple[int, ...]] = []
    if bnd:
        stack = [0]
        while stack:
            start = stack.pop()
            ray = [start]
            v = start
            while True:
                nxt = [w for w in children[v] if touches[w]]
                if not nxt:
                    break
                v = nxt[0]
                ray.append(v)
            rays.append(tuple(ray))
            # components of the pruned tree hanging off this ray, nearest
            # vertex first; deterministic because children are sorted
            pending = []
            on_ray = set(ray)
            for u in ray:
                for w in children[u]:
                    if touches[w] and w not in on_ray:
                        pending.append(w)
            stack.extend(reversed(pending))

    return SpanningTree(root=0, distance=tuple(dist), parent=tuple(parent),
                        parent_edge=tuple(parent_edge), finite=frozenset(finite),
                        locally_infinite=frozenset(locally_infinite), rays=tuple(rays))


def solve_on_ball(graph, c: Chain0, boundary_set=None) -> Chain1:
    """Constructive tree solver; see the module docstring for the scheme.

    Returns a chain supported on tree edges whose boundary equals c away
    from the designated boundary set.  Raises UnsolvableOnClosedGraph when
    the boundary set is empty and the total charge is nonzero mod p.
    """
    p = c.p
    n, edges, bnd = _graph_view(graph, boundary_set)
    tree = spanning_tree(graph, bnd)
    if not bnd and c.total() != 0:
        raise UnsolvableOnClosedGraph(
            f"closed graph with total charge {c.total()} != 0 mod {p}")

    psi: dict[int, int] = {}

    def add_flow(edge_index, tail, amount):
        # amount is interpreted along tail -> other endpoint
        if edges[edge_index][0] == tail:
            psi[edge_index] = (psi.get(edge_index, 0) + amount) % p
        else:
            psi[edge_index] = (psi.get(edge_index, 0) - amount) % p

    # step 1: finite subtrees, deepest vertices first
    order = sorted(range(n), key=lambda v: tree.distance[v], reverse=True)
    sub = [0] * n
    for v in order:
        sub[v] = (sub[v] + c.get(v)) % p
        e = tree.parent_edge[v]
        if e is None:
            continue
        u = tree.parent[v]
        sub[u] = (sub[u] + sub[v]) % p
        if e in tree.finite:
            # below-edge charge flows up through e toward the root
            t, h = edges[e][0], edges[e][1]
            value = sub[v] if h == v else (-sub[v]) % p
            if value:
                psi[e] = value

    # residual charge after step 1, then rays
    settled = boundary(Chain1(p, psi), graph)
    g = {v: (c.get(v) - settled.get(v)) % p for v in range(n)}
    for ray in tree.rays:
        acc = 0
        for i in range(len(ray) - 1):
            acc = (acc + g[ray[i]]) % p
            add_flow(tree.parent_edge[ray[i + 1]], ray[i], (-acc) % p)

    return Chain1(p, psi)


def residual(graph, psi: Chain1, c: Chain0) -> frozenset[int]:
    """Vertices where (boundary psi) differs from c."""
    if psi.p != c.p:
        raise ValidationError(f"modulus mismatch: chain p={psi.p} vs charge p={c.p}")
    n, _edges, _ = _graph_view(graph)
    got = boundary(psi, graph)
    return frozenset(v for v in range(n) if got.get(v) != c.get(v))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def oracle_solve_finite(graph, c: Chain0) -> Chain1 | None:
    """Gaussian elimination over Z_p on the incidence system of a closed
    connected graph.  Returns some solution, or None when inconsistent.
    Restricted to prime p, where Z_p is a field."""
    p = c.p
    if not _is_prime(p):
        raise NonPrimeModulusError(f"oracle requires a prime modulus, got {p}")
    n, edges, bnd = _graph_view(graph)
    if bnd:
        raise ValidationError("oracle expects a closed graph (empty boundary)")
    adj = _adjacency(n, edges)
    if any(d < 0 for d in _bfs_distances(n, adj)):
        raise ValidationError("graph is not connected")

    m = len(edges)
    rows = []
    for v in range(n):
        row = [0] * (m + 1)
        row[m] = c.get(v)
        rows.append(row)
    for k, (t, h, *_rest) in enumerate(edges):
        rows[h][k] = (rows[h][k] + 1) % p
        rows[t][k] = (rows[t][k] - 1) % p

    pivot_col_of_row = []
    r = 0
    for col in range(m):
        piv = None
        for i in range(r, n):
            if rows[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        lead = rows[r]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], lead)]
        pivot_col_of_row.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if rows[i][m] % p:
            return None

    values = {}
    for i, col in enumerate(pivot_col_of_row):
        # free variables are 0, so the pivot value is just the constant term
        if rows[i][m] % p:
            values[col] = rows[i][m] % p
    return Chain1(p, values)
