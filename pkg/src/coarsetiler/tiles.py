"""Decorated tiles read off an edge chain mod p.

A tile sits on a vertex and has one face per generator direction.  The
face toward a neighbor records the generator label, a polarity and a bump
count in 0..p-1: for an edge (x -> y) labeled s with chain value k, the
tile at x shows k bumps toward y on its s face and the tile at y shows k
matching indentations on its s^-1 face.  Count 0 is a flat face and is
normalized to bump polarity.  Directions with no incident edge (neighbors
truncated away, or generators acting trivially on a quotient) stay
unknown (None) and exclude the tile from the extracted alphabet.

Two faces across an edge match when one is the opposition of the other:
generator inverted, polarity flipped, count kept.  The finite alphabet of
a decoration is the set of distinct fully-known tiles over interior
vertices; it can never exceed (2p)^|genset|.

verify_tiling checks matching on every edge and that the reconstructed
chain has boundary 1 at every interior vertex; both violation lists come
back sorted, so checking edges in any order (or concurrently) yields the
same report.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .cayley import CayleyBall, ToyGraph, toy_graph
from .errors import ValidationError
from .homology import Chain0, Chain1, _graph_view, boundary

BUMP = "bump"
DENT = "dent"


@dataclass(frozen=True, order=True)
class FaceProfile:
    generator: str
    polarity: str
    count: int


def make_face(generator: str, polarity: str, count: int, p: int) -> FaceProfile:
    if polarity not in (BUMP, DENT):
        raise ValidationError(f"polarity must be {BUMP!r} or {DENT!r}")
    count = int(count) % p
    if count == 0:
        polarity = BUMP  # flat faces carry no orientation
    return FaceProfile(generator, polarity, count)


def opposition(face: FaceProfile, inverses: dict[str, str]) -> FaceProfile:
    """The matching profile seen from the other endpoint: inverse
    generator, flipped polarity, same count.  An involution."""
    if face.generator not in inverses:
        raise ValidationError(f"face generator {face.generator!r} has no declared inverse")
    if face.count == 0:
        return FaceProfile(inverses[face.generator], BUMP, 0)
    flipped = DENT if face.polarity == BUMP else BUMP
    return FaceProfile(inverses[face.generator], flipped, face.count)


@dataclass(frozen=True)
class TileType:
    """One face per genset entry, in genset order; None marks an unknown
    direction."""

    faces: tuple[FaceProfile | None, ...]


@dataclass(frozen=True)
class TileSet:
    p: int
    genset: tuple[str, ...]
    types: tuple[TileType, ...]


def _face_sort_key(face):
    return ("", "", -1) if face is None else (face.generator, face.polarity, face.count)


def _tile_sort_key(tile):
    return tuple(_face_sort_key(f) for f in tile.faces)


def _resolve_alphabet(graph, genset, inverses):
    if isinstance(graph, CayleyBall):
        spec = graph.spec
        genset = spec.genset if genset is None else tuple(genset)
        inverses = spec.inverses if inverses is None else dict(inverses)
    else:
        if genset is None or inverses is None:
            raise ValidationError("toy graphs need explicit genset and inverses")
        genset = tuple(genset)
        inverses = dict(inverses)
    for g in genset:
        if inverses.get(g) not in genset:
            raise ValidationError(f"inverses must map {g!r} into the genset")
    return genset, inverses


def _label_name(graph, label):
    if isinstance(graph, CayleyBall):
        return graph.spec.genset[label]
    return label


def _interior(graph, n):
    if isinstance(graph, CayleyBall):
        return frozenset(graph.interior)
    return frozenset(range(n)) - graph.boundary


def decorate(graph, psi: Chain1, genset=None, inverses=None):
    """Tiles for every vertex from the chain psi, plus the extracted
    alphabet over interior vertices whose every face is known.

    Returns (assignment, tileset) where assignment[v] is the TileType at
    vertex v.  psi is normally a solution of the charge equation on the
    interior, but that is not enforced here; verify_tiling is the check.
    """
    p = psi.p
    n, edges, _bnd = _graph_view(graph)
    genset, inverses = _resolve_alphabet(graph, genset, inverses)
    slot = {g: i for i, g in enumerate(genset)}

    faces: list[list[FaceProfile | None]] = [[None] * len(genset) for _ in range(n)]
    for k, (t, h, label) in enumerate(edges):
        name = _label_name(graph, label)
        if name not in slot:
            raise ValidationError(f"edges[{k}]: label {name!r} is not in the genset")
        value = psi.get(k)
        for vertex, direction, polarity in ((t, name, BUMP), (h, inverses[name], DENT)):
            face = make_face(direction, polarity, value, p)
            if faces[vertex][slot[direction]] is not None:
                raise ValidationError(
                    f"vertex {vertex} has two edges in direction {direction!r}")
            faces[vertex][slot[direction]] = face

    assignment = tuple(TileType(tuple(f)) for f in faces)
    interior = _interior(graph, n)
    alphabet = {assignment[v] for v in interior
                if all(f is not None for f in assignment[v].faces)}
    types = tuple(sorted(alphabet, key=_tile_sort_key))
    return assignment, TileSet(p=p, genset=genset, types=types)


@dataclass(frozen=True)
class PatchTiling:
    """A graph with a tile assigned to every vertex.

    graph supplies labeled oriented edges; assignment[v] indexes into
    types; interior lists the vertices where the charge condition is
    required to hold."""

    graph: object
    genset: tuple[str, ...]
    inverses: tuple[tuple[str, str], ...]
    types: tuple[TileType, ...]
    assignment: tuple[int, ...]
    interior: frozenset[int]

    def __post_init__(self):
        n, _edges, _ = _graph_view(self.graph)
        if len(self.assignment) != n:
            raise ValidationError("assignment must cover every vertex")
        for v, ti in enumerate(self.assignment):
            if not 0 <= ti < len(self.types):
                raise ValidationError(f"assignment[{v}]: tile index {ti} out of range")
        for v in self.interior:
            if not 0 <= v < n:
                raise ValidationError(f"interior vertex {v} out of range")

    @property
    def inverse_map(self) -> dict[str, str]:
        return dict(self.inverses)

    def tile_at(self, v: int) -> TileType:
        return self.types[self.assignment[v]]


def build_patch(graph, psi: Chain1, genset=None, inverses=None) -> PatchTiling:
    """Bundle decorate's output into a self-contained patch."""
    assignment, _tileset = decorate(graph, psi, genset, inverses)
    genset, inverses = _resolve_alphabet(graph, genset, inverses)
    types = tuple(sorted(set(assignment), key=_tile_sort_key))
    index = {t: i for i, t in enumerate(types)}
    n, _edges, _ = _graph_view(graph)
    return PatchTiling(graph=graph, genset=genset,
                       inverses=tuple(sorted(inverses.items())), types=types,
                       assignment=tuple(index[t] for t in assignment),
                       interior=_interior(graph, n))


def reconstruct_chain(patch: PatchTiling, p: int) -> Chain1:
    """Read the chain back from tail faces: +count for a bump, -count for
    a dent, taken along each edge's stored orientation."""
    _n, edges, _ = _graph_view(patch.graph)
    slot = {g: i for i, g in enumerate(patch.genset)}
    values = {}
    for k, (t, _h, label) in enumerate(edges):
        name = _label_name(patch.graph, label)
        if name not in slot:
            raise ValidationError(f"edges[{k}]: label {name!r} is not in the genset")
        face = patch.tile_at(t).faces[slot[name]]
        if face is None:
            raise ValidationError(
                f"edges[{k}]: tile at vertex {t} has no face in direction {name!r}")
        values[k] = face.count if face.polarity == BUMP else -face.count
    return Chain1(p, values)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    mismatched_edges: tuple[int, ...]
    wrong_charge_vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "mismatched_edges": list(self.mismatched_edges),
                "wrong_charge_vertices": list(self.wrong_charge_vertices)}


def verify_tiling(patch: PatchTiling, p: int) -> VerificationReport:
    """Check face matching on every edge and unit charge at every interior
    vertex; violations come back sorted by edge / vertex index."""
    n, edges, _ = _graph_view(patch.graph)
    inverses = patch.inverse_map
    slot = {g: i for i, g in enumerate(patch.genset)}

    bad_edges = []
    psi_values = {}
    for k, (t, h, label) in enumerate(edges):
        name = _label_name(patch.graph, label)
        if name not in slot or inverses.get(name) not in slot:
            raise ValidationError(f"edges[{k}]: label {name!r} is not in the genset")
        tail_face = patch.tile_at(t).faces[slot[name]]
        head_face = patch.tile_at(h).faces[slot[inverses[name]]]
        if tail_face is None or head_face is None:
            bad_edges.append(k)
            continue
        if opposition(tail_face, inverses) != head_face:
            bad_edges.append(k)
        psi_values[k] = tail_face.count if tail_face.polarity == BUMP else -tail_face.count

    charges = boundary(Chain1(p, psi_values), patch.graph)
    bad_vertices = sorted(v for v in patch.interior if charges.get(v) != 1 % p)
    return VerificationReport(ok=not bad_edges and not bad_vertices,
                              mismatched_edges=tuple(sorted(bad_edges)),
                              wrong_charge_vertices=tuple(bad_vertices))


# -- serialization -----------------------------------------------------------


def _face_to_json(face):
    if face is None:
        return None
    return {"gen": face.generator, "polarity": face.polarity, "count": face.count}


def _face_from_json(doc, p, where):
    if doc is None:
        return None
    if not isinstance(doc, dict):
        raise ValidationError(f"{where}: face must be an object or null")
    for fieldname in ("gen", "polarity", "count"):
        if fieldname not in doc:
            raise ValidationError(f"{where}.{fieldname}: missing field")
    count = doc["count"]
    if not isinstance(count, int) or not 0 <= count < p:
        raise ValidationError(f"{where}.count: expected an integer in 0..{p - 1}")
    if doc["polarity"] not in (BUMP, DENT):
        raise ValidationError(f"{where}.polarity: expected {BUMP!r} or {DENT!r}")
    if count == 0 and doc["polarity"] != BUMP:
        raise ValidationError(f"{where}: flat faces must use {BUMP!r} polarity")
    return FaceProfile(str(doc["gen"]), doc["polarity"], count)


def tiles_to_json(tileset: TileSet, assignment=None) -> dict:
    """The alphabet dump: {p, genset, types, assignment}, where assignment
    covers exactly the vertices whose tile made it into the alphabet."""
    doc = {
        "p": tileset.p,
        "genset": list(tileset.genset),
        "types": [[_face_to_json(f) for f in t.faces] for t in tileset.types],
    }
    if assignment is not None:
        index = {t: i for i, t in enumerate(tileset.types)}
        doc["assignment"] = [[v, index[t]] for v, t in enumerate(assignment) if t in index]
    else:
        doc["assignment"] = []
    return doc


def patch_to_json(patch: PatchTiling, p: int) -> dict:
    n, edges, _ = _graph_view(patch.graph)
    named_edges = [[t, h, _label_name(patch.graph, label)] for t, h, label in edges]
    return {
        "p": p,
        "genset": list(patch.genset),
        "inverses": dict(patch.inverses),
        "graph": {"vertices": n, "edges": named_edges},
        "interior": sorted(patch.interior),
        "types": [[_face_to_json(f) for f in t.faces] for t in patch.types],
        "assignment": [[v, ti] for v, ti in enumerate(patch.assignment)],
    }


def patch_from_json(doc: dict) -> tuple[PatchTiling, int]:
    """Parse a patch document; returns (patch, p).  Errors name the first
    offending field."""
    if not isinstance(doc, dict):
        raise ValidationError("patch: document must be an object")
    for fieldname in ("p", "genset", "inverses", "graph", "interior", "types", "assignment"):
        if fieldname not in doc:
            raise ValidationError(f"patch.{fieldname}: missing field")
    p = doc["p"]
    if not isinstance(p, int) or p < 2:
        raise ValidationError("patch.p: expected an integer >= 2")
    genset = doc["genset"]
    if not isinstance(genset, list) or not all(isinstance(g, str) for g in genset):
        raise ValidationError("patch.genset: expected a list of names")
    inverses = doc["inverses"]
    if not isinstance(inverses, dict):
        raise ValidationError("patch.inverses: expected an object")
    graph_doc = doc["graph"]
    if not isinstance(graph_doc, dict) or "vertices" not in graph_doc or "edges" not in graph_doc:
        raise ValidationError("patch.graph: expected {vertices, edges}")
    for k, e in enumerate(graph_doc["edges"]):
        if len(e) != 3 or e[2] is None:
            raise ValidationError(f"patch.graph.edges[{k}]: expected [tail, head, label]")
    interior_doc = doc["interior"]
    if not isinstance(interior_doc, list):
        raise ValidationError("patch.interior: expected a list of vertex indices")
    n_declared = graph_doc["vertices"]
    if not isinstance(n_declared, int) or n_declared < 1:
        raise ValidationError("patch.graph.vertices: expected a positive integer")
    graph = toy_graph(n_declared, graph_doc["edges"],
                      boundary=set(range(n_declared)) - {int(v) for v in interior_doc})
    types = []
    for i, faces_doc in enumerate(doc["types"]):
        if not isinstance(faces_doc, list) or len(faces_doc) != len(genset):
            raise ValidationError(f"patch.types[{i}]: expected {len(genset)} faces")
        types.append(TileType(tuple(
            _face_from_json(fd, p, f"patch.types[{i}][{j}]")
            for j, fd in enumerate(faces_doc))))
    n = graph.n_vertices
    assignment = [None] * n
    for k, pair in enumerate(doc["assignment"]):
        if len(pair) != 2:
            raise ValidationError(f"patch.assignment[{k}]: expected [vertex, type_index]")
        v, ti = pair
        if not isinstance(v, int) or not 0 <= v < n:
            raise ValidationError(f"patch.assignment[{k}]: vertex {v} out of range")
        if not isinstance(ti, int) or not 0 <= ti < len(types):
            raise ValidationError(f"patch.assignment[{k}]: type index {ti} out of range")
        if assignment[v] is not None:
            raise ValidationError(f"patch.assignment[{k}]: vertex {v} assigned twice")
        assignment[v] = ti
    if any(a is None for a in assignment):
        missing = next(v for v, a in enumerate(assignment) if a is None)
        raise ValidationError(f"patch.assignment: vertex {missing} has no tile")
    patch = PatchTiling(graph=graph, genset=tuple(genset),
                        inverses=tuple(sorted((str(k), str(v)) for k, v in inverses.items())),
                        types=tuple(types), assignment=tuple(assignment),
                        interior=frozenset(int(v) for v in interior_doc))
    for g in patch.genset:
        if patch.inverse_map.get(g) not in patch.genset:
            raise ValidationError(f"patch.inverses: {g!r} must map into the genset")
    return patch, p


def mutate_face(patch: PatchTiling, vertex: int, direction: str,
                face: FaceProfile | None) -> PatchTiling:
    """A copy of the patch with one face replaced on one vertex's tile;
    the tile list grows if the mutated tile is new.  Test helper."""
    slot = {g: i for i, g in enumerate(patch.genset)}
    if direction not in slot:
        raise ValidationError(f"unknown direction {direction!r}")
    old = patch.tile_at(vertex)
    new_faces = list(old.faces)
    new_faces[slot[direction]] = face
    new_tile = TileType(tuple(new_faces))
    types = list(patch.types)
    if new_tile not in types:
        types.append(new_tile)
    assignment = list(patch.assignment)
    assignment[vertex] = types.index(new_tile)
    return replace(patch, types=tuple(types), assignment=tuple(assignment))
