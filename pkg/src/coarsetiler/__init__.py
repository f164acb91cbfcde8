"""Aperiodic decorated tiles from tree automaton groups.

The pipeline: enumerate a word-length ball in an automaton group's Cayley
graph, solve the mod-p charge equation on it with a constructive
spanning-tree solver, read off a finite alphabet of decorated tiles whose
local matching rules encode the solution, and certify aperiodicity
through finite level quotients.
"""

from .automaton import (AutomatonSpec, PRESET_NAMES, canonicalize,
                        dump_automaton, formal_inverse, is_identity,
                        is_identity_up_to_depth, level_action, load_preset,
                        parse_automaton, root_permutation, section)
from .cayley import (CayleyBall, ToyGraph, ball_from_json, ball_to_json,
                     build_ball, classify_vertices, oriented_edges, toy_from_json,
                     toy_graph, toy_to_json)
from .errors import (NonPrimeModulusError, RecursionSafetyError,
                     ResourceCapError, TilerError, UnsolvableOnClosedGraph,
                     ValidationError)
from .exporting import (ball_to_dot, export_dot, patch_to_dot, tileset_to_svg,
                        toy_to_dot)
from .homology import (Chain0, Chain1, boundary, fundamental_class,
                       oracle_solve_finite, residual, solve_on_ball,
                       spanning_tree)
from .quotients import (CertificateReport, QuotientGroup,
                        aperiodicity_certificate, certificate_from_json,
                        enumerate_quotient, factorize, level_quotient,
                        obstruction_check, quotient_order)
from .tiles import (BUMP, DENT, FaceProfile, PatchTiling, TileSet, TileType,
                    build_patch, decorate, make_face, mutate_face, opposition,
                    patch_from_json, patch_to_json, reconstruct_chain,
                    tiles_to_json, verify_tiling)

__version__ = "0.1.0"

__all__ = [
    "AutomatonSpec", "PRESET_NAMES", "canonicalize", "dump_automaton",
    "formal_inverse", "is_identity", "is_identity_up_to_depth", "level_action",
    "load_preset", "parse_automaton", "root_permutation", "section",
    "CayleyBall", "ToyGraph", "ball_from_json", "ball_to_json", "build_ball",
    "classify_vertices", "oriented_edges", "toy_from_json", "toy_graph",
    "toy_to_json",
    "NonPrimeModulusError", "RecursionSafetyError", "ResourceCapError",
    "TilerError", "UnsolvableOnClosedGraph", "ValidationError",
    "ball_to_dot", "export_dot", "patch_to_dot", "tileset_to_svg", "toy_to_dot",
    "Chain0", "Chain1", "boundary", "fundamental_class", "oracle_solve_finite",
    "residual", "solve_on_ball", "spanning_tree",
    "CertificateReport", "QuotientGroup", "aperiodicity_certificate",
    "certificate_from_json", "enumerate_quotient", "factorize",
    "level_quotient", "obstruction_check", "quotient_order",
    "BUMP", "DENT", "FaceProfile", "PatchTiling", "TileSet", "TileType",
    "build_patch", "decorate", "make_face", "mutate_face", "opposition",
    "patch_from_json", "patch_to_json", "reconstruct_chain", "tiles_to_json",
    "verify_tiling",
    "__version__",
]
