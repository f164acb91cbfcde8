"""Finite level quotients and the aperiodicity certificate.

The action of the group on words of a fixed length n factors through a
finite permutation group on d^n leaves.  This module enumerates those
quotients by breadth-first closure, builds their (closed) labeled Cayley
graphs, and assembles a machine-checkable certificate from two finite
computations per level:

  * the quotient order, with its trial-division factorization, to check
    that the modulus p does not divide it;
  * a direct linear-algebra check of whether the all-ones vertex chain is
    a boundary over Z_p on the quotient's Cayley graph.

On a finite connected graph the all-ones chain is a boundary exactly when
p divides the vertex count, so the two checks must agree; the certificate
records both and fails loudly if they ever diverge.  A certificate PASSes
when every requested level has order coprime to p and no all-ones
boundary; it FAILs if any completed level violates either condition, and
is INCOMPLETE only when caps stopped the enumeration before any violation
was seen.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .automaton import DEFAULT_DEPTH_CAP, DEFAULT_LEAF_CAP, AutomatonSpec, level_action
from .cayley import ToyGraph
from .errors import NonPrimeModulusError, ResourceCapError, ValidationError
from .homology import _is_prime, fundamental_class, oracle_solve_finite

DEFAULT_ELEMENT_CAP = 1_000_000

Perm = tuple[int, ...]


def _compose(f: Perm, g: Perm) -> Perm:
    """Apply f, then g."""
    return tuple(g[x] for x in f)


def level_quotient(spec: AutomatonSpec, level: int,
                   cap_depth: int = DEFAULT_DEPTH_CAP) -> tuple[Perm, ...]:
    """One leaf permutation per genset letter: how that letter moves the
    d^level words of the given length."""
    if level < 0:
        raise ValidationError("level must be >= 0")
    return tuple(level_action((i,), level, spec=spec,
                              cap_leaves=DEFAULT_LEAF_CAP, cap_depth=cap_depth)
                 for i in range(len(spec.genset)))


@dataclass(frozen=True)
class QuotientGroup:
    level: int
    genset: tuple[str, ...]
    perms: tuple[Perm, ...]
    order: int
    elements: tuple[Perm, ...]
    cayley: ToyGraph


def enumerate_quotient(spec: AutomatonSpec, level: int,
                       cap_elements: int = DEFAULT_ELEMENT_CAP,
                       cap_depth: int = DEFAULT_DEPTH_CAP) -> QuotientGroup:
    """Breadth-first closure of the level quotient, identity first, then
    by discovery order (level-major, genset order within a frontier).

    The Cayley graph stores one edge per unordered element pair and
    inverse-letter pair, oriented toward the smaller index; fixed points
    (loops) are dropped.
    """
    perms = level_quotient(spec, level, cap_depth=cap_depth)
    genset = spec.genset
    inv_index = {i: genset.index(spec.inverses[g]) for i, g in enumerate(genset)}

    identity = tuple(range(len(perms[0]) if perms else 1))
    elements: list[Perm] = [identity]
    index: dict[Perm, int] = {identity: 0}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s in range(len(perms)):
                y = _compose(x, perms[s])
                if y not in index:
                    if len(elements) >= cap_elements:
                        raise ResourceCapError(
                            f"quotient at level {level} exceeds {cap_elements} elements",
                            lower_bound=len(elements) + 1)
                    index[y] = len(elements)
                    elements.append(y)
                    next_frontier.append(y)
        frontier = next_frontier

    edges = set()
    for ix, x in enumerate(elements):
        for s in range(len(perms)):
            iy = index[_compose(x, perms[s])]
            if iy == ix:
                continue
            edges.add((ix, iy, s) if ix < iy else (iy, ix, inv_index[s]))
    ordered = sorted(edges)
    cayley = ToyGraph(
        n_vertices=len(elements),
        edges=tuple((t, h, genset[s]) for t, h, s in ordered),
        boundary=frozenset())
    return QuotientGroup(level=level, genset=genset, perms=perms,
                         order=len(elements), elements=tuple(elements), cayley=cayley)


def quotient_order(spec: AutomatonSpec, level: int,
                   cap_elements: int = DEFAULT_ELEMENT_CAP) -> int:
    return enumerate_quotient(spec, level, cap_elements).order


def obstruction_check(graph: ToyGraph, p: int):
    """Whether the all-ones vertex chain is a boundary over Z_p on a
    closed connected graph.  Returns (is_boundary, witness) with witness a
    Chain1 solving the equation when one exists, else None."""
    witness = oracle_solve_finite(graph, fundamental_class(graph.n_vertices, p))
    return witness is not None, witness


def factorize(n: int) -> dict[int, int]:
    """Trial-division prime factorization, {prime: exponent}."""
    if n < 1:
        raise ValidationError("can only factor positive integers")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class LevelRecord:
    level: int
    order: int | None
    factorization: tuple[tuple[int, int], ...] | None
    p_divides_order: bool | None
    all_ones_is_boundary: bool | None
    capped: bool
    order_lower_bound: int | None

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "order": self.order,
            "factorization": None if self.factorization is None
            else [[q, e] for q, e in self.factorization],
            "p_divides_order": self.p_divides_order,
            "all_ones_is_boundary": self.all_ones_is_boundary,
            "capped": self.capped,
            "order_lower_bound": self.order_lower_bound,
        }


@dataclass(frozen=True)
class CertificateReport:
    group: str
    p: int
    levels: tuple[LevelRecord, ...]
    verdict: str  # "PASS" | "FAIL" | "INCOMPLETE"
    trusted_inputs: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "levels": [rec.to_json() for rec in self.levels],
            "verdict": self.verdict,
            "trusted_inputs": list(self.trusted_inputs),
        }

    def to_text(self) -> str:
        lines = [f"aperiodicity certificate: group={self.group} p={self.p}"]
        for rec in self.levels:
            if rec.capped:
                detail = (f" (order > {rec.order_lower_bound - 1})"
                          if rec.order_lower_bound is not None else "")
                lines.append(f"  level {rec.level}: enumeration capped{detail}")
                continue
            factors = " * ".join(f"{q}^{e}" if e > 1 else str(q)
                                 for q, e in rec.factorization) or "1"
            lines.append(
                f"  level {rec.level}: order {rec.order} = {factors};"
                f" p | order: {'yes' if rec.p_divides_order else 'no'};"
                f" all-ones is a boundary: {'yes' if rec.all_ones_is_boundary else 'no'}")
        lines.append(f"verdict: {self.verdict}")
        for t in self.trusted_inputs:
            lines.append(f"trusted: {t}")
        return "\n".join(lines) + "\n"


def _trusted_inputs(spec: AutomatonSpec, levels) -> tuple[str, ...]:
    source = (f"built-in transition table {spec.preset_id!r}" if spec.preset_id
              else "user-supplied transition table")
    return (
        f"{source} defines the intended group action",
        "primality of p checked by trial division",
        f"finite checks cover levels {min(levels)}..{max(levels)} only;"
        " conclusions about deeper levels rest on the order dividing"
        " pattern continuing",
    )


def aperiodicity_certificate(spec: AutomatonSpec, p: int, levels,
                             cap_elements: int = DEFAULT_ELEMENT_CAP,
                             cap_depth: int = DEFAULT_DEPTH_CAP) -> CertificateReport:
    """Run the per-level order and boundary checks and assemble a report.

    A FAIL at any completed level wins over caps elsewhere; INCOMPLETE is
    only returned when at least one level was capped and no completed
    level failed.
    """
    if not _is_prime(p):
        raise NonPrimeModulusError(f"certificate modulus must be prime, got {p}")
    levels = tuple(sorted(set(int(x) for x in levels)))
    if not levels or levels[0] < 1:
        raise ValidationError("levels must be a nonempty set of integers >= 1")

    records = []
    saw_cap = False
    saw_fail = False
    for level in levels:
        try:
            q = enumerate_quotient(spec, level, cap_elements, cap_depth=cap_depth)
        except ResourceCapError as exc:
            saw_cap = True
            records.append(LevelRecord(
                level=level, order=None, factorization=None,
                p_divides_order=None, all_ones_is_boundary=None,
                capped=True, order_lower_bound=exc.lower_bound))
            continue
        divides = q.order % p == 0
        is_boundary, _witness = obstruction_check(q.cayley, p)
        if is_boundary != divides:
            raise ValidationError(
                f"internal cross-check failed at level {level}: order {q.order}"
                f" vs boundary status {is_boundary}")
        if divides or is_boundary:
            saw_fail = True
        records.append(LevelRecord(
            level=level, order=q.order,
            factorization=tuple(sorted(factorize(q.order).items())),
            p_divides_order=divides, all_ones_is_boundary=is_boundary,
            capped=False, order_lower_bound=None))

    verdict = "FAIL" if saw_fail else ("INCOMPLETE" if saw_cap else "PASS")
    group = spec.preset_id or "custom"
    return CertificateReport(group=group, p=p, levels=tuple(records),
                             verdict=verdict,
                             trusted_inputs=_trusted_inputs(spec, levels))


def certificate_from_json(doc) -> CertificateReport:
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, dict):
        raise ValidationError("certificate: document must be an object")
    for fieldname in ("group", "p", "levels", "verdict", "trusted_inputs"):
        if fieldname not in doc:
            raise ValidationError(f"certificate.{fieldname}: missing field")
    records = []
    for i, rd in enumerate(doc["levels"]):
        records.append(LevelRecord(
            level=int(rd["level"]),
            order=rd["order"],
            factorization=None if rd["factorization"] is None
            else tuple((int(q), int(e)) for q, e in rd["factorization"]),
            p_divides_order=rd["p_divides_order"],
            all_ones_is_boundary=rd["all_ones_is_boundary"],
            capped=bool(rd["capped"]),
            order_lower_bound=rd["order_lower_bound"]))
    if doc["verdict"] not in ("PASS", "FAIL", "INCOMPLETE"):
        raise ValidationError("certificate.verdict: expected PASS, FAIL or INCOMPLETE")
    return CertificateReport(group=str(doc["group"]), p=int(doc["p"]),
                             levels=tuple(records), verdict=doc["verdict"],
                             trusted_inputs=tuple(str(t) for t in doc["trusted_inputs"]))
