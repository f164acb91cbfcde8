"""Self-similar groups presented by wreath recursion.

A group element is given by a word over a symmetric generating set.  Each
generator is an automaton state (or the formal inverse of one) carrying a
permutation of the alphabet {0..d-1} and one section per alphabet letter.
Products act "first left factor, then right factor": for w = uv the action
on a tree word is  x.rest -> w(x).w_x(rest)  with w(x) = v(u(x)) at the
root and sections composing as (uv)_x = u_x . v_{u(x)}.

Two presets are built in, "grigorchuk" (alphabet {0,1}, generators
a, b, c, d, all involutions) and "fabrykowski-gupta" (alphabet {0,1,2},
generators a, b of order 3 with formal inverses A, B).  Each preset ships
a confluent, length-reducing rewriting system; confluence is asserted by
an exhaustive critical-pair check when the spec is constructed.  On
canonical words of length >= 2 every first-level section is strictly
shorter after canonicalization, which makes the recursion in is_identity
terminate; that contraction is asserted at runtime.

Exact decision of the word problem is only promised for the presets.
Custom automata get free reduction plus the depth-bounded comparison
is_identity_up_to_depth.

All spec objects are immutable after construction (internal memo tables
aside) and safe to share between threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import RecursionSafetyError, ResourceCapError, ValidationError

IDENTITY_STATE = "1"

GRIGORCHUK = "grigorchuk"
FABRYKOWSKI_GUPTA = "fabrykowski-gupta"
PRESET_NAMES = (GRIGORCHUK, FABRYKOWSKI_GUPTA)

DEFAULT_LEAF_CAP = 2_000_000
DEFAULT_DEPTH_CAP = 24

# A word is a tuple of generator names; internally we work with tuples of
# genset indices, which the wrappers at the bottom of this file hide.
Word = tuple[str, ...]


def _compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    # apply f, then g
    return tuple(g[x] for x in f)


def _invert_perm(f: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(f)
    for i, x in enumerate(f):
        inv[x] = i
    return tuple(inv)


def _identity_perm(d: int) -> tuple[int, ...]:
    return tuple(range(d))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(value, d: int, where: str) -> tuple[int, ...]:
    """Accept a permutation as an image list [1,0] or cycle string "(0 1)"."""
    if isinstance(value, str):
        body = value.strip()
        if body in ("", "()"):
            return _identity_perm(d)
        if not re.fullmatch(r"\s*(\([^()]*\)\s*)+", body):
            raise ValidationError(f"{where}: cannot parse permutation {value!r}")
        images = list(range(d))
        for cyc in _CYCLE_RE.findall(body):
            pts = [p for p in re.split(r"[,\s]+", cyc.strip()) if p]
            try:
                pts = [int(p) for p in pts]
            except ValueError:
                raise ValidationError(f"{where}: non-integer entry in cycle {cyc!r}") from None
            if len(set(pts)) != len(pts):
                raise ValidationError(f"{where}: repeated point in cycle {cyc!r}")
            for p in pts:
                if not 0 <= p < d:
                    raise ValidationError(f"{where}: point {p} outside alphabet of size {d}")
            for i, p in enumerate(pts):
                images[p] = pts[(i + 1) % len(pts)]
        return tuple(images)
    if isinstance(value, (list, tuple)):
        try:
            images = tuple(int(x) for x in value)
        except (TypeError, ValueError):
            raise ValidationError(f"{where}: non-integer entry in image list") from None
        if sorted(images) != list(range(d)):
            raise ValidationError(f"{where}: {list(value)!r} is not a permutation of 0..{d - 1}")
        return images
    raise ValidationError(f"{where}: permutation must be an image list or cycle string")


def permutation_to_cycles(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        out.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(out) if out else "()"


@dataclass(frozen=True)
class StateDef:
    """One automaton state: its root permutation and section state names."""

    name: str
    root_perm: tuple[int, ...]
    sections: tuple[str, ...]


@dataclass(frozen=True)
class Letter:
    """A genset entry resolved to a state with a sign, with the derived
    wreath data: root permutation and per-position section letters
    (None meaning the identity)."""

    name: str
    state: str
    sign: int
    perm: tuple[int, ...]
    sections: tuple[int | None, ...]


class AutomatonSpec:
    """Validated wreath-recursion presentation over a symmetric genset."""

    def __init__(self, alphabet_size, states, genset, inverses, preset_id=None,
                 rewrite_rules=None):
        if not isinstance(alphabet_size, int) or alphabet_size < 2:
            raise ValidationError("alphabet_size: must be an integer >= 2")
        d = alphabet_size
        self.alphabet_size = d
        self.preset_id = preset_id
        self.exact = preset_id in PRESET_NAMES

        by_name: dict[str, StateDef] = {}
        for i, st in enumerate(states):
            if not isinstance(st, StateDef):
                raise ValidationError(f"states[{i}]: expected StateDef")
            if not st.name or st.name == IDENTITY_STATE:
                raise ValidationError(f"states[{i}].name: {st.name!r} is reserved or empty")
            if st.name in by_name:
                raise ValidationError(f"states[{i}].name: duplicate state {st.name!r}")
            if sorted(st.root_perm) != list(range(d)):
                raise ValidationError(f"states[{i}].root_perm: not a permutation of 0..{d - 1}")
            if len(st.sections) != d:
                raise ValidationError(f"states[{i}].sections: expected {d} entries")
            by_name[st.name] = st
        for name, st in by_name.items():
            for x, target in enumerate(st.sections):
                if target != IDENTITY_STATE and target not in by_name:
                    raise ValidationError(
                        f"states[{name}].sections[{x}]: unknown state {target!r}")
        self.states = by_name

        if not genset:
            raise ValidationError("genset: must not be empty")
        if len(set(genset)) != len(genset):
            raise ValidationError("genset: duplicate generator names")
        self.genset = tuple(genset)
        for g in self.genset:
            if g == IDENTITY_STATE:
                raise ValidationError("genset: the identity state is not a generator")
        for g in self.genset:
            if g not in inverses:
                raise ValidationError(f"inverses: missing entry for generator {g!r}")
            if inverses[g] not in self.genset:
                raise ValidationError(f"inverses[{g!r}]: {inverses[g]!r} is not in the genset")
        for g in self.genset:
            if inverses[inverses[g]] != g:
                raise ValidationError(f"inverses: pairing of {g!r} is not involutive")
        self.inverses = {g: inverses[g] for g in self.genset}

        # Resolve each genset name to (state, sign).  A name that is not a
        # state must be the declared inverse of exactly one state name.
        resolution: dict[str, tuple[str, int]] = {}
        for g in self.genset:
            if g in self.states:
                resolution[g] = (g, +1)
            else:
                owners = [s for s in self.states if self.inverses.get(s) == g]
                if len(owners) != 1:
                    raise ValidationError(
                        f"genset: {g!r} is neither a state nor the inverse of exactly one state")
                resolution[g] = (owners[0], -1)

        self.letter_index = {g: i for i, g in enumerate(self.genset)}
        self.inverse_letter = tuple(self.letter_index[self.inverses[g]] for g in self.genset)

        letters = []
        for g in self.genset:
            state, sign = resolution[g]
            st = self.states[state]
            if sign > 0:
                perm = st.root_perm
                src = st.sections
            else:
                perm = _invert_perm(st.root_perm)
                src = tuple(st.sections[perm[x]] for x in range(d))
            secs = []
            for x in range(d):
                target = src[x]
                if target == IDENTITY_STATE:
                    secs.append(None)
                    continue
                if sign > 0:
                    name = target
                else:
                    if target not in self.letter_index:
                        raise ValidationError(
                            f"genset is not section-closed: inverse of {g!r} needs "
                            f"{target!r}^-1 but {target!r} is not a generator")
                    name = self.inverses[target]
                if name not in self.letter_index:
                    raise ValidationError(
                        f"genset is not section-closed: section of {g!r} at {x} "
                        f"is {name!r}, which is not a generator")
                secs.append(self.letter_index[name])
            letters.append(Letter(g, state, sign, perm, tuple(secs)))
        self.letters = tuple(letters)
        self._identity = _identity_perm(d)
        self._letter_is_identity = tuple(
            l.perm == self._identity and all(s is None for s in l.sections)
            for l in self.letters)
        self._single_char = all(len(g) == 1 for g in self.genset)

        if rewrite_rules is None:
            rewrite_rules = self._free_reduction_rules()
        self.rules = self._check_rules(rewrite_rules)

        self._act_cache: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        self._ident_cache: dict[tuple[int, ...], bool] = {}

        self._assert_confluent()
        self._sanity_depth = 1
        while d ** (self._sanity_depth + 1) <= 1024:
            self._sanity_depth += 1
        self._sanity_check_relations()

    # -- construction helpers -------------------------------------------------

    def _free_reduction_rules(self):
        rules = {}
        for i in range(len(self.letters)):
            rules[(i, self.inverse_letter[i])] = ()
            rules[(self.inverse_letter[i], i)] = ()
        return rules

    def _check_rules(self, raw):
        rules: dict[tuple[int, int], tuple[int, ...]] = {}
        for lhs, rhs in raw.items():
            if len(lhs) != 2:
                raise ValidationError("rewrite rules must have two-letter left sides")
            if len(rhs) >= 2:
                raise ValidationError("rewrite rules must strictly reduce length")
            rules[tuple(lhs)] = tuple(rhs)
        return rules

    def _assert_confluent(self):
        """Exhaustive critical-pair check: all two-rule overlaps rejoin."""
        for (l1, l2), r1 in self.rules.items():
            for (m1, m2), r2 in self.rules.items():
                if l2 != m1:
                    continue
                word = (l1, l2, m2)
                a = self.canonical(r1 + (m2,))
                b = self.canonical((l1,) + r2)
                if a != b:
                    raise ValidationError(
                        f"rewriting is not confluent on overlap "
                        f"{self.names(word)!r}: {self.names(a)!r} != {self.names(b)!r}")

    def _sanity_check_relations(self):
        """Cheap semantic checks: declared inverses cancel and every rewrite
        rule preserves the group element, compared to a bounded depth."""
        n = self._sanity_depth
        for i in range(len(self.letters)):
            w = (i, self.inverse_letter[i])
            if self._act(w, n) != self._act((), n):
                raise ValidationError(
                    f"letter {self.genset[i]!r} and declared inverse "
                    f"{self.inverses[self.genset[i]]!r} do not cancel (checked to depth {n})")
        for lhs, rhs in self.rules.items():
            if self._act(tuple(lhs), n) != self._act(tuple(rhs), n):
                raise ValidationError(
                    f"rewrite rule {self.names(lhs)!r} -> {self.names(rhs)!r} "
                    f"does not preserve the element (checked to depth {n})")

    # -- word plumbing ---------------------------------------------------------

    def iword(self, word) -> tuple[int, ...]:
        """Normalize str / name sequence / index tuple to an index tuple."""
        if isinstance(word, str):
            word = self.split_word(word)
        out = []
        for w in word:
            if isinstance(w, int):
                if not 0 <= w < len(self.letters):
                    raise ValidationError(f"letter index {w} out of range")
                out.append(w)
            else:
                if w not in self.letter_index:
                    raise ValidationError(f"unknown generator {w!r}")
                out.append(self.letter_index[w])
        return tuple(out)

    def names(self, iword) -> Word:
        return tuple(self.genset[i] for i in iword)

    def join_word(self, word: Word) -> str:
        if self._single_char:
            return "".join(word)
        return ".".join(word)

    def split_word(self, text: str) -> Word:
        if text == "":
            return ()
        if self._single_char:
            return tuple(text)
        return tuple(text.split("."))

    def signature_depth(self) -> int:
        """Smallest depth whose level action has at least 256 leaves; used
        as an exact-equality prefilter when deduplicating ball vertices."""
        k, leaves = 1, self.alphabet_size
        while leaves < 256:
            k += 1
            leaves *= self.alphabet_size
        return k

    def require_exact(self, operation: str):
        if not self.exact:
            raise ValidationError(
                f"{operation} needs an exact word problem, which is only available "
                f"for the built-in presets {PRESET_NAMES}; use "
                f"is_identity_up_to_depth for custom automata")

    # -- core algebra (index words) --------------------------------------------

    def root_perm(self, iword) -> tuple[int, ...]:
        perm = self._identity
        for i in iword:
            perm = _compose(perm, self.letters[i].perm)
        return perm

    def raw_section(self, iword, x: int) -> tuple[int, ...]:
        if not 0 <= x < self.alphabet_size:
            raise ValidationError(f"section index {x} outside alphabet")
        out = []
        pos = x
        for i in iword:
            letter = self.letters[i]
            s = letter.sections[pos]
            if s is not None:
                out.append(s)
            pos = letter.perm[pos]
        return tuple(out)

    def canonical(self, iword) -> tuple[int, ...]:
        rules = self.rules
        out: list[int] = []
        for letter in iword:
            out.append(letter)
            while len(out) >= 2:
                r = rules.get((out[-2], out[-1]))
                if r is None:
                    break
                del out[-2:]
                out.extend(r)
        return tuple(out)

    def inverse_word(self, iword) -> tuple[int, ...]:
        return tuple(self.inverse_letter[i] for i in reversed(iword))

    def is_identity(self, iword) -> bool:
        self.require_exact("is_identity")
        w = self.canonical(iword)
        return self._is_identity_canonical(w, 10 * len(iword) + 64)

    def _is_identity_canonical(self, w, budget: int) -> bool:
        cached = self._ident_cache.get(w)
        if cached is not None:
            return cached
        if budget < 0:
            raise RecursionSafetyError(
                "is_identity exceeded its recursion budget; this should not "
                "happen for preset automata")
        if len(w) == 0:
            return True
        if len(w) == 1:
            return self._letter_is_identity[w[0]]
        if self.root_perm(w) != self._identity:
            self._ident_cache[w] = False
            return False
        result = True
        for x in range(self.alphabet_size):
            s = self.canonical(self.raw_section(w, x))
            # Preset canonical words contract strictly under sections; if this
            # ever fails the recursion could diverge, so treat it as a bug.
            if len(s) >= len(w):
                raise RecursionSafetyError(
                    f"section failed to contract: |{self.names(w)!r}| -> |{self.names(s)!r}|")
            if not self._is_identity_canonical(s, budget - 1):
                result = False
                break
        self._ident_cache[w] = result
        return result

    def level_action(self, iword, n: int, cap_leaves: int = DEFAULT_LEAF_CAP,
                     cap_depth: int = DEFAULT_DEPTH_CAP) -> tuple[int, ...]:
        if n < 0:
            raise ValidationError("level must be >= 0")
        if n > cap_depth:
            raise ResourceCapError(f"level {n} exceeds the depth cap {cap_depth}")
        if self.alphabet_size ** n > cap_leaves:
            raise ResourceCapError(
                f"level {n} has {self.alphabet_size ** n} leaves, above the cap {cap_leaves}")
        return self._act(tuple(iword), n)

    def _act(self, w, n: int) -> tuple[int, ...]:
        # Pure wreath evaluation on the raw word: no rewriting involved, so
        # this stays an independent oracle for the word problem.
        if n == 0:
            return (0,)
        key = (w, n)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        d = self.alphabet_size
        if n == 1:
            res = self.root_perm(w)
        else:
            top = self.root_perm(w)
            block = d ** (n - 1)
            out = [0] * (d * block)
            for x in range(d):
                sub = self._act(self.raw_section(w, x), n - 1)
                base_in = x * block
                base_out = top[x] * block
                for r in range(block):
                    out[base_in + r] = base_out + sub[r]
            res = tuple(out)
        self._act_cache[key] = res
        return res

    # -- misc ------------------------------------------------------------------

    def __repr__(self):
        tag = self.preset_id or "custom"
        return f"AutomatonSpec({tag}, d={self.alphabet_size}, genset={list(self.genset)})"


# -- presets -------------------------------------------------------------------

_GRIGORCHUK_DOC = {
    "preset_id": GRIGORCHUK,
    "alphabet_size": 2,
    "states": [
        {"name": "a", "root_perm": [1, 0], "sections": ["1", "1"]},
        {"name": "b", "root_perm": [0, 1], "sections": ["a", "c"]},
        {"name": "c", "root_perm": [0, 1], "sections": ["a", "d"]},
        {"name": "d", "root_perm": [0, 1], "sections": ["1", "b"]},
    ],
    "genset": ["a", "b", "c", "d"],
    "inverses": {"a": "a", "b": "b", "c": "c", "d": "d"},
}

# a^2 = b^2 = c^2 = d^2 = 1 and {1,b,c,d} a Klein four-group.
_GRIGORCHUK_RULES = {
    ("a", "a"): (), ("b", "b"): (), ("c", "c"): (), ("d", "d"): (),
    ("b", "c"): ("d",), ("c", "b"): ("d",),
    ("b", "d"): ("c",), ("d", "b"): ("c",),
    ("c", "d"): ("b",), ("d", "c"): ("b",),
}

_FG_DOC = {
    "preset_id": FABRYKOWSKI_GUPTA,
    "alphabet_size": 3,
    "states": [
        {"name": "a", "root_perm": [1, 2, 0], "sections": ["1", "1", "1"]},
        {"name": "b", "root_perm": [0, 1, 2], "sections": ["a", "1", "b"]},
    ],
    "genset": ["a", "A", "b", "B"],
    "inverses": {"a": "A", "A": "a", "b": "B", "B": "b"},
}

# a^3 = b^3 = 1, written over {a, A=a^-1, b, B=b^-1}; adjacent syllables merge.
_FG_RULES = {
    ("a", "A"): (), ("A", "a"): (), ("a", "a"): ("A",), ("A", "A"): ("a",),
    ("b", "B"): (), ("B", "b"): (), ("b", "b"): ("B",), ("B", "B"): ("b",),
}

_PRESET_DOCS = {GRIGORCHUK: _GRIGORCHUK_DOC, FABRYKOWSKI_GUPTA: _FG_DOC}
_PRESET_RULES = {GRIGORCHUK: _GRIGORCHUK_RULES, FABRYKOWSKI_GUPTA: _FG_RULES}
_PRESET_CACHE: dict[str, AutomatonSpec] = {}


def _spec_from_doc(doc: dict, preset_id=None, rules=None) -> AutomatonSpec:
    if not isinstance(doc, dict):
        raise ValidationError("automaton document must be a JSON object")
    for field in ("alphabet_size", "states", "genset", "inverses"):
        if field not in doc:
            raise ValidationError(f"{field}: missing field")
    d = doc["alphabet_size"]
    if not isinstance(d, int) or d < 2:
        raise ValidationError("alphabet_size: must be an integer >= 2")
    states = []
    if not isinstance(doc["states"], list):
        raise ValidationError("states: must be a list")
    for i, raw in enumerate(doc["states"]):
        if not isinstance(raw, dict):
            raise ValidationError(f"states[{i}]: must be an object")
        for field in ("name", "root_perm", "sections"):
            if field not in raw:
                raise ValidationError(f"states[{i}].{field}: missing field")
        perm = parse_permutation(raw["root_perm"], d, f"states[{i}].root_perm")
        sections = raw["sections"]
        if not isinstance(sections, list) or not all(isinstance(s, str) for s in sections):
            raise ValidationError(f"states[{i}].sections: must be a list of state names")
        states.append(StateDef(str(raw["name"]), perm, tuple(sections)))
    genset = doc["genset"]
    if not isinstance(genset, list) or not all(isinstance(g, str) for g in genset):
        raise ValidationError("genset: must be a list of names")
    inverses = doc["inverses"]
    if not isinstance(inverses, dict):
        raise ValidationError("inverses: must be an object")
    index_rules = None
    spec = AutomatonSpec(d, states, genset, dict(inverses), preset_id=preset_id)
    if rules is not None:
        index_rules = {
            (spec.letter_index[l1], spec.letter_index[l2]):
                tuple(spec.letter_index[r] for r in rhs)
            for (l1, l2), rhs in rules.items()}
        spec = AutomatonSpec(d, states, genset, dict(inverses), preset_id=preset_id,
                             rewrite_rules=index_rules)
    return spec


def load_preset(name: str) -> AutomatonSpec:
    """Return the built-in preset of that name (cached)."""
    if name not in _PRESET_DOCS:
        raise ValidationError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if name not in _PRESET_CACHE:
        _PRESET_CACHE[name] = _spec_from_doc(
            _PRESET_DOCS[name], preset_id=name, rules=_PRESET_RULES[name])
    return _PRESET_CACHE[name]


def _normalized_doc(doc: dict) -> dict:
    d = doc["alphabet_size"]
    return {
        "alphabet_size": d,
        "states": [
            {"name": s["name"],
             "root_perm": list(parse_permutation(s["root_perm"], d, "root_perm")),
             "sections": list(s["sections"])}
            for s in doc["states"]],
        "genset": list(doc["genset"]),
        "inverses": dict(doc["inverses"]),
    }


def parse_automaton(text) -> AutomatonSpec:
    """Parse an automaton document (JSON text or an equivalent dict).

    A document carrying "preset_id" must match the built-in preset exactly
    and comes back with the preset's rewrite rules and exact word problem;
    anything else is treated as a custom automaton with free reduction only.
    """
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"automaton document is not valid JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise ValidationError("automaton document must be a JSON object")
    preset_id = doc.get("preset_id")
    if preset_id is not None:
        if preset_id not in _PRESET_DOCS:
            raise ValidationError(f"preset_id: unknown preset {preset_id!r}")
        try:
            same = _normalized_doc(doc) == _normalized_doc(_PRESET_DOCS[preset_id])
        except (KeyError, TypeError, ValidationError):
            same = False
        if not same:
            raise ValidationError(
                f"preset_id: document does not match the built-in {preset_id!r} definition")
        return load_preset(preset_id)
    return _spec_from_doc(doc)


def dump_automaton(spec: AutomatonSpec) -> dict:
    """The JSON document for a spec; presets round-trip through parse_automaton."""
    doc = {
        "alphabet_size": spec.alphabet_size,
        "states": [
            {"name": st.name, "root_perm": list(st.root_perm), "sections": list(st.sections)}
            for st in spec.states.values()],
        "genset": list(spec.genset),
        "inverses": dict(spec.inverses),
    }
    if spec.preset_id:
        doc["preset_id"] = spec.preset_id
    return doc


# -- public word operations ------------------------------------------------


def root_permutation(word, spec: AutomatonSpec) -> tuple[int, ...]:
    """Permutation of the first tree level, letter permutations composed
    left to right (first letter acts first)."""
    return spec.root_perm(spec.iword(word))


def section(word, x: int, spec: AutomatonSpec) -> Word:
    """Section word at first-level position x, before canonicalization."""
    return spec.names(spec.raw_section(spec.iword(word), x))


def canonicalize(word, spec: AutomatonSpec) -> Word:
    """Normal form under the spec's confluent rewriting rules."""
    return spec.names(spec.canonical(spec.iword(word)))


def formal_inverse(word, spec: AutomatonSpec) -> Word:
    return spec.names(spec.inverse_word(spec.iword(word)))


def is_identity(word, spec: AutomatonSpec) -> bool:
    """Exact word problem for preset automata.

    Canonicalize; decide short words by lookup; a nontrivial root
    permutation means non-identity; otherwise recurse on all sections.
    """
    return spec.is_identity(spec.iword(word))


def is_identity_up_to_depth(word, depth: int, spec: AutomatonSpec) -> bool:
    """Depth-bounded substitute for custom automata: trivial action on the
    first `depth` levels.  Not a proof of identity."""
    return spec.level_action(spec.iword(word), depth) == spec.level_action((), depth)


def level_action(word, n: int, spec: AutomatonSpec,
                 cap_leaves: int = DEFAULT_LEAF_CAP,
                 cap_depth: int = DEFAULT_DEPTH_CAP) -> tuple[int, ...]:
    """Permutation of the d^n level-n vertices, as an image tuple over
    lexicographically ordered tree words."""
    return spec.level_action(spec.iword(word), n, cap_leaves, cap_depth)
