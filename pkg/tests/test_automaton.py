"""Word problem, rewriting and level actions for the tree automata."""

import json
import random

import pytest

from coarsetiler.automaton import (PRESET_NAMES, canonicalize, dump_automaton,
                                   formal_inverse, is_identity,
                                   is_identity_up_to_depth, level_action,
                                   load_preset, parse_automaton,
                                   parse_permutation, permutation_to_cycles,
                                   root_permutation, section)
from coarsetiler.errors import (RecursionSafetyError, ResourceCapError,
                                ValidationError)


def test_preset_names_stable():
    assert PRESET_NAMES == ("grigorchuk", "fabrykowski-gupta")


def test_grigorchuk_letters(grig):
    assert grig.alphabet_size == 2
    assert grig.genset == ("a", "b", "c", "d")
    assert grig.inverses == {"a": "a", "b": "b", "c": "c", "d": "d"}
    assert root_permutation("a", grig) == (1, 0)
    for name in "bcd":
        assert root_permutation(name, grig) == (0, 1)
    # wreath recursion tables
    assert section("b", 0, grig) == ("a",) and section("b", 1, grig) == ("c",)
    assert section("c", 0, grig) == ("a",) and section("c", 1, grig) == ("d",)
    assert section("d", 0, grig) == () and section("d", 1, grig) == ("b",)


def test_fabrykowski_gupta_letters(fg):
    assert fg.alphabet_size == 3
    assert fg.genset == ("a", "A", "b", "B")
    assert fg.inverses["a"] == "A" and fg.inverses["B"] == "b"
    assert root_permutation("a", fg) == (1, 2, 0)
    assert root_permutation("A", fg) == (2, 0, 1)
    assert section("b", 0, fg) == ("a",)
    assert section("b", 1, fg) == ()
    assert section("b", 2, fg) == ("b",)
    # derived inverse letter: sections are inverses at permuted slots
    assert section("B", 0, fg) == ("A",)
    assert section("B", 2, fg) == ("B",)


def test_identity_relations_hold(grig):
    assert is_identity("bcd", grig)
    assert is_identity(("a",) * 2, grig)
    assert is_identity("adadadad", grig)          # (ad)^4
    assert is_identity("acacacacacacacac", grig)  # (ac)^8
    assert is_identity("ab" * 16, grig)           # (ab)^16


def test_proper_subpowers_are_nontrivial(grig):
    for k in range(1, 4):
        assert not is_identity("ad" * k, grig)
    for k in range(1, 8):
        assert not is_identity("ac" * k, grig)
    for k in range(1, 16):
        assert not is_identity("ab" * k, grig)


def test_fg_generator_orders(fg):
    assert is_identity("aaa", fg) and is_identity("bbb", fg)
    assert not is_identity("a", fg) and not is_identity("aa", fg)
    assert not is_identity("b", fg) and not is_identity("bb", fg)
    assert is_identity("aA", fg) and is_identity("Bb", fg)


def test_word_times_inverse_is_identity(grig, fg):
    rng = random.Random(4242)
    for spec in (grig, fg):
        letters = spec.genset
        for _ in range(200):
            w = tuple(rng.choice(letters) for _ in range(rng.randrange(0, 9)))
            assert is_identity(w + formal_inverse(w, spec), spec)


def test_canonicalize_is_idempotent_and_preserves_element(grig, fg):
    rng = random.Random(99)
    for spec in (grig, fg):
        for _ in range(100):
            w = tuple(rng.choice(spec.genset) for _ in range(rng.randrange(0, 10)))
            cw = canonicalize(w, spec)
            assert canonicalize(cw, spec) == cw
            assert len(cw) <= len(w)
            assert level_action(w, 5, spec) == level_action(cw, 5, spec)


def test_canonical_words_have_short_sections(grig):
    """Canonical words alternate the root-active letter with the others,
    so each first-level section collects at most half the letters."""
    letters = grig.genset
    rng = random.Random(7)
    for _ in range(300):
        w = canonicalize(tuple(rng.choice(letters) for _ in range(rng.randrange(2, 12))), grig)
        if len(w) < 2:
            continue
        for x in range(2):
            assert len(section(w, x, grig)) <= (len(w) + 1) // 2 < len(w)


def test_is_identity_matches_level_action(grig):
    rng = random.Random(1234)
    for _ in range(80):
        w = tuple(rng.choice(grig.genset) for _ in range(rng.randrange(1, 9)))
        acts_trivially = all(
            level_action(w, n, grig) == tuple(range(2 ** n)) for n in (4, 8, 12))
        assert is_identity(w, grig) == acts_trivially


def test_level_action_degenerate_cases(grig):
    assert level_action((), 3, grig) == tuple(range(8))
    assert level_action("a", 0, grig) == (0,)
    assert level_action("ab", 1, grig) == root_permutation("ab", grig)


def test_level_action_composes(grig, fg):
    rng = random.Random(31)
    for spec in (grig, fg):
        d = spec.alphabet_size
        for _ in range(40):
            u = tuple(rng.choice(spec.genset) for _ in range(rng.randrange(0, 5)))
            v = tuple(rng.choice(spec.genset) for _ in range(rng.randrange(0, 5)))
            pu = level_action(u, 4, spec)
            pv = level_action(v, 4, spec)
            assert level_action(u + v, 4, spec) == tuple(pv[x] for x in pu)


def test_level_action_caps(grig):
    with pytest.raises(ResourceCapError):
        level_action("ab", 30, grig, cap_leaves=10 ** 12)
    with pytest.raises(ResourceCapError):
        level_action("ab", 8, grig, cap_leaves=16)


def test_preset_round_trip_through_json():
    for name in PRESET_NAMES:
        spec = load_preset(name)
        doc = dump_automaton(spec)
        again = parse_automaton(json.dumps(doc))
        assert again is spec  # preset documents resolve to the cached preset


def test_preset_document_must_match_builtin(grig):
    doc = dump_automaton(grig)
    doc["states"][0]["root_perm"] = [0, 1]
    with pytest.raises(ValidationError):
        parse_automaton(doc)


def test_unknown_preset_rejected():
    with pytest.raises(ValidationError, match="unknown preset"):
        load_preset("nosuch")


ODOMETER = {
    "alphabet_size": 2,
    "states": [{"name": "t", "root_perm": [1, 0], "sections": ["1", "t"]}],
    "genset": ["t", "T"],
    "inverses": {"t": "T", "T": "t"},
}


def test_custom_automaton_binary_counter():
    spec = parse_automaton(json.dumps(ODOMETER))
    assert spec.preset_id is None
    for n in (1, 3, 6):
        perm = level_action("t", n, spec)
        # +1 with carry: a single cycle through all 2^n leaves
        seen, x = [], 0
        for _ in range(2 ** n):
            seen.append(x)
            x = perm[x]
        assert x == 0 and len(set(seen)) == 2 ** n
    # free reduction only: tT cancels, tt does not rewrite
    assert canonicalize("tT", spec) == ()
    assert canonicalize("tt", spec) == ("t", "t")


def test_exact_word_problem_requires_preset():
    spec = parse_automaton(json.dumps(ODOMETER))
    with pytest.raises(ValidationError):
        is_identity("tT", spec)
    assert is_identity_up_to_depth("tT", 6, spec)
    assert not is_identity_up_to_depth("tt", 6, spec)


def test_automaton_document_validation():
    bad = dict(ODOMETER, states=[{"name": "t", "root_perm": [1, 0],
                                  "sections": ["1", "q"]}])
    with pytest.raises(ValidationError, match="sections"):
        parse_automaton(json.dumps(bad))
    bad = dict(ODOMETER, genset=["t"])
    with pytest.raises(ValidationError):
        parse_automaton(json.dumps(bad))
    bad = dict(ODOMETER, states=[{"name": "1", "root_perm": [0, 1],
                                  "sections": ["1", "1"]}])
    with pytest.raises(ValidationError):
        parse_automaton(json.dumps(bad))


def test_permutation_parsing_forms():
    assert parse_permutation([1, 0], 2, "x") == (1, 0)
    assert parse_permutation("(0 1)", 2, "x") == (1, 0)
    assert parse_permutation("(0 1 2)", 3, "x") == (1, 2, 0)
    assert parse_permutation("()", 3, "x") == (0, 1, 2)
    with pytest.raises(ValidationError, match="x"):
        parse_permutation([0, 0], 2, "x")
    with pytest.raises(ValidationError, match="x"):
        parse_permutation("(0 3)", 2, "x")
    assert permutation_to_cycles((1, 0, 2)) == "(0 1)"


def test_inverse_of_word_reverses_and_inverts(fg):
    assert formal_inverse("ab", fg) == ("B", "A")
    assert formal_inverse(("a",), fg) == ("A",)
    assert canonicalize(("a", "B", "b", "A"), fg) == ()
