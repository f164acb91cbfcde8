"""Ball enumeration: frozen small structures, growth, and dedup checks."""

import random

import pytest

from coarsetiler.automaton import formal_inverse, is_identity, level_action
from coarsetiler.cayley import (ball_from_json, ball_to_json, build_ball,
                                classify_vertices, oriented_edges, toy_from_json,
                                toy_graph, toy_to_json)
from coarsetiler.errors import ResourceCapError, ValidationError

GRIG_GROWTH = [1, 5, 11, 23, 40, 68, 108, 176, 271, 427, 643]
FG_GROWTH = [1, 5, 13, 29, 61, 125, 253]


def test_radius_zero(grig, ball_of):
    ball = ball_of("grigorchuk", 0)
    assert ball.n_vertices == 1 and ball.edges == ()
    assert ball.words == ((),)
    assert ball.sphere == frozenset({0}) and ball.interior == frozenset()


def test_radius_one_frozen_structure(grig, ball_of):
    ball = ball_of("grigorchuk", 1)
    assert [ball.word_str(i) for i in range(5)] == ["", "a", "b", "c", "d"]
    named = [(t, h, grig.genset[s]) for t, h, s in ball.edges]
    assert named == [(0, 1, "a"), (0, 2, "b"), (0, 3, "c"), (0, 4, "d"),
                     (2, 3, "d"), (2, 4, "c"), (3, 4, "b")]
    assert ball.distance == (0, 1, 1, 1, 1)


def test_radius_two_frozen_words(ball_of):
    ball = ball_of("grigorchuk", 2)
    assert ball.n_vertices == 11
    new = [ball.word_str(i) for i in range(5, 11)]
    assert new == ["ab", "ac", "ad", "ba", "ca", "da"]


def test_growth_sequences(ball_of):
    sizes = [ball_of("grigorchuk", r).n_vertices for r in range(len(GRIG_GROWTH))]
    assert sizes == GRIG_GROWTH
    sizes = [ball_of("fabrykowski-gupta", r).n_vertices for r in range(len(FG_GROWTH))]
    assert sizes == FG_GROWTH


def test_vertex_order_stable_under_radius_growth(ball_of):
    for r in range(0, 7):
        small = ball_of("grigorchuk", r)
        big = ball_of("grigorchuk", r + 1)
        assert big.words[: small.n_vertices] == small.words
        assert big.distance[: small.n_vertices] == small.distance


def test_edges_connect_true_neighbors(grig, ball_of):
    ball = ball_of("grigorchuk", 4)
    for t, h, s in ball.edges:
        word = ball.words[t] + (s,) + tuple(
            grig.letter_index[x] for x in formal_inverse(ball.words[h], grig))
        assert is_identity(word, grig)
        assert abs(ball.distance[t] - ball.distance[h]) <= 1


def test_edge_canonical_orientation_and_uniqueness(ball_of):
    ball = ball_of("grigorchuk", 5)
    seen = set()
    for t, h, s in ball.edges:
        assert t < h
        assert (t, h, s) not in seen
        seen.add((t, h, s))
    assert ball.edges == tuple(sorted(ball.edges))


def test_no_duplicate_elements_by_independent_action(grig, ball_of):
    """Every pair of ball vertices must act differently somewhere; depth 10
    is enough to separate everything within radius 5."""
    ball = ball_of("grigorchuk", 5)
    signatures = {level_action(w, 10, grig) for w in ball.words}
    assert len(signatures) == ball.n_vertices


def test_sphere_interior_partition(ball_of):
    ball = ball_of("grigorchuk", 3)
    interior, sphere = classify_vertices(ball)
    assert sorted(interior) + sorted(sphere) == list(range(ball.n_vertices))
    assert all(ball.distance[v] == 3 for v in sphere)
    assert all(ball.distance[v] < 3 for v in interior)
    assert sphere == ball.sphere and interior == ball.interior


def test_find_membership(grig, ball_of):
    ball = ball_of("grigorchuk", 2)
    assert ball.find(grig.iword("ab")) != ball.find(grig.iword("ba"))
    # aab reduces to b, which is vertex 2
    assert ball.find(grig.iword("aab")) == 2
    assert ball.find(grig.iword("bcd")) == 0
    assert ball.find(grig.iword("ababab")) is None


def test_oriented_edges_one_per_undirected_edge(grig, ball_of):
    ball = ball_of("grigorchuk", 1)
    pairs = oriented_edges(ball)
    assert (0, 1, "a") in pairs and (2, 3, "d") in pairs
    assert all(t < h for t, h, _ in pairs)
    assert len({(t, h) for t, h, _ in pairs}) == len(pairs)


def test_ball_json_round_trip(grig, ball_of):
    ball = ball_of("grigorchuk", 3)
    doc = ball_to_json(ball)
    again = ball_from_json(doc, grig)
    assert again == ball
    assert doc["vertices"][0] == ""
    assert doc["sphere"] == sorted(ball.sphere)


def test_ball_json_validation(grig, ball_of):
    doc = ball_to_json(ball_of("grigorchuk", 2))
    broken = dict(doc, edges=doc["edges"] + [[0, 99, "a"]])
    with pytest.raises(ValidationError):
        ball_from_json(broken, grig)
    with pytest.raises(ValidationError):
        ball_from_json({k: v for k, v in doc.items() if k != "radius"}, grig)


def test_vertex_cap(grig):
    with pytest.raises(ResourceCapError) as info:
        build_ball(grig, 3, cap_vertices=7)
    assert info.value.lower_bound == 8


def test_toy_graph_shapes():
    toy = toy_graph(3, [[0, 1], [1, 2, "s"]], boundary=[2])
    assert toy.edges == ((0, 1, None), (1, 2, "s"))
    assert toy.boundary == frozenset({2})
    assert toy_from_json(toy_to_json(toy)) == toy
    with pytest.raises(ValidationError):
        toy_graph(2, [[0, 5]])
    with pytest.raises(ValidationError):
        toy_graph(0, [])
    with pytest.raises(ValidationError):
        toy_graph(2, [[0, 1]], boundary=[9])


def test_fg_ball_has_inverse_labeled_edges(fg, ball_of):
    """With a 4-letter genset containing inverses, each unordered pair is
    stored once, labeled tail->head."""
    ball = ball_of("fabrykowski-gupta", 2)
    for t, h, s in ball.edges:
        word = ball.words[t] + (s,) + tuple(
            fg.letter_index[x] for x in formal_inverse(ball.words[h], fg))
        assert is_identity(word, fg)


def test_build_matches_random_membership_queries(grig, ball_of):
    rng = random.Random(5150)
    ball = ball_of("grigorchuk", 6)
    for _ in range(50):
        w = tuple(rng.randrange(4) for _ in range(rng.randrange(0, 7)))
        idx = ball.find(w)
        assert idx is not None
        target = ball.words[idx] + tuple(
            grig.letter_index[x] for x in formal_inverse(w, grig))
        assert is_identity(target, grig)
