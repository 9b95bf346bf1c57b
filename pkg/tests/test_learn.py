import random

import pytest

from pgmhd import LeveledGraph, Node, Observation
from pgmhd.errors import FrozenGraphError, StructuralError
from pgmhd.learn import learn_observation, train_sharded, train_stream

from conftest import random_observations, sample_observations, train


def test_learn_twice():
    g = LeveledGraph(2)
    obs = Observation(((0, "A"), (1, "B")))
    learn_observation(g, obs)
    learn_observation(g, obs)
    assert g.freq(Node("A", 0), Node("B", 1)) == 2
    assert g.t == 2
    assert g.num_nodes == 2  # re-learning never duplicates nodes


def test_learn_three_level_path():
    g = LeveledGraph(3)
    learn_observation(g, Observation(((0, "A"), (1, "B"), (2, "C"))))
    assert g.freq(Node("A", 0), Node("B", 1)) == 1
    assert g.freq(Node("B", 1), Node("C", 2)) == 1
    assert g.t == 1


def test_learn_sample_rows(job_graph):
    # 19 arc increments over 4 roots
    assert job_graph.t == 19
    assert len(job_graph.level_labels(0)) == 4
    assert sum(freq for _, _, freq in job_graph.arcs()) == 19


def test_learn_out_of_range():
    g = LeveledGraph(2)
    with pytest.raises(StructuralError):
        learn_observation(g, Observation(((0, "A"), (1, "B"), (2, "C"))))


def test_learn_frozen():
    g = LeveledGraph(2).freeze()
    with pytest.raises(FrozenGraphError):
        learn_observation(g, Observation(((0, "A"), (1, "B"))))


def test_train_stream_empty():
    g, report = train_stream(LeveledGraph(2), [])
    assert g.t == 0 and report.rows == 0


def test_train_stream_sample():
    g, report = train_stream(LeveledGraph(2), sample_observations())
    assert g.t == 19 and report.rows == 19 and report.skipped == 0


def test_train_stream_skips_malformed():
    good = Observation(((0, "A"), (1, "B")))
    g, report = train_stream(LeveledGraph(2), [good, ((0, "A"),), "junk", good])
    assert report.rows == 2 and report.skipped == 2
    assert g.t == 2


def test_resume_equals_one_shot():
    obs = sample_observations()
    g1, _ = train_stream(LeveledGraph(2), obs[:10])
    g1, _ = train_stream(g1, obs[10:])
    g2, _ = train_stream(LeveledGraph(2), obs)
    assert g1 == g2


@pytest.mark.parametrize("seed", range(10))
def test_order_independence(seed):
    rng = random.Random(seed)
    obs, levels = random_observations(rng)
    shuffled = obs[:]
    rng.shuffle(shuffled)
    assert train(obs, levels) == train(shuffled, levels)


def test_sharded_one_shard_matches_stream():
    obs = sample_observations()
    assert train_sharded(obs, 1, 2) == train(obs)


@pytest.mark.parametrize("shards", [2, 3, 4, 7])
def test_sharded_matches_sequential(shards):
    rng = random.Random(shards)
    obs, levels = random_observations(rng, n=500)
    assert train_sharded(obs, shards, levels) == train(obs, levels)


def test_more_shards_than_rows():
    obs = sample_observations()[:3]
    assert train_sharded(obs, 10, 2) == train(obs)


def test_sharded_rejects_zero_shards():
    with pytest.raises(ValueError):
        train_sharded([], 0, 2)
