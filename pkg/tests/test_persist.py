import random

import pytest
from hypothesis import given, settings, strategies as st

from pgmhd import LeveledGraph, Node
from pgmhd.errors import CorruptModelError, FormatError
from pgmhd.persist import dumps, load, loads, save

from conftest import sample_observations, train

label_st = st.text(min_size=1, max_size=12).filter(lambda s: s.strip())


@st.composite
def graphs(draw):
    m = draw(st.integers(2, 4))
    g = LeveledGraph(m)
    labels = draw(st.lists(label_st, min_size=1, max_size=6, unique=True))
    n_arcs = draw(st.integers(0, 15))
    for _ in range(n_arcs):
        level = draw(st.integers(0, m - 2))
        parent = draw(st.sampled_from(labels))
        child = draw(st.sampled_from(labels))
        g.add_arc_increment(Node(parent, level), Node(child, level + 1),
                            draw(st.integers(1, 9)))
        g.t += 1
    return g


def test_save_empty(tmp_path):
    g = LeveledGraph(2)
    path = tmp_path / "empty.pgmhd"
    n = save(g, path)
    assert n == len(path.read_bytes())
    text = path.read_text()
    assert text.startswith("PGMHD 1\nlevels 2 t 0 nodes 0 arcs 0\n")


def test_sample_graph_header(job_graph):
    text = dumps(job_graph).decode()
    # 4 roots + 14 distinct terms, 17 distinct (class, term) arcs, 19 increments
    assert "levels 2 t 19 nodes 18 arcs 17" in text


def test_roundtrip_fixpoint(job_graph):
    data = dumps(job_graph)
    assert dumps(loads(data)) == data


def test_roundtrip_preserves_state(job_graph, tmp_path):
    path = tmp_path / "m.pgmhd"
    save(job_graph, path)
    loaded = load(path)
    assert loaded == job_graph
    assert loaded.validate() == []


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_roundtrip_property(g):
    data = dumps(g)
    back = loads(data)
    assert back == g
    assert dumps(back) == data


def test_determinism_independent_of_insertion_order():
    obs = sample_observations()
    shuffled = obs[:]
    random.Random(0).shuffle(shuffled)
    assert dumps(train(obs)) == dumps(train(shuffled))


def test_truncation_detected(job_graph):
    data = dumps(job_graph)
    for cut in (3, len(data) // 2, len(data) - 2):
        with pytest.raises(CorruptModelError):
            loads(data[:cut])


def test_bit_flip_detected(job_graph):
    data = bytearray(dumps(job_graph))
    rng = random.Random(1)
    for _ in range(20):
        corrupted = bytearray(data)
        pos = rng.randrange(len(corrupted))
        corrupted[pos] ^= 1 << rng.randrange(8)
        if bytes(corrupted) == bytes(data):
            continue
        with pytest.raises((CorruptModelError, FormatError)):
            loads(bytes(corrupted))


def test_bad_magic():
    with pytest.raises(FormatError):
        loads(_with_crc("NOPE 1\nlevels 2 t 0 nodes 0 arcs 0\n"))


def test_bad_version():
    with pytest.raises(FormatError):
        loads(_with_crc("PGMHD 9\nlevels 2 t 0 nodes 0 arcs 0\n"))


def test_arc_referencing_undeclared_node():
    body = (
        "PGMHD 1\nlevels 2 t 1 nodes 1 arcs 1\n"
        "N\t0\ta\n"
        "E\t0\ta\tghost\t1\n"
    )
    with pytest.raises(FormatError):
        loads(_with_crc(body))


def test_escaped_labels_roundtrip():
    g = LeveledGraph(2)
    weird = "ta\tb%25\nnew\rline"
    g.add_arc_increment(Node(weird, 0), Node("kid", 1))
    g.t = 1
    assert loads(dumps(g)) == g


def test_merge_after_load_equals_merge_before_save(tmp_path):
    obs = sample_observations()
    a, b = train(obs[:9]), train(obs[9:])
    pa, pb = tmp_path / "a.pgmhd", tmp_path / "b.pgmhd"
    save(a, pa)
    save(b, pb)
    assert load(pa).merge(load(pb)) == a.merge(b)


def _with_crc(body: str) -> bytes:
    import zlib

    raw = body.encode()
    return raw + f"CRC {zlib.crc32(raw):08x}\n".encode()
