import math
import random

import pytest

from pgmhd import LeveledGraph, Node, Observation
from pgmhd.ambiguity import ambiguity_report, npmi
from pgmhd.errors import NoAssociationError, UnknownNodeError

from conftest import random_observations, train


def test_npmi_worked_example(job_graph):
    value = npmi(job_graph, job_graph.node("Java Developer", 0), job_graph.node("Java", 1))
    assert value == pytest.approx(math.log(19 / 9) / math.log(19 / 2), abs=1e-9)


def test_npmi_perfect_cooccurrence():
    g = LeveledGraph(2)
    g.add_arc_increment(Node("root", 0), Node("term", 1), 10)
    g.t = 10
    assert npmi(g, g.node("root", 0), g.node("term", 1)) == 1.0


def test_npmi_independent_is_zero():
    # two roots, two terms, uniform counts: p(w,v) = p(w)p(v) everywhere
    g = LeveledGraph(2)
    for root in ("A", "B"):
        for term in ("x", "y"):
            g.add_arc_increment(Node(root, 0), Node(term, 1), 5)
    g.t = 20
    assert npmi(g, g.node("A", 0), g.node("x", 1)) == pytest.approx(0.0, abs=1e-12)


def test_npmi_no_association(job_graph):
    with pytest.raises(NoAssociationError):
        npmi(job_graph, job_graph.node("Nurse", 0), job_graph.node("Java", 1))


def test_npmi_range_property():
    rng = random.Random(3)
    for _ in range(50):
        obs, levels = random_observations(rng)
        g = train(obs, levels)
        for parent, child, _freq in g.arcs():
            assert -1.0 - 1e-12 <= npmi(g, parent, child) <= 1.0 + 1e-12


def test_npmi_monotone_in_frequency():
    # raise f(A,x) while holding Out(A), In(x) and the transition total fixed
    def build(f_ax):
        g = LeveledGraph(2)
        g.add_arc_increment(Node("A", 0), Node("x", 1), f_ax)
        g.add_arc_increment(Node("A", 0), Node("y", 1), 10 - f_ax)
        g.add_arc_increment(Node("B", 0), Node("x", 1), 10 - f_ax)
        g.add_arc_increment(Node("B", 0), Node("y", 1), f_ax)
        g.t = 20
        return g

    scores = [
        npmi(build(f), Node("A", 0), Node("x", 1)) for f in range(1, 10)
    ]
    assert scores == sorted(scores)


def test_report_two_senses(job_graph):
    report = ambiguity_report(job_graph, job_graph.node("C#", 1), tau=0.0, sim_threshold=0.9)
    assert {label for label, _ in report.parent_scores} == {"Java Developer", ".NET Developer"}
    assert len(report.senses) == 2
    assert report.ambiguous


def test_report_groups_merge_at_low_threshold(job_graph):
    report = ambiguity_report(job_graph, job_graph.node("C#", 1), tau=0.0, sim_threshold=0.2)
    assert len(report.senses) == 1
    assert not report.ambiguous


def test_single_parent_never_ambiguous(job_graph):
    report = ambiguity_report(job_graph, job_graph.node("RN", 1), tau=-1.0)
    assert len(report.senses) == 1
    assert not report.ambiguous


def test_tau_filters_all(job_graph):
    report = ambiguity_report(job_graph, job_graph.node("C#", 1), tau=1.0)
    assert report.senses == []


def test_sense_groups_partition_qualifying_parents():
    rng = random.Random(17)
    for _ in range(20):
        obs, levels = random_observations(rng, n=60)
        g = train(obs, levels)
        for term_label in g.level_labels(1):
            term = g.node(term_label, 1)
            report = ambiguity_report(g, term, tau=-1.0, sim_threshold=0.5)
            grouped = [p for sense in report.senses for p in sense.parents]
            assert sorted(grouped) == sorted(label for label, _ in report.parent_scores)
            assert len(grouped) == len(set(grouped))


def test_sense_related_terms(job_graph):
    report = ambiguity_report(job_graph, job_graph.node("C#", 1), tau=0.0, sim_threshold=0.9)
    for sense in report.senses:
        assert "C#" not in sense.related
        assert sense.related  # every sense here has sibling terms


def test_unknown_term(job_graph):
    with pytest.raises(UnknownNodeError):
        ambiguity_report(job_graph, Node("ghost", 1))
