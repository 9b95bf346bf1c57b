import random

import pytest

from pgmhd import LeveledGraph, Observation, learn_observation

# Five classified search-log rows used throughout as the worked example.
SAMPLE_LOG = (
    "user1\tJava Developer\tJava|Java Developer|C#|Software Engineer\n"
    "user2\tNurse\tRN|Rigistered Nurse|Health Care\n"
    "user3\t.NET Developer\tC#|ASP|VB|Software Engineer|SE\n"
    "user4\tJava Developer\tJava|JEE|Struts|Software Engineer|SE\n"
    "user5\tHealth Care\tHealth Care Rep|HealthCare\n"
)

SAMPLE_ROWS = [
    ("Java Developer", ["Java", "Java Developer", "C#", "Software Engineer"]),
    ("Nurse", ["RN", "Rigistered Nurse", "Health Care"]),
    (".NET Developer", ["C#", "ASP", "VB", "Software Engineer", "SE"]),
    ("Java Developer", ["Java", "JEE", "Struts", "Software Engineer", "SE"]),
    ("Health Care", ["Health Care Rep", "HealthCare"]),
]


def sample_observations():
    return [
        Observation(((0, cls), (1, term)))
        for cls, terms in SAMPLE_ROWS
        for term in terms
    ]


def train(observations, levels=2):
    g = LeveledGraph(levels)
    for obs in observations:
        learn_observation(g, obs)
    return g


@pytest.fixture
def job_graph():
    return train(sample_observations())


def random_observations(rng: random.Random, n=None, levels=None, labels=None):
    """Random prefix paths through a small leveled label universe."""
    levels = levels or rng.randint(2, 4)
    labels = labels or rng.randint(2, 6)
    n = n if n is not None else rng.randint(1, 40)
    out = []
    for _ in range(n):
        length = rng.randint(2, levels)
        out.append(
            Observation(
                tuple((i, f"L{i}x{rng.randrange(labels)}") for i in range(length))
            )
        )
    return out, levels
