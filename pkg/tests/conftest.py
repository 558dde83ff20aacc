import pathlib
import random

import pytest

from siphons import PetriNet, gen_random_net

MODELS_DIR = pathlib.Path(__file__).resolve().parent.parent / "models"


def enzyme_net() -> PetriNet:
    # Substrate/enzyme binding net, places ordered E, A, AE, B so the CNF
    # variable numbering matches the frozen clause goldens.
    return PetriNet.from_transitions(
        [
            ("t1", ["A", "E"], ["AE"]),
            ("t_1", ["AE"], ["A", "E"]),
            ("t2", ["AE"], ["B", "E"]),
        ],
        places=["E", "A", "AE", "B"],
    )


def example2_net() -> PetriNet:
    return PetriNet.from_transitions(
        [
            ("r1", ["A"], ["B"]),
            ("r2", ["B"], ["A"]),
            ("r3", ["B"], ["C"]),
            ("r4", ["C"], ["D"]),
            ("r5", ["D"], ["C"]),
        ]
    )


def potato_net() -> PetriNet:
    return PetriNet.from_transitions(
        [
            ("t1", ["P1"], ["P1", "S1"]),
            ("t2", ["S1", "P2"], ["P2"]),
            ("t3", ["S1"], ["S2"]),
            ("t4", ["S2"], ["S3"]),
            ("t5", ["S3"], ["S4"]),
            ("t6", ["S4"], ["S1"]),
        ]
    )


def random_net_corpus(count: int, base_seed: int = 0, max_places: int = 12,
                      max_degree: int = 4) -> list[PetriNet]:
    """Deterministic corpus of small random nets for cross-checking."""
    nets = []
    for k in range(count):
        rng = random.Random(base_seed + k)
        n_places = rng.randint(2, max_places)
        n_transitions = rng.randint(1, max_places)
        degree = min(rng.randint(1, max_degree), n_places)
        nets.append(gen_random_net(n_places, n_transitions, degree,
                                   seed=base_seed + k))
    return nets


@pytest.fixture
def enzyme() -> PetriNet:
    return enzyme_net()


@pytest.fixture
def example2() -> PetriNet:
    return example2_net()


@pytest.fixture
def potato() -> PetriNet:
    return potato_net()


@pytest.fixture(scope="session")
def models_dir() -> pathlib.Path:
    return MODELS_DIR
