import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def A1():
    from weyljacobi.rootsystems import catalog

    return catalog("A1")


@pytest.fixture(scope="session")
def a1_gens():
    from weyljacobi.blocks import a1_generators

    return a1_generators(120)


@pytest.fixture(scope="session")
def a1_system(A1, a1_gens):
    from weyljacobi.structure import check_free_criterion

    return check_free_criterion(A1, a1_gens)


@pytest.fixture(scope="session")
def b2_tower():
    from weyljacobi.blocks import b_tower

    return b_tower(2, 72)


@pytest.fixture(scope="session")
def b2_system(b2_tower):
    from weyljacobi.rootsystems import catalog
    from weyljacobi.structure import check_free_criterion

    return check_free_criterion(catalog("B2"), b2_tower)
