import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gptforge import finite_rep as fr
from gptforge import state_space as ss


@pytest.fixture(scope="session")
def s3():
    return fr.symmetric_group(3)


@pytest.fixture(scope="session")
def s3_table(s3):
    return fr.character_table(s3)


@pytest.fixture(scope="session")
def s4():
    return fr.symmetric_group(4)


@pytest.fixture(scope="session")
def d4():
    return fr.dihedral_group(4)


@pytest.fixture(scope="session")
def q8():
    return fr.quaternion_group()


@pytest.fixture(scope="session")
def bloch_2000():
    return ss.bloch_structure(2000, 0, via="su2")


@pytest.fixture(scope="session")
def deformable_2000():
    return ss.deformable_structure([0.5, 0.3, 0.2], 2000, 0)
