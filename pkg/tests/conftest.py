import time

import pytest

from genus4census import census


@pytest.fixture(scope="session")
def full_census():
    """One full F_2 census shared by the whole session: (records, seconds)."""
    t0 = time.time()
    records = census.run_census()
    return records, time.time() - t0
