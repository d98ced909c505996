import random

import pytest

from ocs_toe.model import LogicalTopology


def random_symmetric_logical(rng: random.Random, p: int, max_entry: int) -> LogicalTopology:
    """A random valid demand matrix: symmetric, even diagonal."""
    c = [[0] * p for _ in range(p)]
    for i in range(p):
        for j in range(i, p):
            v = rng.randint(0, max_entry)
            if i == j:
                v -= v % 2
            c[i][j] = v
            c[j][i] = v
    k = max(2, max(sum(row) for row in c))
    k += k % 2
    return LogicalTopology(p=p, k_egroup=k, c=c)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
