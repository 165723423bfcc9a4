import pathlib

import numpy as np
import pytest

from implimine import Literal, MembershipMatrix

DATA_DIR = pathlib.Path(__file__).parent / "data"

# Fixed seed for the synthetic directional experiment; chosen once so every
# directional clause (including the near-tie orderings) is stable.
SYNTH_SEED = 7


@pytest.fixture(scope="session")
def iris_path() -> pathlib.Path:
    return DATA_DIR / "iris.csv"


def toy_matrix(mu, n_columns=None, labels_per_column=1) -> MembershipMatrix:
    """Matrix with one variable per literal column unless told otherwise."""
    mu = np.asarray(mu, dtype=float)
    n_lit = mu.shape[1]
    if n_columns is None:
        n_columns = n_lit // labels_per_column
    literals = []
    vocabulary = []
    for ci in range(n_columns):
        names = tuple(
            f"L{li}" for li in range(labels_per_column)
        )
        vocabulary.append((f"v{ci}", names))
        literals.extend(
            Literal(ci, li) for li in range(labels_per_column)
        )
    assert len(literals) == n_lit
    return MembershipMatrix(
        literals=tuple(literals),
        mu=mu,
        vocabulary=tuple(vocabulary),
        fingerprint="toy",
    )
