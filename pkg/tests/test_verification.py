import json

import numpy as np
import pytest

from renyi_qubit.verification import SUITES, random_triples, run_verification


def test_triples_are_seeded():
    a = random_triples(3, 11)
    b = random_triples(3, 11)
    assert all(x[:2] == y[:2] and np.array_equal(x[2], y[2]) for x, y in zip(a, b))
    assert all(0 <= x[0] <= 5 and 0 <= x[1] <= 5 for x in a)


def test_report_shape():
    report = run_verification(2, seed=4)
    assert report["schema_version"] == 1 and report["passed"]
    assert set(report["suites"]) == set(SUITES)
    assert len(report["triples"]) == 2
    assert report["findings"]["minimizers_outside_family"] == []
    json.dumps(report)


def test_rejects_empty():
    with pytest.raises(ValueError):
        run_verification(0, seed=1)
