import json

import pytest

from ulog.errors import ValidationError
from ulog.groups import GroupSpec
from ulog.verify import SUITES, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_suites_pass_on_catalog(group, suite):
    samples = 3 if suite == "component-census" else 5
    rep = run_suite(suite, group, samples, seed=11)
    assert rep.passed, rep.table()
    assert all(c.trials > 0 for c in rep.checks)
    json.dumps(rep.to_json(), allow_nan=False)


def test_suite_is_deterministic():
    G = GroupSpec.special_orthogonal(4)
    a = run_suite("metric-axioms", G, 4, 3).to_json()
    b = run_suite("metric-axioms", G, 4, 3).to_json()
    assert a == b


def test_bad_suite_arguments():
    G = GroupSpec.unitary(2)
    with pytest.raises(ValidationError):
        run_suite("nope", G, 1, 0)
    with pytest.raises(ValidationError):
        run_suite("svd-closure", G, 0, 0)
