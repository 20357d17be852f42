import pytest

from sga import io
from sga.fixtures import ACTIONS, fix_a, fix_b, fix_c, fix_d
from sga.skew import SkewRing
from sga.ultragraph import ULTRAGRAPHS


@pytest.fixture(params=sorted(ACTIONS))
def any_fixture(request):
    return ACTIONS[request.param]()


@pytest.fixture
def rings():
    return {name: SkewRing.of(make(), 2) for name, make in ACTIONS.items()}


@pytest.fixture
def instance_files(tmp_path):
    paths = {}
    for name, make in {**ACTIONS, **ULTRAGRAPHS}.items():
        path = tmp_path / f"{name}.json"
        io.dump(make(), path)
        paths[name] = path
    return paths


__all__ = ["fix_a", "fix_b", "fix_c", "fix_d"]
