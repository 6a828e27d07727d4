import json

import pytest

from edgecut import generators
from edgecut.formats import graph_to_dict, tree_to_dict
from edgecut.graph_core import build_graph


@pytest.fixture
def path_abc():
    return build_graph([("a", "b"), ("b", "c")])


@pytest.fixture
def path_abcd():
    return build_graph([("a", "b"), ("b", "c"), ("c", "d")])


@pytest.fixture
def c4():
    return generators.cycle(4)


@pytest.fixture
def k4():
    return generators.complete(4)


@pytest.fixture
def two_triangles():
    return generators.two_triangles()


@pytest.fixture
def star_tree():
    """Marked root with uncountably many children, each heading a ray."""
    return generators.fan("uncountable", marked=True, rays=True)


@pytest.fixture
def countable_fan():
    return generators.fan("countable", marked=True, rays=True)


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def graph_file(write_json):
    def write(graph, name="graph.json"):
        return write_json(name, graph_to_dict(graph))

    return write


@pytest.fixture
def tree_file(write_json):
    def write(tree, name="tree.json"):
        return write_json(name, tree_to_dict(tree))

    return write
