import numpy as np
import pytest

from coarsecurv.errors import InvalidParameterError
from coarsecurv.fileio import (
    kernel_from_dict,
    load_kernel,
    load_space,
    save_kernel,
    save_space,
    space_from_dict,
    space_to_dict,
)
from coarsecurv.samplers import heisenberg_sample, random_space
from coarsecurv.spaces import gaussian_walk, r_step_walk


def test_space_round_trip(tmp_path):
    sp = random_space(10, seed=3)
    path = tmp_path / "space.json"
    save_space(sp, path)
    back = load_space(path)
    # repr-exact float round trip
    assert np.array_equal(back.dist, sp.dist)
    assert np.array_equal(back.measure, sp.measure)
    assert back.labels == sp.labels


def test_space_labels_survive(tmp_path):
    sp = heisenberg_sample(12, box=1.0, seed=0)
    path = tmp_path / "h.json"
    save_space(sp, path)
    assert load_space(path).labels == [f"h{i}" for i in range(12)]


def test_generator_document_defers_to_samplers():
    doc = {"generator": {"name": "cycle_graph", "params": {"n": 7}}}
    sp = space_from_dict(doc)
    assert sp.n == 7
    seeded = {"generator": {"name": "sphere_sample",
                            "params": {"count": 20}, "seed": 9}}
    a = space_from_dict(seeded)
    b = space_from_dict(seeded)
    assert np.array_equal(a.dist, b.dist)


def test_space_document_requires_content():
    with pytest.raises(InvalidParameterError):
        space_from_dict({"labels": [0, 1]})


def test_kernel_round_trip(tmp_path):
    sp = random_space(8, seed=5)
    for kern in (r_step_walk(sp, 0.8), gaussian_walk(sp, 0.3)):
        path = tmp_path / f"{kern.kind}.json"
        save_kernel(kern, path)
        back = load_kernel(path)
        assert np.array_equal(back.rows, kern.rows)
        assert back.kind == kern.kind
        assert back.step_radius == kern.step_radius
        assert back.param == kern.param
        assert np.array_equal(back.space.dist, sp.dist)


def test_kernel_document_requires_rows():
    sp = random_space(4, seed=0)
    doc = space_to_dict(sp)
    with pytest.raises(InvalidParameterError):
        kernel_from_dict(doc)
