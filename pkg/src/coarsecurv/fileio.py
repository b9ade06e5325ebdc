"""Space and kernel files: JSON documents, fully reproducible.

A space file is either explicit data

    {"labels": [...], "dist": [[...]], "measure": [...]}

or a generator recipe

    {"generator": {"name": ..., "params": {...}, "seed": ...}}

which defers to the samplers module.  Kernel files mirror the space
layout with an extra "rows" matrix (plus the construction tag).
Floats round-trip exactly through repr, so save/load is lossless.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InvalidParameterError
from .samplers import GeneratorSpec, generate
from .spaces import FiniteMetricMeasureSpace, RandomWalkKernel, make_kernel, make_space


def space_to_dict(space: FiniteMetricMeasureSpace) -> dict:
    return {
        "labels": list(space.labels),
        "dist": space.dist.tolist(),
        "measure": space.measure.tolist(),
    }


def space_from_dict(doc: dict) -> FiniteMetricMeasureSpace:
    if "generator" in doc:
        g = doc["generator"]
        spec = GeneratorSpec(name=g["name"], params=dict(g.get("params", {})),
                             seed=int(g.get("seed", 0)))
        return generate(spec)
    if "dist" not in doc:
        raise InvalidParameterError(
            "space document needs either 'dist' or 'generator'")
    return make_space(doc["dist"], measure=doc.get("measure"),
                      labels=doc.get("labels"))


def save_space(space: FiniteMetricMeasureSpace, path) -> None:
    with open(path, "w") as fh:
        json.dump(space_to_dict(space), fh)
        fh.write("\n")


def load_space(path) -> FiniteMetricMeasureSpace:
    with open(path) as fh:
        return space_from_dict(json.load(fh))


def kernel_to_dict(kernel: RandomWalkKernel) -> dict:
    doc = space_to_dict(kernel.space)
    doc["rows"] = kernel.rows.tolist()
    doc["kind"] = kernel.kind
    if kernel.step_radius is not None:
        doc["step_radius"] = kernel.step_radius
    if kernel.param is not None:
        doc["param"] = kernel.param
    return doc


def kernel_from_dict(doc: dict) -> RandomWalkKernel:
    if "rows" not in doc:
        raise InvalidParameterError("kernel document needs 'rows'")
    space = space_from_dict(doc)
    return make_kernel(space, np.array(doc["rows"], dtype=np.float64),
                       kind=doc.get("kind", "custom"),
                       step_radius=doc.get("step_radius"),
                       param=doc.get("param"))


def save_kernel(kernel: RandomWalkKernel, path) -> None:
    with open(path, "w") as fh:
        json.dump(kernel_to_dict(kernel), fh)
        fh.write("\n")


def load_kernel(path) -> RandomWalkKernel:
    with open(path) as fh:
        return kernel_from_dict(json.load(fh))
