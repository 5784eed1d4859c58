"""Frames, configurations and the index maps between them.

A frame assigns each variable an ordered tuple of value labels. The frame of
a variable set is the Cartesian product taken in canonical (sorted) variable
order, enumerated row-major with the last variable varying fastest. Every
table and bit-vector in the package uses that enumeration.
"""

from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError

Frames = Mapping[str, tuple]


def canonical(variables: Iterable[str]) -> tuple:
    """Sorted tuple of variable names."""
    return tuple(sorted(set(variables)))


def check_frames(frames: Mapping[str, Iterable]) -> dict:
    """Validate a variable -> labels mapping and freeze it into tuples."""
    out = {}
    for name, labels in frames.items():
        if not isinstance(name, str) or not name:
            raise DomainError(f"variable names must be non-empty strings, got {name!r}")
        labels = tuple(labels)
        if not labels:
            raise DomainError(f"variable {name!r} has an empty frame")
        if len(set(labels)) != len(labels):
            raise DomainError(f"variable {name!r} has duplicate frame labels")
        out[name] = labels
    return out


def restrict_frames(frames: Frames, domain: Iterable[str]) -> dict:
    missing = [v for v in domain if v not in frames]
    if missing:
        raise DomainError(f"no frame declared for {missing}")
    return {v: tuple(frames[v]) for v in canonical(domain)}


def merge_frames(a: Frames, b: Frames) -> dict:
    """Union of two frame maps; shared variables must agree exactly."""
    out = dict(a)
    for name, labels in b.items():
        if name in out and tuple(out[name]) != tuple(labels):
            raise DomainError(
                f"frame mismatch on {name!r}: {out[name]} vs {tuple(labels)}")
        out[name] = tuple(labels)
    return out


def shape_of(domain: tuple, frames: Frames) -> tuple:
    return tuple(len(frames[v]) for v in domain)


def configurations(domain: tuple, frames: Frames):
    """All configurations of ``domain`` as label tuples, in row-major order."""
    return list(product(*(frames[v] for v in domain)))


def config_index(config: Mapping[str, str], domain: tuple, frames: Frames) -> int:
    """Row-major index of a configuration given as a variable -> label map."""
    idx = 0
    for v in domain:
        labels = frames[v]
        try:
            pos = labels.index(config[v])
        except (KeyError, ValueError):
            raise DomainError(f"bad value for {v!r} in configuration {dict(config)}")
        idx = idx * len(labels) + pos
    return idx


def project_config(config: Mapping[str, str], onto: Iterable[str]) -> dict:
    """Drop the coordinates of ``config`` that are not in ``onto``.

    >>> project_config({"W": "w", "X": "x", "Y": "y", "Z": "z"}, {"W", "X"})
    {'W': 'w', 'X': 'x'}
    """
    onto = canonical(onto)
    if not onto:
        raise DomainError("cannot project a configuration onto the empty set")
    extra = [v for v in onto if v not in config]
    if extra:
        raise DomainError(f"{extra} not in the configuration's domain")
    return {v: config[v] for v in onto}


@lru_cache(maxsize=4096)
def projection_index(shape: tuple, keep: tuple) -> np.ndarray:
    """Map each row-major index of ``shape`` to its index after projection.

    ``keep`` lists the axes retained, in increasing order. The result has one
    entry per configuration of the larger domain.
    """
    size = int(np.prod(shape, dtype=np.int64))
    if not keep:
        return np.zeros(size, dtype=np.intp)
    coords = np.unravel_index(np.arange(size), shape)
    out = np.ravel_multi_index(tuple(coords[a] for a in keep),
                               tuple(shape[a] for a in keep))
    out.setflags(write=False)
    return out


def axes_of(sub: tuple, domain: tuple) -> tuple:
    """Positions of the variables of ``sub`` inside ``domain`` (both canonical)."""
    pos = {v: i for i, v in enumerate(domain)}
    return tuple(pos[v] for v in sub)
