"""Probability potentials: non-negative tables, summed out and multiplied.

Tables are numpy arrays with one axis per variable of the canonical domain,
so ``table.ravel()`` is the row-major value list used in model files.
"""

import numpy as np

from .errors import DomainError, UndefinedCombination
from .frames import axes_of, canonical, check_frames, merge_frames, restrict_frames, shape_of
from .valuation import Valuation, marginalize


class Potential(Valuation):
    """Unnormalized distribution over the frame of ``domain``.

    Parameters
    ----------
    domain : iterable of str
        Variables; stored sorted.
    frames : mapping
        Labels for (at least) every variable of ``domain``.
    table : array_like
        Values laid out along the sorted domain. Either already shaped, or
        flat in row-major order.
    """

    __slots__ = ("domain", "frames", "table")

    def __init__(self, domain, frames, table):
        domain = canonical(domain)
        if not domain:
            raise DomainError("a potential needs at least one variable")
        frames = restrict_frames(check_frames(frames), domain)
        shape = shape_of(domain, frames)
        arr = np.array(table, dtype=float)
        if arr.size != int(np.prod(shape)):
            raise DomainError(
                f"table has {arr.size} entries, frame of {list(domain)} has {int(np.prod(shape))}")
        arr = arr.reshape(shape)
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise DomainError("potential values must be finite and non-negative")
        if not np.any(arr > 0):
            raise DomainError("potential values must not be all zero")
        arr.setflags(write=False)
        self.domain = domain
        self.frames = frames
        self.table = arr

    @classmethod
    def from_values(cls, order, frames, values):
        """Build from a flat row-major list laid out along ``order``.

        ``order`` need not be sorted; the table is transposed to canonical
        order.
        """
        order = tuple(order)
        if len(set(order)) != len(order):
            raise DomainError(f"repeated variable in {list(order)}")
        frames = restrict_frames(check_frames(frames), order)
        arr = np.asarray(values, dtype=float)
        shape = tuple(len(frames[v]) for v in order)
        if arr.size != int(np.prod(shape)):
            raise DomainError(
                f"expected {int(np.prod(shape))} values for {list(order)}, got {arr.size}")
        arr = arr.reshape(shape)
        dom = canonical(order)
        arr = np.transpose(arr, [order.index(v) for v in dom])
        return cls(dom, frames, arr)

    @classmethod
    def identity(cls, domain, frames):
        domain = canonical(domain)
        frames = restrict_frames(frames, domain)
        return cls(domain, frames, np.ones(shape_of(domain, frames)))

    @property
    def values(self) -> np.ndarray:
        """Flat row-major copy of the table."""
        return self.table.ravel().copy()

    def total(self) -> float:
        return float(self.table.sum())

    def __getitem__(self, config):
        """Value at a configuration given as a variable -> label mapping."""
        idx = tuple(self.frames[v].index(config[v]) for v in self.domain)
        return float(self.table[idx])

    def _expanded(self, domain):
        # insert size-1 axes so the table broadcasts against ``domain``
        shape = [1] * len(domain)
        for ax, n in zip(axes_of(self.domain, domain), self.table.shape):
            shape[ax] = n
        return self.table.reshape(shape)

    def _combine(self, other):
        frames = merge_frames(self.frames, other.frames)
        dom = canonical(self.domain + other.domain)
        prod = self._expanded(dom) * other._expanded(dom)
        if not np.any(prod > 0):
            raise UndefinedCombination(
                f"product of potentials on {list(self.domain)} and {list(other.domain)} "
                "is zero everywhere")
        return Potential(dom, frames, prod)

    def _marginalize(self, onto):
        drop = tuple(i for i, v in enumerate(self.domain) if v not in onto)
        return Potential(onto, self.frames, self.table.sum(axis=drop))

    def isclose(self, other, tol=1e-9):
        if not isinstance(other, Potential) or self.domain != other.domain:
            return False
        if self.frames != other.frames:
            return False
        a, b = self.table, other.table
        return bool(np.all(np.abs(a - b) <= tol * np.maximum(np.abs(a), np.abs(b))))

    def __eq__(self, other):
        return (isinstance(other, Potential) and self.domain == other.domain
                and self.frames == other.frames and np.array_equal(self.table, other.table))

    __hash__ = None

    def __repr__(self):
        return f"Potential({list(self.domain)}, {self.values.tolist()})"


def marginalize_potential(G: Potential, onto) -> Potential:
    return marginalize(G, onto)


def combine_potentials(G: Potential, H: Potential) -> Potential:
    if not isinstance(G, Potential) or not isinstance(H, Potential):
        raise DomainError("combine_potentials takes two potentials")
    return G.combine(H)


def normalize(G: Potential) -> Potential:
    """Rescale so the entries sum to one."""
    return Potential(G.domain, G.frames, G.table / G.table.sum())
