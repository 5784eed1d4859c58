"""Belief functions represented by their mass functions.

A focal set is a non-empty subset of a frame, stored as a Python int whose
bit ``i`` marks the configuration with row-major index ``i``. Mass functions
map those ints to positive masses summing to one.
"""

from dataclasses import dataclass
from math import fsum

import numpy as np

from .errors import DomainError, UndefinedCombination
from .frames import (axes_of, canonical, check_frames, config_index, configurations,
                     merge_frames, projection_index, restrict_frames, shape_of)
from .valuation import Valuation, marginalize

MASS_TOL = 1e-9


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    raw = bits.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def member_indices(bits: int) -> tuple:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def _project_bits(bits, src_dom, src_shape, dst_dom):
    index = projection_index(src_shape, axes_of(dst_dom, src_dom))
    size = int(np.prod([src_shape[a] for a in axes_of(dst_dom, src_dom)]))
    out = np.zeros(size, dtype=bool)
    out[index[bits_to_mask(bits, index.size)]] = True
    return mask_to_bits(out)


def _extend_bits(bits, src_dom, dst_dom, dst_shape):
    index = projection_index(dst_shape, axes_of(src_dom, dst_dom))
    src_size = int(np.prod([dst_shape[a] for a in axes_of(src_dom, dst_dom)]))
    return mask_to_bits(bits_to_mask(bits, src_size)[index])


@dataclass(frozen=True)
class FocalSet:
    """Non-empty subset of the frame of ``domain``."""

    domain: tuple
    shape: tuple
    bits: int

    def __post_init__(self):
        if self.bits <= 0:
            raise DomainError("focal sets must be non-empty")
        if self.bits >> self.size:
            raise DomainError("focal set has members outside the frame")

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def members(self) -> tuple:
        return member_indices(self.bits)

    @classmethod
    def from_configurations(cls, domain, frames, configs):
        """``configs`` holds variable -> label maps, or label tuples in domain order."""
        domain = canonical(domain)
        frames = restrict_frames(frames, domain)
        bits = 0
        for c in configs:
            if not isinstance(c, dict):
                c = dict(zip(domain, c))
            bits |= 1 << config_index(c, domain, frames)
        return cls(domain, shape_of(domain, frames), bits)

    def configurations(self, frames) -> list:
        allc = configurations(self.domain, frames)
        return [allc[i] for i in self.members]

    def __and__(self, other):
        if (self.domain, self.shape) != (other.domain, other.shape):
            raise DomainError("intersection needs focal sets on the same frame")
        return FocalSet(self.domain, self.shape, self.bits & other.bits)


def project_subset(G: FocalSet, onto) -> FocalSet:
    """Image of ``G`` under dropping the coordinates outside ``onto``."""
    onto = canonical(onto)
    if not onto or not set(onto) <= set(G.domain):
        raise DomainError(f"cannot project {list(G.domain)} onto {list(onto)}")
    if onto == G.domain:
        return G
    bits = _project_bits(G.bits, G.domain, G.shape, onto)
    return FocalSet(onto, tuple(G.shape[a] for a in axes_of(onto, G.domain)), bits)


def vacuous_extension(G: FocalSet, onto, frames) -> FocalSet:
    """Cylinder extension of ``G`` to the larger domain ``onto``."""
    onto = canonical(onto)
    if not set(G.domain) <= set(onto):
        raise DomainError(f"cannot extend {list(G.domain)} to {list(onto)}")
    if onto == G.domain:
        return G
    frames = restrict_frames(frames, onto)
    shape = shape_of(onto, frames)
    if tuple(shape[a] for a in axes_of(G.domain, onto)) != G.shape:
        raise DomainError("frame sizes disagree with the focal set")
    return FocalSet(onto, shape, _extend_bits(G.bits, G.domain, onto, shape))


class MassFunction(Valuation):
    """Distribution of a random non-empty subset of a frame.

    ``masses`` maps focal sets (as :class:`FocalSet` or raw ints) to
    positive reals. Inputs must sum to one within ``1e-9``; sums off by more
    than ``1e-12`` are rescaled.
    """

    def __init__(self, domain, frames, masses, _trusted=False):
        domain = canonical(domain)
        if not domain:
            raise DomainError("a mass function needs at least one variable")
        frames = restrict_frames(check_frames(frames), domain)
        self.domain = domain
        self.frames = frames
        self.shape = shape_of(domain, frames)
        if _trusted:
            self._m = masses
            return
        size = int(np.prod(self.shape))
        m = {}
        for key, w in masses.items():
            if isinstance(key, FocalSet):
                if key.domain != domain or key.shape != self.shape:
                    raise DomainError("focal set domain does not match the mass function")
                key = key.bits
            if key <= 0:
                raise DomainError("the empty set cannot carry mass")
            if key >> size:
                raise DomainError("focal set has members outside the frame")
            w = float(w)
            if not np.isfinite(w) or w < 0:
                raise DomainError(f"invalid mass {w!r}")
            if w > 0:
                m[key] = m.get(key, 0.0) + w
        total = fsum(m.values())
        if not m or abs(total - 1.0) > MASS_TOL:
            raise DomainError(f"masses sum to {total!r}, expected 1")
        if abs(total - 1.0) > 1e-12:
            m = {k: w / total for k, w in m.items()}
        self._m = dict(sorted(m.items()))

    @classmethod
    def from_focal(cls, domain, frames, focal):
        """Build from ``[(configs, mass), ...]`` as in model files."""
        domain = canonical(domain)
        frames = restrict_frames(check_frames(frames), domain)
        masses = {}
        for configs, w in focal:
            fs = FocalSet.from_configurations(domain, frames, configs)
            masses[fs.bits] = masses.get(fs.bits, 0.0) + float(w)
        return cls(domain, frames, masses)

    @classmethod
    def identity(cls, domain, frames):
        domain = canonical(domain)
        frames = restrict_frames(frames, domain)
        size = int(np.prod(shape_of(domain, frames)))
        return cls(domain, frames, {(1 << size) - 1: 1.0}, _trusted=True)

    @property
    def masses(self) -> dict:
        return {FocalSet(self.domain, self.shape, b): w for b, w in self._m.items()}

    @property
    def raw(self) -> dict:
        """Focal-set bits -> mass, ascending by bits."""
        return dict(self._m)

    def mass(self, G) -> float:
        key = G.bits if isinstance(G, FocalSet) else G
        return self._m.get(key, 0.0)

    def focal_sets(self) -> list:
        """Focal sets in canonical order (lexicographic by member indices)."""
        keys = sorted(self._m, key=member_indices)
        return [FocalSet(self.domain, self.shape, b) for b in keys]

    def _marginalize(self, onto):
        out = {}
        for bits, w in self._m.items():
            b = _project_bits(bits, self.domain, self.shape, onto)
            out[b] = out.get(b, 0.0) + w
        return MassFunction(onto, self.frames, dict(sorted(out.items())), _trusted=True)

    def _combine(self, other):
        frames = merge_frames(self.frames, other.frames)
        dom = canonical(self.domain + other.domain)
        shape = shape_of(dom, frames)
        left = [(_extend_bits(b, self.domain, dom, shape), w) for b, w in self._m.items()]
        right = [(_extend_bits(b, other.domain, dom, shape), w) for b, w in other._m.items()]
        out = {}
        conflict = False
        for lb, lw in left:
            for rb, rw in right:
                b = lb & rb
                if b:
                    out[b] = out.get(b, 0.0) + lw * rw
                else:
                    conflict = True
        if not out:
            raise UndefinedCombination(
                f"mass functions on {list(self.domain)} and {list(other.domain)} "
                "are in total conflict")
        if conflict:
            k = fsum(out.values())
            out = {b: w / k for b, w in out.items()}
        return MassFunction(dom, frames, dict(sorted(out.items())), _trusted=True)

    def isclose(self, other, tol=1e-9):
        if not isinstance(other, MassFunction) or self.domain != other.domain:
            return False
        if self.frames != other.frames or set(self._m) != set(other._m):
            return False
        return all(abs(w - other._m[b]) <= tol for b, w in self._m.items())

    def total(self) -> float:
        return fsum(self._m.values())

    def belief(self, A) -> float:
        return belief_from_mass(self, A)

    def __eq__(self, other):
        return (isinstance(other, MassFunction) and self.domain == other.domain
                and self.frames == other.frames and self._m == other._m)

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{list(member_indices(b))}: {w:.6g}" for b, w in self._m.items())
        return f"MassFunction({list(self.domain)}, {{{body}}})"


def marginalize_mass(m: MassFunction, onto) -> MassFunction:
    return marginalize(m, onto)


def dempster_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    if not isinstance(m1, MassFunction) or not isinstance(m2, MassFunction):
        raise DomainError("dempster_combine takes two mass functions")
    return m1.combine(m2)


def belief_from_mass(m: MassFunction, A) -> float:
    """Bel(A): total mass of focal sets contained in ``A``.

    ``A`` is a FocalSet, a raw bit int, or an iterable of configurations
    (possibly empty).
    """
    if isinstance(A, FocalSet):
        bits = A.bits
    elif isinstance(A, int):
        bits = A
    else:
        bits = 0
        for c in A:
            if not isinstance(c, dict):
                c = dict(zip(m.domain, c))
            bits |= 1 << config_index(c, m.domain, m.frames)
    return fsum(w for b, w in m._m.items() if b & ~bits == 0)
