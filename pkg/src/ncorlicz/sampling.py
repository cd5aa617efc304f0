"""Deterministic sampling built on a SplitMix64 stream.

All stochastic property checks and the CLI suite draw from this
generator, so a fixed seed reproduces every sample exactly.  SplitMix64
advances a 64-bit counter by the golden-ratio increment and mixes it
through two xor-multiply rounds; uniforms take the top 53 bits, normals
come from Box-Muller.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .algebra import AlgebraDescriptor, Element, Functional
from .core_model import CoreElement, Interval
from .errors import ValidationError
from .functorial import Isomorphism

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK
        self._spare: float | None = None

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def uniform(self) -> float:
        """Uniform in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform_open(self) -> float:
        """Uniform in (0, 1]."""
        return ((self.next_u64() >> 11) + 1) * 2.0 ** -53

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValidationError("randint needs n >= 1")
        return self.next_u64() % n

    def normal(self) -> float:
        if self._spare is not None:
            v = self._spare
            self._spare = None
            return v
        r = math.sqrt(-2.0 * math.log(self.uniform_open()))
        theta = 2.0 * math.pi * self.uniform()
        self._spare = r * math.sin(theta)
        return r * math.cos(theta)

    def complex_normal(self) -> complex:
        return complex(self.normal(), self.normal())


def rand_matrix(rng: SplitMix64, n: int, scale: float = 1.0) -> np.ndarray:
    m = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        for k in range(n):
            m[j, k] = rng.complex_normal()
    return scale * m


def rand_element(rng: SplitMix64, algebra: AlgebraDescriptor, scale: float = 1.0) -> Element:
    return Element(algebra, [rand_matrix(rng, d, scale) for d in algebra.block_dims])


def rand_hermitian(rng: SplitMix64, algebra: AlgebraDescriptor) -> Element:
    x = rand_element(rng, algebra)
    return 0.5 * (x + x.adjoint())


def rand_positive(rng: SplitMix64, algebra: AlgebraDescriptor) -> Element:
    x = rand_element(rng, algebra)
    return x.adjoint() * x


def rand_unitary_matrix(rng: SplitMix64, n: int) -> np.ndarray:
    """Haar-ish unitary: modified Gram-Schmidt of a Ginibre draw, phases fixed."""
    g = rand_matrix(rng, n)
    q = np.zeros_like(g)
    for k in range(n):
        v = g[:, k].copy()
        for _ in range(2):
            for j in range(k):
                v -= np.vdot(q[:, j], v) * q[:, j]
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:  # essentially impossible; restart the column
            return rand_unitary_matrix(rng, n)
        v /= nrm
        pivot = v[np.argmax(np.abs(v))]
        q[:, k] = v * (abs(pivot) / pivot)
    return q


def rand_unitary_element(rng: SplitMix64, algebra: AlgebraDescriptor) -> Element:
    return Element(algebra, [rand_unitary_matrix(rng, d) for d in algebra.block_dims])


def rand_density_matrix(rng: SplitMix64, n: int, rank: int | None = None,
                        min_eig: float = 0.2) -> np.ndarray:
    """PSD matrix with eigenvalues in [min_eig, min_eig + 1] and exact zeros
    beyond the requested rank."""
    if rank is None:
        rank = n
    if not 0 <= rank <= n:
        raise ValidationError(f"rank {rank} out of range for dimension {n}")
    u = rand_unitary_matrix(rng, n)
    vals = np.array([min_eig + rng.uniform() if k < rank else 0.0 for k in range(n)])
    return (u * vals) @ u.conj().T


def rand_functional(rng: SplitMix64, algebra: AlgebraDescriptor,
                    ranks: list[int] | None = None, min_eig: float = 0.2) -> Functional:
    if ranks is None:
        ranks = list(algebra.block_dims)
    dens = [rand_density_matrix(rng, d, r, min_eig)
            for d, r in zip(algebra.block_dims, ranks)]
    return Functional(algebra, dens)


def rand_faithful_functional(rng: SplitMix64, algebra: AlgebraDescriptor,
                             min_eig: float = 0.2) -> Functional:
    return rand_functional(rng, algebra, None, min_eig)


def rand_core_element(rng: SplitMix64, algebra: AlgebraDescriptor,
                      pieces: int = 3, positive: bool = False,
                      allow_infinite: bool = True) -> CoreElement:
    """Random step element with rational endpoints in [-4, 6], denominator 8."""
    cuts = sorted({Fraction(rng.randint(81) - 32, 8) for _ in range(2 * pieces)})
    out = []
    k = 0
    while k + 1 < len(cuts) and len(out) < pieces:
        a, b = cuts[k], cuts[k + 1]
        x = rand_element(rng, algebra)
        if positive:
            x = x.adjoint() * x
        out.append((x, Interval(a, b)))
        k += 2
    if allow_infinite and rng.uniform() < 0.3 and cuts:
        x = rand_element(rng, algebra)
        if positive:
            x = x.adjoint() * x
        last = max(iv.b for _, iv in out) if out else cuts[-1]
        out.append((x, Interval(last + 1, None)))
    return CoreElement(algebra, out)


def rand_isomorphism(rng: SplitMix64, algebra: AlgebraDescriptor) -> Isomorphism:
    """Trace-preserving isomorphism: a permutation within groups of blocks of
    equal (dim, weight), composed with random per-block unitaries."""
    n = algebra.nblocks
    perm = list(range(n))
    groups: dict[tuple[int, float], list[int]] = {}
    for i, (d, c) in enumerate(zip(algebra.block_dims, algebra.weights)):
        groups.setdefault((d, c), []).append(i)
    for members in groups.values():
        shuffled = members.copy()
        for k in range(len(shuffled) - 1, 0, -1):
            j = rng.randint(k + 1)
            shuffled[k], shuffled[j] = shuffled[j], shuffled[k]
        for src, dst in zip(members, shuffled):
            perm[src] = dst
    unitaries = [rand_unitary_matrix(rng, d) for d in algebra.block_dims]
    return Isomorphism(algebra, algebra, tuple(perm), unitaries)
