"""Surfaces and their one-vertex ribbon-graph model.

A compact surface ``S_{g,b}`` with ``b >= 1`` deformation retracts onto a
ribbon graph with a single vertex and ``r = 2g + b - 1`` loops.  Boundary
components are treated as punctures.  Half-edges are letters: ``k`` leaves the
vertex along loop ``k`` and ``-k`` leaves along it backwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import ComplexityTooLow
from . import words as W


@dataclass(frozen=True, order=True)
class Surface:
    genus: int
    boundary_count: int

    def __post_init__(self) -> None:
        if self.genus < 0 or self.boundary_count < 0:
            raise ValueError("genus and boundary_count must be non-negative")

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.boundary_count

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count

    @property
    def rank(self) -> int:
        """Rank of the free fundamental group of the punctured model."""
        return 2 * self.genus + self.boundary_count - 1

    @property
    def is_planar(self) -> bool:
        return self.genus == 0

    def require_kernel(self) -> None:
        if self.complexity < 1:
            raise ComplexityTooLow(f"{self} has complexity {self.complexity} < 1")
        if self.boundary_count < 1:
            raise ComplexityTooLow(f"{self} is closed; the kernel needs at least one puncture")

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary": self.boundary_count}

    @classmethod
    def from_json(cls, d: dict) -> "Surface":
        return cls(int(d["genus"]), int(d["boundary"]))

    @classmethod
    def parse(cls, s: str) -> "Surface":
        g, b = s.split(",")
        return cls(int(g), int(b))

    def __str__(self) -> str:
        return f"S_{{{self.genus},{self.boundary_count}}}"

    @cached_property
    def ribbon(self) -> "RibbonGraph":
        self.require_kernel()
        return RibbonGraph.standard(self)


def complexity(s: Surface) -> int:
    return s.complexity


class RibbonGraph:
    """Cyclic order of the ``2r`` half-edges at the single vertex.

    Handles contribute ``a, b, A, B`` and each puncture loop contributes
    ``c, C``.  For planar surfaces the loops ``1..n-1`` encircle punctures
    ``1..n-1`` and the product ``1 2 ... n-1`` encircles puncture ``n``.
    """

    def __init__(self, order: list[int], genus: int):
        self.order = order
        self.rank = len(order) // 2
        self.genus = genus
        self.position = {h: i for i, h in enumerate(order)}
        self.faces = self._faces()

    @classmethod
    def standard(cls, s: Surface) -> "RibbonGraph":
        order: list[int] = []
        k = 1
        for _ in range(s.genus):
            a, b = k, k + 1
            order += [a, b, -a, -b]
            k += 2
        for _ in range(s.boundary_count - 1):
            order += [k, -k]
            k += 1
        rg = cls(order, s.genus)
        assert len(rg.faces) == s.boundary_count, (s, rg.faces)
        return rg

    def succ(self, h: int) -> int:
        return self.order[(self.position[h] + 1) % len(self.order)]

    def _faces(self) -> list[W.Word]:
        seen: set[int] = set()
        faces = []
        for h0 in self.order:
            if h0 in seen:
                continue
            face = []
            h = h0
            while h not in seen:
                seen.add(h)
                face.append(h)
                h = self.succ(-h)
            faces.append(tuple(face))
        return faces

    @cached_property
    def peripheral_classes(self) -> frozenset[W.Word]:
        return frozenset(W.canonical(f) for f in self.faces)

    def cyclic_sign(self, x: int, y: int, z: int) -> int:
        """+1 if half-edges ``x, y, z`` occur in this cyclic order, -1 otherwise."""
        px, py, pz = self.position[x], self.position[y], self.position[z]
        n = len(self.order)
        return 1 if (py - px) % n < (pz - px) % n else -1
