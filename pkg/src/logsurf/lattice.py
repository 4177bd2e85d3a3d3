"""Divisor lattices with an exact rational intersection pairing.

A :class:`SurfaceModel` is a Gram matrix on finitely many named curve
classes.  The classes need not be linearly independent: a resolved
surface carries pullbacks, total exceptional classes, strict transforms
and the strict transform of the curve side by side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from . import linalg
from .errors import InputError

RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string; floats are rejected."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise InputError(f"rationals must be integers or p/q strings, got {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r} ({type(value).__name__})")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Divisor(Mapping[str, Fraction]):
    """Sparse rational combination of named classes.

    Immutable and hashable.  Zero coefficients are never stored, so two
    divisors are equal exactly when their nonzero coefficients agree.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, coefficients: Mapping[str, RationalLike] | Iterable[tuple[str, RationalLike]] = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        acc: dict[str, Fraction] = {}
        for name, value in items:
            q = to_rational(value)
            acc[name] = acc.get(name, Fraction(0)) + q
        self._items = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        self._hash = hash(self._items)

    @classmethod
    def prime(cls, name: str, coefficient: RationalLike = 1) -> "Divisor":
        return cls({name: coefficient})

    def __getitem__(self, name: str) -> Fraction:
        for k, v in self._items:
            if k == name:
                return v
        raise KeyError(name)

    def coefficient(self, name: str) -> Fraction:
        """Coefficient of ``name``; absent classes have coefficient 0."""
        return dict(self._items).get(name, Fraction(0))

    def __iter__(self) -> Iterator[str]:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Divisor):
            return self._items == other._items
        return NotImplemented

    @property
    def support(self) -> frozenset[str]:
        return frozenset(k for k, _ in self._items)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self._items + other._items)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return Divisor(self._items + tuple((k, -v) for k, v in other._items))

    def __neg__(self) -> "Divisor":
        return Divisor((k, -v) for k, v in self._items)

    def __mul__(self, scalar: RationalLike) -> "Divisor":
        s = to_rational(scalar)
        return Divisor((k, v * s) for k, v in self._items)

    __rmul__ = __mul__

    def restrict(self, names: Iterable[str]) -> "Divisor":
        keep = set(names)
        return Divisor((k, v) for k, v in self._items if k in keep)

    def to_json(self) -> dict[str, str]:
        return {k: format_rational(v) for k, v in self._items}

    def __repr__(self) -> str:
        if not self._items:
            return "Divisor(0)"
        terms = " + ".join(f"{format_rational(v)}*{k}" for k, v in self._items)
        return f"Divisor({terms})"


ZERO = Divisor()


@dataclass(frozen=True)
class Cycle:
    """A reduced divisor: an ordered set of distinct classes (possibly empty)."""

    components: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if len(set(comps)) != len(comps):
            raise InputError(f"cycle has repeated components: {comps}")
        object.__setattr__(self, "components", comps)

    def __iter__(self) -> Iterator[str]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __contains__(self, name: object) -> bool:
        return name in self.components

    def as_divisor(self) -> Divisor:
        return Divisor((c, 1) for c in self.components)

    def __le__(self, other: "Cycle") -> bool:
        return set(self.components) <= set(other.components)


@dataclass(frozen=True)
class SurfaceModel:
    """Finite divisor lattice of a smooth projective surface.

    ``boundary`` maps each component D_i of the boundary divisor to its
    geometric genus.
    """

    classes: tuple[str, ...]
    intersection: tuple[tuple[Fraction, ...], ...]
    canonical: Divisor = ZERO
    euler_top: int = 0
    boundary: Mapping[str, int] = field(default_factory=dict)
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        classes = tuple(self.classes)
        if len(set(classes)) != len(classes):
            raise InputError("class names must be distinct")
        n = len(classes)
        rows = tuple(tuple(to_rational(v) for v in row) for row in self.intersection)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"intersection matrix must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InputError(
                        f"intersection matrix is not symmetric at ({classes[i]}, {classes[j]})"
                    )
        index = {c: i for i, c in enumerate(classes)}
        for name in self.canonical:
            if name not in index:
                raise InputError(f"canonical class refers to unknown class {name!r}")
        boundary = dict(self.boundary)
        for name, genus in boundary.items():
            if name not in index:
                raise InputError(f"boundary component {name!r} is not a class")
            if not isinstance(genus, int) or isinstance(genus, bool) or genus < 0:
                raise InputError(f"boundary component {name!r} needs a genus >= 0")
        if not isinstance(self.euler_top, int) or isinstance(self.euler_top, bool):
            raise InputError("euler_top must be an integer")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "intersection", rows)
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "_index", index)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown class {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def pairing(self, a: str, b: str) -> Fraction:
        return self.intersection[self.index(a)][self.index(b)]

    def submatrix(self, names: Iterable[str]) -> list[list[Fraction]]:
        idx = [self.index(n) for n in names]
        return [[self.intersection[i][j] for j in idx] for i in idx]

    @property
    def boundary_divisor(self) -> Divisor:
        return Divisor((name, 1) for name in self.boundary)

    @property
    def log_canonical(self) -> Divisor:
        """K_X + D."""
        return self.canonical + self.boundary_divisor

    def check_divisor(self, d: Divisor) -> None:
        for name in d:
            self.index(name)


def intersect(a: Divisor, b: Divisor, model: SurfaceModel) -> Fraction:
    """Bilinear extension of the model's pairing."""
    total = Fraction(0)
    rows = model.intersection
    b_idx = [(model.index(k), v) for k, v in b.items()]
    for k, v in a.items():
        row = rows[model.index(k)]
        for j, w in b_idx:
            total += v * w * row[j]
    return total


def self_intersection(a: Divisor, model: SurfaceModel) -> Fraction:
    return intersect(a, a, model)


def is_effective(a: Divisor) -> bool:
    return all(v >= 0 for v in a.values())


def leq(a: Divisor, b: Divisor) -> bool:
    """``a ≼ b``: ``b - a`` is effective."""
    return is_effective(b - a)


def is_negative_definite(cycle: Cycle, model: SurfaceModel) -> bool:
    """Negative definiteness of the cycle's intersection matrix.

    The empty cycle counts as negative definite.
    """
    return linalg.is_negative_definite(model.submatrix(cycle.components))


def numerically_equivalent(a: Divisor, b: Divisor, model: SurfaceModel) -> bool:
    """``a - b`` pairs to zero with every class of the model."""
    diff = a - b
    return all(intersect(diff, Divisor.prime(c), model) == 0 for c in model.classes)
