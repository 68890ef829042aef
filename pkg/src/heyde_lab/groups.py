"""Finite abelian groups as explicit products of cyclic groups.

Elements are residue vectors.  The group doubles as its own character group
through the fixed pairing (x, y) = exp(2*pi*i * sum_j x_j*y_j / n_j), so a
``GroupElement`` is also a character index.  Endomorphisms are integer
matrices acting on residue vectors; a congruence condition on the entries
guarantees the action is well defined.

Everything here is desk scale: kernels, images, annihilators and subgroup
closures are computed by plain enumeration, which is trivial for groups
below the enumeration cap and hard to get wrong.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Iterator, Sequence

DEFAULT_ENUMERATION_CAP = 10**6

#: Numeric tolerance for character comparisons; the integer congruence is
#: always consulted as the authoritative answer.
PAIRING_TOL = 1e-9

_ROOT_TABLE_MAX = 4096


class IncompatibleMatrixError(ValueError):
    """A matrix entry violates n_j * a_ij = 0 (mod n_i)."""

    def __init__(self, row: int, col: int, entry: int, message: str):
        super().__init__(message)
        self.row = row
        self.col = col
        self.entry = entry


class FiniteAbelianGroup:
    """Z_{n_1} x ... x Z_{n_k} with a fixed lexicographic element order."""

    def __init__(
        self,
        cyclic_orders: Sequence[int],
        *,
        enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    ):
        orders = tuple(int(n) for n in cyclic_orders)
        if not orders:
            raise ValueError("at least one cyclic factor is required")
        for n in orders:
            if n < 2:
                raise ValueError(f"cyclic orders must be >= 2, got {n}")
        order = math.prod(orders)
        if order > enumeration_cap:
            raise ValueError(
                f"group order {order} exceeds enumeration cap {enumeration_cap}"
            )
        self.cyclic_orders = orders
        self.order = order
        self.rank = len(orders)
        self.exponent = math.lcm(*orders)
        # weights turning the pairing sum into a single residue mod exponent
        self._pair_weights = tuple(self.exponent // n for n in orders)
        self._elements: tuple[GroupElement, ...] | None = None
        self._index: dict[tuple[int, ...], int] | None = None
        self._roots: tuple[complex, ...] | None = None

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteAbelianGroup)
            and self.cyclic_orders == other.cyclic_orders
        )

    def __hash__(self) -> int:
        return hash(self.cyclic_orders)

    def __repr__(self) -> str:
        return "Z" + "xZ".join(str(n) for n in self.cyclic_orders)

    def element(self, coords: Iterable[int]) -> GroupElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(
                f"expected {self.rank} coordinates, got {len(coords)}"
            )
        reduced = tuple(c % n for c, n in zip(coords, self.cyclic_orders))
        return GroupElement(self, reduced)

    @property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    @property
    def elements(self) -> tuple[GroupElement, ...]:
        """All elements in lexicographic coordinate order."""
        if self._elements is None:
            self._elements = tuple(
                GroupElement(self, coords)
                for coords in _cartesian(*(range(n) for n in self.cyclic_orders))
            )
        return self._elements

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def index(self, x: GroupElement) -> int:
        """Lexicographic rank of an element."""
        if self._index is None:
            self._index = {e.coords: i for i, e in enumerate(self.elements)}
        return self._index[x.coords]

    def pairing_exponent(self, x: GroupElement, y: GroupElement) -> int:
        """Integer t with (x, y) = exp(2*pi*i*t / exponent), 0 <= t < exponent."""
        t = 0
        for a, b, w in zip(x.coords, y.coords, self._pair_weights):
            t += a * b * w
        return t % self.exponent

    def root_of_unity(self, t: int) -> complex:
        """exp(2*pi*i*t / exponent)."""
        t %= self.exponent
        if self.exponent <= _ROOT_TABLE_MAX:
            if self._roots is None:
                self._roots = tuple(
                    cmath.exp(2j * math.pi * k / self.exponent)
                    for k in range(self.exponent)
                )
            return self._roots[t]
        return cmath.exp(2j * math.pi * t / self.exponent)


@dataclass(frozen=True)
class GroupElement:
    """Residue vector in a fixed group; also indexes a character."""

    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def _check(self, other: GroupElement) -> None:
        if self.group != other.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(
            self.group,
            tuple(
                (a + b) % n
                for a, b, n in zip(self.coords, other.coords, self.group.cyclic_orders)
            ),
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(
            self.group,
            tuple(
                (a - b) % n
                for a, b, n in zip(self.coords, other.coords, self.group.cyclic_orders)
            ),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group,
            tuple((-a) % n for a, n in zip(self.coords, self.group.cyclic_orders)),
        )

    def __rmul__(self, n: int) -> GroupElement:
        """Integer scaling x -> n*x."""
        if not isinstance(n, int):
            return NotImplemented
        return GroupElement(
            self.group,
            tuple((n * a) % m for a, m in zip(self.coords, self.group.cyclic_orders)),
        )

    def __lt__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coords < other.coords

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def make_group(
    cyclic_orders: Sequence[int],
    *,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(cyclic_orders, enumeration_cap=enumeration_cap)


def character(x: GroupElement, y: GroupElement) -> complex:
    """Value of the character indexed by y at the element x.

    Bilinear in both arguments and of modulus 1.  Use
    :func:`pairing_is_trivial` when exact equality with 1 matters.
    """
    if x.group != y.group:
        raise ValueError("character arguments belong to different groups")
    return x.group.root_of_unity(x.group.pairing_exponent(x, y))


def pairing_is_trivial(x: GroupElement, y: GroupElement) -> bool:
    """Exact test (x, y) == 1, confirmed by the integer congruence.

    The numeric value is checked first at tolerance PAIRING_TOL; the residue
    test is authoritative and the two can only disagree if the numeric
    tolerance is violated, which would indicate a broken root table.
    """
    if x.group != y.group:
        raise ValueError("pairing arguments belong to different groups")
    exact = x.group.pairing_exponent(x, y) == 0
    numeric = abs(character(x, y) - 1.0) < PAIRING_TOL
    if exact != numeric:
        raise ArithmeticError(
            f"numeric character value contradicts exact congruence at x={x}, y={y}"
        )
    return exact


class Subgroup:
    """Subgroup given by its full (sorted) element set plus generators."""

    def __init__(
        self,
        parent: FiniteAbelianGroup,
        elements: Iterable[GroupElement],
        generators: Sequence[GroupElement] | None = None,
    ):
        elems = sorted(set(elements), key=lambda e: e.coords)
        if not elems:
            raise ValueError("a subgroup contains at least the identity")
        for e in elems:
            if e.group != parent:
                raise ValueError("subgroup element outside the parent group")
        elem_set = frozenset(elems)
        if parent.zero not in elem_set:
            raise ValueError("subgroup must contain the identity")
        for a in elems:
            if -a not in elem_set:
                raise ValueError(f"subgroup not closed under negation at {a}")
            for b in elems:
                if a + b not in elem_set:
                    raise ValueError(f"subgroup not closed under addition at {a}+{b}")
        self.parent = parent
        self.elements = tuple(elems)
        self.generators = tuple(generators) if generators is not None else self.elements
        self._set = elem_set

    def __contains__(self, x: GroupElement) -> bool:
        return x in self._set

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.elements))

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(e) for e in self.elements) + "}"


def subgroup_generated(
    group: FiniteAbelianGroup, generators: Iterable[GroupElement]
) -> Subgroup:
    """Closure of the generators under addition (hence negation, by finiteness)."""
    gens = list(generators)
    for g in gens:
        if g.group != group:
            raise ValueError("generator outside the group")
    closure = {group.zero}
    frontier = [group.zero]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in closure:
                    closure.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(group, closure, generators=gens)


def trivial_subgroup(group: FiniteAbelianGroup) -> Subgroup:
    return Subgroup(group, [group.zero], generators=[])


def full_subgroup(group: FiniteAbelianGroup) -> Subgroup:
    return Subgroup(group, group.elements)


def annihilator(sub: Subgroup) -> Subgroup:
    """Characters that are 1 on the whole subgroup (living in the same group
    by self-duality)."""
    group = sub.parent
    ann = [
        y for y in group.elements if all(pairing_is_trivial(x, y) for x in sub)
    ]
    return Subgroup(group, ann)


def order2_subgroup(group: FiniteAbelianGroup) -> Subgroup:
    """Subgroup generated by all elements of order dividing 2."""
    torsion = [x for x in group.elements if (2 * x).is_zero]
    return subgroup_generated(group, torsion)


class Endomorphism:
    """Integer-matrix endomorphism: coordinate i of the image is
    sum_j a[i][j] * x_j mod n_i.

    Well-definedness requires n_j * a[i][j] = 0 (mod n_i) for every entry;
    the constructor rejects matrices violating it.  ``is_auto`` is decided by
    enumerating the image and comparing its size with the group order.
    """

    def __init__(self, group: FiniteAbelianGroup, matrix: Sequence[Sequence[int]]):
        k = group.rank
        rows = [tuple(int(v) for v in row) for row in matrix]
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"matrix must be {k}x{k} for this group")
        orders = group.cyclic_orders
        reduced = []
        for i, row in enumerate(rows):
            new_row = []
            for j, a in enumerate(row):
                a %= orders[i]
                if (orders[j] * a) % orders[i] != 0:
                    raise IncompatibleMatrixError(
                        i,
                        j,
                        a,
                        f"entry a[{i}][{j}]={a} is incompatible: "
                        f"{orders[j]}*{a} != 0 (mod {orders[i]})",
                    )
                new_row.append(a)
            reduced.append(tuple(new_row))
        self.group = group
        self.matrix = tuple(reduced)
        self.is_auto = self._image_is_everything()

    def _image_is_everything(self) -> bool:
        image = {self(x).coords for x in self.group.elements}
        return len(image) == self.group.order

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.group:
            raise ValueError("element outside the endomorphism's group")
        orders = self.group.cyclic_orders
        coords = tuple(
            sum(a * c for a, c in zip(row, x.coords)) % n
            for row, n in zip(self.matrix, orders)
        )
        return GroupElement(self.group, coords)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Endomorphism)
            and self.group == other.group
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.group, self.matrix))

    def __repr__(self) -> str:
        return f"Endomorphism({self.group!r}, {[list(r) for r in self.matrix]})"

    def _check(self, other: Endomorphism) -> None:
        if self.group != other.group:
            raise ValueError("endomorphisms act on different groups")

    def compose(self, other: Endomorphism) -> Endomorphism:
        """self after other (matrix product)."""
        self._check(other)
        k = self.group.rank
        prod = [
            [
                sum(self.matrix[i][m] * other.matrix[m][j] for m in range(k))
                for j in range(k)
            ]
            for i in range(k)
        ]
        return Endomorphism(self.group, prod)

    def __matmul__(self, other: Endomorphism) -> Endomorphism:
        return self.compose(other)

    def add(self, other: Endomorphism) -> Endomorphism:
        self._check(other)
        summed = [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.matrix, other.matrix)
        ]
        return Endomorphism(self.group, summed)

    def __add__(self, other: Endomorphism) -> Endomorphism:
        return self.add(other)

    def __neg__(self) -> Endomorphism:
        return Endomorphism(self.group, [[-a for a in row] for row in self.matrix])

    def __sub__(self, other: Endomorphism) -> Endomorphism:
        return self.add(-other)

    def __rmul__(self, n: int) -> Endomorphism:
        if not isinstance(n, int):
            return NotImplemented
        return Endomorphism(self.group, [[n * a for a in row] for row in self.matrix])

    def adjoint(self) -> Endomorphism:
        """The unique map with (alpha x, y) = (x, adjoint y) for all x, y.

        Entry (j, i) of the adjoint is a[i][j] * n_j / n_i, an integer by the
        compatibility congruence.
        """
        orders = self.group.cyclic_orders
        k = self.group.rank
        adj = [
            [
                (self.matrix[i][j] * orders[j]) // orders[i] % orders[j]
                for i in range(k)
            ]
            for j in range(k)
        ]
        return Endomorphism(self.group, adj)

    def kernel(self) -> Subgroup:
        """{x : alpha x = 0}, by full enumeration."""
        members = [x for x in self.group.elements if self(x).is_zero]
        return Subgroup(self.group, members)

    def image(self) -> Subgroup:
        return Subgroup(self.group, {self(x) for x in self.group.elements})

    def inverse(self) -> Endomorphism:
        """Inverse automorphism, read off the inverted element permutation."""
        if not self.is_auto:
            raise ValueError("cannot invert: not an automorphism")
        group = self.group
        preimage = {self(x).coords: x for x in group.elements}
        k = group.rank
        columns = []
        for j in range(k):
            gen = group.element(tuple(1 if m == j else 0 for m in range(k)))
            columns.append(preimage[gen.coords].coords)
        matrix = [[columns[j][i] for j in range(k)] for i in range(k)]
        return Endomorphism(group, matrix)


def make_endomorphism(
    group: FiniteAbelianGroup, matrix: Sequence[Sequence[int]]
) -> Endomorphism:
    return Endomorphism(group, matrix)


def identity_endomorphism(group: FiniteAbelianGroup) -> Endomorphism:
    k = group.rank
    return Endomorphism(group, [[1 if i == j else 0 for j in range(k)] for i in range(k)])


def scaling_endomorphism(group: FiniteAbelianGroup, n: int) -> Endomorphism:
    """The map x -> n*x."""
    k = group.rank
    return Endomorphism(group, [[n if i == j else 0 for j in range(k)] for i in range(k)])


def neg_identity_endomorphism(group: FiniteAbelianGroup) -> Endomorphism:
    return scaling_endomorphism(group, -1)
