"""Partitions, hook lengths, symmetric group character tables and the
decomposition of the quotient's permutation character into irreducibles.

Character values come from the Murnaghan-Nakayama border-strip recursion
over beta-numbers; irreducible degrees from the hook length formula.
Multiplicities are extracted by trace projection on the image of the
evaluation map, so they can be cross-checked against the independent
highest-weight families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import engine
from .algebra import BimoduleAction

Partition = tuple[int, ...]

#: Arity cap for full character tables (table size grows with p(n)^2).
TABLE_CAP = 8


def partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic (descending) order."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def gen(rest: int, largest: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return list(gen(n, n))


def is_partition(lam) -> bool:
    lam = tuple(lam)
    return (
        len(lam) > 0
        and all(isinstance(x, int) and x > 0 for x in lam)
        and all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))
    )


def hook_lengths(lam: Partition) -> list[list[int]]:
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError("not a partition: %r" % (lam,))
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])]
    return [
        [lam[i] - j + conj[j] - i - 1 for j in range(lam[i])]
        for i in range(len(lam))
    ]


def hook_degree(lam: Partition) -> int:
    """Degree of the irreducible module for lam: n! over the product of
    hook lengths."""
    lam = tuple(lam)
    prod = 1
    for row in hook_lengths(lam):
        for h in row:
            prod *= h
    n = sum(lam)
    assert factorial(n) % prod == 0
    return factorial(n) // prod


def class_size(rho: Partition) -> int:
    """Number of permutations with cycle type rho."""
    rho = tuple(rho)
    n = sum(rho)
    z = 1
    mult: dict[int, int] = {}
    for part in rho:
        mult[part] = mult.get(part, 0) + 1
    for length, m in mult.items():
        z *= length**m * factorial(m)
    return factorial(n) // z


def class_representative(rho: Partition) -> tuple[int, ...]:
    """Canonical permutation of cycle type rho: consecutive ascending
    cycles, returned as the image tuple (sigma(1), ..., sigma(n))."""
    images = list(range(1, sum(rho) + 1))
    start = 1
    for length in rho:
        for k in range(length - 1):
            images[start - 1 + k] = start + k + 1
        images[start - 1 + length - 1] = start
        start += length
    return tuple(images)


@lru_cache(maxsize=None)
def _mn_value(lam: Partition, rho: Partition) -> int:
    """Murnaghan-Nakayama: chi_lam(rho) via removable border strips, with
    partitions encoded as beta-numbers to track strip heights."""
    if not rho:
        return 1
    k = rho[0]
    rest = rho[1:]
    m = len(lam)
    beta = [lam[i] + m - 1 - i for i in range(m)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new_beta = sorted((x for x in beta if x != b), reverse=True)
        new_beta.append(nb)
        new_beta.sort(reverse=True)
        new_lam = tuple(
            x - (m - 1 - j) for j, x in enumerate(new_beta) if x - (m - 1 - j) > 0
        )
        total += (-1) ** height * _mn_value(new_lam, rest)
    return total


class CharacterTable:
    """Integer character table of the symmetric group on n letters: rows
    indexed by partitions, columns by cycle types."""

    def __init__(self, n: int):
        self.n = n
        self.partitions = partitions(n)
        self.classes = partitions(n)
        self.sizes = {rho: class_size(rho) for rho in self.classes}
        self._values = {
            (lam, rho): _mn_value(lam, rho)
            for lam in self.partitions
            for rho in self.classes
        }

    def value(self, lam, rho) -> int:
        return self._values[(tuple(lam), tuple(rho))]

    def degree(self, lam) -> int:
        return self.value(lam, (1,) * self.n)

    def check_orthogonality(self) -> bool:
        nfact = factorial(self.n)
        for i, lam in enumerate(self.partitions):
            for mu in self.partitions[i:]:
                dot = sum(
                    self.sizes[rho] * self.value(lam, rho) * self.value(mu, rho)
                    for rho in self.classes
                )
                if dot != (nfact if lam == mu else 0):
                    return False
        return True


_table_cache: dict[int, CharacterTable] = {}


def character_table(n: int, cap: int = TABLE_CAP) -> CharacterTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise engine.ResourceCapError(
            "character table at n=%d exceeds the cap %d" % (n, cap)
        )
    if n not in _table_cache:
        _table_cache[n] = CharacterTable(n)
    return _table_cache[n]


# ---------------------------------------------------------------------------
# Closed-form multiplicities and their computed counterparts.


def _shape_parameters(lam: Partition):
    """Classify lam as a one-row, two-row or (two-row + single box) shape,
    returning (kind, p, q); anything else gets multiplicity zero."""
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError("not a partition: %r" % (lam,))
    if len(lam) == 1:
        return ("row", 0, lam[0])
    if len(lam) == 2:
        return ("two", lam[1], lam[0] - lam[1])
    if len(lam) == 3 and lam[2] == 1:
        return ("three", lam[1], lam[0] - lam[1])
    return None


def multiplicity_formula(tag: str, lam) -> int:
    """Closed-form multiplicity of the irreducible for lam in the quotient
    character of the given built-in action."""
    shape = _shape_parameters(tuple(lam))
    if shape is None:
        return 0
    kind, p, q = shape
    n = sum(lam)
    if tag == "regular":
        return {"row": 2 * n + 3, "two": 3 * (q + 1), "three": q + 1}[kind]
    if tag == "D":
        return {"row": n + 2, "two": 2 * (q + 1), "three": q + 1}[kind]
    if tag == "F":
        return {"row": 1, "two": q + 1, "three": q + 1}[kind]
    raise ValueError("no closed form for action tag %r" % (tag,))


@dataclass(frozen=True)
class CocharacterDecomposition:
    algebra: str
    n: int
    multiplicities: dict[Partition, int]

    def dimension(self) -> int:
        return sum(m * hook_degree(lam) for lam, m in self.multiplicities.items())

    def to_json_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "n": self.n,
            "multiplicities": {
                "[%s]" % ",".join(map(str, lam)): m
                for lam, m in self.multiplicities.items()
            },
        }


def cocharacter(act: BimoduleAction, n: int, cap: int | None = None) -> CocharacterDecomposition:
    """Multiplicities of the irreducible characters in the permutation
    character of the quotient, by trace projection: m_lam is the scalar
    product of the quotient trace function with chi_lam."""
    table = character_table(n)
    traces = {
        rho: engine.perm_trace(class_representative(rho), act, n, cap=cap)
        for rho in table.classes
    }
    nfact = factorial(n)
    mult: dict[Partition, int] = {}
    for lam in table.partitions:
        total = sum(
            table.sizes[rho] * table.value(lam, rho) * traces[rho]
            for rho in table.classes
        )
        m = Fraction(total, nfact)
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(
                "multiplicity projection for %s under %r is %s, not a "
                "nonnegative integer; the evaluation data is inconsistent"
                % (lam, act.tag, m)
            )
        if m:
            mult[lam] = int(m)
    deco = CocharacterDecomposition(act.tag, n, mult)
    rank = engine.image_basis(act, n, cap=cap).rank
    if deco.dimension() != rank:
        raise ArithmeticError(
            "multiplicity/degree sum %d does not match the quotient dimension %d"
            % (deco.dimension(), rank)
        )
    return deco
