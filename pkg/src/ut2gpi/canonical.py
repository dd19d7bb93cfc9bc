"""Canonical spanning families of the multilinear quotient.

For the full action the family consists of the straight monomial, the
e22-prefixed straight monomial, the split monomials around a single e12,
the ordered-prefix left-normed commutators, and the ordered-prefix
commutators seeded by e22.  For the restricted actions the families that
evaluate to zero are dropped: the e12 splits for the action killing e12,
and every e22-carrying family for the action where only the identity
acts.  Counting each family reproduces the closed codimension forms, and
the evaluation rank of the family certifies that it is a basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import engine
from .algebra import E12, E22, BimoduleAction
from .genpoly import GenPolynomial, commutator, poly_mul


class NotRepresentableError(RuntimeError):
    """A vector fell outside the span of the canonical family; this can
    only happen if the family or the evaluation data is wrong."""


def codim_formula(n: int, tag: str) -> int:
    """Closed form for the quotient dimension at arity n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if tag == "regular":
        return (n + 2) * 2 ** (n - 1) + 2
    if tag == "D":
        return n * 2 ** (n - 1) + 2
    if tag == "F":
        return 2 ** (n - 1) * (n - 2) + 2
    raise ValueError("no closed form for action tag %r" % (tag,))


@dataclass(frozen=True)
class CanonicalElement:
    """One member of the canonical family.

    kind 'plain':     x_1 ... x_n                      (data: ())
    kind 'e22_plain': e22 x_1 ... x_n                  (data: ())
    kind 'e12_split': x_I e12 x_J, I ascending, J = complement ascending
                      (data: I)
    kind 'comm':      x_L [x_k, x_{m_1}, ..., x_{m_t}], L ascending,
                      m's = complement of L + {k} ascending, k > m_1
                      (data: (L, k))
    kind 'e22_comm':  x_P [x_{q_1}, e22, x_{q_2}, ..., x_{q_v}],
                      P ascending, q's = complement ascending (data: P)
    """

    kind: str
    data: tuple

    def realize(self, n: int) -> GenPolynomial:
        allv = list(range(1, n + 1))
        if self.kind == "plain":
            return _word(allv)
        if self.kind == "e22_plain":
            return poly_mul(GenPolynomial.const(E22), _word(allv))
        if self.kind == "e12_split":
            left = list(self.data)
            right = [v for v in allv if v not in self.data]
            return poly_mul(
                poly_mul(_word(left), GenPolynomial.const(E12)), _word(right)
            )
        if self.kind == "comm":
            outside, k = self.data
            tail = [v for v in allv if v not in outside and v != k]
            args = [GenPolynomial.var(k)] + [GenPolynomial.var(m) for m in tail]
            return poly_mul(_word(list(outside)), commutator(*args))
        if self.kind == "e22_comm":
            outside = list(self.data)
            qs = [v for v in allv if v not in self.data]
            args = [GenPolynomial.var(qs[0]), E22] + [
                GenPolynomial.var(m) for m in qs[1:]
            ]
            return poly_mul(_word(outside), commutator(*args))
        raise ValueError("unknown canonical element kind %r" % (self.kind,))


def _word(labels) -> GenPolynomial:
    acc = GenPolynomial.one()
    for v in labels:
        acc = poly_mul(acc, GenPolynomial.var(v))
    return acc


def _family_kinds(tag: str) -> tuple[str, ...]:
    if tag == "regular":
        return ("plain", "e22_plain", "e12_split", "comm", "e22_comm")
    if tag == "D":
        return ("plain", "e22_plain", "comm", "e22_comm")
    if tag == "F":
        return ("plain", "comm")
    raise ValueError("no canonical family for action tag %r" % (tag,))


def enumerate_basis(n: int, tag: str) -> list[CanonicalElement]:
    """All canonical elements for the arity and action, in a deterministic
    order (family by family, index sets lexicographic)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    allv = tuple(range(1, n + 1))
    out: list[CanonicalElement] = []
    kinds = _family_kinds(tag)
    if "plain" in kinds:
        out.append(CanonicalElement("plain", ()))
    if "e22_plain" in kinds:
        out.append(CanonicalElement("e22_plain", ()))
    if "e12_split" in kinds:
        for r in range(n + 1):
            for left in combinations(allv, r):
                out.append(CanonicalElement("e12_split", left))
    if "comm" in kinds:
        for size in range(2, n + 1):
            for content in combinations(allv, size):
                outside = tuple(v for v in allv if v not in content)
                for k in content[1:]:  # k must exceed the smallest entry
                    out.append(CanonicalElement("comm", (outside, k)))
    if "e22_comm" in kinds:
        for v in range(1, n + 1):
            for qs in combinations(allv, v):
                outside = tuple(x for x in allv if x not in qs)
                out.append(CanonicalElement("e22_comm", outside))
    return out


def basis_polynomials(n: int, tag: str) -> list[GenPolynomial]:
    return [el.realize(n) for el in enumerate_basis(n, tag)]


def coordinates(f: GenPolynomial, n: int, act: BimoduleAction) -> list[Fraction]:
    """Coefficients of f over the canonical family of the action, modulo
    the action's identities: solves eval(f) = sum c_i eval(basis_i)
    exactly.  A nonzero residual raises NotRepresentableError."""
    if not f.is_multilinear(n):
        raise ValueError("coordinates need a multilinear polynomial of arity %d" % n)
    if act.tag not in ("regular", "D", "F"):
        raise ValueError("coordinates requires a built-in action")
    elements = basis_polynomials(n, act.tag)
    pivots: list[tuple[int, dict[int, Fraction], dict[int, Fraction]]] = []
    for idx, g in enumerate(elements):
        row = dict(engine.eval_vector(g, act).entries)
        tag_vec = {idx: Fraction(1)}
        _reduce_tracked(row, tag_vec, pivots, insert=True)
    row = dict(engine.eval_vector(f, act).entries)
    tag_vec: dict[int, Fraction] = {}
    solution = _reduce_tracked(row, tag_vec, pivots, insert=False)
    if solution is None:
        raise NotRepresentableError(
            "polynomial is outside the span of the canonical family for %r" % act.tag
        )
    return [-solution.get(i, Fraction(0)) for i in range(len(elements))]


def _reduce_tracked(row, tag_vec, pivots, *, insert: bool):
    """Reduce row against tracked pivots; optionally install the remainder
    as a new pivot.  Returns the tracking vector when the row vanished,
    else None (after installing, when insert is set)."""
    while row:
        c = min(row)
        hit = None
        for pc, prow, ptag in pivots:
            if pc == c:
                hit = (prow, ptag)
                break
        if hit is None:
            if insert:
                lead = row[c]
                prow = {k: v / lead for k, v in row.items()}
                ptag = {k: v / lead for k, v in tag_vec.items()}
                pivots.append((c, prow, ptag))
                pivots.sort(key=lambda t: t[0])
            return None
        prow, ptag = hit
        coef = row[c]
        for k, v in prow.items():
            s = row.get(k, Fraction(0)) - coef * v
            if s:
                row[k] = s
            elif k in row:
                del row[k]
        for k, v in ptag.items():
            s = tag_vec.get(k, Fraction(0)) - coef * v
            if s:
                tag_vec[k] = s
            elif k in tag_vec:
                del tag_vec[k]
    return tag_vec
