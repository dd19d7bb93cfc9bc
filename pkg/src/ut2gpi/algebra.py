"""Exact arithmetic in the 2x2 upper triangular matrices and the bimodule
actions of that algebra on itself.

Matrices are stored in coordinates over the matrix units (e11, e12, e22);
the coefficient basis used by the polynomial layer is (1, e22, e12) with
1 = e11 + e22.  Conversion between the two is an exact linear map.  All
scalars are `fractions.Fraction`; nothing here ever rounds.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

Scalar = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected an int or Fraction, got %r" % (x,))


class UTElement:
    """An upper triangular matrix a*e11 + b*e12 + c*e22 with rational entries."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a=0, b=0, c=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))

    def __setattr__(self, name, value):
        raise AttributeError("UTElement is immutable")

    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def sandwich_coords(self) -> tuple[Fraction, Fraction, Fraction]:
        """Coordinates over the coefficient basis (1, e22, e12)."""
        return (self.a, self.c - self.a, self.b)

    @staticmethod
    def from_sandwich_coords(s0, s1, s2) -> "UTElement":
        s0, s1, s2 = _frac(s0), _frac(s1), _frac(s2)
        return UTElement(s0, s2, s0 + s1)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c)

    def __add__(self, other):
        return UTElement(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other):
        return UTElement(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self):
        return UTElement(-self.a, -self.b, -self.c)

    def __mul__(self, other):
        if isinstance(other, UTElement):
            # e_ij e_kl = delta_jk e_il, restricted to the upper triangle
            return UTElement(
                self.a * other.a,
                self.a * other.b + self.b * other.c,
                self.c * other.c,
            )
        return UTElement(self.a * other, self.b * other, self.c * other)

    def __rmul__(self, scalar):
        return UTElement(self.a * scalar, self.b * scalar, self.c * scalar)

    def __eq__(self, other):
        return (
            isinstance(other, UTElement)
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return "UTElement(%s, %s, %s)" % (self.a, self.b, self.c)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for coef, name in zip(self.coords(), ("e11", "e12", "e22")):
            if coef == 0:
                continue
            if coef == 1:
                parts.append(name)
            elif coef == -1:
                parts.append("-" + name)
            else:
                parts.append("%s*%s" % (coef, name))
        return " + ".join(parts).replace("+ -", "- ")


ZERO = UTElement(0, 0, 0)
E11 = UTElement(1, 0, 0)
E12 = UTElement(0, 1, 0)
E22 = UTElement(0, 0, 1)
IDENT = UTElement(1, 0, 1)

#: Evaluation basis: the matrix units spanning the algebra.
UNITS = (E11, E12, E22)
UNIT_NAMES = ("e11", "e12", "e22")

#: Coefficient basis used for sandwich factors: (1, e22, e12).
SANDWICH = (IDENT, E22, E12)
SANDWICH_NAMES = ("1", "e22", "e12")


class LinearOperator:
    """A linear map on the 3-dimensional algebra, as a 3x3 rational matrix
    acting on (e11, e12, e22)-coordinates."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(_frac(x) for x in r) for r in rows)
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError("operator must be a 3x3 matrix")

    @staticmethod
    def zero() -> "LinearOperator":
        return LinearOperator(((0, 0, 0),) * 3)

    @staticmethod
    def identity() -> "LinearOperator":
        return LinearOperator(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def apply(self, x: UTElement) -> UTElement:
        v = x.coords()
        out = [sum(r[j] * v[j] for j in range(3)) for r in self.rows]
        return UTElement(*out)

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        a, b = self.rows, other.rows
        return LinearOperator(
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                for i in range(3)
            )
        )

    def __add__(self, other):
        return LinearOperator(
            tuple(
                tuple(x + y for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other):
        return LinearOperator(
            tuple(
                tuple(x - y for x, y in zip(r, s))
                for r, s in zip(self.rows, other.rows)
            )
        )

    def __rmul__(self, scalar):
        return LinearOperator(tuple(tuple(scalar * x for x in r) for r in self.rows))

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.rows for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, LinearOperator) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "LinearOperator(%r)" % (self.rows,)


class BimoduleAction:
    """A bimodule structure of the upper triangular algebra on itself.

    The action is stored as two tables over the coefficient basis
    (1, e22, e12) and the matrix units: left[i][j] = w_i . e_j and
    right[i][j] = e_j . w_i, extended bilinearly.  The internal product
    of the acted-on algebra is always the matrix product.
    """

    __slots__ = ("tag", "left", "right", "_key")

    def __init__(self, tag: str, left, right):
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "left", tuple(tuple(row) for row in left))
        object.__setattr__(self, "right", tuple(tuple(row) for row in right))
        if len(self.left) != 3 or len(self.right) != 3:
            raise ValueError("action tables must cover the 3 coefficient basis elements")
        for row in self.left + self.right:
            if len(row) != 3 or not all(isinstance(x, UTElement) for x in row):
                raise ValueError("action table entries must be UTElement triples")
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("BimoduleAction is immutable")

    def left_apply(self, w: UTElement, x: UTElement) -> UTElement:
        """w . x, for arbitrary w in the coefficient algebra."""
        ws = w.sandwich_coords()
        xs = x.coords()
        out = ZERO
        for i in range(3):
            if ws[i] == 0:
                continue
            for j in range(3):
                if xs[j] == 0:
                    continue
                out = out + (ws[i] * xs[j]) * self.left[i][j]
        return out

    def right_apply(self, x: UTElement, w: UTElement) -> UTElement:
        """x . w, for arbitrary w in the coefficient algebra."""
        ws = w.sandwich_coords()
        xs = x.coords()
        out = ZERO
        for i in range(3):
            if ws[i] == 0:
                continue
            for j in range(3):
                if xs[j] == 0:
                    continue
                out = out + (ws[i] * xs[j]) * self.right[i][j]
        return out

    def cache_key(self) -> str:
        if self._key is None:
            blob = json.dumps(action_to_dict(self), sort_keys=True)
            object.__setattr__(
                self, "_key", hashlib.blake2b(blob.encode(), digest_size=16).hexdigest()
            )
        return self._key

    def __repr__(self):
        return "BimoduleAction(tag=%r)" % (self.tag,)


BUILTIN_TAGS = ("regular", "D", "F")

_builtin_cache: dict[str, BimoduleAction] = {}


def builtin_action(tag: str) -> BimoduleAction:
    """One of the three built-in bimodule structures.

    regular -- both actions are the matrix product;
    D       -- 1 and e22 act by multiplication, e12 acts as zero;
    F       -- only 1 acts (by multiplication), e22 and e12 act as zero.
    """
    if tag in _builtin_cache:
        return _builtin_cache[tag]
    if tag == "regular":
        dead = set()
    elif tag == "D":
        dead = {2}
    elif tag == "F":
        dead = {1, 2}
    else:
        raise ValueError("unknown builtin action tag: %r" % (tag,))
    left = [
        [ZERO if i in dead else SANDWICH[i] * UNITS[j] for j in range(3)]
        for i in range(3)
    ]
    right = [
        [ZERO if i in dead else UNITS[j] * SANDWICH[i] for j in range(3)]
        for i in range(3)
    ]
    act = BimoduleAction(tag, left, right)
    _builtin_cache[tag] = act
    return act


_AXIOMS = (
    "w.(a1*a2) == (w.a1)*a2",
    "(a1*a2).w == a1*(a2.w)",
    "(a1.w)*a2 == a1*(w.a2)",
    "(w1*w2).a == w1.(w2.a)",
    "a.(w1*w2) == (a.w1).w2",
    "(w1.a).w2 == w1.(a.w2)",
    "1.a == a == a.1",
)


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[tuple[str, tuple[str, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "all bimodule axioms hold"
        lines = ["%d axiom violations:" % len(self.violations)]
        for axiom, triple in self.violations:
            lines.append("  %s at (%s)" % (axiom, ", ".join(triple)))
        return "\n".join(lines)


def check_axioms(act: BimoduleAction) -> AxiomReport:
    """Exhaustively check the compatibility and bimodule axioms on all
    basis triples.  Violations are reported, not raised."""
    bad = []
    W = list(zip(SANDWICH, SANDWICH_NAMES))
    A = list(zip(UNITS, UNIT_NAMES))
    la, ra = act.left_apply, act.right_apply

    for (w, wn), (a1, a1n), (a2, a2n) in product(W, A, A):
        if la(w, a1 * a2) != la(w, a1) * a2:
            bad.append((_AXIOMS[0], (wn, a1n, a2n)))
        if ra(a1 * a2, w) != a1 * ra(a2, w):
            bad.append((_AXIOMS[1], (a1n, wn, a2n)))
        if ra(a1, w) * a2 != a1 * la(w, a2):
            bad.append((_AXIOMS[2], (a1n, wn, a2n)))
    for (w1, w1n), (w2, w2n), (a, an) in product(W, W, A):
        if la(w1 * w2, a) != la(w1, la(w2, a)):
            bad.append((_AXIOMS[3], (w1n, w2n, an)))
        if ra(a, w1 * w2) != ra(ra(a, w1), w2):
            bad.append((_AXIOMS[4], (an, w1n, w2n)))
        if ra(la(w1, a), w2) != la(w1, ra(a, w2)):
            bad.append((_AXIOMS[5], (w1n, an, w2n)))
    for a, an in A:
        if la(IDENT, a) != a or ra(a, IDENT) != a:
            bad.append((_AXIOMS[6], (an,)))
    return AxiomReport(tuple(bad))


def operator_of(w: UTElement, v: UTElement, act: BimoduleAction) -> LinearOperator:
    """The operator x -> (w . x) . v, bilinear in (w, v)."""
    cols = [act.right_apply(act.left_apply(w, u), v).coords() for u in UNITS]
    return LinearOperator(
        tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    )


def _rank_of_vectors(vectors) -> int:
    """Exact rank of a small family of rational vectors (row reduction)."""
    pivots: dict[int, list[Fraction]] = {}
    for vec in vectors:
        row = {i: _frac(x) for i, x in enumerate(vec) if x != 0}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                lead = row[c]
                pivots[c] = {k: v / lead for k, v in row.items()}
                break
            coef = row[c]
            for k, v in piv.items():
                nv = row.get(k, Fraction(0)) - coef * v
                if nv:
                    row[k] = nv
                elif k in row:
                    del row[k]
    return len(pivots)


def lr_span_dim(act: BimoduleAction) -> int:
    """Dimension of the span of the nine operators x -> (w.x).v over all
    pairs (w, v) from the coefficient basis."""
    ops = [
        operator_of(w, v, act).flatten()
        for w in SANDWICH
        for v in SANDWICH
    ]
    return _rank_of_vectors(ops)


def is_trivial_linear(f) -> bool:
    """Whether a one-variable linear combination sum_i c_i * w_i x v_i is
    the zero element of the coefficient-sandwiched free algebra.

    Decided through the operator criterion: the combination vanishes
    exactly when sum_i c_i L_{w_i} R_{v_i} is the zero operator for the
    regular action.  Raises on input that is not linear in one variable.
    """
    terms = getattr(f, "terms", None)
    if terms is None:
        raise TypeError("expected a GenPolynomial")
    if not terms:
        return True
    varset = set()
    op = LinearOperator.zero()
    reg = builtin_action("regular")
    for (xs, slots), coeff in terms.items():
        if len(xs) != 1:
            raise ValueError("triviality test needs degree exactly 1 in one variable")
        varset.add(xs[0])
        if len(varset) > 1:
            raise ValueError("triviality test needs a single variable")
        op = op + coeff * operator_of(SANDWICH[slots[0]], SANDWICH[slots[1]], reg)
    return op.is_zero()


# ---------------------------------------------------------------------------
# JSON serialization of action tables.
# Rationals are encoded as "p/q" strings; coordinates are over (e11, e12, e22).


def _frac_to_str(x: Fraction) -> str:
    return "%d/%d" % (x.numerator, x.denominator)


def _frac_from_any(x) -> Fraction:
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ValueError("rationals must be encoded as integers or 'p/q' strings, got %r" % (x,))


def action_to_dict(act: BimoduleAction) -> dict:
    def table(rows):
        return {
            SANDWICH_NAMES[i]: {
                UNIT_NAMES[j]: [_frac_to_str(x) for x in rows[i][j].coords()]
                for j in range(3)
            }
            for i in range(3)
        }

    return {"tag": act.tag, "left": table(act.left), "right": table(act.right)}


def action_from_dict(data: dict) -> BimoduleAction:
    def table(obj):
        rows = []
        for wname in SANDWICH_NAMES:
            try:
                inner = obj[wname]
            except KeyError:
                raise ValueError("action table missing entry for %r" % (wname,))
            row = []
            for uname in UNIT_NAMES:
                try:
                    coords = inner[uname]
                except KeyError:
                    raise ValueError("action table missing entry for (%s, %s)" % (wname, uname))
                if len(coords) != 3:
                    raise ValueError("entry (%s, %s) must have 3 coordinates" % (wname, uname))
                row.append(UTElement(*[_frac_from_any(x) for x in coords]))
            rows.append(row)
        return rows

    return BimoduleAction(str(data.get("tag", "custom")), table(data["left"]), table(data["right"]))


def save_action(act: BimoduleAction, path) -> None:
    with open(path, "w") as fh:
        json.dump(action_to_dict(act), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_action(path) -> BimoduleAction:
    with open(path) as fh:
        return action_from_dict(json.load(fh))
