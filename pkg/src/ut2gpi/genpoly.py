"""Sandwiched noncommutative polynomials.

A monomial is w0 x_{j1} w1 x_{j2} ... x_{jn} wn: variables labelled by
positive integers, interleaved with n+1 sandwich factors drawn from the
coefficient basis (1, e22, e12).  A polynomial is a sparse rational
combination of such monomials.  Monomials with repeated variable labels
are allowed (they arise before linearization); most of the linear-algebra
machinery downstream requires the multilinear case, where the labels of
every monomial are exactly 1..n, each once.

Arbitrary matrix constants entering a product are expanded over the
coefficient basis at construction time (e11 = 1 - e22), so stored slots
always range over the three basis values.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Mapping

from .algebra import E12, E22, IDENT, UTElement, _frac

# Sandwich slot encoding; order matters: it fixes the canonical monomial order.
S_ONE, S_E22, S_E12 = 0, 1, 2
SLOT_ELEMS = (IDENT, E22, E12)
SLOT_NAMES = ("I", "E22", "E12")

# Product of two slots inside the coefficient basis: either another slot or
# zero (None).  The basis is closed under multiplication.
_SLOT_MUL = (
    (S_ONE, S_E22, S_E12),
    (S_E22, S_E22, None),
    (S_E12, S_E12, None),
)

#: A monomial key: (variable labels, slot codes), len(slots) == len(vars) + 1.
Monomial = tuple[tuple[int, ...], tuple[int, ...]]


class GenPolynomial:
    """Sparse rational combination of sandwiched monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for (xs, slots), coeff in terms.items():
                coeff = _frac(coeff)
                if coeff == 0:
                    continue
                xs = tuple(xs)
                slots = tuple(slots)
                if len(slots) != len(xs) + 1:
                    raise ValueError("monomial needs len(vars)+1 sandwich slots")
                if any(s not in (0, 1, 2) for s in slots):
                    raise ValueError("unknown sandwich slot in %r" % (slots,))
                if any(not isinstance(v, int) or v < 1 for v in xs):
                    raise ValueError("variable labels must be positive integers")
                clean[(xs, slots)] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "GenPolynomial":
        return GenPolynomial()

    @staticmethod
    def var(i: int) -> "GenPolynomial":
        return GenPolynomial({((i,), (S_ONE, S_ONE)): Fraction(1)})

    @staticmethod
    def const(u) -> "GenPolynomial":
        """Degree-0 polynomial for a matrix constant, expanded over the
        coefficient basis."""
        if isinstance(u, GenPolynomial):
            return u
        if not isinstance(u, UTElement):
            raise TypeError("constant must be a UTElement")
        s0, s1, s2 = u.sandwich_coords()
        return GenPolynomial(
            {((), (S_ONE,)): s0, ((), (S_E22,)): s1, ((), (S_E12,)): s2}
        )

    @staticmethod
    def one() -> "GenPolynomial":
        return GenPolynomial({((), (S_ONE,)): Fraction(1)})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        out: set[int] = set()
        for xs, _ in self.terms:
            out.update(xs)
        return out

    def multidegree(self) -> dict[int, int]:
        """Degree in each variable; raises unless all monomials agree."""
        deg: dict[int, int] | None = None
        for xs, _ in self.terms:
            d: dict[int, int] = {}
            for v in xs:
                d[v] = d.get(v, 0) + 1
            if deg is None:
                deg = d
            elif deg != d:
                raise ValueError("polynomial is not multihomogeneous")
        return deg or {}

    def is_multilinear(self, n: int | None = None) -> bool:
        """True when every monomial uses the labels 1..n exactly once each."""
        if not self.terms:
            return True
        sizes = {len(xs) for xs, _ in self.terms}
        if len(sizes) != 1:
            return False
        size = sizes.pop()
        if n is not None and size != n:
            return False
        want = set(range(1, size + 1))
        return all(set(xs) == want and len(set(xs)) == size for xs, _ in self.terms)

    def arity(self) -> int:
        if not self.terms:
            return 0
        return len(next(iter(self.terms))[0])

    def coefficient(self, xs, slots) -> Fraction:
        return self.terms.get((tuple(xs), tuple(slots)), Fraction(0))

    def sorted_terms(self):
        """Terms in the canonical order: lexicographic on (vars, slots)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "GenPolynomial") -> "GenPolynomial":
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        res = GenPolynomial()
        res.terms = out
        return res

    def __sub__(self, other: "GenPolynomial") -> "GenPolynomial":
        return self + (-other)

    def __neg__(self) -> "GenPolynomial":
        res = GenPolynomial()
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def scale(self, scalar) -> "GenPolynomial":
        scalar = _frac(scalar)
        if scalar == 0:
            return GenPolynomial()
        res = GenPolynomial()
        res.terms = {k: scalar * v for k, v in self.terms.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, GenPolynomial):
            return poly_mul(self, other)
        if isinstance(other, UTElement):
            return poly_mul(self, GenPolynomial.const(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, UTElement):
            return poly_mul(GenPolynomial.const(other), self)
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, GenPolynomial) and self.terms == other.terms

    def __repr__(self):
        from .textform import poly_to_text

        return "GenPolynomial(%s)" % poly_to_text(self)

    __str__ = __repr__


def poly_mul(f: GenPolynomial, g: GenPolynomial, *, multilinear: bool = False) -> GenPolynomial:
    """Product: juxtapose monomials and multiply the touching sandwich
    factors inside the coefficient basis.

    With multilinear=True the factors must use disjoint variable sets, so
    the product is again multilinear.
    """
    if multilinear:
        overlap = f.variables() & g.variables()
        if overlap:
            raise ValueError("factors share variables %s" % sorted(overlap))
    out: dict[Monomial, Fraction] = {}
    for (xs1, s1), c1 in f.terms.items():
        for (xs2, s2), c2 in g.terms.items():
            mid = _SLOT_MUL[s1[-1]][s2[0]]
            if mid is None:
                continue
            key = (xs1 + xs2, s1[:-1] + (mid,) + s2[1:])
            v = out.get(key, Fraction(0)) + c1 * c2
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    res = GenPolynomial()
    res.terms = out
    return res


def _as_poly(x) -> GenPolynomial:
    if isinstance(x, GenPolynomial):
        return x
    if isinstance(x, UTElement):
        return GenPolynomial.const(x)
    raise TypeError("expected GenPolynomial or UTElement, got %r" % (x,))


def commutator(*args) -> GenPolynomial:
    """Left-normed commutator [f1, ..., fk] = [[f1, ..., f_{k-1}], fk].
    Matrix constants are accepted alongside polynomials."""
    if len(args) < 2:
        raise ValueError("commutator needs at least 2 arguments")
    acc = _as_poly(args[0])
    for raw in args[1:]:
        g = _as_poly(raw)
        acc = poly_mul(acc, g) - poly_mul(g, acc)
    return acc


def substitute(f: GenPolynomial, bindings: Mapping[int, GenPolynomial | UTElement]) -> GenPolynomial:
    """The endomorphism sending each bound variable to its image and fixing
    everything else."""
    binds = {v: _as_poly(p) for v, p in bindings.items()}
    out = GenPolynomial.zero()
    for (xs, slots), coeff in f.terms.items():
        acc = GenPolynomial({((), (slots[0],)): Fraction(1)})
        for k, v in enumerate(xs):
            factor = binds.get(v, GenPolynomial.var(v))
            acc = poly_mul(acc, factor)
            acc = poly_mul(acc, GenPolynomial({((), (slots[k + 1],)): Fraction(1)}))
        out = out + acc.scale(coeff)
    return out


def permute_vars(sigma: Mapping[int, int], f: GenPolynomial) -> GenPolynomial:
    """Relabel variables through sigma (labels missing from the mapping are
    fixed).  This is a left group action: permuting by sigma then tau equals
    permuting by the composite tau o sigma."""
    img = list(sigma.values())
    if len(set(img)) != len(img):
        raise ValueError("variable permutation is not injective")
    out: dict[Monomial, Fraction] = {}
    for (xs, slots), coeff in f.terms.items():
        key = (tuple(sigma.get(v, v) for v in xs), slots)
        s = out.get(key, Fraction(0)) + coeff
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    res = GenPolynomial()
    res.terms = out
    return res


def _sign(seq: Iterable[int]) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def alternate(f: GenPolynomial, varset: Iterable[int]) -> GenPolynomial:
    """Signed sum over all permutations of the given variables."""
    vs = sorted(set(varset))
    present = f.variables()
    missing = [v for v in vs if v not in present]
    if missing:
        raise ValueError("variables %s do not occur in the polynomial" % missing)
    out = GenPolynomial.zero()
    for img in permutations(vs):
        sigma = dict(zip(vs, img))
        term = permute_vars(sigma, f)
        if _sign([sigma[v] for v in vs]) < 0:
            term = -term
        out = out + term
    return out


def multilinearize(f: GenPolynomial) -> GenPolynomial:
    """Complete linearization of a multihomogeneous polynomial.

    Each variable of degree d is replaced by d fresh labels in all d!
    position assignments; no division by d! is performed.  Fresh labels are
    1..N, allocated in consecutive blocks following the ascending order of
    the original variables, so a variable of degree 1 is simply relabelled.
    """
    if f.is_zero():
        return f
    deg = f.multidegree()
    orig = sorted(deg)
    blocks: dict[int, list[int]] = {}
    nxt = 1
    for v in orig:
        blocks[v] = list(range(nxt, nxt + deg[v]))
        nxt += deg[v]
    out: dict[Monomial, Fraction] = {}
    for (xs, slots), coeff in f.terms.items():
        occ: dict[int, list[int]] = {v: [] for v in orig}
        for pos, v in enumerate(xs):
            occ[v].append(pos)
        choices = [permutations(blocks[v]) for v in orig]
        for combo in product(*choices):
            new_xs = list(xs)
            for v, labels in zip(orig, combo):
                for pos, lab in zip(occ[v], labels):
                    new_xs[pos] = lab
            key = (tuple(new_xs), slots)
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    res = GenPolynomial()
    res.terms = out
    return res


def linearization_blocks(f: GenPolynomial) -> dict[int, tuple[int, ...]]:
    """Fresh-label blocks used by multilinearize, per original variable."""
    deg = f.multidegree()
    blocks = {}
    nxt = 1
    for v in sorted(deg):
        blocks[v] = tuple(range(nxt, nxt + deg[v]))
        nxt += deg[v]
    return blocks


class YoungTableauFilling:
    """A bijective filling of a partition shape by 1..n."""

    __slots__ = ("shape", "rows")

    def __init__(self, rows: Iterable[Iterable[int]]):
        self.rows = tuple(tuple(r) for r in rows)
        self.shape = tuple(len(r) for r in self.rows)
        if any(
            self.shape[i] < self.shape[i + 1] for i in range(len(self.shape) - 1)
        ) or any(s <= 0 for s in self.shape):
            raise ValueError("row lengths must be positive and weakly decreasing")
        n = sum(self.shape)
        entries = [x for r in self.rows for x in r]
        if sorted(entries) != list(range(1, n + 1)):
            raise ValueError("filling must be a bijection onto 1..%d" % n)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def columns(self) -> list[tuple[int, ...]]:
        ncols = self.shape[0]
        return [
            tuple(row[j] for row in self.rows if j < len(row)) for j in range(ncols)
        ]

    @staticmethod
    def row_filling(shape: Iterable[int]) -> "YoungTableauFilling":
        """The filling with 1..n written row by row."""
        shape = tuple(shape)
        rows, nxt = [], 1
        for length in shape:
            rows.append(range(nxt, nxt + length))
            nxt += length
        return YoungTableauFilling(rows)

    def __repr__(self):
        return "YoungTableauFilling(%r)" % (list(map(list, self.rows)),)


def _group_perms(groups):
    # All mappings permuting each index group within itself.
    for combo in product(*(permutations(g) for g in groups)):
        sigma = {}
        for g, img in zip(groups, combo):
            sigma.update(zip(g, img))
        yield sigma


def young_symmetrize(tableau: YoungTableauFilling, f: GenPolynomial) -> GenPolynomial:
    """Apply the signed row/column double sum attached to the tableau:
    sum over row permutations sigma and column permutations tau of
    sgn(tau) * (sigma tau)(f)."""
    n = tableau.size
    if not f.is_multilinear(n):
        raise ValueError("polynomial must be multilinear in 1..%d" % n)
    out = GenPolynomial.zero()
    cols = tableau.columns()
    for sigma in _group_perms(tableau.rows):
        for tau in _group_perms(cols):
            sign = 1
            for col in cols:
                sign *= _sign([tau[v] for v in col])
            composite = {v: sigma.get(tau.get(v, v), tau.get(v, v)) for v in range(1, n + 1)}
            term = permute_vars(composite, f)
            out = out + (term if sign > 0 else -term)
    return out


# ---------------------------------------------------------------------------
# Highest-weight polynomial families.  Each is a one/two/three-variable
# polynomial built from powers, one central insertion and layered pairwise
# alternations; the short family tags are part of the public interface.


def _power(poly: GenPolynomial, k: int) -> GenPolynomial:
    acc = GenPolynomial.one()
    for _ in range(k):
        acc = poly_mul(acc, poly)
    return acc


def _alternating_product(block1, block2, prefix, suffix, core):
    """Skeleton product prefix * block1 * core * block2 * suffix with each
    (block1[k], block2[k]) pair alternated, as a multilinear polynomial."""
    word = GenPolynomial.one()
    for v in prefix:
        word = poly_mul(word, GenPolynomial.var(v))
    for v in block1:
        word = poly_mul(word, GenPolynomial.var(v))
    word = poly_mul(word, core)
    for v in block2:
        word = poly_mul(word, GenPolynomial.var(v))
    for v in suffix:
        word = poly_mul(word, GenPolynomial.var(v))
    for u, v in zip(block1, block2):
        word = alternate(word, (u, v))
    return word


def _two_var_family(kind: str, p: int, q: int, i: int) -> GenPolynomial:
    n = 2 * p + q
    labels = iter(range(1, n + 1))
    prefix = [next(labels) for _ in range(i)]
    block1 = [next(labels) for _ in range(p - 1)]
    ca, cb = next(labels), next(labels)
    block2 = [next(labels) for _ in range(p - 1)]
    suffix = [next(labels) for _ in range(q - i)]
    if kind == "b":
        core = commutator(GenPolynomial.var(ca), GenPolynomial.var(cb))
    else:
        mid = E12 if kind == "c" else E22
        core = alternate(
            poly_mul(
                poly_mul(GenPolynomial.var(ca), GenPolynomial.const(mid)),
                GenPolynomial.var(cb),
            ),
            (ca, cb),
        )
    skel = _alternating_product(block1, block2, prefix, suffix, core)
    x, y = GenPolynomial.var(1), GenPolynomial.var(2)
    binds = {v: x for v in prefix + block1 + [ca] + suffix}
    binds.update({v: y for v in block2 + [cb]})
    return substitute(skel, binds)


def _three_var_family(p: int, q: int, i: int) -> GenPolynomial:
    n = 2 * p + q + 1
    labels = iter(range(1, n + 1))
    prefix = [next(labels) for _ in range(i)]
    block1 = [next(labels) for _ in range(p - 1)]
    ca, cb, cc = next(labels), next(labels), next(labels)
    block2 = [next(labels) for _ in range(p - 1)]
    suffix = [next(labels) for _ in range(q - i)]
    core = alternate(
        poly_mul(
            poly_mul(GenPolynomial.var(ca), GenPolynomial.var(cb)),
            GenPolynomial.var(cc),
        ),
        (ca, cb, cc),
    )
    skel = _alternating_product(block1, block2, prefix, suffix, core)
    x, y, z = GenPolynomial.var(1), GenPolynomial.var(2), GenPolynomial.var(3)
    binds = {v: x for v in prefix + block1 + [ca] + suffix}
    binds.update({v: y for v in block2 + [cb]})
    binds[cc] = z
    return substitute(skel, binds)


def hwv_build(family: str, *, n: int | None = None, p: int | None = None,
              q: int | None = None, i: int | None = None, j: int | None = None) -> GenPolynomial:
    """Construct one member of the highest-weight families.

    family 'a'   (n):      x^n
    family 'a22' (n, i):   e22 x^n for i=0, else x^(i-1) [x,e22] x^(n-i)
    family 'a12' (n, j):   x^j e12 x^(n-j)
    family 'b'   (p,q,i):  x^i <alt block> [x,y] <alt block> x^(q-i)
    family 'c'   (p,q,i):  like 'b' with core x e12 y - y e12 x
    family 'd'   (p,q,i):  like 'b' with core x e22 y - y e22 x
    family 'h'   (p,q,i):  three variables, fully alternated x y z core
    """
    x = GenPolynomial.var(1)
    if family == "a":
        if n is None or n < 1:
            raise ValueError("family 'a' needs n >= 1")
        return _power(x, n)
    if family == "a22":
        if n is None or i is None or not 0 <= i <= n:
            raise ValueError("family 'a22' needs n >= 1 and 0 <= i <= n")
        if i == 0:
            return poly_mul(GenPolynomial.const(E22), _power(x, n))
        return poly_mul(
            poly_mul(_power(x, i - 1), commutator(x, E22)), _power(x, n - i)
        )
    if family == "a12":
        if n is None or j is None or not 0 <= j <= n:
            raise ValueError("family 'a12' needs n >= 1 and 0 <= j <= n")
        return poly_mul(
            poly_mul(_power(x, j), GenPolynomial.const(E12)), _power(x, n - j)
        )
    if family in ("b", "c", "d"):
        if p is None or q is None or i is None or p < 1 or q < 0 or not 0 <= i <= q:
            raise ValueError("family %r needs p >= 1, q >= 0, 0 <= i <= q" % family)
        return _two_var_family(family, p, q, i)
    if family == "h":
        if p is None or q is None or i is None or p < 1 or q < 0 or not 0 <= i <= q:
            raise ValueError("family 'h' needs p >= 1, q >= 0, 0 <= i <= q")
        return _three_var_family(p, q, i)
    raise ValueError("unknown family %r" % (family,))


def hwv_family_list(kind: str, *, n: int | None = None, p: int | None = None,
                    q: int | None = None) -> list[GenPolynomial]:
    """The full family attached to one shape: the 2n+3 one-variable members
    for a one-row shape, the 3(q+1) members b/c/d for a two-row shape, and
    the q+1 members for a three-row shape."""
    if kind == "row":
        if n is None:
            raise ValueError("kind 'row' needs n")
        fam = [hwv_build("a", n=n)]
        fam += [hwv_build("a22", n=n, i=i) for i in range(n + 1)]
        fam += [hwv_build("a12", n=n, j=j) for j in range(n + 1)]
        return fam
    if kind == "two":
        if p is None or q is None:
            raise ValueError("kind 'two' needs p, q")
        out = []
        for name in ("b", "c", "d"):
            out += [hwv_build(name, p=p, q=q, i=i) for i in range(q + 1)]
        return out
    if kind == "three":
        if p is None or q is None:
            raise ValueError("kind 'three' needs p, q")
        return [hwv_build("h", p=p, q=q, i=i) for i in range(q + 1)]
    raise ValueError("unknown family kind %r" % (kind,))
