"""Evaluation of sandwiched polynomials in a chosen bimodule structure, and
the exact linear algebra built on top of it: identity testing, quotient
dimensions, dependence ranks and permutation traces.

The quotient of the multilinear space by the identities of an action is
computed semantically: a multilinear polynomial is mapped to its values on
all 3^n tuples of matrix units (flattened to 3*3^n rational coordinates),
and the quotient dimension is the rank of the image of that map.  For the
full monomial stream the evaluation vector of w0 x_{s(1)} w1 ... wn is a
coordinate permutation of the vector of w0 x_1 w1 ... wn, so only one base
vector per sandwich pattern is ever folded; the rest are index remaps.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, gcd

import numpy as np

from . import genpoly
from .algebra import SANDWICH, UNITS, BimoduleAction, UTElement, ZERO
from .genpoly import GenPolynomial, multilinearize

#: Default arity caps; n! * 3^(n+1) monomial rows are streamed per run.
EXACT_CAP = 5
MODULAR_CAP = 7


class ResourceCapError(RuntimeError):
    """Requested arity exceeds the configured cap for the mode."""


class ModularMismatchError(RuntimeError):
    """The two modular ranks disagree; the run is aborted."""


# ---------------------------------------------------------------------------
# Direct evaluation.


def evaluate(f: GenPolynomial, assignment, act: BimoduleAction) -> UTElement:
    """Value of f under variable -> matrix assignment, folding sandwich
    factors through the action tables and variables through the matrix
    product."""
    total = ZERO
    for (xs, slots), coeff in f.terms.items():
        if not xs:
            # Degree-0 term: a coefficient-algebra constant, read off as a matrix.
            total = total + coeff * SANDWICH[slots[0]]
            continue
        try:
            cur = act.left_apply(SANDWICH[slots[0]], assignment[xs[0]])
        except KeyError as exc:
            raise KeyError("unbound variable x%s" % exc.args[0]) from None
        cur = act.right_apply(cur, SANDWICH[slots[1]])
        for k in range(1, len(xs)):
            try:
                cur = cur * assignment[xs[k]]
            except KeyError as exc:
                raise KeyError("unbound variable x%s" % exc.args[0]) from None
            cur = act.right_apply(cur, SANDWICH[slots[k + 1]])
        total = total + coeff * cur
    return total


# ---------------------------------------------------------------------------
# Unit-coded folding.  For the built-in actions every action-table entry is a
# matrix unit or zero, so values along a fold stay in {0, e11, e12, e22},
# encoded as 0..3.  Custom tables fall back to exact matrix folds.


def _unit_code(el: UTElement):
    if el.is_zero():
        return 0
    for k, u in enumerate(UNITS):
        if el == u:
            return k + 1
    return None


def _unit_tables(act: BimoduleAction):
    left = [[0] * 4 for _ in range(3)]   # left[slot][ucode]
    right = [[0] * 4 for _ in range(3)]  # right[slot][ucode]
    for s in range(3):
        for u in range(3):
            cl = _unit_code(act.left[s][u])
            cr = _unit_code(act.right[s][u])
            if cl is None or cr is None:
                return None
            left[s][u + 1] = cl
            right[s][u + 1] = cr
    mul = [[0] * 4 for _ in range(4)]
    for u in range(3):
        for v in range(3):
            code = _unit_code(UNITS[u] * UNITS[v])
            mul[u + 1][v + 1] = 0 if code is None else code
    return left, right, mul


class _ActionContext:
    """Per-action evaluation state: unit tables when available, base rows per
    sandwich pattern and arity, and tuple-permutation index arrays."""

    def __init__(self, act: BimoduleAction):
        self.act = act
        self.unit = _unit_tables(act)
        self.base: dict[tuple[int, tuple[int, ...]], object] = {}
        self.digits: dict[int, np.ndarray] = {}

    def digit_matrix(self, n: int) -> np.ndarray:
        if n not in self.digits:
            m = np.zeros((3**n, n), dtype=np.int64)
            for i, tup in enumerate(product(range(3), repeat=n)):
                m[i] = tup
            self.digits[n] = m
        return self.digits[n]

    def base_row(self, n: int, slots: tuple[int, ...]):
        """Sparse evaluation vector of the identity-labelled monomial with
        the given sandwich pattern: None when identically zero, else
        (cols ascending int64 array, values tuple or None for all-ones)."""
        key = (n, slots)
        if key in self.base:
            return self.base[key]
        row = self._fold_units(n, slots) if self.unit else self._fold_exact(n, slots)
        self.base[key] = row
        return row

    def _fold_units(self, n: int, slots):
        L, R, M = self.unit
        vals = np.zeros(3, dtype=np.int64)
        for u in range(3):
            vals[u] = R[slots[1]][L[slots[0]][u + 1]]
        for k in range(2, n + 1):
            step = np.zeros((4, 3), dtype=np.int64)
            for v in range(4):
                for u in range(3):
                    step[v][u] = R[slots[k]][M[v][u + 1]]
            vals = step[vals].reshape(-1)
        idx = np.nonzero(vals)[0]
        if idx.size == 0:
            return None
        cols = idx * 3 + (vals[idx] - 1)
        return cols.astype(np.int64), None

    def _fold_exact(self, n: int, slots):
        act = self.act
        entries: dict[int, Fraction] = {}
        w = [SANDWICH[s] for s in slots]
        for i, tup in enumerate(product(UNITS, repeat=n)):
            cur = act.right_apply(act.left_apply(w[0], tup[0]), w[1])
            for k in range(1, n):
                if cur.is_zero():
                    break
                cur = act.right_apply(cur * tup[k], w[k + 1])
            for coord, val in enumerate(cur.coords()):
                if val:
                    entries[i * 3 + coord] = val
        if not entries:
            return None
        cols = np.array(sorted(entries), dtype=np.int64)
        vals = tuple(entries[c] for c in cols.tolist())
        return cols, vals

    def perm_index(self, xs: tuple[int, ...]) -> np.ndarray:
        """Index array mapping a tuple index u to the index of the tuple
        whose i-th entry is u_{sigma^-1(i)}, for the monomial label order xs."""
        n = len(xs)
        inv = [0] * n
        for i, v in enumerate(xs):
            inv[v - 1] = i
        D = self.digit_matrix(n)
        pows = 3 ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return D[:, inv] @ pows


_contexts: dict[str, _ActionContext] = {}


def _context(act: BimoduleAction) -> _ActionContext:
    key = act.cache_key()
    if key not in _contexts:
        _contexts[key] = _ActionContext(act)
    return _contexts[key]


# ---------------------------------------------------------------------------
# Evaluation vectors.


@dataclass(frozen=True)
class EvaluationVector:
    """Values of a multilinear polynomial on all 3^n unit tuples, flattened
    to 3*3^n rational coordinates indexed by tuple_index*3 + coordinate."""

    n: int
    entries: dict[int, Fraction]

    def dense(self) -> list[Fraction]:
        out = [Fraction(0)] * (3 ** (self.n + 1))
        for c, v in self.entries.items():
            out[c] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, EvaluationVector)
            and self.n == other.n
            and self.entries == other.entries
        )


def eval_vector(f: GenPolynomial, act: BimoduleAction) -> EvaluationVector:
    if not f.is_multilinear():
        raise ValueError("evaluation vectors are defined for multilinear polynomials")
    n = f.arity()
    if n == 0:
        return EvaluationVector(0, {})
    ctx = _context(act)
    acc: dict[int, Fraction] = {}
    for (xs, slots), coeff in f.terms.items():
        base = ctx.base_row(n, slots)
        if base is None:
            continue
        cols, vals = base
        remap = ctx.perm_index(xs)
        new_cols = remap[cols // 3] * 3 + cols % 3
        if vals is None:
            for c in new_cols.tolist():
                s = acc.get(c, Fraction(0)) + coeff
                if s:
                    acc[c] = s
                elif c in acc:
                    del acc[c]
        else:
            for c, v in zip(new_cols.tolist(), vals):
                s = acc.get(c, Fraction(0)) + coeff * v
                if s:
                    acc[c] = s
                elif c in acc:
                    del acc[c]
    return EvaluationVector(n, acc)


def is_identity(f: GenPolynomial, act: BimoduleAction) -> bool:
    """Whether f vanishes under every substitution: split into
    multihomogeneous components, linearize each, test all vectors."""
    if f.is_zero():
        return True
    comps: dict[tuple[int, ...], GenPolynomial] = {}
    for (xs, slots), coeff in f.terms.items():
        key = tuple(sorted(xs))
        comps.setdefault(key, GenPolynomial.zero()).terms[(xs, slots)] = coeff
    for key, comp in comps.items():
        if not key:
            return False  # nonzero constant component never vanishes
        lin = multilinearize(comp)
        if not eval_vector(lin, act).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# Incremental exact rank: sparse integer rows kept in echelon form.


class RankAccumulator:
    """Streaming exact row reduction over the rationals.

    Rows are stored as sparse integer vectors (denominators cleared,
    content stripped, positive leading entry), keyed by pivot column.
    Inserting a vector already in the span leaves the state unchanged.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _clean(row: dict[int, int]) -> dict[int, int]:
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if row[min(row)] < 0:
            g = -g
        if g != 1:
            row = {c: v // g for c, v in row.items()}
        return row

    def insert(self, entries) -> bool:
        """Insert a sparse rational row (mapping column -> value); returns
        True when the rank grew."""
        if not entries:
            return False
        denom = 1
        for v in entries.values():
            if isinstance(v, Fraction):
                denom = denom * v.denominator // gcd(denom, v.denominator)
        row = {}
        for c, v in entries.items():
            iv = int(v * denom)
            if iv:
                row[c] = iv
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                self.pivots[c] = self._clean(row)
                return True
            a, b = row[c], piv[c]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            if ma < 0:
                ma, mb = -ma, -mb
            new = {col: ma * v for col, v in row.items()}
            for col, v in piv.items():
                s = new.get(col, 0) - mb * v
                if s:
                    new[col] = s
                elif col in new:
                    del new[col]
            row = new
        return False

    def insert_unit_row(self, cols) -> bool:
        return self.insert({int(c): 1 for c in cols})


def _scaled_rref(pivots: dict[int, dict[int, int]]):
    """Back-substitute an integer echelon basis to reduced form, scaled so
    rows stay integral: returns [(pivot_col, lead, row)] sorted by pivot."""
    order = sorted(pivots)
    rows = [dict(pivots[c]) for c in order]
    for i in range(len(order) - 1, -1, -1):
        for jj in range(i + 1, len(order)):
            pcol = order[jj]
            a = rows[i].get(pcol, 0)
            if not a:
                continue
            b = rows[jj][pcol]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            if ma < 0:
                ma, mb = -ma, -mb
            new = {c: ma * v for c, v in rows[i].items()}
            for c, v in rows[jj].items():
                s = new.get(c, 0) - mb * v
                if s:
                    new[c] = s
                elif c in new:
                    del new[c]
            g2 = 0
            for v in new.values():
                g2 = gcd(g2, v)
            if new[order[i]] < 0:
                g2 = -g2
            if g2 not in (0, 1):
                new = {c: v // g2 for c, v in new.items()}
            rows[i] = new
    return [(order[i], rows[i][order[i]], rows[i]) for i in range(len(order))]


# ---------------------------------------------------------------------------
# Modular rank accumulators: a dense numpy backend for word-sized primes and
# a sparse arbitrary-precision backend for anything larger.


class _ModularDense:
    def __init__(self, ncols: int, p: int):
        if p >= 1 << 31:
            raise ValueError("dense modular backend needs p < 2^31")
        self.p = p
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivcols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, cols, vals) -> bool:
        p = self.p
        row = np.zeros(self.ncols, dtype=np.int64)
        if vals is None:
            row[cols] = 1
        else:
            for c, v in zip(cols.tolist(), vals):
                row[c] = (v.numerator * pow(v.denominator, -1, p)) % p
        for c, prow in zip(self.pivcols, self.rows):
            v = int(row[c])
            if v:
                row -= v * prow
                row %= p
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            return False
        lead = int(nz[0])
        row = (row * pow(int(row[lead]), -1, p)) % p
        k = 0
        while k < len(self.pivcols) and self.pivcols[k] < lead:
            k += 1
        self.pivcols.insert(k, lead)
        self.rows.insert(k, row)
        return True


class _ModularSparse:
    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def insert(self, cols, vals) -> bool:
        p = self.p
        if vals is None:
            row = {int(c): 1 for c in cols}
        else:
            row = {}
            for c, v in zip(cols.tolist(), vals):
                rv = (v.numerator * pow(v.denominator, -1, p)) % p
                if rv:
                    row[int(c)] = rv
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                self.pivots[c] = {col: (v * inv) % p for col, v in row.items()}
                return True
            coef = row[c]
            for col, v in piv.items():
                s = (row.get(col, 0) - coef * v) % p
                if s:
                    row[col] = s
                elif col in row:
                    del row[col]
        return False


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random) -> int:
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand):
            return cand


# ---------------------------------------------------------------------------
# Streaming over the full monomial space.


def _row_signature(cols: np.ndarray, vals) -> bytes:
    h = hashlib.blake2b(cols.tobytes(), digest_size=16)
    if vals is not None:
        h.update(repr(vals).encode())
    return h.digest()


def _stream_rows(act: BimoduleAction, n: int, order_seed=None):
    """Yield the evaluation row of every arity-n monomial in canonical
    order (variable sequence, then sandwich pattern, both lexicographic);
    identically zero rows are skipped.  Rows are (cols, vals) with vals
    None meaning all-ones."""
    ctx = _context(act)
    slot_patterns = list(product((0, 1, 2), repeat=n + 1))
    var_orders = list(permutations(range(1, n + 1)))
    if order_seed is not None:
        rng = random.Random(order_seed)
        pairs = [(xs, s) for xs in var_orders for s in slot_patterns]
        rng.shuffle(pairs)
        for xs, s in pairs:
            base = ctx.base_row(n, s)
            if base is None:
                continue
            yield _remap(ctx, xs, base)
        return
    for xs in var_orders:
        remap_cache = None
        for s in slot_patterns:
            base = ctx.base_row(n, s)
            if base is None:
                continue
            if remap_cache is None:
                remap_cache = ctx.perm_index(xs)
            cols, vals = base
            yield _apply_remap(remap_cache, cols, vals)


def _remap(ctx, xs, base):
    return _apply_remap(ctx.perm_index(xs), *base)


def _apply_remap(remap: np.ndarray, cols: np.ndarray, vals):
    new_cols = remap[cols // 3] * 3 + cols % 3
    order = np.argsort(new_cols)
    new_cols = new_cols[order]
    if vals is None:
        return new_cols, None
    return new_cols, tuple(vals[i] for i in order.tolist())


@dataclass(frozen=True)
class CodimResult:
    algebra: str
    n: int
    value: int
    mode: str
    primes: tuple[int, ...] | None = None
    rows_streamed: int = 0

    def to_json_dict(self) -> dict:
        doc = {"algebra": self.algebra, "n": self.n, "codim": self.value, "mode": self.mode}
        if self.mode == "modular":
            doc["primes"] = list(self.primes or ())
        return doc


@dataclass(frozen=True)
class ImageBasis:
    """Scaled reduced echelon basis of the image of the evaluation map on
    the full multilinear space: rows[i] has integer entries with leading
    value leads[i] at pivot column pivcols[i]."""

    n: int
    pivcols: tuple[int, ...]
    leads: tuple[int, ...]
    rows: tuple[dict[int, int], ...]

    @property
    def rank(self) -> int:
        return len(self.pivcols)


_image_cache: dict[tuple[str, int], ImageBasis] = {}


def image_basis(act: BimoduleAction, n: int, cap: int | None = None) -> ImageBasis:
    if n < 1:
        raise ValueError("arity must be >= 1")
    cap = EXACT_CAP if cap is None else cap
    if n > cap:
        raise ResourceCapError(
            "exact run at n=%d exceeds the cap %d (raise the cap to proceed)" % (n, cap)
        )
    key = (act.cache_key(), n)
    if key in _image_cache:
        return _image_cache[key]
    acc = RankAccumulator(3 ** (n + 1))
    seen: set[bytes] = set()
    for cols, vals in _stream_rows(act, n):
        sig = _row_signature(cols, vals)
        if sig in seen:
            continue
        seen.add(sig)
        if vals is None:
            acc.insert_unit_row(cols.tolist())
        else:
            acc.insert(dict(zip(cols.tolist(), vals)))
    rref = _scaled_rref(acc.pivots)
    basis = ImageBasis(
        n,
        tuple(r[0] for r in rref),
        tuple(r[1] for r in rref),
        tuple(r[2] for r in rref),
    )
    _image_cache[key] = basis
    return basis


def codimension(act: BimoduleAction, n: int, mode: str = "exact", *,
                cap: int | None = None, primes=None, prime_bits: int = 61,
                seed: int = 0, order_seed=None) -> CodimResult:
    """Dimension of the multilinear quotient at arity n: the rank of the
    streamed evaluation rows of all n! * 3^(n+1) monomials.

    exact mode certifies the value by rational elimination; modular mode
    reduces at two independent random primes and aborts on disagreement.
    """
    if n < 1:
        raise ValueError("arity must be >= 1")
    streamed = factorial(n) * 3 ** (n + 1)
    if mode == "exact":
        if order_seed is not None:
            acc = RankAccumulator(3 ** (n + 1))
            seen: set[bytes] = set()
            for cols, vals in _stream_rows(act, n, order_seed=order_seed):
                sig = _row_signature(cols, vals)
                if sig in seen:
                    continue
                seen.add(sig)
                if vals is None:
                    acc.insert_unit_row(cols.tolist())
                else:
                    acc.insert(dict(zip(cols.tolist(), vals)))
            return CodimResult(act.tag, n, acc.rank, "exact", None, streamed)
        basis = image_basis(act, n, cap=cap)
        return CodimResult(act.tag, n, basis.rank, "exact", None, streamed)
    if mode != "modular":
        raise ValueError("mode must be 'exact' or 'modular'")
    capval = MODULAR_CAP if cap is None else cap
    if n > capval:
        raise ResourceCapError(
            "modular run at n=%d exceeds the cap %d (raise the cap to proceed)" % (n, capval)
        )
    if primes is None:
        rng = random.Random(seed)
        p1 = random_prime(prime_bits, rng)
        p2 = random_prime(prime_bits, rng)
        while p2 == p1:
            p2 = random_prime(prime_bits, rng)
        primes = (p1, p2)
    primes = tuple(primes)
    ncols = 3 ** (n + 1)
    accs = [
        _ModularDense(ncols, p) if p < 1 << 31 else _ModularSparse(ncols, p)
        for p in primes
    ]
    seen = set()
    for cols, vals in _stream_rows(act, n, order_seed=order_seed):
        sig = _row_signature(cols, vals)
        if sig in seen:
            continue
        seen.add(sig)
        for acc in accs:
            acc.insert(cols, vals)
    ranks = {acc.rank for acc in accs}
    if len(ranks) != 1:
        raise ModularMismatchError(
            "modular ranks disagree across primes %s: %s"
            % (primes, [acc.rank for acc in accs])
        )
    return CodimResult(act.tag, n, ranks.pop(), "modular", primes, streamed)


# ---------------------------------------------------------------------------
# Dependence of a finite family modulo the identities of an action.


@dataclass(frozen=True)
class DependenceResult:
    rank: int
    kernel: tuple[tuple[Fraction, ...], ...]


def _normalize_kernel_vector(vec: list[Fraction]) -> tuple[Fraction, ...]:
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [v * denom for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, int(v))
    if g:
        ints = [v / g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-x for x in ints]
            break
    return tuple(Fraction(v) for v in ints)


def dependence(fs, act: BimoduleAction, n: int) -> DependenceResult:
    """Rank of the span of the evaluation vectors of the given multilinear
    polynomials, with an exact basis of the linear relations holding among
    them modulo the identities of the action."""
    rows = []
    for f in fs:
        if not f.is_multilinear(n):
            raise ValueError("dependence needs multilinear polynomials of arity %d" % n)
        rows.append(eval_vector(f, act).entries)
    pivots: list[tuple[int, dict[int, Fraction], dict[int, Fraction]]] = []
    kernel = []
    m = len(rows)
    for idx, entries in enumerate(rows):
        r = dict(entries)
        tag = {idx: Fraction(1)}
        placed = False
        while r:
            c = min(r)
            hit = None
            for pc, prow, ptag in pivots:
                if pc == c:
                    hit = (prow, ptag)
                    break
            if hit is None:
                lead = r[c]
                r = {k: v / lead for k, v in r.items()}
                tag = {k: v / lead for k, v in tag.items()}
                pivots.append((c, r, tag))
                pivots.sort(key=lambda t: t[0])
                placed = True
                break
            prow, ptag = hit
            coef = r[c]
            for k, v in prow.items():
                s = r.get(k, Fraction(0)) - coef * v
                if s:
                    r[k] = s
                elif k in r:
                    del r[k]
            for k, v in ptag.items():
                s = tag.get(k, Fraction(0)) - coef * v
                if s:
                    tag[k] = s
                elif k in tag:
                    del tag[k]
        if not placed and not r:
            vec = [tag.get(i, Fraction(0)) for i in range(m)]
            kernel.append(_normalize_kernel_vector(vec))
    return DependenceResult(len(pivots), tuple(kernel))


# ---------------------------------------------------------------------------
# Permutation traces on the quotient.


def _as_perm_tuple(sigma, n: int) -> tuple[int, ...]:
    if isinstance(sigma, dict):
        images = tuple(sigma.get(i, i) for i in range(1, n + 1))
    else:
        images = tuple(sigma)
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (n, sigma))
    return images


def perm_trace(sigma, act: BimoduleAction, n: int, cap: int | None = None) -> Fraction:
    """Trace of the variable permutation sigma acting on the multilinear
    quotient.  The quotient is realized as the image of the evaluation map;
    sigma acts there by permuting tuple positions, and its matrix in the
    reduced basis is read off at the pivot columns."""
    images = _as_perm_tuple(sigma, n)
    basis = image_basis(act, n, cap=cap)
    pows = [3 ** (n - 1 - i) for i in range(n)]
    total = Fraction(0)
    for pivcol, lead, row in zip(basis.pivcols, basis.leads, basis.rows):
        tidx, coord = divmod(pivcol, 3)
        digits = [(tidx // pows[i]) % 3 for i in range(n)]
        permuted = [digits[images[i] - 1] for i in range(n)]
        new_tidx = sum(d * p for d, p in zip(permuted, pows))
        total += Fraction(row.get(new_tidx * 3 + coord, 0), lead)
    return total
