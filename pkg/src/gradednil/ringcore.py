"""Structure-constant rings over exact coefficient domains.

A ring of rank R is stored as sparse structure constants c[i][j][k] with
b_i * b_j = sum_k c[i][j][k] b_k.  Coefficients live in Z/mZ, a prime field,
or the rationals; all arithmetic is exact.  Rings carry no implicit unit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg

ZMOD = "zmod"
FP = "fp"
RAT = "rat"

DEFAULT_ELEM_CAP = 2**20


class AssociativityError(ValueError):
    """Structure constants violate (b_i b_j) b_k = b_i (b_j b_k)."""

    def __init__(self, i, j, k, left, right):
        super().__init__(
            f"not associative at basis triple ({i}, {j}, {k}): "
            f"(b{i}*b{j})*b{k} = {left} but b{i}*(b{j}*b{k}) = {right}"
        )
        self.triple = (i, j, k)


class RingMismatchError(ValueError):
    """Operands belong to different rings."""


def _is_prime(n):
    if n < 2:
        return False
    for p in range(2, int(math.isqrt(n)) + 1):
        if n % p == 0:
            return False
    return True


class CoeffDomain:
    """Exact coefficient domain: Z/mZ, F_p, or Q."""

    def __init__(self, kind, modulus=None):
        self.kind = kind
        self.modulus = modulus
        if kind == ZMOD:
            if modulus is None or modulus < 2:
                raise ValueError("zmod modulus must be >= 2")
        elif kind == FP:
            if modulus is None or not _is_prime(modulus):
                raise ValueError(f"fp modulus {modulus!r} is not prime")
        elif kind == RAT:
            if modulus is not None:
                raise ValueError("rat takes no modulus")
        else:
            raise ValueError(f"unknown coefficient domain kind {kind!r}")

    @property
    def finite(self):
        return self.kind != RAT

    @property
    def size(self):
        return self.modulus if self.finite else None

    def char(self):
        """Additive exponent: m for Z/mZ and F_p, 0 for Q."""
        return self.modulus if self.finite else 0

    @property
    def is_field(self):
        return self.kind in (FP, RAT)

    def normalize(self, x):
        if self.finite:
            return int(x) % self.modulus
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.modulus if self.finite else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.finite else a - b

    def mul(self, a, b):
        return (a * b) % self.modulus if self.finite else a * b

    def neg(self, a):
        return (-a) % self.modulus if self.finite else -a

    def inv(self, a):
        if not self.is_field:
            raise ValueError("inverse needs a field domain")
        if self.kind == FP:
            return pow(a, -1, self.modulus)
        return Fraction(1) / a

    def is_zero(self, a):
        return a == 0

    def zero(self):
        return 0 if self.finite else Fraction(0)

    def one(self):
        return self.normalize(1)

    def elements(self):
        if not self.finite:
            raise ValueError("rationals are not enumerable")
        return range(self.modulus)

    def label(self):
        return self.kind if self.kind == RAT else f"{self.kind} {self.modulus}"

    def __eq__(self, other):
        return (
            isinstance(other, CoeffDomain)
            and self.kind == other.kind
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        return f"CoeffDomain({self.label()})"


def zmod(m):
    return CoeffDomain(ZMOD, m)


def fp(p):
    return CoeffDomain(FP, p)


def rat():
    return CoeffDomain(RAT)


def parse_domain(text):
    """Parse a domain label: 'zmod 8', 'fp 3', 'rat', or compact 'z8'/'f3'/'q'."""
    toks = text.strip().lower().split()
    if len(toks) == 1:
        t = toks[0]
        if t in ("rat", "q"):
            return rat()
        if t.startswith("f") and t[1:].isdigit():
            return fp(int(t[1:]))
        if t.startswith("z") and t[1:].isdigit():
            return zmod(int(t[1:]))
    elif len(toks) == 2 and toks[1].isdigit():
        if toks[0] == "zmod":
            return zmod(int(toks[1]))
        if toks[0] == "fp":
            return fp(int(toks[1]))
    raise ValueError(f"cannot parse coefficient domain {text!r}")


class Ring:
    """Finite-rank associative ring given by structure constants.

    ``sc`` maps (i, j) to {k: coeff}; missing pairs multiply to zero.
    Associativity is checked exhaustively on every basis triple unless
    ``check=False`` (used internally when it holds by construction).
    """

    def __init__(self, coeff: CoeffDomain, names, sc, check=True, note=None):
        self.coeff = coeff
        self.names = tuple(names)
        self.rank = len(self.names)
        table = {}
        for (i, j), terms in sc.items():
            if not (0 <= i < self.rank and 0 <= j < self.rank):
                raise ValueError(f"structure constant index ({i}, {j}) out of range")
            clean = {}
            for k, c in terms.items():
                if not 0 <= k < self.rank:
                    raise ValueError(f"structure constant target {k} out of range")
                c = coeff.normalize(c)
                if not coeff.is_zero(c):
                    clean[k] = c
            if clean:
                table[(i, j)] = clean
        self.sc = table
        self.note = note
        if check:
            self._check_associativity()

    def _check_associativity(self):
        for i in range(self.rank):
            for j in range(self.rank):
                ij = self.sc.get((i, j), {})
                for k in range(self.rank):
                    left = {}
                    for t, c in ij.items():
                        for v, c2 in self.sc.get((t, k), {}).items():
                            _acc(self.coeff, left, v, self.coeff.mul(c, c2))
                    right = {}
                    for t, c in self.sc.get((j, k), {}).items():
                        for v, c2 in self.sc.get((i, t), {}).items():
                            _acc(self.coeff, right, v, self.coeff.mul(c, c2))
                    if left != right:
                        raise AssociativityError(i, j, k, left, right)

    def mul_basis(self, i, j):
        return self.sc.get((i, j), {})

    def element(self, coords):
        coords = tuple(self.coeff.normalize(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return Element(self, coords)

    def zero(self):
        return Element(self, (self.coeff.zero(),) * self.rank)

    def basis_element(self, t):
        coords = [self.coeff.zero()] * self.rank
        coords[t] = self.coeff.one()
        return Element(self, tuple(coords))

    def basis(self):
        return [self.basis_element(t) for t in range(self.rank)]

    def mul_coords(self, xs, ys):
        """Raw bilinear product of two coordinate tuples."""
        dom = self.coeff
        out = [dom.zero()] * self.rank
        for i, xi in enumerate(xs):
            if dom.is_zero(xi):
                continue
            for j, yj in enumerate(ys):
                if dom.is_zero(yj):
                    continue
                terms = self.sc.get((i, j))
                if not terms:
                    continue
                c = dom.mul(xi, yj)
                for k, ck in terms.items():
                    out[k] = dom.add(out[k], dom.mul(c, ck))
        return tuple(out)

    def element_count(self):
        return None if not self.coeff.finite else self.coeff.size**self.rank

    def elements(self, cap=DEFAULT_ELEM_CAP):
        """All elements in lexicographic coordinate order (finite domains)."""
        n = self.element_count()
        if n is None:
            raise ValueError("rationals are not enumerable")
        if n > cap:
            raise ValueError(f"element count {n} exceeds cap {cap}")
        for coords in itertools.product(self.coeff.elements(), repeat=self.rank):
            yield Element(self, coords)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.coeff == other.coeff
            and self.names == other.names
            and self.sc == other.sc
        )

    def __hash__(self):
        return hash((self.coeff, self.names))

    def __repr__(self):
        return f"Ring({self.coeff.label()}, rank={self.rank})"


def _acc(dom, acc, k, c):
    v = dom.add(acc.get(k, dom.zero()), c)
    if dom.is_zero(v):
        acc.pop(k, None)
    else:
        acc[k] = v


class Element:
    """A ring element as an immutable coordinate vector."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = coords

    def _check_same(self, other):
        if not isinstance(other, Element) or other.ring is not self.ring:
            if isinstance(other, Element) and other.ring == self.ring:
                return
            raise RingMismatchError("elements belong to different rings")

    def __add__(self, other):
        self._check_same(other)
        dom = self.ring.coeff
        return Element(
            self.ring, tuple(dom.add(a, b) for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check_same(other)
        dom = self.ring.coeff
        return Element(
            self.ring, tuple(dom.sub(a, b) for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        dom = self.ring.coeff
        return Element(self.ring, tuple(dom.neg(a) for a in self.coords))

    def __mul__(self, other):
        self._check_same(other)
        return Element(self.ring, self.ring.mul_coords(self.coords, other.coords))

    def scale(self, c):
        dom = self.ring.coeff
        c = dom.normalize(c)
        return Element(self.ring, tuple(dom.mul(c, a) for a in self.coords))

    def is_zero(self):
        dom = self.ring.coeff
        return all(dom.is_zero(a) for a in self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.ring == other.ring
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        dom = self.ring.coeff
        parts = [
            f"{c}*{name}" if c != dom.one() else name
            for c, name in zip(self.coords, self.ring.names)
            if not dom.is_zero(c)
        ]
        return " + ".join(parts) if parts else "0"


def mul(a: Element, b: Element) -> Element:
    return a * b


class Submodule:
    """An additive subgroup of the coordinate module in canonical form.

    Over fields the canonical form is the reduced row echelon basis; over
    Z/mZ it is the Howell normal form, so equality of forms decides equality
    of submodules and membership is a greedy reduction.
    """

    def __init__(self, ring: Ring, generators):
        self.ring = ring
        rows = [list(g.coords if isinstance(g, Element) else g) for g in generators]
        dom = ring.coeff
        if dom.kind == ZMOD:
            self.rows = linalg.howell(rows, ring.rank, dom.modulus)
        else:
            self.rows = linalg.rref(rows, ring.rank, dom)

    def contains(self, x) -> bool:
        coords = x.coords if isinstance(x, Element) else tuple(x)
        dom = self.ring.coeff
        if dom.kind == ZMOD:
            return linalg.howell_contains(self.rows, coords, dom.modulus)
        return linalg.rref_contains(self.rows, coords, dom)

    def is_zero(self) -> bool:
        return not self.rows

    def generators(self):
        return [self.ring.element(row) for row in self.rows]

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Submodule)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Submodule(ngens={len(self.rows)})"


class PowerChainError(RuntimeError):
    """The power chain neither stabilized nor reached zero within the cap."""


def power_chain(r: Ring, cap=512):
    """Descending chain of product spans, one entry per product length.

    Entry t (0-based) is the span of all products of t+1 elements; the chain
    stops at the zero module or at the first repeat (a nonzero stable span
    certifies the ring is not nilpotent).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    chain = [Submodule(r, r.basis())]
    while len(chain) <= cap:
        cur = chain[-1]
        if cur.is_zero():
            return chain
        nxt = Submodule(
            r,
            [
                r.element(r.mul_coords(row, b.coords))
                for row in cur.rows
                for b in r.basis()
            ],
        )
        if nxt == cur:
            chain.append(nxt)
            return chain
        chain.append(nxt)
    raise PowerChainError(
        f"power chain did not stabilize within {cap} steps; this cannot happen "
        "for a finite-rank ring and indicates an internal error"
    )


def generated_subalgebra(r: Ring, elements) -> Submodule:
    """Smallest coefficient-span closed under multiplication containing the set."""
    span = Submodule(r, list(elements))
    while True:
        gens = span.generators()
        products = [a * b for a in gens for b in gens]
        bigger = Submodule(r, gens + products)
        if bigger == span:
            return span
        span = bigger


@dataclass
class MinGenerators:
    """Result of the generating-set search.

    ``exact`` is False when enumeration was capped; then ``count`` is the
    greedy upper bound and ``witness`` the greedy set.
    """

    exact: bool
    count: int
    witness: tuple
    note: str = ""


def min_generators(r: Ring, elem_cap=DEFAULT_ELEM_CAP, combo_cap=200_000) -> MinGenerators:
    """Smallest size of a subset generating the whole ring.

    Exhaustive over all element subsets in lexicographic order when the
    element count and the subset count fit the caps, otherwise a greedy
    upper bound over basis vectors (marked not exact).
    """
    full = Submodule(r, r.basis())
    if r.rank == 0:
        return MinGenerators(True, 0, ())
    n_elems = r.element_count()
    if n_elems is not None and n_elems <= elem_cap:
        elems = [e for e in r.elements(cap=elem_cap) if not e.is_zero()]
        for size in range(1, r.rank + 1):
            if math.comb(len(elems), size) > combo_cap:
                break
            for combo in itertools.combinations(elems, size):
                if generated_subalgebra(r, combo) == full:
                    return MinGenerators(True, size, combo)
        else:
            # No subset of size <= rank generates, yet the basis does.
            raise AssertionError("basis subset search exhausted without witness")

    witness = []
    span = Submodule(r, [])
    while span != full:
        best = None
        for b in r.basis():
            if span.contains(b):
                continue
            cand = generated_subalgebra(r, witness + [b])
            size = len(cand)
            if best is None or size > best[0]:
                best = (size, b, cand)
        witness.append(best[1])
        span = best[2]
    return MinGenerators(False, len(witness), tuple(witness), note="greedy upper bound")


def matrix_ring(r: Ring, n: int) -> Ring:
    """The ring of n x n matrices over r, with basis E_ij(b_t).

    E_ij(a) E_kl(b) = 0 unless j = k, in which case it is E_il(ab).
    """
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    rank = r.rank

    def idx(i, j, t):
        return (i * n + j) * rank + t

    names = [
        f"E{i + 1}{j + 1}({r.names[t]})"
        for i in range(n)
        for j in range(n)
        for t in range(rank)
    ]
    sc = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for (t, u), terms in r.sc.items():
                    entry = {idx(i, l, v): c for v, c in terms.items()}
                    if entry:
                        sc[(idx(i, j, t), idx(j, l, u))] = entry
    return Ring(r.coeff, names, sc)
