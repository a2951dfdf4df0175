"""Semigroup actions, pairwise commutation factors, and their checks.

The commutation factor of a pair (a, b) is a semigroup element f(a, b) acting
on the ring from the left; the pair commutes up to f when a*b equals f(a, b)
acting on b*a.  Scalar actions (the multiplicative semigroup of the
coefficient domain) cover every construction in this package; block-scalar
actions scale disjoint basis blocks independently and realize the diagonal
lift onto the neutral component of a 2x2 matrix grading.  Explicit table
semigroups with a per-basis action map are supported for small cases.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .grading import elementary_grading, neutral_ring
from .nil import Status
from .ringcore import Element, Ring


class ActionLawError(ValueError):
    """An action violates compatibility with the semigroup or the product."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FMapDomainError(KeyError):
    """A pairwise rule was queried at a pair it does not cover."""


class SemigroupTable:
    """A finite semigroup on ids 0..size-1; associativity checked, no identity."""

    def __init__(self, table):
        size = len(table)
        for row in table:
            if len(row) != size or any(not 0 <= v < size for v in row):
                raise ActionLawError("semigroup table is not square over its ids")
        self.table = tuple(tuple(row) for row in table)
        self.size = size
        for a in range(size):
            for b in range(size):
                for c in range(size):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ActionLawError(
                            f"semigroup not associative at ({a}, {b}, {c})"
                        )

    def op(self, a, b):
        return self.table[a][b]


SCALAR = "scalar"
BLOCK_SCALAR = "block-scalar"
TABLE = "table"


class Action:
    """A left semigroup action on a ring.

    * ``scalar``: the coefficient domain acts by scalar multiplication.
    * ``block-scalar``: tuples of scalars, one per basis block, scale the
      blocks independently; the blocks must partition the basis.
    * ``table``: an explicit SemigroupTable with ``act_map[(s, t)]`` giving
      the coordinates of s acting on basis vector t; extended linearly.

    Both action laws, compatibility with the semigroup operation and with
    the ring product, are validated on construction.
    """

    def __init__(self, kind, ring: Ring, blocks=None, semigroup=None, act_map=None,
                 check=True):
        self.kind = kind
        self.ring = ring
        self.blocks = None
        self.semigroup = semigroup
        self.act_map = act_map
        if kind == BLOCK_SCALAR:
            if not blocks:
                raise ActionLawError("block-scalar action needs basis blocks")
            flat = [t for blk in blocks for t in blk]
            if sorted(flat) != list(range(ring.rank)):
                raise ActionLawError("blocks must partition the basis indices")
            self.blocks = tuple(tuple(sorted(blk)) for blk in blocks)
            self._block_of = {}
            for bi, blk in enumerate(self.blocks):
                for t in blk:
                    self._block_of[t] = bi
        elif kind == TABLE:
            if semigroup is None or act_map is None:
                raise ActionLawError("table action needs a semigroup and an act map")
        elif kind != SCALAR:
            raise ActionLawError(f"unknown action kind {kind!r}")
        if check:
            self._validate()

    def sg_op(self, x, y):
        if self.kind == SCALAR:
            return self.ring.coeff.mul(x, y)
        if self.kind == BLOCK_SCALAR:
            dom = self.ring.coeff
            return tuple(dom.mul(a, b) for a, b in zip(x, y))
        return self.semigroup.op(x, y)

    def act_coords(self, s, coords):
        dom = self.ring.coeff
        if self.kind == SCALAR:
            s = dom.normalize(s)
            return tuple(dom.mul(s, c) for c in coords)
        if self.kind == BLOCK_SCALAR:
            return tuple(
                dom.mul(dom.normalize(s[self._block_of[t]]), c)
                for t, c in enumerate(coords)
            )
        out = [dom.zero()] * self.ring.rank
        for t, c in enumerate(coords):
            if dom.is_zero(c):
                continue
            img = self.act_map.get((s, t))
            if img is None:
                raise FMapDomainError(f"action undefined at ({s}, basis {t})")
            for k, v in enumerate(img):
                out[k] = dom.add(out[k], dom.mul(c, v))
        return tuple(out)

    def act(self, s, x: Element) -> Element:
        return self.ring.element(self.act_coords(s, x.coords))

    def _sample_semigroup(self, limit=8):
        dom = self.ring.coeff
        if self.kind == SCALAR:
            if dom.finite:
                return [dom.normalize(v) for v in dom.elements()]
            return [dom.normalize(v) for v in (0, 1, -1, 2, -2)]
        if self.kind == BLOCK_SCALAR:
            scal = (
                [dom.normalize(v) for v in dom.elements()]
                if dom.finite and dom.size ** len(self.blocks) <= 64
                else [dom.normalize(v) for v in (0, 1, -1, 2)]
            )
            return list(itertools.product(scal, repeat=len(self.blocks)))[:64]
        return list(range(self.semigroup.size))

    def _validate(self):
        ring = self.ring
        sample = self._sample_semigroup()
        for lam, gam in itertools.product(sample, repeat=2):
            lg = self.sg_op(lam, gam)
            for t in range(ring.rank):
                x = ring.basis_element(t)
                left = self.act_coords(lg, x.coords)
                right = self.act_coords(lam, self.act_coords(gam, x.coords))
                if left != right:
                    raise ActionLawError(
                        "action incompatible with semigroup product",
                        witness=(lam, gam, t),
                    )
        for lam in sample:
            for i in range(ring.rank):
                for j in range(ring.rank):
                    x = ring.basis_element(i)
                    y = ring.basis_element(j)
                    xy = ring.mul_coords(x.coords, y.coords)
                    left = self.act_coords(lam, xy)
                    right = ring.mul_coords(self.act_coords(lam, x.coords), y.coords)
                    if left != right:
                        raise ActionLawError(
                            "action incompatible with the ring product",
                            witness=(lam, i, j),
                        )


def scalar_action(ring: Ring) -> Action:
    return Action(SCALAR, ring)


CONSTANT = "constant"
SCALAR_RULE = "scalar-rule"
PAIR_TABLE = "pair-table"
FUNC = "func"


class FMap:
    """A pairwise commutation-factor map into an action's semigroup."""

    def __init__(self, kind, value=None, rule=None, func=None, label=""):
        self.kind = kind
        self.value = value
        self.rule = rule
        self.func = func
        self.label = label
        if kind == CONSTANT and value is None:
            raise ValueError("constant map needs a value")
        if kind in (SCALAR_RULE, PAIR_TABLE) and rule is None:
            raise ValueError("rule map needs a pair table")
        if kind == FUNC and func is None:
            raise ValueError("func map needs a callable")

    @classmethod
    def constant(cls, value):
        return cls(CONSTANT, value=value, label=f"constant {value}")

    @classmethod
    def from_rule(cls, rule, label="pointwise scalar rule"):
        return cls(SCALAR_RULE, rule=dict(rule), label=label)

    def at_coords(self, ca, cb):
        if self.kind == CONSTANT:
            return self.value
        if self.kind == FUNC:
            return self.func(ca, cb)
        try:
            return self.rule[(ca, cb)]
        except KeyError:
            raise FMapDomainError(f"commutation factor undefined at ({ca}, {cb})")

    def at(self, a: Element, b: Element):
        return self.at_coords(a.coords, b.coords)

    def is_constant(self):
        return self.kind == CONSTANT

    def __eq__(self, other):
        if self.kind == FUNC:
            return self is other
        return (
            isinstance(other, FMap)
            and self.kind == other.kind
            and self.value == other.value
            and self.rule == other.rule
        )

    def __repr__(self):
        return f"FMap({self.label or self.kind})"


STANDARD = "standard"
WEAKENED = "weakened"


def f_commutator(a: Element, b: Element, f: FMap, act: Action,
                 variant=STANDARD) -> Element:
    """a*b - f(a,b).(b*a); the weakened variant uses (f(a,b).b)*a instead."""
    ab = a * b
    s = f.at(a, b)
    if variant == STANDARD:
        return ab - act.act(s, b * a)
    if variant == WEAKENED:
        return ab - act.act(s, b) * a
    raise ValueError(f"unknown commutator variant {variant!r}")


@dataclass
class PairVerdict:
    status: Status
    witness: tuple | None = None
    note: str = ""

    @property
    def proved(self):
        return self.status == Status.PROVED


def _element_coords(ring, elem_cap):
    count = ring.element_count()
    if count is None or count > elem_cap:
        return None
    return [
        tuple(coords)
        for coords in itertools.product(ring.coeff.elements(), repeat=ring.rank)
    ]


def check_f_commutative(
    r: Ring, f: FMap, act: Action, pair_cap=10**6, samples=10**4, seed=0,
    variant=STANDARD,
) -> PairVerdict:
    """Does a*b = f(a,b).(b*a) hold for all pairs?

    Exhaustive when the square of the element count fits ``pair_cap``;
    otherwise a seeded sample of pairs (SAMPLED_OK / CAPPED on the
    rationals).
    """
    dom = r.coeff
    coords_list = None
    count = r.element_count()
    if count is not None and count * count <= pair_cap:
        coords_list = _element_coords(r, count)
    if coords_list is not None:
        for ca in coords_list:
            for cb in coords_list:
                if not _pair_commutes(r, act, f, ca, cb, variant):
                    return PairVerdict(
                        Status.REFUTED, witness=(r.element(ca), r.element(cb))
                    )
        return PairVerdict(Status.PROVED, note=f"exhaustive over {count}^2 pairs")
    rng = random.Random(seed)
    if dom.finite:
        sampler = lambda: tuple(rng.randrange(dom.size) for _ in range(r.rank))
    else:
        sampler = lambda: tuple(
            dom.normalize(rng.randint(-3, 3)) for _ in range(r.rank)
        )
    for _ in range(samples):
        ca, cb = sampler(), sampler()
        if not _pair_commutes(r, act, f, ca, cb, variant):
            return PairVerdict(Status.REFUTED, witness=(r.element(ca), r.element(cb)))
    return PairVerdict(
        Status.SAMPLED_OK if not dom.finite else Status.CAPPED,
        note=f"{samples} seeded pairs (seed={seed})",
    )


def _pair_commutes(r, act, f, ca, cb, variant=STANDARD):
    dom = r.coeff
    ab = r.mul_coords(ca, cb)
    s = f.at_coords(ca, cb)
    if variant == STANDARD:
        rhs = act.act_coords(s, r.mul_coords(cb, ca))
    else:
        rhs = r.mul_coords(act.act_coords(s, cb), ca)
    return ab == rhs


def scalar_f_search(r: Ring, pair_cap=10**6, rat_bound=3, samples=2000, seed=0):
    """Pointwise search for scalars l with a*b = l*(b*a).

    Returns (FMap, None) on success, compressed to a constant map when one
    scalar works everywhere, (None, witness_pair) when some pair admits no
    scalar, or (None, None) when enumeration exceeds the pair cap.
    Candidates are tried as 1, -1, 0, then the remaining domain elements, so
    commutative rings report the constant 1.  Over the rationals only a
    seeded sample of pairs is examined with candidates bounded by
    ``rat_bound``; a constant found that way is marked as sampled.
    """
    dom = r.coeff
    if dom.finite:
        ordered = [dom.normalize(1), dom.normalize(-1), dom.zero()]
        candidates = []
        for c in ordered + [dom.normalize(v) for v in dom.elements()]:
            if c not in candidates:
                candidates.append(c)
        count = r.element_count()
        if count * count > pair_cap:
            return None, None
        coords_list = _element_coords(r, count)
        rule = {}
        for ca in coords_list:
            for cb in coords_list:
                ab = r.mul_coords(ca, cb)
                ba = r.mul_coords(cb, ca)
                lam = next(
                    (
                        c
                        for c in candidates
                        if ab == tuple(dom.mul(c, v) for v in ba)
                    ),
                    None,
                )
                if lam is None:
                    return None, (r.element(ca), r.element(cb))
                rule[(ca, cb)] = lam
        values = set(rule.values())
        if len(values) == 1:
            return FMap.constant(values.pop()), None
        return FMap.from_rule(rule), None
    candidates = [dom.normalize(1), dom.normalize(-1), dom.zero()]
    for v in range(2, rat_bound + 1):
        candidates += [dom.normalize(v), dom.normalize(-v)]
    rng = random.Random(seed)
    surviving = list(candidates)
    for _ in range(samples):
        ca = tuple(dom.normalize(rng.randint(-3, 3)) for _ in range(r.rank))
        cb = tuple(dom.normalize(rng.randint(-3, 3)) for _ in range(r.rank))
        ab = r.mul_coords(ca, cb)
        ba = r.mul_coords(cb, ca)
        surviving = [
            c for c in surviving if ab == tuple(dom.mul(c, v) for v in ba)
        ]
        if not surviving:
            return None, (r.element(ca), r.element(cb))
    return (
        FMap(CONSTANT, value=surviving[0], label=f"constant {surviving[0]} (sampled)"),
        None,
    )


def rewrite_identity_check(
    r: Ring, f: FMap, act: Action, tuple_cap=10**6, samples=10**4, seed=0
) -> PairVerdict:
    """Verify both commutation-factor rewriting chains on 7-tuples.

    For x, m1, y, m2, z, m3, t the product x m1 y m2 z m3 t must equal

      (f(x,m1).m1)(f(xy,m2).m2)(f(xyz,m3).m3) x y z t          (left chain)
      x (f(m1,y).y)(f(m1 m2,z).z) m1 m2 m3 t                   (right chain)

    whenever the ring commutes up to f.  Exhaustive when the 7-th power of
    the element count fits the cap, else seeded samples.
    """
    dom = r.coeff
    count = r.element_count()
    exhaustive = count is not None and count**7 <= tuple_cap
    if exhaustive:
        coords_list = _element_coords(r, count)
        tuples = itertools.product(coords_list, repeat=7)
    else:
        rng = random.Random(seed)
        if dom.finite:
            draw = lambda: tuple(rng.randrange(dom.size) for _ in range(r.rank))
        else:
            draw = lambda: tuple(
                dom.normalize(rng.randint(-2, 2)) for _ in range(r.rank)
            )
        tuples = (tuple(draw() for _ in range(7)) for _ in range(samples))
    checked = 0
    for x, m1, y, m2, z, m3, t in tuples:
        mul = r.mul_coords
        lhs = mul(mul(mul(mul(mul(mul(x, m1), y), m2), z), m3), t)
        xy = mul(x, y)
        xyz = mul(xy, z)
        left = mul(
            mul(
                mul(act.act_coords(f.at_coords(x, m1), m1),
                    act.act_coords(f.at_coords(xy, m2), m2)),
                act.act_coords(f.at_coords(xyz, m3), m3),
            ),
            mul(xyz, t),
        )
        m1m2 = mul(m1, m2)
        right = mul(
            mul(
                mul(x, act.act_coords(f.at_coords(m1, y), y)),
                act.act_coords(f.at_coords(m1m2, z), z),
            ),
            mul(mul(m1m2, m3), t),
        )
        if lhs != left or lhs != right:
            side = "left" if lhs != left else "right"
            return PairVerdict(
                Status.REFUTED,
                witness=tuple(r.element(c) for c in (x, m1, y, m2, z, m3, t)),
                note=f"{side} rewriting chain differs",
            )
        checked += 1
    note = f"{checked} tuples ({'exhaustive' if exhaustive else f'seed={seed}'})"
    return PairVerdict(
        Status.PROVED if exhaustive else Status.SAMPLED_OK, note=note
    )


@dataclass
class DiagonalLift:
    """The neutral component of the 2x2 elementary grading, with lifted data."""

    graded: object
    neutral: Ring
    neutral_indices: list
    fmap: FMap
    action: Action
    verdict: PairVerdict


def lift_f_to_diagonal(
    f: FMap, act: Action, r: Ring, n=2, pair_cap=10**6, samples=10**4, seed=0
) -> DiagonalLift:
    """Lift a commutation factor to diagonal matrices, componentwise.

    Builds the elementary Z_2 grading of the 2x2 matrix ring, realizes the
    lifted factor on the neutral (diagonal) component as the pair
    (f(a, c), f(b, d)) acting blockwise, and re-checks commutation up to the
    lift there.  Only scalar base actions are supported; a general table
    action would need the full pair semigroup.
    """
    if n != 2:
        raise ValueError("the diagonal lift is built for 2x2 matrices")
    if act.kind != SCALAR:
        raise ActionLawError("diagonal lift needs a scalar base action")
    gr = elementary_grading(r, 2)
    m0, idx = neutral_ring(gr)
    rank = r.rank
    blocks = [tuple(range(rank)), tuple(range(rank, 2 * rank))]
    lifted_act = Action(BLOCK_SCALAR, m0, blocks=blocks)

    def lifted(ca, cb):
        a, b = ca[:rank], ca[rank:]
        c, d = cb[:rank], cb[rank:]
        return (f.at_coords(a, c), f.at_coords(b, d))

    lifted_f = FMap(FUNC, func=lifted, label=f"diagonal lift of {f.label or f.kind}")
    verdict = check_f_commutative(
        m0, lifted_f, lifted_act, pair_cap=pair_cap, samples=samples, seed=seed
    )
    return DiagonalLift(gr, m0, idx, lifted_f, lifted_act, verdict)
