"""Verified nilpotency bounds for graded rings.

Every check in the registry evaluates one explicit bound formula with exact
arbitrary-precision arithmetic, computes the corresponding index on the given
ring, and reports PASS, FAIL, NOT_APPLICABLE, or CAPPED.  Applicability is
always decided by computed predicates (never asserted by the caller), and a
FAIL on an applicable check is a hard inconsistency that carries a full
witness bundle.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum

from .fcomm import (
    Action,
    FMap,
    check_f_commutative,
    lift_f_to_diagonal,
    scalar_action,
    scalar_f_search,
)
from .grading import (
    GradedRing,
    induced_quotient_grading,
    neutral_ring,
    support,
)
from .monoid import Congruence
from .nil import (
    DEFAULT_ELEM_CAP,
    DEFAULT_POWER_CAP,
    DEFAULT_SAMPLES,
    DEFAULT_SYMBOLIC_CAP,
    DEFAULT_TUPLE_CAP,
    NilVerdict,
    Status,
    bounded_nil_index_auto,
    element_nil_index,
    homogeneous_power_report,
    nilpotency_index,
    ring_is_nil,
)
from .ringcore import Ring, min_generators


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    CAPPED = "CAPPED"


@dataclass
class Caps:
    """Work limits and the sampling seed, recorded in every report."""

    elem_cap: int = DEFAULT_ELEM_CAP
    tuple_cap: int = DEFAULT_TUPLE_CAP
    power_cap: int = DEFAULT_POWER_CAP
    pair_cap: int = 10**6
    samples: int = DEFAULT_SAMPLES
    symbolic_cap: int = DEFAULT_SYMBOLIC_CAP
    seed: int = 0

    def to_dict(self):
        return {
            "elem_cap": self.elem_cap,
            "tuple_cap": self.tuple_cap,
            "power_cap": self.power_cap,
            "pair_cap": self.pair_cap,
            "samples": self.samples,
            "symbolic_cap": self.symbolic_cap,
            "seed": self.seed,
        }


@dataclass
class TheoremCheck:
    id: str
    anchor: str
    applicable: bool
    reason: str = ""
    bound: object = None
    observed: object = None
    status: CheckStatus = CheckStatus.NOT_APPLICABLE
    witnesses: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "id": self.id,
            "anchor": self.anchor,
            "applicable": self.applicable,
            "reason": self.reason,
            "bound": self.bound,
            "observed": self.observed,
            "status": self.status.value,
            "witnesses": {k: repr(v) for k, v in self.witnesses.items()},
            "details": {k: _plain(v) for k, v in self.details.items()},
        }


def _plain(v):
    if isinstance(v, (int, str, bool, float, type(None))):
        return v
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, set):
        return [_plain(x) for x in sorted(v, key=repr)]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return repr(v)


def geometric_support_sum(d: int) -> int:
    """d + d^2 + ... + d^(2d), the subproduct-count bound for support size d."""
    return sum(d**t for t in range(1, 2 * d + 1))


def nil_index_bound(s: int, d: int) -> int:
    """Upper bound on the nil index when the neutral part has nil index s.

    Equals 2*s*d^2*(d^(2d) - 1)/(d - 1) for d > 1; the geometric-sum form
    also covers d = 1, where the quotient form degenerates.
    """
    return 2 * s * d * geometric_support_sum(d)


def _fail(check, **witnesses):
    check.status = CheckStatus.FAIL
    check.witnesses.update(witnesses)
    return check


def _na(check, reason):
    check.status = CheckStatus.NOT_APPLICABLE
    check.applicable = False
    check.reason = reason
    return check


def _capped(check, reason):
    check.status = CheckStatus.CAPPED
    check.reason = reason
    return check


def _grading_data(gr: GradedRing):
    supp = support(gr)
    m0, idx = neutral_ring(gr)
    return supp, len(supp), m0, idx


# ---------------------------------------------------------------------------
# Individual checks.


def verify_empty_neutral_bound(gr: GradedRing, caps=Caps()) -> TheoremCheck:
    """P3.03: zero neutral component forces nd <= d + 1."""
    supp, d, m0, _ = _grading_data(gr)
    check = TheoremCheck(
        "P3.03", "neutral component zero: nd <= d+1", True, bound=d + 1
    )
    if m0.rank != 0:
        return _na(check, "neutral component is nonzero")
    ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
    if ndv.status != Status.PROVED:
        return _fail(check, non_nilpotent=ndv.witness)
    check.observed = ndv.index
    check.status = CheckStatus.PASS if ndv.index <= d + 1 else CheckStatus.FAIL
    return check


def verify_neutral_nil_fcomm_bound(
    gr: GradedRing, f: FMap | None, act: Action | None, caps=Caps()
) -> TheoremCheck:
    """T3.15: nil f-commutative neutral part makes the whole ring nil.

    With the neutral nil index s known, nd_nil(R) <= 2*s*d*(d + ... + d^(2d)).
    """
    supp, d, m0, _ = _grading_data(gr)
    check = TheoremCheck(
        "T3.15",
        "neutral nil and commuting up to f: ring nil, "
        "nd_nil <= 2*s*d*(d+...+d^(2d))",
        True,
    )
    if m0.rank == 0:
        check.bound = d + 1
        check.details["path"] = "zero neutral component, nd <= d+1 applies"
        ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
        if ndv.status != Status.PROVED:
            return _fail(check, non_nilpotent=ndv.witness)
        check.observed = ndv.index
        check.status = (
            CheckStatus.PASS if ndv.index <= d + 1 else CheckStatus.FAIL
        )
        return check
    if f is None or act is None:
        return _na(check, "no commutation factor supplied or derived")
    fc = check_f_commutative(
        m0, f, act, pair_cap=caps.pair_cap, samples=caps.samples, seed=caps.seed
    )
    if fc.status == Status.REFUTED:
        return _na(check, f"neutral component not f-commutative at {fc.witness}")
    if fc.status == Status.CAPPED:
        return _capped(check, "f-commutativity check capped")
    check.details["f_commutative"] = fc.status.value
    sv = bounded_nil_index_auto(
        m0, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if sv.status == Status.REFUTED:
        return _na(check, "neutral component is not nil")
    if not sv.proved:
        return _capped(check, "neutral nil index could not be certified")
    s = sv.index
    check.bound = nil_index_bound(s, d)
    check.details["neutral_nil_index"] = s
    check.details["support_size"] = d
    whole = bounded_nil_index_auto(
        gr.ring, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if whole.status == Status.REFUTED:
        return _fail(check, non_nil=whole.witness)
    if not whole.proved:
        return _capped(check, "nil index of the whole ring could not be certified")
    check.observed = whole.index
    check.status = (
        CheckStatus.PASS if whole.index <= check.bound else CheckStatus.FAIL
    )
    return check


def verify_nilpotent_neutral_bounds(gr: GradedRing, caps=Caps()) -> TheoremCheck:
    """T3.18: nilpotent neutral part of index r gives r <= nd <= d*r (d+1 if r=1)."""
    supp, d, m0, _ = _grading_data(gr)
    check = TheoremCheck(
        "T3.18", "neutral nilpotent of index r: r <= nd <= d*r (r>1), nd <= d+1 (r=1)",
        True,
    )
    rv = nilpotency_index(m0, cap=caps.power_cap)
    if rv.status != Status.PROVED:
        return _na(check, "neutral component is not nilpotent")
    r = rv.index
    lo, hi = (r, d + 1) if r == 1 else (r, d * r)
    check.bound = [lo, hi]
    check.details["neutral_nilpotency_index"] = r
    ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
    if ndv.status != Status.PROVED:
        return _fail(check, non_nilpotent=ndv.witness)
    check.observed = ndv.index
    check.status = (
        CheckStatus.PASS if lo <= ndv.index <= hi else CheckStatus.FAIL
    )
    return check


def _generator_nil_data(r: Ring, witness, caps):
    s = 1
    for g in witness:
        v = element_nil_index(g, cap=caps.power_cap)
        if v.status != Status.PROVED:
            return None
        s = max(s, v.index)
    return s


def verify_generated_nil_ring_bound(
    r: Ring, f: FMap | None, act: Action | None, caps=Caps()
) -> TheoremCheck:
    """T3.19: a nil ring commuting up to f with n generators is nilpotent,
    s <= nd <= (s-1)*n + 1 with s the largest generator nil index."""
    check = TheoremCheck(
        "T3.19", "nil, f-commutative, n generators: s <= nd <= (s-1)*n+1", True
    )
    nilv = bounded_nil_index_auto(
        r, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if nilv.status == Status.REFUTED:
        return _na(check, "ring is not nil")
    if not nilv.proved:
        return _capped(check, "nil certificate unavailable")
    if r.rank and (f is None or act is None):
        return _na(check, "no commutation factor supplied or derived")
    if r.rank:
        fc = check_f_commutative(
            r, f, act, pair_cap=caps.pair_cap, samples=caps.samples, seed=caps.seed
        )
        if fc.status == Status.REFUTED:
            return _na(check, f"not f-commutative at {fc.witness}")
        if fc.status == Status.CAPPED:
            return _capped(check, "f-commutativity check capped")
    mg = min_generators(r, elem_cap=caps.elem_cap)
    if not mg.exact:
        return _capped(check, "minimal generator count unknown (capped search)")
    n = mg.count
    s = _generator_nil_data(r, mg.witness, caps) or 1
    check.details["generators"] = n
    check.details["generator_nil_index"] = s
    check.bound = [s, (s - 1) * n + 1]
    ndv = nilpotency_index(r, cap=caps.power_cap)
    if ndv.status != Status.PROVED:
        return _fail(check, non_nilpotent=ndv.witness)
    check.observed = ndv.index
    check.status = (
        CheckStatus.PASS
        if s <= ndv.index <= (s - 1) * n + 1
        else CheckStatus.FAIL
    )
    check.witnesses["generators"] = mg.witness
    return check


def verify_generated_neutral_bound(
    gr: GradedRing, f: FMap | None, act: Action | None, caps=Caps()
) -> TheoremCheck:
    """T3.20: nil f-commutative neutral part with n generators:
    s <= nd <= d*((s-1)*n + 1); if the neutral part is zero, nd <= d + 1."""
    supp, d, m0, _ = _grading_data(gr)
    check = TheoremCheck(
        "T3.20",
        "neutral nil, f-commutative, n generators: s <= nd <= d*((s-1)*n+1)",
        True,
    )
    if m0.rank == 0:
        check.bound = [1, d + 1]
        ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
        if ndv.status != Status.PROVED:
            return _fail(check, non_nilpotent=ndv.witness)
        check.observed = ndv.index
        check.status = (
            CheckStatus.PASS if ndv.index <= d + 1 else CheckStatus.FAIL
        )
        return check
    if f is None or act is None:
        return _na(check, "no commutation factor supplied or derived")
    nil0 = bounded_nil_index_auto(
        m0, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if nil0.status == Status.REFUTED:
        return _na(check, "neutral component is not nil")
    if not nil0.proved:
        return _capped(check, "neutral nil certificate unavailable")
    fc = check_f_commutative(
        m0, f, act, pair_cap=caps.pair_cap, samples=caps.samples, seed=caps.seed
    )
    if fc.status == Status.REFUTED:
        return _na(check, f"neutral component not f-commutative at {fc.witness}")
    if fc.status == Status.CAPPED:
        return _capped(check, "f-commutativity check capped")
    mg = min_generators(m0, elem_cap=caps.elem_cap)
    if not mg.exact:
        return _capped(check, "minimal generator count of the neutral part unknown")
    n = mg.count
    s = _generator_nil_data(m0, mg.witness, caps) or 1
    check.details.update(
        {"generators": n, "generator_nil_index": s, "support_size": d}
    )
    check.bound = [s, d * ((s - 1) * n + 1)]
    ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
    if ndv.status != Status.PROVED:
        return _fail(check, non_nilpotent=ndv.witness)
    check.observed = ndv.index
    check.status = (
        CheckStatus.PASS
        if s <= ndv.index <= check.bound[1]
        else CheckStatus.FAIL
    )
    return check


def verify_index2_char_bound(gr: GradedRing, caps=Caps()) -> TheoremCheck:
    """P3.17: neutral nil index 2 and no 2-torsion force (R_e)^3 = 0, nd <= 3d."""
    supp, d, m0, _ = _grading_data(gr)
    check = TheoremCheck(
        "P3.17", "neutral nil index 2, char != 2: cube of neutral part zero, nd <= 3d",
        True, bound=3 * d,
    )
    dom = gr.ring.coeff
    char = dom.char()
    if char % 2 == 0 and char != 0:
        return _na(check, f"coefficient characteristic {char} has 2-torsion")
    if m0.rank == 0:
        return _na(check, "neutral nil index is 1, not 2")
    sv = bounded_nil_index_auto(
        m0, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if not sv.proved:
        return _capped(check, "neutral nil index could not be certified")
    if sv.index != 2:
        return _na(check, f"neutral nil index is {sv.index}, not 2")
    cube = nilpotency_index(m0, cap=caps.power_cap)
    check.details["neutral_nilpotency_index"] = (
        cube.index if cube.proved else "not nilpotent"
    )
    if not (cube.proved and cube.index <= 3):
        return _fail(check, neutral_cube_nonzero=cube.witness)
    ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
    if ndv.status != Status.PROVED:
        return _fail(check, non_nilpotent=ndv.witness)
    check.observed = ndv.index
    check.status = (
        CheckStatus.PASS if ndv.index <= 3 * d else CheckStatus.FAIL
    )
    return check


def verify_field_bounded_index_bound(gr: GradedRing, caps=Caps()) -> TheoremCheck:
    """T3.24: over a field of characteristic 0 or p > s, bounded neutral nil
    index s makes the algebra nilpotent with nd <= d*(2^s - 1) for p > s,
    nd <= d*q with q = 2^s - 1 (s <= 4) or s^2 (s >= 5) for p = 0, and
    nd <= d + 1 when s = 1."""
    supp, d, m0, _ = _grading_data(gr)
    check = TheoremCheck(
        "T3.24",
        "field scalars, neutral nil index s: nd <= d*(2^s-1) for char > s; "
        "nd <= d*q, q = 2^s-1 (s<=4) or s^2 (s>=5), for char 0; nd <= d+1 for s=1",
        True,
    )
    dom = gr.ring.coeff
    if not dom.is_field:
        return _na(check, f"coefficients {dom.label()} are not a field")
    p = dom.char()
    if m0.rank == 0:
        s = 1
    else:
        sv = bounded_nil_index_auto(
            m0, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
            symbolic_cap=caps.symbolic_cap,
        )
        if sv.status == Status.REFUTED:
            return _na(check, "neutral component is not nil of bounded index")
        if not sv.proved:
            return _capped(check, "neutral nil index could not be certified")
        s = sv.index
    check.details.update({"neutral_nil_index": s, "char": p, "support_size": d})
    if s == 1:
        check.bound = d + 1
    elif p == 0:
        q = 2**s - 1 if s <= 4 else s * s
        check.bound = d * q
    elif p > s:
        check.bound = d * (2**s - 1)
    else:
        return _na(check, f"characteristic {p} is neither 0 nor > nil index {s}")
    ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
    if ndv.status != Status.PROVED:
        return _fail(check, non_nilpotent=ndv.witness)
    check.observed = ndv.index
    check.status = (
        CheckStatus.PASS if ndv.index <= check.bound else CheckStatus.FAIL
    )
    return check


def verify_product_length_vanishing(gr: GradedRing, caps=Caps()) -> TheoremCheck:
    """C3.28: field characteristic outside {2, 3} and neutral nil index
    s in {2, 3, 4}: every product of d*(2^s - 1) elements vanishes."""
    supp, d, m0, _ = _grading_data(gr)
    check = TheoremCheck(
        "C3.28", "products of length d*(2^s-1) vanish for s in {2,3,4}, char not 2 or 3",
        True,
    )
    dom = gr.ring.coeff
    if not dom.is_field:
        return _na(check, f"coefficients {dom.label()} are not a field")
    if dom.char() in (2, 3):
        return _na(check, f"characteristic {dom.char()} excluded")
    if m0.rank == 0:
        return _na(check, "neutral nil index is 1, outside {2,3,4}")
    sv = bounded_nil_index_auto(
        m0, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if not sv.proved:
        return _capped(check, "neutral nil index could not be certified")
    s = sv.index
    if s not in (2, 3, 4):
        return _na(check, f"neutral nil index {s} outside {{2,3,4}}")
    length = d * (2**s - 1)
    check.bound = length
    ndv = nilpotency_index(gr.ring, cap=caps.power_cap)
    if ndv.status != Status.PROVED or ndv.index > length:
        return _fail(check, non_nilpotent=getattr(ndv, "witness", None))
    check.observed = ndv.index
    rng = random.Random(caps.seed)
    r = gr.ring
    n_samples = min(caps.samples, 1000)
    lo, hi = (0, dom.size - 1) if dom.finite else (-3, 3)
    for _ in range(n_samples):
        prod = None
        for _ in range(length):
            coords = tuple(dom.normalize(rng.randint(lo, hi)) for _ in range(r.rank))
            prod = coords if prod is None else r.mul_coords(prod, coords)
            if all(dom.is_zero(c) for c in prod):
                break
        if any(not dom.is_zero(c) for c in prod):
            return _fail(check, nonzero_product=r.element(prod))
    check.details["sampled_products"] = n_samples
    check.status = CheckStatus.PASS
    return check


def matrix_nil_verdict(r: Ring, n: int, caps=Caps()) -> NilVerdict:
    """Nil verdict for the n x n matrices over r, enum or symbolic."""
    from .ringcore import matrix_ring

    mn = matrix_ring(r, n)
    return bounded_nil_index_auto(
        mn, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )


def verify_matrix_nil_transfer(
    r: Ring, f: FMap | None, act: Action | None, caps=Caps()
) -> TheoremCheck:
    """T3.26: for a nil ring commuting up to f, the 2x2 matrices are nil.

    Builds the parity grading on the matrix ring, lifts the commutation
    factor to the diagonal, and certifies the matrix ring nil exhaustively
    or symbolically.
    """
    check = TheoremCheck(
        "T3.26", "2x2 matrices over a nil f-commutative ring are nil", True
    )
    nilv = bounded_nil_index_auto(
        r, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if nilv.status == Status.REFUTED:
        return _na(check, "ring is not nil")
    if not nilv.proved:
        return _capped(check, "nil certificate unavailable")
    if r.rank == 0:
        check.bound = 1
        check.observed = 1
        check.status = CheckStatus.PASS
        return check
    if f is None or act is None:
        return _na(check, "no commutation factor supplied or derived")
    fc = check_f_commutative(
        r, f, act, pair_cap=caps.pair_cap, samples=caps.samples, seed=caps.seed
    )
    if fc.status == Status.REFUTED:
        return _na(check, f"not f-commutative at {fc.witness}")
    if fc.status == Status.CAPPED:
        return _capped(check, "f-commutativity check capped")
    lift = lift_f_to_diagonal(
        f, act, r, pair_cap=caps.pair_cap, samples=caps.samples, seed=caps.seed
    )
    if lift.verdict.status == Status.REFUTED:
        return _fail(check, lift_counterexample=lift.verdict.witness)
    check.details["diagonal_lift"] = lift.verdict.status.value
    m0_nil = bounded_nil_index_auto(
        lift.neutral, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=caps.symbolic_cap,
    )
    if not m0_nil.proved:
        return _capped(check, "diagonal component nil index not certified")
    check.details["diagonal_nil_index"] = m0_nil.index
    check.bound = nil_index_bound(m0_nil.index, 2)
    m2 = lift.graded.ring
    m2_nil = bounded_nil_index_auto(
        m2, elem_cap=caps.elem_cap, power_cap=caps.power_cap,
        symbolic_cap=max(caps.symbolic_cap, m0_nil.index * 4),
    )
    if m2_nil.status == Status.REFUTED:
        return _fail(check, non_nil_matrix=m2_nil.witness)
    if not m2_nil.proved:
        return _capped(check, "matrix ring nil index not certified")
    check.observed = m2_nil.index
    check.status = (
        CheckStatus.PASS if m2_nil.index <= check.bound else CheckStatus.FAIL
    )
    return check


def verify_diagonal_power_reduction(r: Ring, n=2, caps=Caps()) -> TheoremCheck:
    """T3.29-REDUCTION: diagonal powers are componentwise, so the diagonal
    component of the n x n matrix grading is nil exactly when the base ring is."""
    from .grading import elementary_grading

    check = TheoremCheck(
        "T3.29-REDUCTION",
        "diag(b_1..b_n)^s = diag(b_1^s..b_n^s); diagonal component nil iff base nil",
        True,
    )
    gr = elementary_grading(r, n)
    m0, idx = neutral_ring(gr)
    dom = r.coeff
    mr = gr.ring
    rng = random.Random(caps.seed)
    count = r.element_count()
    exhaustive = count is not None and r.rank and count**n <= min(caps.tuple_cap, 4096)
    if exhaustive:
        import itertools as _it

        singles = [
            tuple(coords)
            for coords in _it.product(dom.elements(), repeat=r.rank)
        ]
        diag_tuples = list(_it.product(singles, repeat=n))
    else:
        lo, hi = (0, dom.size - 1) if dom.finite else (-3, 3)
        diag_tuples = [
            tuple(
                tuple(dom.normalize(rng.randint(lo, hi)) for _ in range(r.rank))
                for _ in range(n)
            )
            for _ in range(min(caps.samples, 500))
        ]
    checked = 0
    for entries in diag_tuples:
        diag = [dom.zero()] * mr.rank
        for i, coords in enumerate(entries):
            base = (i * n + i) * r.rank
            for t, c in enumerate(coords):
                diag[base + t] = c
        diag = tuple(diag)
        for s in (2, 3, 4):
            acc = diag
            for _ in range(s - 1):
                acc = mr.mul_coords(acc, diag)
            expect = [dom.zero()] * mr.rank
            for i, coords in enumerate(entries):
                powv = coords
                for _ in range(s - 1):
                    powv = r.mul_coords(powv, coords)
                base = (i * n + i) * r.rank
                for t, c in enumerate(powv):
                    expect[base + t] = c
            if acc != tuple(expect):
                return _fail(
                    check,
                    diagonal=mr.element(diag),
                    exponent=s,
                )
        checked += 1
    check.details["diagonal_tuples_checked"] = checked
    check.details["exhaustive"] = exhaustive
    base_nil = ring_is_nil(
        r, elem_cap=caps.elem_cap, power_cap=caps.power_cap, seed=caps.seed
    )
    diag_nil = ring_is_nil(
        m0, elem_cap=caps.elem_cap, power_cap=caps.power_cap, seed=caps.seed
    )
    check.details["base_nil"] = base_nil.status.value
    check.details["diagonal_nil"] = diag_nil.status.value
    agree = base_nil.status == diag_nil.status
    if not agree:
        return _fail(
            check,
            base_witness=base_nil.witness,
            diagonal_witness=diag_nil.witness,
        )
    check.observed = diag_nil.status.value
    check.status = CheckStatus.PASS
    return check


def verify_homogeneous_power_vanishing(gr: GradedRing, caps=Caps()) -> TheoremCheck:
    """P3.31: with nonzero neutral part nil of bounded index s, products of
    k_g = min(order(g), d) homogeneous factors of degree g vanish at power s,
    and k = lcm of the k_g bounds all homogeneous nil indices by k*s."""
    check = TheoremCheck(
        "P3.31",
        "per-degree products of k_g = min(o(g), d) factors vanish at the "
        "neutral nil index; k = lcm(k_g)",
        True,
    )
    report = homogeneous_power_report(
        gr,
        elem_cap=caps.elem_cap,
        tuple_cap=caps.tuple_cap,
        samples=caps.samples,
        seed=caps.seed,
    )
    if not report.applicable:
        return _na(check, report.reason)
    check.bound = {"k": report.k, "kg": {str(g): v for g, v in report.kg.items()}}
    check.details["neutral_nil_index"] = report.s
    check.details["per_degree"] = {
        str(g): dict(v) for g, v in report.per_degree.items()
    }
    check.observed = sum(v["tuples_checked"] for v in report.per_degree.values())
    if report.counterexample is not None:
        return _fail(check, counterexample=report.counterexample)
    check.status = CheckStatus.PASS
    return check


def verify_quotient_grading_transfer(
    gr: GradedRing, cong: Congruence, caps=Caps(),
    f: FMap | None = None, act: Action | None = None,
) -> TheoremCheck:
    """C3.04: rerun the zero-neutral bound, the f-commutative transfer, and
    the nilpotent-neutral bounds on the grading induced by a congruence;
    also check that the coarse neutral part is nilpotent iff the ring is."""
    check = TheoremCheck(
        "C3.04",
        "checks transfer to the grading induced by a monoid congruence",
        True,
    )
    try:
        induced = induced_quotient_grading(gr, cong)
    except Exception as exc:
        return _na(check, f"induced grading rejected: {exc}")
    check.details["induced_support_size"] = len(support(induced))
    if f is None or act is None:
        f, act = _derive_fmap(induced, caps)
        if f is not None:
            check.details["derived_factor"] = f.label
    sub = {
        "P3.03": verify_empty_neutral_bound(induced, caps),
        "T3.15": verify_neutral_nil_fcomm_bound(induced, f, act, caps),
        "T3.18": verify_nilpotent_neutral_bounds(induced, caps),
    }
    check.details["sub_checks"] = {k: v.status.value for k, v in sub.items()}
    m0, _ = neutral_ring(induced)
    coarse = nilpotency_index(m0, cap=caps.power_cap)
    whole = nilpotency_index(gr.ring, cap=caps.power_cap)
    equiv = coarse.proved == whole.proved
    check.details["coarse_neutral_nilpotent"] = coarse.proved
    check.details["ring_nilpotent"] = whole.proved
    if not equiv:
        return _fail(check, coarse=coarse.witness, whole=whole.witness)
    statuses = {v.status for v in sub.values()}
    if CheckStatus.FAIL in statuses:
        check.status = CheckStatus.FAIL
        check.witnesses = {k: v.witnesses for k, v in sub.items() if v.witnesses}
    elif CheckStatus.CAPPED in statuses:
        check.status = CheckStatus.CAPPED
    elif CheckStatus.PASS in statuses:
        check.status = CheckStatus.PASS
    else:
        return _na(check, "no sub-check applicable to the induced grading")
    return check


# ---------------------------------------------------------------------------
# Aggregate report.


@dataclass
class VerifierReport:
    checks: list
    caps: Caps
    seed: int
    timings: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "checks": [c.to_dict() for c in self.checks],
            "caps": self.caps.to_dict(),
            "seed": self.seed,
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
            "notes": list(self.notes),
        }

    def to_text(self):
        lines = []
        for c in self.checks:
            bits = [f"{c.id:<16} {c.status.value:<15}"]
            if c.bound is not None:
                bits.append(f"bound={c.bound}")
            if c.observed is not None:
                bits.append(f"observed={c.observed}")
            if c.reason:
                bits.append(f"({c.reason})")
            lines.append(" ".join(bits))
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"seed: {self.seed}; caps: {self.caps.to_dict()}")
        return "\n".join(lines)

    def worst(self):
        order = [CheckStatus.FAIL, CheckStatus.CAPPED]
        for status in order:
            if any(c.status == status for c in self.checks):
                return status
        return CheckStatus.PASS


def _derive_fmap(gr: GradedRing, caps):
    """Pointwise scalar search on the neutral component, used when the caller
    supplies no commutation factor."""
    m0, _ = neutral_ring(gr)
    if m0.rank == 0:
        return None, None
    fmap, _witness = scalar_f_search(m0, pair_cap=caps.pair_cap, seed=caps.seed)
    if fmap is None:
        return None, None
    return fmap, scalar_action(m0)


def full_report(
    gr: GradedRing,
    f: FMap | None = None,
    act: Action | None = None,
    caps: Caps | None = None,
    congruence: Congruence | None = None,
) -> VerifierReport:
    """Run every applicable check on a graded ring.

    The supplied commutation factor pertains to the neutral component; when
    none is given a pointwise scalar rule is searched for automatically.
    Ring-level checks (T3.19, T3.26, T3.29-REDUCTION) run on the neutral
    component ring.
    """
    caps = caps or Caps()
    notes = []
    if f is None or act is None:
        f, act = _derive_fmap(gr, caps)
        if f is not None:
            notes.append(f"commutation factor derived automatically: {f.label}")
    m0, _ = neutral_ring(gr)

    def run(name, fn):
        t0 = time.monotonic()
        chk = fn()
        timings[name] = time.monotonic() - t0
        return chk

    timings = {}
    checks = [
        run("C3.04", lambda: (
            verify_quotient_grading_transfer(gr, congruence, caps)
            if congruence is not None
            else _na(
                TheoremCheck("C3.04", "checks transfer to an induced quotient grading", True),
                "no congruence supplied",
            )
        )),
        run("C3.28", lambda: verify_product_length_vanishing(gr, caps)),
        run("P3.03", lambda: verify_empty_neutral_bound(gr, caps)),
        run("P3.17", lambda: verify_index2_char_bound(gr, caps)),
        run("P3.31", lambda: verify_homogeneous_power_vanishing(gr, caps)),
        run("T3.15", lambda: verify_neutral_nil_fcomm_bound(gr, f, act, caps)),
        run("T3.18", lambda: verify_nilpotent_neutral_bounds(gr, caps)),
        run("T3.19", lambda: verify_generated_nil_ring_bound(m0, f, act, caps)),
        run("T3.20", lambda: verify_generated_neutral_bound(gr, f, act, caps)),
        run("T3.24", lambda: verify_field_bounded_index_bound(gr, caps)),
        run("T3.26", lambda: verify_matrix_nil_transfer(m0, f, act, caps)),
        run("T3.29-REDUCTION", lambda: verify_diagonal_power_reduction(m0, 2, caps)),
    ]
    return VerifierReport(checks, caps, caps.seed, timings, notes)
