"""Degree-word combinatorics: forced-zero prediction and neutral splits.

A degree word records the degrees of a product of homogeneous elements.  If
any contiguous subproduct degree leaves the support, the ring product is
forced to vanish.  Otherwise, for a word of length r*d over a support of
size d (r > 1), pigeonholing the prefix degrees yields r consecutive blocks
each of neutral degree; ``neutral_split`` constructs the cut positions and
``neutral_split_bruteforce`` re-derives the verdict by exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .monoid import Monoid


class ProductVerdict(Enum):
    FORCED_ZERO = "FORCED_ZERO"
    POSSIBLY_NONZERO = "POSSIBLY_NONZERO"


FORCED_ZERO = ProductVerdict.FORCED_ZERO


def _fast_op(monoid):
    """Raw operation lookup; degree words validate membership up front."""
    if monoid.kind == "table":
        table = monoid.table
        return lambda a, b: table[a][b]
    return lambda a, b: a + b


class SplitInternalError(RuntimeError):
    """The pigeonhole dichotomy failed; indicates an implementation bug."""


@dataclass(frozen=True)
class DegreeWord:
    monoid: Monoid
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        for g in self.degrees:
            if not self.monoid.contains(g):
                raise ValueError(f"degree {g!r} is not a monoid element")

    def __len__(self):
        return len(self.degrees)


@dataclass(frozen=True)
class Decomposition:
    """Cut positions s_0 < ... < s_r; block j spans letters s_{j-1}+1 .. s_j."""

    cuts: tuple

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))
        if any(a >= b for a, b in zip(self.cuts, self.cuts[1:])):
            raise ValueError("cut positions must be strictly increasing")

    @property
    def blocks(self):
        return list(zip(self.cuts, self.cuts[1:]))

    def gaps(self):
        return [b - a for a, b in self.blocks]


def subproduct_degrees(w: DegreeWord):
    """Degrees of all contiguous subproducts, via prefix extension."""
    op = _fast_op(w.monoid)
    out = set()
    degs = w.degrees
    n = len(degs)
    for i in range(n):
        acc = degs[i]
        out.add(acc)
        for j in range(i + 1, n):
            acc = op(acc, degs[j])
            out.add(acc)
    return out


def product_verdict(w: DegreeWord, supp) -> ProductVerdict:
    """FORCED_ZERO iff some contiguous subproduct degree leaves the support."""
    op = _fast_op(w.monoid)
    degs = w.degrees
    n = len(degs)
    supp = set(supp)
    for i in range(n):
        acc = degs[i]
        if acc not in supp:
            return ProductVerdict.FORCED_ZERO
        for j in range(i + 1, n):
            acc = op(acc, degs[j])
            if acc not in supp:
                return ProductVerdict.FORCED_ZERO
    return ProductVerdict.POSSIBLY_NONZERO


def block_degrees(w: DegreeWord, dec: Decomposition):
    """The degree of each block of a decomposition."""
    op = _fast_op(w.monoid)
    out = []
    for a, b in dec.blocks:
        acc = w.degrees[a]
        for t in range(a + 1, b):
            acc = op(acc, w.degrees[t])
        out.append(acc)
    return out


def neutral_split(w: DegreeWord, r: int, supp):
    """Cut a clean word of length r*d into r consecutive neutral blocks.

    Returns FORCED_ZERO when some contiguous subproduct leaves the support;
    otherwise buckets the prefix degrees: either the identity occurs at least
    r times among them (cut at the first r such prefixes), or some other
    degree occurs at least r+1 times (cut at its first r+1 positions, whose
    consecutive quotients are neutral by left cancellation).  Ties between
    maximal degrees break toward the smallest element, positions toward the
    earliest index.
    """
    if r <= 1:
        raise ValueError("split needs r > 1")
    supp = set(supp)
    d = len(supp)
    degs = w.degrees
    n = len(degs)
    if n != r * d:
        raise ValueError(f"word length {n} is not r*d = {r}*{d}")
    op = _fast_op(w.monoid)
    e = w.monoid.identity

    # Forced-zero scan over all contiguous subproducts, early exit.
    for i in range(n):
        acc = degs[i]
        if acc not in supp:
            return ProductVerdict.FORCED_ZERO
        for j in range(i + 1, n):
            acc = op(acc, degs[j])
            if acc not in supp:
                return ProductVerdict.FORCED_ZERO

    # Prefix degrees b_1..b_n and their buckets.
    prefixes = []
    acc = None
    for g in degs:
        acc = g if acc is None else op(acc, g)
        prefixes.append(acc)
    positions = {}
    for pos, g in enumerate(prefixes, start=1):
        positions.setdefault(g, []).append(pos)

    neutral_pos = positions.get(e, [])
    if len(neutral_pos) >= r:
        cuts = (0,) + tuple(neutral_pos[:r])
    else:
        candidates = [(g, pos) for g, pos in positions.items() if g != e]
        if not candidates:
            raise SplitInternalError("no prefix buckets despite clean word")
        g0, pos = max(candidates, key=lambda it: (len(it[1]), _neg_key(it[0])))
        if len(pos) < r + 1:
            raise SplitInternalError(
                f"pigeonhole dichotomy failed: {len(neutral_pos)} neutral prefixes "
                f"and at most {len(pos)} repeats of any other degree"
            )
        cuts = tuple(pos[: r + 1])
    dec = Decomposition(cuts)
    for g in block_degrees(w, dec):
        if g != e:
            raise SplitInternalError(f"constructed block has degree {g!r}, not neutral")
    return dec


def _neg_key(g):
    # max() with this secondary key prefers the smallest element id.
    return -g if isinstance(g, int) else g


def small_gap_blocks(dec: Decomposition, d: int):
    """Indices (1-based) of blocks spanning at most 2d letters.

    For a split of a length r*d word into r neutral blocks, at least
    floor(r/2) + 1 blocks qualify; fewer indicates an implementation bug.
    """
    selected = [i for i, gap in enumerate(dec.gaps(), start=1) if gap <= 2 * d]
    r = len(dec.cuts) - 1
    r_hat = r // 2
    if len(selected) < r_hat + 1:
        raise SplitInternalError(
            f"only {len(selected)} blocks with gap <= {2 * d}, expected >= {r_hat + 1}"
        )
    return selected


def neutral_split_bruteforce(w: DegreeWord, r: int, supp):
    """Exhaustive-search twin of ``neutral_split`` for cross-validation.

    Re-derives the forced-zero verdict from a table of all (start, end)
    subproduct degrees, then searches every cut sequence for r neutral
    blocks, never pigeonholing prefixes.  Returns the first decomposition
    found, FORCED_ZERO, or None if neither applies (which would contradict
    the pigeonhole construction).
    """
    if r <= 1:
        raise ValueError("split needs r > 1")
    supp = set(supp)
    d = len(supp)
    degs = w.degrees
    n = len(degs)
    if n != r * d:
        raise ValueError(f"word length {n} is not r*d = {r}*{d}")
    op = _fast_op(w.monoid)

    # prod[a][b] = degree of letters a+1 .. b (0 <= a < b <= n)
    prod = [[None] * (n + 1) for _ in range(n)]
    escaped = False
    for a in range(n):
        acc = degs[a]
        prod[a][a + 1] = acc
        escaped = escaped or acc not in supp
        for b in range(a + 2, n + 1):
            acc = op(acc, degs[b - 1])
            prod[a][b] = acc
            escaped = escaped or acc not in supp
    if escaped:
        return ProductVerdict.FORCED_ZERO

    e = w.monoid.identity
    # Lexicographic scan over cut sequences, pruning prefixes whose last
    # block is not neutral; returns the same first hit as iterating all
    # combinations of cut positions in order.
    neutral_after = [
        [b for b in range(a + 1, n + 1) if prod[a][b] == e] for a in range(n)
    ]

    def extend(cuts):
        pos = cuts[-1]
        if len(cuts) == r + 1:
            return cuts
        if pos >= n:
            return None
        for b in neutral_after[pos]:
            found = extend(cuts + (b,))
            if found:
                return found
        return None

    for s0 in range(n - r + 1):
        found = extend((s0,))
        if found:
            return Decomposition(found)
    return None
