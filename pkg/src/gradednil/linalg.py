"""Exact canonical row forms for module spans.

Two reducers back every span computation:

* ``rref`` puts generators over a field (prime fields, rationals) into the
  reduced row echelon form, which is the unique canonical basis of the row
  space.
* ``howell`` puts generators over Z/mZ into the Howell normal form.  Over a
  residue ring plain echelon forms are not canonical and do not support
  membership tests, because leading entries can be zero divisors.  The Howell
  form fixes both: pivots divide the modulus, entries above a pivot are
  reduced modulo it, and for every pivot the annihilator multiple of its row
  is re-absorbed so that any span vector supported on a column suffix is
  reachable by greedy reduction.

Rows are tuples of normalized coefficients; the canonical form of a span is
the tuple of its nonzero rows ordered by pivot column.  Nothing here knows
about rings; callers supply raw coefficient rows.
"""

from __future__ import annotations

import math


def _xgcd(a, b):
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unit_lift(a, m):
    """A unit u of Z/mZ with u*a == gcd(a, m) (mod m).  Requires a != 0."""
    g = math.gcd(a, m)
    step = m // g
    u = pow((a // g) % step, -1, step) if step > 1 else 1
    while math.gcd(u, m) != 1:
        u += step
    return u % m


def howell(rows, ncols, m):
    """Howell normal form of the Z/mZ-span of ``rows``.

    Returns a tuple of row tuples sorted by pivot column; the result is the
    unique Howell basis of the span, so two generator sets span the same
    module iff their forms are equal.
    """
    pivots = {}  # leading column -> row (list of ints mod m)

    def leading(row):
        for j, v in enumerate(row):
            if v:
                return j
        return None

    def push_annihilator(row, work):
        ann = m // math.gcd(row[leading(row)], m)
        if ann != 1:
            work.append([(ann * v) % m for v in row])

    work = [[v % m for v in row] for row in rows]
    while work:
        row = work.pop()
        j = leading(row)
        while j is not None:
            if j not in pivots:
                pivots[j] = row
                push_annihilator(row, work)
                break
            piv = pivots[j]
            a, b = piv[j], row[j]
            if b % a:
                # Improve the pivot to gcd(a, b) with the unimodular 2x2
                # transform (so the joint span is preserved exactly), then
                # re-emit the improved pivot's annihilator.
                g, x, y = _xgcd(a, b)
                newp = [(x * piv[t] + y * row[t]) % m for t in range(ncols)]
                row = [((a // g) * row[t] - (b // g) * piv[t]) % m for t in range(ncols)]
                pivots[j] = newp
                push_annihilator(newp, work)
            else:
                q = b // a
                row = [(row[t] - q * piv[t]) % m for t in range(ncols)]
            j = leading(row)

    # Normalize pivots to divisors of m, then reduce entries above each pivot
    # into 0..pivot-1, walking pivot columns left to right so that later
    # reductions cannot disturb finished columns.
    cols = sorted(pivots)
    for j in cols:
        row = pivots[j]
        u = _unit_lift(row[j], m)
        pivots[j] = [(u * v) % m for v in row]
    for j in cols:
        p = pivots[j][j]
        for j2 in cols:
            if j2 >= j:
                continue
            row = pivots[j2]
            q = row[j] // p
            if q:
                pivots[j2] = [(row[t] - q * pivots[j][t]) % m for t in range(ncols)]
    return tuple(tuple(pivots[j]) for j in cols)


def howell_contains(form, vec, m):
    """Membership of ``vec`` in the span with Howell form ``form``."""
    v = [x % m for x in vec]
    for row in form:
        j = next(t for t, x in enumerate(row) if x)
        if v[j]:
            p = row[j]
            if v[j] % p:
                return False
            q = v[j] // p
            v = [(v[t] - q * row[t]) % m for t in range(len(v))]
    return not any(v)


def rref(rows, ncols, dom):
    """Reduced row echelon form over a field domain (fp or rat)."""
    pivots = {}  # leading column -> row

    def reduce(row):
        row = list(row)
        for j in sorted(pivots):
            if not dom.is_zero(row[j]):
                c = row[j]
                prow = pivots[j]
                row = [dom.sub(row[t], dom.mul(c, prow[t])) for t in range(ncols)]
        return row

    for row in rows:
        row = reduce([dom.normalize(v) for v in row])
        lead = next((j for j, v in enumerate(row) if not dom.is_zero(v)), None)
        if lead is None:
            continue
        inv = dom.inv(row[lead])
        row = [dom.mul(inv, v) for v in row]
        for j, prow in list(pivots.items()):
            c = prow[lead]
            if not dom.is_zero(c):
                pivots[j] = [dom.sub(prow[t], dom.mul(c, row[t])) for t in range(ncols)]
        pivots[lead] = row
    return tuple(tuple(pivots[j]) for j in sorted(pivots))


def rref_contains(form, vec, dom):
    v = [dom.normalize(x) for x in vec]
    for row in form:
        j = next(t for t, x in enumerate(row) if not dom.is_zero(x))
        if not dom.is_zero(v[j]):
            c = v[j]
            v = [dom.sub(v[t], dom.mul(c, row[t])) for t in range(len(v))]
    return all(dom.is_zero(x) for x in v)
