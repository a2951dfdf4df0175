"""Exact computation with monoid-graded rings.

Builds rings from structure constants over Z/mZ, prime fields, or the
rationals, attaches left-cancellative monoid gradings, computes supports,
components, nil and nilpotency indices, and verifies a registry of explicit
nilpotency bounds against the computed values.
"""

__version__ = "0.1.0"
