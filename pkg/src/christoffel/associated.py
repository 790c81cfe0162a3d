"""Associated (dual) polynomials and the two identities that bridge them.

For a fixed anchor degree n the associated sequence S_0, ..., S_n runs the
recurrence coefficients in reversed index order:

    S_m(x) = (x - C(n - m + 1)) S_{m-1}(x) - Lambda(n - m + 2) S_{m-2}(x),

seeded with S_0 = 1, S_{-1} = 0.  Each S_m is monic of exact degree m and
the sequence depends on the anchor, not only on m.

Two identities tie the associated polynomials to the base sequence and are
exposed here as relative residual checks:

* the bridge downwards, for 2 <= m <= n:
      Lambda(n) ... Lambda(n-m+2) p_{n-m} = S_{m-1}^{(n)} p_{n-1} - S_{m-2}^{(n-1)} p_n
  (the coefficient product has m-1 factors; for m = 2 it is just Lambda(n));

* the extension upwards, for n >= 1, m >= 0:
      p_{n+m} = S_m^{(n+m)} p_n - Lambda(n+1) S_{m-1}^{(n+m)} p_{n-1}.
"""

from __future__ import annotations

from functools import lru_cache

from mpmath import mp

from .core import DEFAULT_POLICY, Polynomial, TolerancePolicy, X, relative_residual, to_scalar
from .families import RecurrenceFamily, _ladder


class AssociatedSequence:
    """Lazily extended cache of S_0 .. S_n for one family and anchor.

    Construction is cheap; polynomials are built on first request and kept.
    Safe for concurrent reads once fully built.
    """

    def __init__(self, family: RecurrenceFamily, n: int, policy: TolerancePolicy = DEFAULT_POLICY):
        family.require_degree(n)
        self.family = family
        self.n = n
        self.precision_bits = policy.precision_bits
        self._polys = [Polynomial([1])]

    def poly(self, m: int) -> Polynomial:
        if not 0 <= m <= self.n:
            raise ValueError(f"order {m} outside 0..{self.n} for anchor {self.n}")
        with mp.workprec(self.precision_bits):
            while len(self._polys) <= m:
                j = len(self._polys)  # building S_j
                head = X - Polynomial([self.family.C(self.n - j + 1)])
                if j == 1:
                    self._polys.append(head)
                else:
                    lam = self.family.Lambda(self.n - j + 2)
                    self._polys.append(head * self._polys[j - 1] - lam * self._polys[j - 2])
        return self._polys[m]


@lru_cache(maxsize=None)
def _sequence(family: RecurrenceFamily, n: int, prec: int) -> AssociatedSequence:
    return AssociatedSequence(family, n, TolerancePolicy(precision_bits=prec))


def associated(family: RecurrenceFamily, n: int, m: int, policy: TolerancePolicy = DEFAULT_POLICY) -> Polynomial:
    """S_m anchored at n: monic, exact degree m."""
    return _sequence(family, n, policy.precision_bits).poly(m)


def associated_identity_residual(
    family: RecurrenceFamily, n: int, m: int, x, policy: TolerancePolicy = DEFAULT_POLICY
) -> mp.mpf:
    """Relative residual of the downward bridge identity at a point, 2 <= m <= n."""
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    family.require_degree(n)
    with policy.workprec():
        x = to_scalar(x)
        ladder = _ladder(family, n, policy.precision_bits)
        prefix = mp.mpf(1)
        for t in range(n - m + 2, n + 1):
            prefix *= family.Lambda(t)
        t1 = prefix * ladder[n - m](x)
        t2 = associated(family, n, m - 1, policy)(x) * ladder[n - 1](x)
        t3 = associated(family, n - 1, m - 2, policy)(x) * ladder[n](x)
        return relative_residual(t1 - t2 + t3, (t1, t2, t3))


def extension_identity_residual(
    family: RecurrenceFamily, n: int, m: int, x, policy: TolerancePolicy = DEFAULT_POLICY
) -> mp.mpf:
    """Relative residual of the upward extension identity at a point."""
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    family.require_degree(n + m)
    with policy.workprec():
        x = to_scalar(x)
        ladder = _ladder(family, n + m, policy.precision_bits)
        t1 = ladder[n + m](x)
        t2 = associated(family, n + m, m, policy)(x) * ladder[n](x)
        if m == 0:
            t3 = mp.mpf(0)
        else:
            t3 = family.Lambda(n + 1) * associated(family, n + m, m - 1, policy)(x) * ladder[n - 1](x)
        return relative_residual(t1 - t2 + t3, (t1, t2, t3))
