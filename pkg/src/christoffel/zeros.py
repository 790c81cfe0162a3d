"""Zeros, Gauss rules, interlacing verdicts and inner bounds for extreme zeros.

Zeros of the degree-n family member are the eigenvalues of the symmetric
tridiagonal Jacobi matrix with diagonal C(1..n) and off-diagonal
sqrt(Lambda(2..n)).  They are located by bisection on the Sturm negative
pivot count (which needs only the Lambda values, no square roots) and then
polished by safeguarded Newton iteration on the recurrence evaluation of
p_n.  Eigenvalues of a symmetric tridiagonal are perfectly conditioned;
root-finding on monic coefficients at n = 30 is not, which is why the
coefficients are never touched here.

The inner bounds B_n(k), k in {0, 1, 2}, are the roots of the linear
connection coefficient G in the gap-2 decomposition; they sit strictly
between the extreme zeros of p_n.  Closed forms:

    Meixner-Pollaczek: B_n(k) = -(lam)_k (lam)_n / ((lam)_{n+k-1} tan(phi)),
    evaluated in cancelled form (no large Pochhammer ratios):
        B_n(0) = -(lam+n-1) cot(phi)
        B_n(1) = -lam cot(phi)
        B_n(2) = -lam (lam+1) cot(phi) / (lam+n)

    Pseudo-Jacobi:
        B_n(0) = -a b / ((a+n)(a+n-1))
        B_n(1) = -b / (a+n)
        B_n(2) = -b / (a+1)
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .core import DEFAULT_POLICY, Polynomial, TolerancePolicy, to_scalar
from .families import (
    MEIXNER_POLLACZEK,
    PSEUDO_JACOBI,
    RecurrenceFamily,
    _snapped_cot,
    eval_with_derivative,
)


@dataclass(frozen=True)
class ZeroSet:
    """Strictly ascending real zeros of one family member."""

    values: tuple
    label: str
    degree: int

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class InterlaceVerdict:
    """strict: alternation holds with all zeros distinct; common: coincidences found."""

    strict: bool
    common: tuple = ()


@dataclass(frozen=True)
class BoundReport:
    n: int
    bounds: dict
    x_min: mp.mpf
    x_max: mp.mpf
    separated: dict
    ordering_ok: bool
    label: str


@dataclass(frozen=True)
class StieltjesVerdict:
    """Outcome of the gap-2 interlacing check against the modified sequence.

    ``branch`` is "coprime" when p_n and g_{n-2,k} share no zero, otherwise
    "common_zero".  ``violations`` lists every failed assertion; an instance
    never passes silently.
    """

    label: str
    n: int
    k: int
    branch: str
    bound: mp.mpf
    ok: bool
    common: tuple = ()
    violations: tuple = ()


def _count_below(diag, offsq, x, tiny):
    """Eigenvalues of the Jacobi matrix strictly below x (Sturm pivot count)."""
    count = 0
    d = diag[0] - x
    if d == 0:
        d = -tiny
    if d < 0:
        count += 1
    for j in range(1, len(diag)):
        d = (diag[j] - x) - offsq[j - 1] / d
        if d == 0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def _polish(family, n, lo, hi, policy):
    """Newton on p_n from the centre of the isolating bracket (lo, hi).

    The bracket is already a few dozen bits wide, so plain Newton converges
    quadratically; iterates are merely clamped to an inflated copy of the
    bracket.  Termination is on the step size reaching the precision floor,
    not on sign tests, which become meaningless roundoff at the end.
    """
    w0 = max(hi - lo, mp.ldexp(max(1, abs(lo)), -mp.prec))
    x = (lo + hi) / 2
    eps_stop = mp.ldexp(1, -(mp.prec - 8))
    floor_step = mp.ldexp(w0, -16)
    prev_step = None
    for _ in range(150):
        p, dp = eval_with_derivative(family, n, x, policy)
        if p == 0 or dp == 0:
            return x
        xn = x - p / dp
        if xn < lo - w0:
            xn = lo - w0
        elif xn > hi + w0:
            xn = hi + w0
        step = abs(xn - x)
        if step <= eps_stop * max(1, abs(xn)):
            return xn
        if prev_step is not None and step >= prev_step and prev_step <= floor_step:
            return x
        prev_step = step
        x = xn
    return x


def zeros_golub_welsch(family: RecurrenceFamily, n: int, policy: TolerancePolicy = DEFAULT_POLICY) -> ZeroSet:
    """All n zeros of the degree-n member, ascending, at working precision."""
    family.require_degree(n)
    if n == 0:
        return ZeroSet((), family.label, 0)
    with policy.workprec():
        diag = [family.C(j) for j in range(1, n + 1)]
        offsq = []
        for j in range(2, n + 1):
            lam = family.Lambda(j)
            if not lam > 0:
                raise ValueError(
                    f"Lambda({j}) = {mp.nstr(lam, 8)} not positive for {family.label}; "
                    "Jacobi matrix is not defined"
                )
            offsq.append(lam)
        if n == 1:
            values = [diag[0]]
        else:
            # Bracketing needs only isolation, not accuracy, so the Sturm
            # bisection runs at 64 bits; the Newton polish below restores
            # full working precision.
            brackets = []
            with mp.workprec(64):
                d64 = [+c for c in diag]
                o64 = [+l for l in offsq]
                beta = [mp.sqrt(l) for l in o64]
                lo = hi = d64[0]
                for i in range(n):
                    r = (beta[i - 1] if i > 0 else mp.mpf(0)) + (beta[i] if i < n - 1 else mp.mpf(0))
                    lo = min(lo, d64[i] - r)
                    hi = max(hi, d64[i] + r)
                pad = max(hi - lo, mp.mpf(1)) * mp.mpf("0.001")
                lo -= pad
                hi += pad
                spread = hi - lo
                tiny = mp.ldexp(max(spread, mp.mpf(1)), -120)
                width_target = spread * mp.ldexp(1, -44)
                for i in range(1, n + 1):
                    a, b = lo, hi
                    while b - a > width_target:
                        mid = (a + b) / 2
                        if _count_below(d64, o64, mid, tiny) >= i:
                            b = mid
                        else:
                            a = mid
                    brackets.append((a, b))
            values = [_polish(family, n, a, b, policy) for a, b in brackets]
        values.sort()
        for u, v in zip(values, values[1:]):
            if not v - u > policy.abs_tol:
                raise ArithmeticError(
                    f"zeros of {family.label} degree {n} are not simple at tolerance: "
                    f"{mp.nstr(u, 12)} vs {mp.nstr(v, 12)}"
                )
        return ZeroSet(tuple(values), family.label, n)


def gauss_rule(family: RecurrenceFamily, n: int, policy: TolerancePolicy = DEFAULT_POLICY):
    """Gauss nodes and weights for the family's weight, total mass normalised to 1.

    Weights come from the Christoffel function: w_i is the reciprocal of
    sum_j p_j(x_i)^2 / h_j over j < n with h_j the squared norms, which
    equals the squared-first-eigenvector-component formula without forming
    eigenvectors.
    """
    if n < 1:
        raise ValueError("Gauss rule needs n >= 1")
    nodes = zeros_golub_welsch(family, n, policy)
    with policy.workprec():
        h = [mp.mpf(1)]
        for j in range(2, n + 1):
            h.append(h[-1] * family.Lambda(j))
        weights = []
        for x in nodes.values:
            p_prev, p = mp.mpf(0), mp.mpf(1)  # p_{-1}, p_0
            denom = mp.mpf(1)  # j = 0 term
            for j in range(1, n):
                lam = family.Lambda(j) if j >= 2 else mp.mpf(0)
                p, p_prev = (x - family.C(j)) * p - lam * p_prev, p
                denom += p * p / h[j]
            weights.append(1 / denom)
        total = sum(weights)
        weights = [w / total for w in weights]
        return nodes, tuple(weights)


def _values(zs) -> tuple:
    if isinstance(zs, ZeroSet):
        return zs.values
    return tuple(sorted(to_scalar(v) for v in zs))


def _local_gap(sorted_vals, idx) -> mp.mpf:
    gaps = []
    if idx > 0:
        gaps.append(sorted_vals[idx] - sorted_vals[idx - 1])
    if idx + 1 < len(sorted_vals):
        gaps.append(sorted_vals[idx + 1] - sorted_vals[idx])
    return min(gaps) if gaps else mp.mpf(1)


def _coincidences(inner, outer, policy):
    """Pairs (i, j) with inner[i] matching outer[j] within the scaled tolerance."""
    matches = []
    for i, u in enumerate(inner):
        best_j = min(range(len(outer)), key=lambda j: abs(outer[j] - u)) if outer else None
        if best_j is None:
            continue
        thr = policy.abs_tol * max(1, _local_gap(outer, best_j))
        if abs(outer[best_j] - u) <= thr:
            matches.append((i, best_j))
    return matches


def interlace_strict(inner, outer, policy: TolerancePolicy = DEFAULT_POLICY) -> InterlaceVerdict:
    """Strict interlacing of |inner| zeros between |inner|+1 outer zeros.

    Coincidences within the scaled tolerance are reported through ``common``
    instead of being silently counted either way.
    """
    a = _values(inner)
    b = _values(outer)
    if len(b) != len(a) + 1:
        raise ValueError(f"outer set must have one more zero than inner ({len(b)} vs {len(a)})")
    with policy.workprec():
        matches = _coincidences(a, b, policy)
        if matches:
            return InterlaceVerdict(strict=False, common=tuple(a[i] for i, _ in matches))
        ok = all(b[i] < a[i] < b[i + 1] for i in range(len(a)))
        return InterlaceVerdict(strict=ok)


def mp_bound(lam, phi, n: int, k: int, policy: TolerancePolicy = DEFAULT_POLICY) -> mp.mpf:
    """Inner bound B_n(k) for Meixner-Pollaczek extreme zeros, k in {0, 1, 2}."""
    if k not in (0, 1, 2):
        raise ValueError("bound order k must be 0, 1 or 2")
    if n < 1:
        raise ValueError("bound needs n >= 1")
    with policy.workprec():
        lam = to_scalar(lam)
        phi = to_scalar(phi)
        if not lam > 0:
            raise ValueError(f"lambda must be positive, got {lam}")
        if not (0 < phi < mp.pi):
            raise ValueError(f"phi must lie strictly in (0, pi), got {phi}")
        cot = _snapped_cot(phi)
        if k == 0:
            return -(lam + n - 1) * cot
        if k == 1:
            return -lam * cot
        return -lam * (lam + 1) / (lam + n) * cot


def pj_bound(a, b, n: int, k: int, policy: TolerancePolicy = DEFAULT_POLICY) -> mp.mpf:
    """Inner bound B_n(k) for Pseudo-Jacobi extreme zeros, k in {0, 1, 2}."""
    if k not in (0, 1, 2):
        raise ValueError("bound order k must be 0, 1 or 2")
    with policy.workprec():
        a = to_scalar(a)
        b = to_scalar(b)
        if not a < -n:
            raise ValueError(f"Pseudo-Jacobi bounds need a < -n, got a={a}, n={n}")
        if k == 0:
            return -a * b / ((a + n) * (a + n - 1))
        if k == 1:
            return -b / (a + n)
        return -b / (a + 1)


def _family_bound(family: RecurrenceFamily, n: int, k: int, policy: TolerancePolicy) -> mp.mpf:
    if family.kind == MEIXNER_POLLACZEK:
        return mp_bound(family.params["lambda"], family.params["phi"], n, k, policy)
    if family.kind == PSEUDO_JACOBI:
        return pj_bound(family.params["a"], family.params["b"], n, k, policy)
    raise ValueError(f"no closed-form bounds for {family.label}")


def bound_separation(family: RecurrenceFamily, n: int, policy: TolerancePolicy = DEFAULT_POLICY) -> BoundReport:
    """All three bounds, the extreme zeros, separation flags and the ordering check.

    Ordering: Meixner-Pollaczek has B(0) < B(1) < B(2) for phi < pi/2 and the
    reverse for phi > pi/2 (all zero at pi/2); Pseudo-Jacobi has
    B(2) < B(1) < B(0) for b > 0, the reverse for b < 0, all zero at b = 0.
    """
    if n < 2:
        raise ValueError("bound separation needs n >= 2")
    with policy.workprec():
        bounds = {k: _family_bound(family, n, k, policy) for k in (0, 1, 2)}
        zs = zeros_golub_welsch(family, n, policy)
        x_min, x_max = zs[0], zs[-1]
        separated = {k: bool(x_min < bounds[k] < x_max) for k in (0, 1, 2)}
        if family.kind == MEIXNER_POLLACZEK:
            sign = _snapped_cot(family.params["phi"])
        else:
            sign = family.params["b"]
        if sign == 0:
            ordering = all(bounds[k] == 0 for k in (0, 1, 2))
        elif sign > 0:
            # cot > 0 pushes MP bounds negative with B(0) lowest; b > 0 puts
            # PJ bounds positive with B(0) highest.  Both read the same way.
            if family.kind == MEIXNER_POLLACZEK:
                ordering = bounds[0] < bounds[1] < bounds[2]
            else:
                ordering = bounds[2] < bounds[1] < bounds[0]
        else:
            if family.kind == MEIXNER_POLLACZEK:
                ordering = bounds[2] < bounds[1] < bounds[0]
            else:
                ordering = bounds[0] < bounds[1] < bounds[2]
        return BoundReport(
            n=n,
            bounds=bounds,
            x_min=x_min,
            x_max=x_max,
            separated=separated,
            ordering_ok=bool(ordering),
            label=family.label,
        )


def stieltjes_check(family: RecurrenceFamily, k: int, n: int, policy: TolerancePolicy = DEFAULT_POLICY) -> StieltjesVerdict:
    """Gap-2 Stieltjes interlacing checks between p_n and the order-k modified g_{n-2}.

    Co-prime branch: the n-1 zeros of (x - B_n(k)) g_{n-2,k} must interlace
    the n zeros of p_n, with B_n(k) strictly inside the extreme zeros.
    Common-zero branch: exactly one shared zero, equal to B_n(k), interior;
    the n-2 zeros of g interlace the n-1 non-common zeros of p_n.
    """
    if k not in (0, 1, 2):
        raise ValueError("modifier order k must be 0, 1 or 2 for the gap-2 check")
    if n < 2:
        raise ValueError("check needs n >= 2")
    family.require_degree(n)
    shifted = family if k == 0 else family.shifted(k)
    shifted.require_degree(n - 2)
    with policy.workprec():
        bound = _family_bound(family, n, k, policy)
        zp = zeros_golub_welsch(family, n, policy)
        zg = zeros_golub_welsch(shifted, n - 2, policy)
        matches = _coincidences(zg.values, zp.values, policy)
        violations = []
        if not matches:
            branch = "coprime"
            near_g = _coincidences((bound,), zg.values, policy) if zg.values else []
            if near_g:
                violations.append("bound coincides with a zero of the modified polynomial")
            combined = tuple(sorted(zg.values + (bound,)))
            verdict = interlace_strict(combined, zp, policy)
            if verdict.common:
                violations.append(
                    f"common zeros detected between (x-B) g and p_n at {verdict.common}"
                )
            elif not verdict.strict:
                violations.append("zeros of (x-B) g do not interlace the zeros of p_n")
            if not zp[0] < bound < zp[-1]:
                violations.append("bound is not strictly inside the extreme zeros")
            common_vals = ()
        else:
            branch = "common_zero"
            common_vals = tuple(zp[j] for _, j in matches)
            if len(matches) != 1:
                violations.append(f"expected exactly one common zero, found {len(matches)}")
            for _, j in matches:
                thr = policy.abs_tol * max(1, _local_gap(zp.values, j))
                if abs(zp[j] - bound) > thr:
                    violations.append(
                        f"common zero {mp.nstr(zp[j], 10)} differs from bound {mp.nstr(bound, 10)}"
                    )
                if j in (0, n - 1):
                    violations.append(f"common zero is an extreme zero of p_n (index {j})")
            if len(matches) == 1:
                j = matches[0][1]
                rest = tuple(v for t, v in enumerate(zp.values) if t != j)
                verdict = interlace_strict(zg, rest, policy)
                if not verdict.strict:
                    violations.append(
                        "zeros of g do not interlace the non-common zeros of p_n"
                    )
            if not zp[0] < bound < zp[-1]:
                violations.append("bound is not strictly inside the extreme zeros")
        return StieltjesVerdict(
            label=family.label,
            n=n,
            k=k,
            branch=branch,
            bound=bound,
            ok=not violations,
            common=common_vals,
            violations=tuple(violations),
        )


def polynomial_real_roots(p: Polynomial, policy: TolerancePolicy = DEFAULT_POLICY):
    """(sorted real roots, number of nonreal roots) of a small dense polynomial.

    General-purpose root finder for the connection coefficient G, whose roots
    carry no orthogonality structure; degrees here stay below ~15.
    """
    if p.degree < 1:
        return [], 0
    with policy.workprec():
        if p.degree == 1:
            return [-p.coeffs[0] / p.coeffs[1]], 0
        desc = list(reversed(p.coeffs))
        try:
            roots = mp.polyroots(desc, maxsteps=200, extraprec=policy.precision_bits)
        except mp.NoConvergence:
            roots = mp.polyroots(desc, maxsteps=1000, extraprec=4 * policy.precision_bits)
        real = []
        nonreal = 0
        for z in roots:
            z = mp.mpc(z)
            if abs(z.imag) <= policy.abs_tol * max(1, abs(z)):
                real.append(z.real)
            else:
                nonreal += 1
        real.sort()
        return real, nonreal
