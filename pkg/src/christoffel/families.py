"""Orthogonal polynomial families defined by their three-term recurrences.

A family is the pair of coefficient maps C(n), Lambda(n) in the monic
recurrence

    p_n(x) = (x - C(n)) p_{n-1}(x) - Lambda(n) p_{n-2}(x),   p_0 = 1,

together with a validity range.  Lambda(n) > 0 over the whole range is what
makes the sequence orthogonal with respect to a positive weight, hence real
simple zeros and a symmetric Jacobi matrix.

Built-in families:

* Meixner-Pollaczek, parameters lambda > 0 and 0 < phi < pi:
      C(n) = -(lambda + n - 1) cot(phi)
      Lambda(n) = (n - 1)(2 lambda + n - 2) / (4 sin(phi)^2)
  valid for every degree.

* Pseudo-Jacobi, parameters a, b with a < -2:
      C(n) = -a b / ((a + n - 1)(a + n))
      Lambda(n) = -(n-1)(2a + n - 1)((a + n - 1)^2 + b^2)
                  / ((a + n - 1)^2 (4 (a + n - 1)^2 - 1))
  valid for degrees n with a < -n only.

Both support the canonical even weight modification: multiplying the weight
by the even polynomial ``c_{2k}`` produced by :func:`even_modifier` shifts
the family parameter (lambda -> lambda + k, a -> a + k), which is the cheap
independent route to the modified polynomials used as an oracle for the
determinant-based Christoffel transform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Optional

from mpmath import mp

from .core import DEFAULT_POLICY, Polynomial, TolerancePolicy, X, relative_residual, to_scalar

MEIXNER_POLLACZEK = "meixner_pollaczek"
PSEUDO_JACOBI = "pseudo_jacobi"
CUSTOM = "custom"


def _snapped_cot(phi):
    """cos(phi)/sin(phi), snapped to exactly 0 when phi is pi/2 to working precision.

    Computed as a quotient of cos and sin, never 1/tan: tan blows up at pi/2
    while cot is finite there, and phi = 1.57 sits right next to the pole.
    """
    c = mp.cos(phi)
    if abs(c) <= mp.ldexp(1, -mp.prec + 4):
        return mp.mpf(0)
    return c / mp.sin(phi)


@dataclass(frozen=True, eq=False)
class RecurrenceFamily:
    """Recurrence coefficient provider plus parameter record and validity range.

    ``max_valid_degree`` is None for an unbounded family.  Instances are
    immutable and compared by identity, which lets the module-level caches
    key generated polynomials on the family object itself.
    """

    kind: str
    params: Mapping[str, mp.mpf]
    C: Callable[[int], mp.mpf]
    Lambda: Callable[[int], mp.mpf]
    max_valid_degree: Optional[int]
    label: str
    precision_bits: int = 256

    def require_degree(self, n: int):
        if n < 0:
            raise ValueError(f"degree must be nonnegative, got {n}")
        if self.max_valid_degree is not None and n > self.max_valid_degree:
            raise ValueError(
                f"degree {n} exceeds the validity range of {self.label} "
                f"(max valid degree {self.max_valid_degree})"
            )

    @property
    def supports_shift(self) -> bool:
        return self.kind in (MEIXNER_POLLACZEK, PSEUDO_JACOBI)

    def shifted(self, k: int) -> "RecurrenceFamily":
        """The family orthogonal with respect to c_{2k}(x) w(x), via parameter shift."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        policy = TolerancePolicy(precision_bits=self.precision_bits)
        # the parameter sum must round at the family's precision, not at
        # whatever ambient precision the caller happens to be running under
        with policy.workprec():
            if self.kind == MEIXNER_POLLACZEK:
                lam = self.params["lambda"] + k
            elif self.kind == PSEUDO_JACOBI:
                a = self.params["a"] + k
            else:
                raise ValueError(f"{self.label} has no canonical parameter shift")
        if self.kind == MEIXNER_POLLACZEK:
            return mp_family(lam, self.params["phi"], policy)
        return pj_family(a, self.params["b"], policy)


def mp_family(lam, phi, policy: TolerancePolicy = DEFAULT_POLICY) -> RecurrenceFamily:
    """Monic Meixner-Pollaczek family, lambda > 0, 0 < phi < pi (open interval)."""
    with policy.workprec():
        lam = to_scalar(lam)
        phi = to_scalar(phi)
        if not lam > 0:
            raise ValueError(f"lambda must be positive, got {lam}")
        if not (0 < phi < mp.pi):
            raise ValueError(f"phi must lie strictly in (0, pi), got {phi}")
        cot = _snapped_cot(phi)
        inv_four_sin2 = 1 / (4 * mp.sin(phi) ** 2)

    def C(n: int):
        return -(lam + n - 1) * cot

    def Lambda(n: int):
        return (n - 1) * (2 * lam + n - 2) * inv_four_sin2

    return RecurrenceFamily(
        kind=MEIXNER_POLLACZEK,
        params={"lambda": lam, "phi": phi},
        C=C,
        Lambda=Lambda,
        max_valid_degree=None,
        label=f"MP(lambda={mp.nstr(lam, 10)}, phi={mp.nstr(phi, 10)})",
        precision_bits=policy.precision_bits,
    )


def pj_family(a, b, policy: TolerancePolicy = DEFAULT_POLICY) -> RecurrenceFamily:
    """Monic Pseudo-Jacobi family, valid for degrees n with a < -n (strict)."""
    with policy.workprec():
        a = to_scalar(a)
        b = to_scalar(b)
        if not a < -2:
            raise ValueError(f"parameter a must satisfy a < -2, got {a}")
        nmax = int(mp.floor(-a))
        if mp.mpf(nmax) == -a:
            nmax -= 1

    def C(n: int):
        return -a * b / ((a + n - 1) * (a + n))

    def Lambda(n: int):
        an1 = a + n - 1
        return -(n - 1) * (2 * a + n - 1) * (an1 * an1 + b * b) / (an1 * an1 * (4 * an1 * an1 - 1))

    return RecurrenceFamily(
        kind=PSEUDO_JACOBI,
        params={"a": a, "b": b},
        C=C,
        Lambda=Lambda,
        max_valid_degree=nmax,
        label=f"PJ(a={mp.nstr(a, 10)}, b={mp.nstr(b, 10)})",
        precision_bits=policy.precision_bits,
    )


def custom_family(
    C: Callable[[int], mp.mpf],
    Lambda: Callable[[int], mp.mpf],
    max_valid_degree: Optional[int] = None,
    label: str = "custom",
    params: Optional[Mapping[str, mp.mpf]] = None,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> RecurrenceFamily:
    return RecurrenceFamily(
        kind=CUSTOM,
        params=dict(params or {}),
        C=C,
        Lambda=Lambda,
        max_valid_degree=max_valid_degree,
        label=label,
        precision_bits=policy.precision_bits,
    )


@lru_cache(maxsize=None)
def _ladder(family: RecurrenceFamily, n: int, prec: int) -> tuple:
    with mp.workprec(prec):
        if n == 0:
            return (Polynomial([1]),)
        prev = _ladder(family, n - 1, prec)
        if n == 1:
            p = Polynomial([-family.C(1), 1])
        else:
            lam = family.Lambda(n)
            if not lam > 0:
                raise ValueError(
                    f"Lambda({n}) = {mp.nstr(lam, 8)} is not positive for {family.label}; "
                    "recurrence is outside the orthogonality range"
                )
            p = (X - Polynomial([family.C(n)])) * prev[-1] - lam * prev[-2]
        return prev + (p,)


def generate(family: RecurrenceFamily, n: int, policy: TolerancePolicy = DEFAULT_POLICY) -> Polynomial:
    """Monic degree-n polynomial of the family, built by iterating the recurrence."""
    family.require_degree(n)
    return _ladder(family, n, policy.precision_bits)[n]


def generate_all(family: RecurrenceFamily, n: int, policy: TolerancePolicy = DEFAULT_POLICY) -> list:
    """The whole ladder p_0, ..., p_n (cached; cheap to call repeatedly)."""
    family.require_degree(n)
    return list(_ladder(family, n, policy.precision_bits))


def eval_with_derivative(family: RecurrenceFamily, n: int, x, policy: TolerancePolicy = DEFAULT_POLICY):
    """(p_n(x), p_n'(x)) straight from the recurrence, without forming coefficients.

    The recurrence evaluation is far better conditioned than Horner on monic
    coefficients at n = 30, which is what the Newton polish in the zero
    solver relies on.
    """
    family.require_degree(n)
    with policy.workprec():
        x = to_scalar(x)
        p_prev, p = mp.mpf(1), mp.mpf(0)  # p_0, p_{-1}
        d_prev, d = mp.mpf(0), mp.mpf(0)
        if n == 0:
            return p_prev, d_prev
        p, p_prev = p_prev, p  # now p = p_0, p_prev = p_{-1}
        d, d_prev = d_prev, d
        for j in range(1, n + 1):
            lam = family.Lambda(j) if j >= 2 else mp.mpf(0)
            xc = x - family.C(j)
            # order matters: the derivative update reads p_prev after the
            # value update, when it already holds p_{j-1}
            p, p_prev = xc * p - lam * p_prev, p
            d, d_prev = p_prev + xc * d - lam * d_prev, d
        return p, d


@dataclass(frozen=True)
class ModifierSpec:
    """An even monic polynomial c_{2k} together with one node per conjugate zero pair.

    ``nodes`` holds x_1, ..., x_k with c(+-x_i) = 0; for the built-in
    families the nodes are purely imaginary.  The determinant form of the
    Christoffel transform requires the node pairs to be pairwise distinct.
    """

    k: int
    c: Polynomial
    nodes: tuple = field(default_factory=tuple)

    def validate(self, policy: TolerancePolicy = DEFAULT_POLICY):
        with policy.workprec():
            if self.k < 0:
                raise ValueError("modifier order k must be nonnegative")
            if self.c.degree != 2 * self.k:
                raise ValueError(
                    f"modifier polynomial has degree {self.c.degree}, expected {2 * self.k}"
                )
            if len(self.nodes) != self.k:
                raise ValueError(f"expected {self.k} nodes, got {len(self.nodes)}")
            if self.k and self.c.coeffs[-1] != 1:
                raise ValueError("modifier polynomial must be monic")
            for i, coeff in enumerate(self.c.coeffs):
                if i % 2 == 1 and coeff != 0:
                    raise ValueError("modifier polynomial must be even in x")
            scale = max(self.c.inf_norm(), mp.mpf(1))
            for z in self.nodes:
                if abs(self.c(z)) > policy.abs_tol * scale:
                    raise ValueError(f"node {z} is not a zero of the modifier polynomial")
            for i in range(len(self.nodes)):
                for j in range(i + 1, len(self.nodes)):
                    if abs(self.nodes[i] - self.nodes[j]) <= policy.abs_tol or abs(
                        self.nodes[i] + self.nodes[j]
                    ) <= policy.abs_tol:
                        raise ValueError(
                            "modifier nodes must be pairwise distinct (up to sign); "
                            f"nodes {i} and {j} coincide"
                        )
        return self

    @classmethod
    def from_nodes(cls, nodes, policy: TolerancePolicy = DEFAULT_POLICY) -> "ModifierSpec":
        """Build c(x) = prod (x^2 - x_i^2) from conjugate-pair representatives.

        The nodes must produce real coefficients (purely imaginary or purely
        real nodes do).
        """
        with policy.workprec():
            c = Polynomial([1])
            clean = []
            for z in nodes:
                z = mp.mpc(z)
                z2 = z * z
                if abs(z2.imag) > policy.abs_tol * max(1, abs(z2)):
                    raise ValueError(f"node {z} would give a non-real modifier polynomial")
                c = c * Polynomial([-z2.real, 0, 1])
                clean.append(z)
            return cls(k=len(clean), c=c, nodes=tuple(clean)).validate(policy)


def even_modifier(family: RecurrenceFamily, k: int, policy: TolerancePolicy = DEFAULT_POLICY) -> ModifierSpec:
    """The canonical even modifier of order k for the family.

    Meixner-Pollaczek: c = prod_{j<k} ((lambda+j)^2 + x^2), nodes i(lambda+j).
    Pseudo-Jacobi: c = (1+x^2)^k with the single node i; k >= 2 repeats the
    node pair +-i, which the determinant construction cannot handle, so it is
    rejected here.  The k = 2 transform is still reachable through the
    parameter shift (see :meth:`RecurrenceFamily.shifted`).
    """
    if k < 0:
        raise ValueError("modifier order k must be nonnegative")
    with policy.workprec():
        if k == 0:
            return ModifierSpec(k=0, c=Polynomial([1]), nodes=())
        if family.kind == MEIXNER_POLLACZEK:
            lam = family.params["lambda"]
            return ModifierSpec.from_nodes(
                [mp.mpc(0, lam + j) for j in range(k)], policy
            )
        if family.kind == PSEUDO_JACOBI:
            if k > 1:
                raise ValueError(
                    "Pseudo-Jacobi modifiers with k >= 2 repeat the node pair +-i; "
                    "use the parameter-shift route instead of the determinant transform"
                )
            return ModifierSpec.from_nodes([mp.mpc(0, 1)], policy)
        raise ValueError(f"{family.label} has no canonical even modifier")


def recurrence_residual(family: RecurrenceFamily, n: int, x, policy: TolerancePolicy = DEFAULT_POLICY) -> mp.mpf:
    """Relative residual of the three-term recurrence at a point, degrees >= 2."""
    if n < 2:
        raise ValueError("recurrence residual needs n >= 2")
    family.require_degree(n)
    with policy.workprec():
        x = to_scalar(x)
        ladder = _ladder(family, n, policy.precision_bits)
        t1 = ladder[n](x)
        t2 = (x - family.C(n)) * ladder[n - 1](x)
        t3 = family.Lambda(n) * ladder[n - 2](x)
        return relative_residual(t1 - t2 + t3, (t1, t2, t3))


@lru_cache(maxsize=None)
def _mp_mirror_pair(lam, phi, prec: int):
    policy = TolerancePolicy(precision_bits=prec)
    fam = mp_family(lam, phi, policy)
    with policy.workprec():
        cot = _snapped_cot(to_scalar(phi))
        lam_s = to_scalar(lam)
        inv_four_sin2 = 1 / (4 * mp.sin(to_scalar(phi)) ** 2)

    # phi -> -phi flips the sign of cot(phi) and leaves Lambda unchanged,
    # so the mirrored recurrence is legal even though -phi itself is not.
    def C(n: int):
        return (lam_s + n - 1) * cot

    def Lambda(n: int):
        return (n - 1) * (2 * lam_s + n - 2) * inv_four_sin2

    mirror = custom_family(C, Lambda, None, label=f"MP-mirror(lambda={lam}, phi={phi})", policy=policy)
    return fam, mirror


def mp_symmetry_residual(lam, phi, n: int, x, policy: TolerancePolicy = DEFAULT_POLICY) -> mp.mpf:
    """Relative defect of P_n(x; phi) = (-1)^n P_n(-x; -phi) for Meixner-Pollaczek."""
    with policy.workprec():
        lam = to_scalar(lam)
        phi = to_scalar(phi)
        x = to_scalar(x)
        fam, mirror = _mp_mirror_pair(lam, phi, policy.precision_bits)
        lhs = generate(fam, n, policy)(x)
        rhs = generate(mirror, n, policy)(-x)
        if n % 2:
            rhs = -rhs
        return relative_residual(lhs - rhs, (lhs, rhs))
