"""q-index pairing, q-Euler characteristic and the class algebra shadow.

Projective module classes are integer vectors up to a common shift; the
q-index pairs a class with a signature, and at the trivial signature it
becomes the q-Euler characteristic, a shift-invariant q-deformation of the
classical Euler number of flag-variety line bundles.  The class algebra is
checked only through its numeric shadow: the relation values are
q-binomials and the characteristic is additive across fixed total weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .scalars import ScalarDomain
from .casimir import q_dimension
from .identities import compositions


class EulerError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleClass:
    """Integer vector modulo common shifts; equality is on canonical form."""
    k: Tuple[int, ...]

    def canonical(self) -> Tuple[int, ...]:
        low = min(self.k)
        return tuple(x - low for x in self.k)

    def __eq__(self, other):
        if not isinstance(other, ModuleClass):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __mul__(self, other: "ModuleClass") -> "ModuleClass":
        if len(self.k) != len(other.k):
            raise EulerError("class length mismatch")
        return ModuleClass(tuple(a + b for a, b in zip(self.k, other.k)))


def q_index_and_euler(k: Sequence[int], p: int, domain: ScalarDomain,
                      lam: Optional[Sequence[int]] = None):
    """Product over pairs of (lam_i - lam_j + k_i - k_j + i - j)_q / (i - j)_q.

    With lam omitted this is the q-Euler characteristic chi_q, invariant
    under shifting k by a common integer; the classical Euler number is its
    value at q -> 1 (the same formula over an evaluated domain).
    """
    k = list(k)
    if len(k) != p:
        raise EulerError(f"expected a length-{p} vector, got {len(k)}")
    if lam is None:
        lam = [0] * p
    else:
        lam = list(lam)
        if len(lam) != p:
            raise EulerError("signature length mismatch")
    out = domain.one
    for i in range(p):
        for j in range(i + 1, p):
            e = lam[i] - lam[j] + k[i] - k[j] + (i + 1) - (j + 1)
            out = out * domain.q_int(e) / domain.q_int((i + 1) - (j + 1))
    return out


def classical_euler(k: Sequence[int], p: int) -> Fraction:
    """Classical Euler number: the q -> 1 limit, taken term by term."""
    k = list(k)
    if len(k) != p:
        raise EulerError(f"expected a length-{p} vector, got {len(k)}")
    out = Fraction(1)
    for i in range(p):
        for j in range(i + 1, p):
            out *= Fraction(k[i] - k[j] + (i + 1) - (j + 1), (i + 1) - (j + 1))
    return out


def q_algebra_check(p: int, domain: ScalarDomain, m_max: int = 5) -> dict:
    """Numeric shadow of the class-algebra relations.

    (a) the relation right-hand sides are q-binomials (the q-dimensions of
    the wedge powers); (b) the characteristic is linear across each total
    weight: the chi_q values over all length-p weight-m vectors sum to the
    q-dimension of the symmetric power, for m up to m_max.
    """
    if p < 2:
        raise EulerError("p must be at least 2")
    report = {}
    for k in range(p + 1):
        lhs = q_dimension([1] * k, p, domain)
        rhs = domain.q_binomial(p, k)
        report[f"wedge_dim_k{k}"] = (lhs == rhs)
    for m in range(1, m_max + 1):
        total = domain.zero
        for kvec in compositions(m, p):
            total = total + q_index_and_euler(list(kvec), p, domain)
        expected = q_dimension([m], p, domain)
        report[f"euler_sum_m{m}"] = (total == expected)
    return report
