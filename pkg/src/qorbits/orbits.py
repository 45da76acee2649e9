"""Noncommutative orbits: genericity, idempotents, multiplicities, strings.

An orbit is the data of p pairwise distinct eigenvalues (the central
character), a mass parameter and a scalar domain.  This module carries the
spectral decomposition machinery (Lagrange idempotents of an exactly
verified Cayley-Hamilton identity), the classical and quantum multiplicity
formulas with their independent dimension-ratio oracles, the eigenvalue
formulas attached to signatures, the higher Newton identities, and the
string analysis that detects quantized non-generic orbits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .scalars import ScalarDomain
from .tensor import Mat
from .identities import (RootData, ch_verify, compositions,
                         conjecture_roots)
from .casimir import q_dimension


class OrbitError(ValueError):
    pass


# ---------------------------------------------------------------------------
# partitions and signatures
# ---------------------------------------------------------------------------

def is_signature(lam: Sequence[int]) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def signature_dual(lam: Sequence[int]) -> Tuple[int, ...]:
    """The label of the dual module: negate and reverse."""
    return tuple(-x for x in reversed(lam))


def partition_normalize(lam: Sequence[int]) -> Tuple[int, ...]:
    """Shift so the last part is zero (the canonical partition in the class)."""
    if not lam:
        return ()
    last = lam[-1]
    return tuple(x - last for x in lam)


def frobenius_dim(lam: Sequence[int]) -> Fraction:
    """Classical dimension: product over pairs of (l_i - l_j - i + j)/(j - i)."""
    n = len(lam)
    out = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            out *= Fraction(lam[i] - lam[j] - (i + 1) + (j + 1), j - i)
    return out


def add_vectors(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def quadratic_casimir_value(lam: Sequence[int]) -> Fraction:
    """Value of the quadratic central element on the labelled module."""
    n = len(lam)
    return Fraction(sum(l * l + l * (n + 1 - 2 * i) for i, l in enumerate(lam, start=1)))


def is_m_admissible(lam: Sequence[int], m: int, hbar=Fraction(1)) -> bool:
    """Gaps of at least m and pairwise distinct derived eigenvalues."""
    if not is_signature(lam):
        return False
    if any(lam[i] - lam[i + 1] < m for i in range(len(lam) - 1)):
        return False
    mu = classical_eigenvalues(lam)
    seen = set()
    for kvec in compositions(m, len(lam)):
        v = classical_higher_eigenvalue(kvec, mu, hbar)
        if v in seen:
            return False
        seen.add(v)
    return True


# ---------------------------------------------------------------------------
# eigenvalues attached to signatures
# ---------------------------------------------------------------------------

def classical_eigenvalues(lam: Sequence[int]) -> List[Fraction]:
    """mu_i = lam_(p-i+1) + i - 1 at unit mass scale."""
    p = len(lam)
    return [Fraction(lam[p - i] + i - 1) for i in range(1, p + 1)]


def classical_higher_eigenvalue(kvec: Sequence[int], mu: Sequence, hbar):
    """mu_k(m) = sum k_i mu_i + hbar sum_{i<j} k_i k_j (any exact scalars)."""
    acc = 0
    for k, v in zip(kvec, mu):
        if k:
            acc = acc + k * v
    cross = 0
    p = len(kvec)
    for i in range(p):
        for j in range(i + 1, p):
            cross += kvec[i] * kvec[j]
    return acc + hbar * cross


def classical_higher_eigenvalue_s2(lam: Sequence[int], kvec: Sequence[int],
                                   m: int) -> Fraction:
    """Independent route through the quadratic-Casimir difference formula."""
    p = len(lam)
    lam_star = list(signature_dual(lam))
    lam_star_k = list(add_vectors(lam_star, kvec))
    row_m = [m] + [0] * (p - 1)
    s2 = quadratic_casimir_value
    return -Fraction(1, 2) * (s2(lam_star_k) - s2(lam_star) - s2(row_m))


def rep_eigenvalues(lam: Sequence[int], p: int, mode: str,
                    domain: Optional[ScalarDomain] = None) -> list:
    """Eigenvalue family attached to a signature with at most p parts.

    mode="classical": lam_(p-i+1) + i - 1 (unit mass scale);
    mode="rea_q":     eta q**(-2(lam_(p-i+1) + i)) with eta = -q**2/zeta;
    mode="mrea_q":    (lam_(p-i+1) + i - 1)_q / q**(lam_(p-i+1) + i - 1).
    """
    lam = list(lam)
    if len(lam) > p:
        raise OrbitError("signature longer than p")
    if not is_signature(lam):
        raise OrbitError(f"not a signature: {lam}")
    lam = lam + [0] * (p - len(lam))
    if mode == "classical":
        return classical_eigenvalues(lam)
    if domain is None:
        raise OrbitError("q modes need a scalar domain")
    out = []
    if mode == "rea_q":
        eta = -domain.q_pow(2) / domain.zeta
        for i in range(1, p + 1):
            out.append(eta * domain.q_pow(-2 * (lam[p - i] + i)))
        return out
    if mode == "mrea_q":
        for i in range(1, p + 1):
            e = lam[p - i] + i - 1
            out.append(domain.q_int(e) * domain.q_pow(-e))
        return out
    raise OrbitError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# orbit data
# ---------------------------------------------------------------------------

@dataclass
class OrbitSpec:
    p: int
    mu: list
    hbar: Fraction
    domain: ScalarDomain
    _generic: Dict[int, bool] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.mu) != self.p:
            raise OrbitError("eigenvalue list must have length p")

    def is_1_generic(self) -> bool:
        vals = [self.domain.lift(v) for v in self.mu]
        return len(set(vals)) == len(vals)

    def is_m_generic(self, m: int, mode: str = "quantum") -> bool:
        """Pairwise distinctness of the derived degree-m eigenvalue family.

        mode selects which family: the deformed root formula ("quantum") or
        the integer-coefficient classical one ("classical").
        """
        cached = self._generic.get((m, mode))
        if cached is not None:
            return cached
        ok = self.is_1_generic()
        if ok:
            if mode == "quantum":
                vals = [v for _, v in
                        conjecture_roots(self.root_data(), m, self.p)]
            else:
                mu = [self.domain.lift(v) for v in self.mu]
                hbar = self.domain.lift(self.hbar)
                vals = [classical_higher_eigenvalue(kvec, mu, hbar)
                        for kvec in compositions(m, self.p)]
            ok = len(set(vals)) == len(vals)
        self._generic[(m, mode)] = ok
        return ok

    def root_data(self) -> RootData:
        return RootData(mu=self.mu, hbar=self.hbar, domain=self.domain)


# ---------------------------------------------------------------------------
# spectral idempotents
# ---------------------------------------------------------------------------

def spectral_idempotents(mat: Mat, roots: Sequence,
                         domain: ScalarDomain) -> List[Mat]:
    """Lagrange idempotents of a matrix with verified polynomial identity.

    e_j = prod_{i != j} (M - r_i)/(r_j - r_i); requires pairwise distinct
    roots and an exactly vanishing product over all of them.
    """
    roots = [domain.lift(r) if isinstance(r, (int, Fraction)) else r
             for r in roots]
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if roots[i] == roots[j]:
                raise OrbitError(f"repeated roots at positions {i}, {j}")
    ok, support = ch_verify(mat, roots, domain)
    if not ok:
        raise OrbitError(
            f"matrix does not satisfy the polynomial identity "
            f"(residual support {support})")
    n = mat.nrows
    ident = Mat.identity(n, domain.zero, domain.one)
    out = []
    for j, rj in enumerate(roots):
        e = ident
        for i, ri in enumerate(roots):
            if i == j:
                continue
            e = (e * (mat - ident.scale(ri))).scale(domain.one / (rj - ri))
        out.append(e)
    return out


# ---------------------------------------------------------------------------
# multiplicities
# ---------------------------------------------------------------------------

def multiplicities(spec: OrbitSpec, m: int, mode: str) -> Dict[Tuple[int, ...], object]:
    """Eigenvalue multiplicities d_k(m) over all compositions of m.

    mode="classical": product over pairs of
        (mu_i - mu_j - (k_i - k_j) hbar) / (mu_i - mu_j);
    mode="quantum": product over pairs of
        (q**(k_i-k_j) mu_i - q**(k_j-k_i) mu_j - hbar (k_i-k_j)_q)
        / (mu_i - mu_j).

    The quantum form is proven for rank 2; for p > 2 it is conditional
    evidence (it presumes the representation category is faithful).
    """
    if not spec.is_m_generic(m, mode):
        raise OrbitError(f"orbit is not {m}-generic")
    dom = spec.domain
    mu = [dom.lift(v) for v in spec.mu]
    hbar = dom.lift(spec.hbar)
    p = spec.p
    out = {}
    for kvec in compositions(m, p):
        acc = dom.one
        for i in range(p):
            for j in range(i + 1, p):
                if mode == "classical":
                    num = mu[i] - mu[j] - hbar * (kvec[i] - kvec[j])
                elif mode == "quantum":
                    diff = kvec[i] - kvec[j]
                    num = (dom.q_pow(diff) * mu[i] - dom.q_pow(-diff) * mu[j]
                           - hbar * dom.q_int(diff))
                else:
                    raise OrbitError(f"unknown mode {mode!r}")
                acc = acc * num / (mu[i] - mu[j])
        out[kvec] = acc
    return out


def quantum_dim_ratio(lam: Sequence[int], kvec: Sequence[int], p: int,
                      domain: ScalarDomain):
    """Oracle for the quantum multiplicities at zero mass: a ratio of
    q-dimensions of the dual-shifted labels."""
    lam_star = signature_dual(list(lam) + [0] * (p - len(lam)))
    shifted = add_vectors(lam_star, kvec)
    return (q_dimension(shifted, p, domain)
            / q_dimension(lam_star, p, domain))


def classical_dim_ratio(lam: Sequence[int], kvec: Sequence[int],
                        p: int) -> Fraction:
    lam_star = list(signature_dual(list(lam) + [0] * (p - len(lam))))
    return frobenius_dim(list(add_vectors(lam_star, kvec))) / frobenius_dim(lam_star)


# ---------------------------------------------------------------------------
# higher Newton identities
# ---------------------------------------------------------------------------

def higher_newton_classical(lam: Sequence[int], m: int, s_max: int,
                            hbar=Fraction(1)) -> dict:
    """Two-route check of the classical higher Newton identities.

    Route A: trace formula sum_k mu_k(m)**s d_k(m) with the multiplicity
    products at mu = mu(lam).  Route B (oracle): the same sum with the
    quadratic-Casimir eigenvalues and Frobenius dimension ratios.  Both are
    exact rationals; the report maps s to (equal?, value).
    """
    p = len(lam)
    mu = classical_eigenvalues(list(lam))
    report = {}
    d_formula = {}
    for kvec in compositions(m, p):
        acc = Fraction(1)
        for i in range(p):
            for j in range(i + 1, p):
                num = mu[i] - mu[j] - Fraction(hbar) * (kvec[i] - kvec[j])
                den = mu[i] - mu[j]
                if den == 0:
                    raise OrbitError("orbit is not 1-generic")
                acc *= num / den
        d_formula[kvec] = acc
    for s in range(1, s_max + 1):
        route_a = Fraction(0)
        route_b = Fraction(0)
        for kvec in compositions(m, p):
            mu_k = classical_higher_eigenvalue(kvec, mu, hbar)
            mu_k_s2 = classical_higher_eigenvalue_s2(list(lam), kvec, m)
            route_a += mu_k ** s * d_formula[kvec]
            route_b += mu_k_s2 ** s * classical_dim_ratio(lam, kvec, p)
        report[s] = (route_a == route_b, route_a)
    return report


def higher_newton_quantum_p2(h, k: int, m: int, s_max: int,
                             algebra: str = "rea") -> dict:
    """Matrix-trace versus formula check of the weighted higher Newton rows.

    The left side is the calibrated quantum trace of the exact Casimir-matrix
    power over the symmetric-power module; the right side is
    q**(-p) sum_k mu_k(m)**s d_k(m) at the eigenvalues the module realizes
    ({1, q**(-2k-2)} for the REA form, their unit shifts for unit mass).
    """
    from .casimir import split_casimir_matrix, trace_weights
    if h.p != 2:
        raise OrbitError("requires symmetry rank 2")
    dom = h.domain
    if algebra == "rea":
        mu = [dom.one, dom.q_pow(-2 * k - 2)]
        hbar = Fraction(0)
    elif algebra == "mrea":
        shift = dom.one / dom.zeta
        mu = [dom.one + shift, dom.q_pow(-2 * k - 2) + shift]
        hbar = Fraction(1)
    else:
        raise OrbitError(f"unknown algebra {algebra!r}")
    spec = OrbitSpec(p=2, mu=mu, hbar=hbar, domain=dom)
    d_k = multiplicities(spec, m, "quantum")
    roots = dict(conjecture_roots(spec.root_data(), m, 2))
    cm = split_casimir_matrix(h, k, m, algebra)
    weights = trace_weights(h, m)
    report = {}
    power = cm.op
    for s in range(1, s_max + 1):
        if s > 1:
            power = power * cm.op
        lhs = _module_trace(power, cm.dk, cm.dm, weights, dom)
        rhs = dom.zero
        for kvec, d_val in d_k.items():
            rhs = rhs + roots[kvec] ** s * d_val
        rhs = rhs * dom.q_pow(-2)
        report[s] = (lhs == rhs, lhs)
    return report


def _module_trace(op: Mat, dk: int, dm: int, weights, dom):
    from .casimir import _certified_module_trace
    return _certified_module_trace(op, dk, dm, weights, certify=True)


def higher_newton_verify(spec: OrbitSpec, m: int, s_max: int, mode: str,
                         lam: Optional[Sequence[int]] = None, h=None,
                         k: Optional[int] = None, algebra: str = "rea") -> dict:
    """Dispatching front end for the higher Newton checks.

    mode="classical" verifies the two-route agreement at the signature the
    orbit data came from (lam required); mode="quantum" verifies the
    weighted matrix trace against the formula on the rank-2 symmetry h in
    the degree-k module.  Both delegate to the dedicated routines and return
    their s -> (ok, value) reports.
    """
    if not spec.is_m_generic(m, "quantum" if mode == "quantum" else "classical"):
        raise OrbitError(f"orbit is not {m}-generic")
    if mode == "classical":
        if lam is None:
            raise OrbitError("classical mode needs the signature")
        return higher_newton_classical(lam, m, s_max, spec.hbar)
    if mode == "quantum":
        if h is None or k is None:
            raise OrbitError("quantum mode needs the symmetry and the degree")
        return higher_newton_quantum_p2(h, k, m, s_max, algebra)
    raise OrbitError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# conjecture scan
# ---------------------------------------------------------------------------

@dataclass
class ScanReport:
    k: int
    m: int
    p: int
    dim: int
    product_zero: bool
    eigen_dim_total: int
    consistent: bool
    witness: Optional[str]


def conjecture_scan(h, k: int, m: int) -> ScanReport:
    """Exact spectrum test of the higher root formula in a left module.

    Builds the generator matrix of degree m inside the left symmetric power
    of degree k, forms the conjectured roots from the module's basic
    eigenvalues (unit mass), and certifies that the matrix is annihilated by
    the full root product and diagonalizable with eigenspace dimensions
    summing to the module dimension.  For rank 2 this is a theorem; beyond,
    a mismatch is a reportable finding, not an error.
    """
    from .casimir import left_casimir_matrix
    from .tensor import rank
    dom = h.domain
    cm = left_casimir_matrix(h, k, m)
    mu = rep_eigenvalues((k,) + (0,) * (h.p - 1), h.p, "mrea_q", dom)
    rd = RootData(mu=mu, hbar=Fraction(1), domain=dom)
    roots = conjecture_roots(rd, m, h.p)
    ok, support = ch_verify(cm.op, [v for _, v in roots], dom)
    ident = Mat.identity(cm.dim, dom.zero, dom.one)
    total = 0
    for _, r in roots:
        total += cm.dim - rank(cm.op - ident.scale(r))
    consistent = ok and total == cm.dim
    witness = None
    if not consistent:
        witness = (f"root-product support {support}, eigenspace dimensions "
                   f"sum to {total} of {cm.dim}")
    return ScanReport(k=k, m=m, p=h.p, dim=cm.dim, product_zero=ok,
                      eigen_dim_total=total, consistent=consistent,
                      witness=witness)


# ---------------------------------------------------------------------------
# strings
# ---------------------------------------------------------------------------

@dataclass
class StringDecomposition:
    strings: List[Tuple[object, int]]        # (head value, length)
    minimal_roots: List[object]              # heads, the suggested simple roots


def string_decompose(spec: OrbitSpec) -> StringDecomposition:
    """Split the eigenvalue set into maximal successor chains.

    The successor map nu -> nu/q**2 + hbar/q chains eigenvalues that arise
    from quantizing a degenerate orbit; each maximal chain contributes its
    head as a simple root of the suggested minimal polynomial.  Independent
    of the input ordering.
    """
    if not spec.is_1_generic():
        raise OrbitError("orbit is not 1-generic")
    dom = spec.domain
    vals = [dom.lift(v) for v in spec.mu]
    hbar = dom.lift(spec.hbar)
    q2 = dom.q_pow(-2)
    q1 = dom.q_pow(-1)

    def successor(v):
        return q2 * v + q1 * hbar

    succ_of = {}
    is_succ = [False] * len(vals)
    for i, v in enumerate(vals):
        s = successor(v)
        for j, w in enumerate(vals):
            if j != i and w == s:
                succ_of[i] = j
                is_succ[j] = True
                break
    heads = [i for i in range(len(vals)) if not is_succ[i]]
    strings = []
    seen = set()
    for i in sorted(heads):
        length = 1
        cur = i
        seen.add(cur)
        while cur in succ_of:
            cur = succ_of[cur]
            if cur in seen:
                break
            seen.add(cur)
            length += 1
        strings.append((vals[i], length))
    if len(seen) != len(vals):
        raise OrbitError("string decomposition did not cover all eigenvalues")
    return StringDecomposition(strings=strings,
                               minimal_roots=[s[0] for s in strings])
