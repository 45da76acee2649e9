"""Hecke symmetries: construction, validation, skew inverse, rank.

A Hecke symmetry is a Yang-Baxter operator R on V (x) V whose minimal
polynomial is (R - q)(R + 1/q), together with the derived data that makes the
whole machine run: the skew inverse Psi, the weight endomorphisms B and C,
and the symmetry rank p (the height at which the q-antisymmetrizer tower
collapses to a rank-one projector and then to zero).

Conventions frozen here once and used everywhere downstream:

* a LegOperator's entry at row (k, l), column (i, j) is the structure
  constant multiplying x_k (x) x_l in the image of x_i (x) x_j; the same
  array serves as the two-leg left automorphism, so the Hecke inverse is the
  closed form R - (q - 1/q) I;
* B and C are stored as operators (row = output index): B = partial trace of
  Psi over leg 1, C = partial trace of Psi over leg 2, and the quantum trace
  of an operator matrix X is trace(C X).
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .scalars import ScalarDomain, SYMBOLIC, format_scalar, parse_scalar
from .tensor import LegOperator, Mat, embed_on_legs, inverse, weighted_partial_trace


class HeckeError(ValueError):
    pass


class RFileError(ValueError):
    """Malformed R-matrix file."""


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def standard_r(n: int, domain: ScalarDomain = SYMBOLIC) -> LegOperator:
    """The Drinfeld-Jimbo Hecke symmetry of rank n on an n-dimensional space.

    Entries: q on (i,i;i,i), 1 on the transpositions (j,i;i,j) for i != j,
    and q - 1/q on the diagonal family (i,j;i,j) with i < j.  The orientation
    of the triangular family is the one the validation oracle accepts with
    the fundamental representation at unit mass parameter.
    """
    if n < 1:
        raise HeckeError("n must be positive")
    q = domain.q
    zeta = domain.zeta
    mat = Mat.zeros(n * n, n * n, domain.zero)
    for i in range(n):
        mat.rows[i * n + i][i * n + i] = q
        for j in range(n):
            if i != j:
                mat.rows[j * n + i][i * n + j] = domain.one
            if i < j:
                mat.rows[i * n + j][i * n + j] = zeta
    return LegOperator(n, 2, mat)


def hecke_inverse(r: LegOperator, domain: ScalarDomain) -> LegOperator:
    """R**-1 = R - (q - 1/q) I, forced by the Hecke condition."""
    ident = LegOperator.identity(r.n, 2, domain)
    inv = r - ident.scale(domain.zeta)
    if not (r * inv == ident):
        raise HeckeError("closed-form inverse failed; operator is not Hecke")
    return inv


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    ybe: bool
    hecke: bool
    skew_invertible: bool
    even: bool
    rank: Optional[int]
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ybe and self.hecke and self.skew_invertible and self.even


def check_ybe(r: LegOperator) -> bool:
    r12 = embed_on_legs(r, 1, 3)
    r23 = embed_on_legs(r, 2, 3)
    return (r12 * r23 * r12) == (r23 * r12 * r23)


def check_hecke(r: LegOperator, domain: ScalarDomain) -> bool:
    ident = LegOperator.identity(r.n, 2, domain)
    lhs = (r - ident.scale(domain.q)) * (r + ident.scale(domain.q_pow(-1)))
    return lhs.is_zero()


def skew_inverse_bc(r: LegOperator, domain: ScalarDomain):
    """Solve for the skew inverse Psi and the weights B, C.

    The defining contraction says that the second-factor transpose of Psi
    inverts the second-factor transpose of R, so Psi is obtained by one exact
    n**2 x n**2 inversion after reindexing.  The independent second identity
    (tracing Psi against R on the other side) is asserted, not assumed.
    """
    n = r.n
    dim = n * n
    a = Mat.zeros(dim, dim, domain.zero)
    for i in range(n):
        for j in range(n):
            for aa in range(n):
                for b in range(n):
                    # row (i,j), col (a,b) holds the entry with output (j,b)
                    # and input (i,a)
                    a.rows[i * n + j][aa * n + b] = r.mat.rows[j * n + b][i * n + aa]
    try:
        ainv = inverse(a)
    except ValueError as exc:
        raise HeckeError("not skew-invertible") from exc
    psi_mat = Mat.zeros(dim, dim, domain.zero)
    for aa in range(n):
        for b in range(n):
            for s in range(n):
                for k in range(n):
                    psi_mat.rows[aa * n + s][b * n + k] = ainv.rows[aa * n + b][s * n + k]
    psi = LegOperator(n, 2, psi_mat)

    ident_w = Mat.identity(n, domain.zero, domain.one)
    flip = LegOperator.flip(n, domain)
    r12 = embed_on_legs(r, 1, 3)
    psi23 = embed_on_legs(psi, 2, 3)
    first = weighted_partial_trace(r12 * psi23, {2}, ident_w)
    if not (first == flip):
        raise HeckeError("skew inverse failed the defining contraction")
    psi12 = embed_on_legs(psi, 1, 3)
    r23 = embed_on_legs(r, 2, 3)
    second = weighted_partial_trace(psi12 * r23, {2}, ident_w)
    if not (second == flip):
        raise HeckeError("skew inverse failed the second contraction")

    b = weighted_partial_trace(psi, {1}, ident_w).mat
    c = weighted_partial_trace(psi, {2}, ident_w).mat
    return psi, b, c


def symmetry_rank(r: LegOperator, domain: ScalarDomain,
                  max_p: Optional[int] = None) -> Optional[int]:
    """Smallest p with rank A**(p) = 1 and A**(p+1) = 0, or None.

    Ranks come from the trace of the certified projectors (exact, since an
    idempotent's rank equals its trace in characteristic zero).
    """
    from .projectors import antisymmetrizer_tower
    if max_p is None:
        max_p = r.n + 1
    prev_rank = None
    for m, a_m in antisymmetrizer_tower(r, domain, max_p + 1):
        if a_m.is_zero():
            if prev_rank == 1:
                return m - 1
            return None
        if not ((a_m * a_m) == a_m):
            raise HeckeError(f"antisymmetrizer at height {m} is not idempotent")
        tr = a_m.mat.trace()
        rk = _as_int(tr, domain)
        if rk is None:
            raise HeckeError(f"projector trace at height {m} is not an integer")
        prev_rank = rk
    return None


def _as_int(x, domain) -> Optional[int]:
    if domain.symbolic:
        try:
            v = x.as_rational()
        except (AttributeError, ValueError):
            return None
    else:
        v = x
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, int):
        return v
    return None


def validate_hecke_symmetry(r: LegOperator, domain: ScalarDomain,
                            max_p: Optional[int] = None) -> ValidationReport:
    """Independent axiom checks; failures are report entries, not faults."""
    ybe = check_ybe(r)
    hecke = check_hecke(r, domain)
    details: dict = {}
    skew = False
    even = False
    rank_p: Optional[int] = None
    try:
        psi, b, c = skew_inverse_bc(r, domain)
        skew = True
        details["trace_b"] = b.trace()
        details["trace_c"] = c.trace()
    except HeckeError as exc:
        details["skew_error"] = str(exc)
    if ybe and hecke:
        try:
            rank_p = symmetry_rank(r, domain, max_p)
        except HeckeError as exc:
            details["rank_error"] = str(exc)
        even = rank_p is not None
        if not even:
            details["rank_outcome"] = f"not even up to max_p={max_p or r.n + 1}"
    return ValidationReport(ybe=ybe, hecke=hecke, skew_invertible=skew,
                            even=even, rank=rank_p, details=details)


# ---------------------------------------------------------------------------
# the validated bundle
# ---------------------------------------------------------------------------

class HeckeSymmetry:
    """Validated bundle (n, R, Psi, B, C, p); immutable after construction.

    Construction asserts the Yang-Baxter equation, the Hecke condition, both
    skew-inverse contractions, B C = q**(-2p) I, trace B = trace C =
    p_q / q**p, and the antisymmetrizer collapse at rank p.
    """

    def __init__(self, r: LegOperator, domain: ScalarDomain = SYMBOLIC,
                 max_p: Optional[int] = None):
        self.n = r.n
        self.domain = domain
        self.r = r
        if not check_ybe(r):
            raise HeckeError("Yang-Baxter equation fails")
        if not check_hecke(r, domain):
            raise HeckeError("Hecke condition fails")
        self.psi, self.b, self.c = skew_inverse_bc(r, domain)
        p = symmetry_rank(r, domain, max_p)
        if p is None:
            raise HeckeError(f"not even up to max_p={max_p or r.n + 1}")
        self.p = p
        self.r_inv = hecke_inverse(r, domain)
        self._check_bc()
        self._proj_cache: dict = {}
        # RLock: the projector recursion re-enters the cache while holding it
        self._cache_lock = threading.RLock()
        self._rep_cache: dict = {}

    def _check_bc(self) -> None:
        d = self.domain
        n, p = self.n, self.p
        scale = d.q_pow(-2 * p)
        prod = self.b * self.c
        ident = Mat.identity(n, d.zero, d.one)
        if not (prod == ident.scale(scale)):
            raise HeckeError("B C != q**(-2p) I")
        expect = d.q_int(p) * d.q_pow(-p)
        if self.b.trace() != expect or self.c.trace() != expect:
            raise HeckeError("trace of B or C is not p_q / q**p")

    @property
    def q(self):
        return self.domain.q

    def identity(self, m: int) -> LegOperator:
        return LegOperator.identity(self.n, m, self.domain)

    def r_on(self, i: int, total: int) -> LegOperator:
        """R acting on legs (i, i+1) of a total-leg space."""
        return embed_on_legs(self.r, i, total)

    def __repr__(self):
        return f"HeckeSymmetry(n={self.n}, p={self.p}, q={self.domain.describe()})"


def standard_hecke(n: int, domain: ScalarDomain = SYMBOLIC) -> HeckeSymmetry:
    return HeckeSymmetry(standard_r(n, domain), domain)


# ---------------------------------------------------------------------------
# R-matrix files
# ---------------------------------------------------------------------------

def load_r_from_file(path, domain: ScalarDomain = SYMBOLIC) -> LegOperator:
    """Load an R-matrix from the JSON interchange format.

    Format: {"n": int, "parameter": "q", "entries": [{"out": [k, l],
    "in": [i, j], "value": "<scalar>"}, ...]} with 1-based indices; absent
    entries are zero.  The entry multiplies x_k (x) x_l in the image of
    x_i (x) x_j.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise RFileError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}") from exc
    if not isinstance(data, dict) or "n" not in data:
        raise RFileError(f"{path}: missing required field 'n'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise RFileError(f"{path}: field 'n' must be a positive integer")
    if data.get("parameter", "q") != "q":
        raise RFileError(f"{path}: unsupported parameter {data.get('parameter')!r}")
    mat = Mat.zeros(n * n, n * n, domain.zero)
    seen = set()
    for idx, entry in enumerate(data.get("entries", [])):
        try:
            k, l = entry["out"]
            i, j = entry["in"]
            value = entry["value"]
        except (KeyError, TypeError, ValueError) as exc:
            raise RFileError(f"{path}: malformed entry #{idx}: {entry!r}") from exc
        for name, v in (("out", k), ("out", l), ("in", i), ("in", j)):
            if not isinstance(v, int) or not 1 <= v <= n:
                raise RFileError(f"{path}: entry #{idx}: {name} index {v} "
                                 f"outside 1..{n}")
        key = (k, l, i, j)
        if key in seen:
            raise RFileError(f"{path}: duplicate entry for out={k},{l} in={i},{j}")
        seen.add(key)
        try:
            scal = parse_scalar(value)
        except ValueError as exc:
            raise RFileError(f"{path}: entry #{idx}: {exc}") from exc
        mat.rows[(k - 1) * n + (l - 1)][(i - 1) * n + (j - 1)] = domain.lift(scal)
    return LegOperator(n, 2, mat)


def save_r_to_file(path, r: LegOperator) -> None:
    """Write an R-matrix in canonical form (sorted entries, canonical scalars)."""
    n = r.n
    entries = []
    for ko in range(n):
        for lo in range(n):
            for ki in range(n):
                for li in range(n):
                    v = r.mat.rows[ko * n + lo][ki * n + li]
                    if not v:
                        continue
                    text = str(v) if isinstance(v, Fraction) else format_scalar(v)
                    entries.append({
                        "out": [ko + 1, lo + 1],
                        "in": [ki + 1, li + 1],
                        "value": text,
                    })
    payload = {"n": n, "parameter": "q", "entries": entries}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
