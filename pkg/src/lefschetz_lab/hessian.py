"""Higher Hessian matrices and exact/probabilistic vanishing decisions.

The order-k Hessian of f is the symmetric matrix (a_i a_j (f)) over an ordered
basis (a_i) of the degree-k graded piece.  Whether its determinant vanishes
identically does not depend on the basis, so verdicts are reported without
one.  Two decision routes are implemented:

  * probabilistic — evaluate the matrix at integer points and take exact
    rational determinants; a single nonzero value is an unconditional
    nonvanishing proof, while repeated zeros give a Schwartz-Zippel bound;
  * exact — fraction-free elimination of the polynomial matrix over the
    rational function field, with fewest-terms pivoting and early exit on a
    zero row/column, which certifies vanishing unconditionally.

Probabilistic runs escalate to the exact route when the matrix is small
enough; above the cutoff a vanishing verdict keeps its (tiny) error bound
unless the caller forces exact mode.
"""

from __future__ import annotations

import hashlib
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .apolar import AkBasis, ak_basis, depends_on_all_vars
from .errors import DegreeRangeError, ZeroPolynomialError
from .polycore import Monomial, Poly, diff_apply, eval_poly, partial

DEFAULT_EXACT_CUTOFF = 12
DEFAULT_TRIALS = 5


@dataclass(frozen=True)
class HessianMatrix:
    """Order-k Hessian of f over an explicit basis."""

    f: Poly
    k: int
    basis: AkBasis
    entries: tuple[tuple[Poly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class VanishingVerdict:
    """Outcome of a determinant-vanishing decision.

    Nonvanishing verdicts always carry an evaluation point with a nonzero
    determinant value (an unconditional witness).  Exact vanishing verdicts
    carry a hash of the elimination transcript; probabilistic ones carry the
    compounded failure bound instead.
    """

    vanishes: bool
    mode: str  # "exact" | "probabilistic"
    witness_point: Optional[tuple[int, ...]] = None
    det_value: Optional[Fraction] = None
    error_bound: Optional[Fraction] = None
    transcript_hash: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.vanishes and self.witness_point is None:
            raise ValueError("nonvanishing verdict requires a witness point")
        if self.mode == "exact" and self.error_bound is not None:
            raise ValueError("exact verdicts carry no error bound")

    def to_json_dict(self) -> dict:
        out: dict = {"vanishes": self.vanishes, "mode": self.mode}
        if self.witness_point is not None:
            out["witness_point"] = list(self.witness_point)
        if self.det_value is not None:
            out["det_value"] = str(self.det_value)
        if self.error_bound is not None:
            out["error_bound"] = str(self.error_bound)
        if self.transcript_hash is not None:
            out["transcript_hash"] = self.transcript_hash
        return out


def hessian_matrix(f: Poly, k: int, basis: Optional[AkBasis] = None) -> HessianMatrix:
    """Build the order-k Hessian; the default basis is the greedy monomial one."""
    d = _checked_degree(f, k)
    if basis is None:
        basis = ak_basis(f, k)
    else:
        _validate_basis(f, k, basis)
    derived = basis.derived
    n = len(basis)
    rows: list[list[Poly]] = [[None] * n for _ in range(n)]  # type: ignore[list-item]
    for i in range(n):
        for j in range(i, n):
            entry = diff_apply(basis.ops[i], derived[j])
            rows[i][j] = entry
            rows[j][i] = entry
    return HessianMatrix(f, k, basis, tuple(tuple(r) for r in rows))


def _validate_basis(f: Poly, k: int, basis: AkBasis) -> None:
    if basis.k != k:
        raise ValueError(f"basis is for degree {basis.k}, not {k}")
    if len(basis) != len(ak_basis(f, k)):
        raise ValueError("basis has the wrong dimension for this polynomial")
    span = linalg.SparseSpan()
    for op, g in zip(basis.ops, basis.derived):
        if diff_apply(op, f) != g or not span.try_add(g.coeff_map()):
            raise ValueError("invalid basis: derivatives inconsistent or dependent")


def _checked_degree(f: Poly, k: int) -> int:
    if f.is_zero():
        raise ZeroPolynomialError("Hessians of the zero polynomial are undefined")
    d = f.degree
    if not 0 <= k <= d // 2:
        raise DegreeRangeError(f"k={k} out of range 0..{d // 2}")
    return d


def hessian_vanishes(
    f: Poly,
    k: int,
    mode: str = "probabilistic",
    seed: int = 0,
    *,
    basis: Optional[AkBasis] = None,
    trials: int = DEFAULT_TRIALS,
    exact_cutoff: int = DEFAULT_EXACT_CUTOFF,
) -> VanishingVerdict:
    """Decide whether the order-k Hessian determinant vanishes identically."""
    if mode not in ("probabilistic", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    d = _checked_degree(f, k)
    H = hessian_matrix(f, k, basis)
    degree_bound = H.size * (d - 2 * k)
    return _det_vanishes(
        H.entries,
        degree_bound=degree_bound,
        mode=mode,
        seed=seed,
        trials=trials,
        exact_cutoff=exact_cutoff,
        salt=f"hess:{k}",
    )


def hess_profile(
    f: Poly,
    mode: str = "probabilistic",
    seed: int = 0,
    *,
    max_k: Optional[int] = None,
    exact_cutoff: int = DEFAULT_EXACT_CUTOFF,
) -> list[VanishingVerdict]:
    """Vanishing verdicts for every order k = 0 .. floor(d/2)."""
    if f.is_zero():
        raise ZeroPolynomialError("profile of the zero polynomial is undefined")
    if not depends_on_all_vars(f):
        warnings.warn(
            "input has annihilating degree-1 operators (cone-like degenerate); "
            "profile is computed on the quotient basis",
            stacklevel=2,
        )
    top = f.degree // 2
    if max_k is not None:
        top = min(top, max_k)
    return [
        hessian_vanishes(f, k, mode, seed, exact_cutoff=exact_cutoff)
        for k in range(top + 1)
    ]


@dataclass(frozen=True)
class ConeReport:
    """Linear-dependence test on the first partial derivatives."""

    is_cone: bool
    witness: Optional[tuple[Fraction, ...]] = None  # dependency coefficients

    def to_json_dict(self) -> dict:
        out: dict = {"is_cone": self.is_cone}
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        return out


def is_cone(f: Poly) -> ConeReport:
    """True iff the first partials are linearly dependent, with a witness."""
    if f.is_zero():
        raise ZeroPolynomialError("cone test undefined for the zero polynomial")
    n = len(f.vars)
    span = linalg.SparseSpan()
    for i in range(n):
        g = partial(f, i)
        dep = span.dependency(g.coeff_map())
        if dep is not None:
            witness = [Fraction(0)] * n
            for j, c in enumerate(dep):
                witness[j] = -c
            witness[i] = Fraction(1)
            lead = next(c for c in witness if c)
            witness = [c / lead for c in witness]
            return ConeReport(True, tuple(witness))
        span.try_add(g.coeff_map())
    return ConeReport(False, None)


def second_partials_det_vanishes(
    f: Poly, mode: str = "probabilistic", seed: int = 0
) -> VanishingVerdict:
    """Vanishing of the full matrix of second partials (no quotient taken)."""
    if f.is_zero():
        raise ZeroPolynomialError("second partials of the zero polynomial")
    d = f.degree
    if d < 2:
        # every second partial is zero
        return VanishingVerdict(True, "exact", transcript_hash=_hash_transcript(["degree<2"]))
    n = len(f.vars)
    dual = f.vars.dual()
    ops = [Poly.variable(dual, i) for i in range(n)]
    firsts = [diff_apply(op, f) for op in ops]
    entries = tuple(
        tuple(diff_apply(ops[i], firsts[j]) for j in range(n)) for i in range(n)
    )
    return _det_vanishes(
        entries,
        degree_bound=n * (d - 2),
        mode=mode,
        seed=seed,
        trials=DEFAULT_TRIALS,
        exact_cutoff=DEFAULT_EXACT_CUTOFF,
        salt="classical",
    )


# -- determinant decisions ---------------------------------------------------


def _det_vanishes(
    entries: Sequence[Sequence[Poly]],
    *,
    degree_bound: int,
    mode: str,
    seed: int,
    trials: int,
    exact_cutoff: int,
    salt: str,
) -> VanishingVerdict:
    size = len(entries)
    nvars = len(entries[0][0].vars) if size else 0
    if size == 0:
        raise ValueError("empty matrix")

    if degree_bound == 0 or all(
        e.is_zero() or e.degree == 0 for row in entries for e in row
    ):
        # constant matrix: its determinant is the answer, unconditionally
        matrix = [[e.coefficient((0,) * nvars) for e in row] for row in entries]
        value = linalg.det(matrix)
        if value:
            return VanishingVerdict(
                False, "exact", witness_point=(1,) * nvars, det_value=value
            )
        return VanishingVerdict(
            True, "exact", transcript_hash=_hash_transcript(["constant-matrix", str(size)])
        )

    if mode == "exact":
        return _exact_verdict(entries, seed, salt)

    bound_B = 64 * degree_bound
    rng_base = f"{salt}:{seed}"
    for trial in range(trials):
        rng = random.Random(f"{rng_base}:{trial}")
        point = tuple(rng.randint(1, bound_B) for _ in range(nvars))
        matrix = [[eval_poly(e, point) for e in row] for row in entries]
        value = linalg.det(matrix)
        if value:
            return VanishingVerdict(
                False, "probabilistic", witness_point=point, det_value=value
            )
    if size <= exact_cutoff:
        return _exact_verdict(entries, seed, salt)
    per_trial = Fraction(degree_bound, bound_B)
    return VanishingVerdict(True, "probabilistic", error_bound=per_trial**trials)


def _exact_verdict(
    entries: Sequence[Sequence[Poly]], seed: int, salt: str
) -> VanishingVerdict:
    vanishes, transcript, det_poly = poly_det_vanishes(entries)
    if vanishes:
        return VanishingVerdict(True, "exact", transcript_hash=_hash_transcript(transcript))
    assert det_poly is not None
    point, value = _nonzero_point(det_poly, seed, salt)
    return VanishingVerdict(False, "exact", witness_point=point, det_value=value)


def _nonzero_point(g: Poly, seed: int, salt: str) -> tuple[tuple[int, ...], Fraction]:
    nvars = len(g.vars)
    bound = 64 * max(g.total_degree() or 1, 1)
    attempt = 0
    while True:
        rng = random.Random(f"witness:{salt}:{seed}:{attempt}")
        point = tuple(rng.randint(1, bound) for _ in range(nvars))
        value = eval_poly(g, point)
        if value:
            return point, value
        attempt += 1
        bound *= 2


def _hash_transcript(lines: Sequence[str]) -> str:
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def poly_det_vanishes(
    entries: Sequence[Sequence[Poly]],
) -> tuple[bool, list[str], Optional[Poly]]:
    """Fraction-free determinant of a polynomial matrix.

    Returns (vanishes, transcript, determinant); the determinant is only
    materialized when it is nonzero.  Pivots are chosen with fewest terms to
    limit fill-in, and any all-zero active row or column ends the elimination
    immediately with a zero determinant.
    """
    n = len(entries)
    m = [[e for e in row] for row in entries]
    vars = m[0][0].vars
    transcript: list[str] = [f"size={n}"]
    sign = 1
    prev: Optional[Poly] = None
    for step in range(n):
        active = range(step, n)
        for i in active:
            if all(m[i][j].is_zero() for j in active):
                transcript.append(f"zero-row@{step}:{i}")
                return True, transcript, None
        for j in active:
            if all(m[i][j].is_zero() for i in active):
                transcript.append(f"zero-col@{step}:{j}")
                return True, transcript, None
        pi, pj = min(
            (
                (i, j)
                for i in active
                for j in active
                if not m[i][j].is_zero()
            ),
            key=lambda ij: (m[ij[0]][ij[1]].num_terms(), ij),
        )
        if pi != step:
            m[step], m[pi] = m[pi], m[step]
            sign = -sign
        if pj != step:
            for row in m:
                row[step], row[pj] = row[pj], row[step]
            sign = -sign
        pivot = m[step][step]
        transcript.append(f"pivot@{step}:{pivot.to_text()}")
        for i in range(step + 1, n):
            for j in range(step + 1, n):
                num = pivot * m[i][j] - m[i][step] * m[step][j]
                m[i][j] = num if prev is None else poly_divexact(num, prev)
            m[i][step] = Poly.zero(vars)
        prev = pivot
    det = m[n - 1][n - 1]
    if sign < 0:
        det = -det
    transcript.append(f"det:{det.to_text()}")
    return det.is_zero(), transcript, det


def poly_divexact(a: Poly, b: Poly) -> Poly:
    """Quotient a/b when the division is known to be exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    b_terms = b.coeff_map()
    lt_b = max(b_terms)
    cb = b_terms[lt_b]
    rem = a.coeff_map()
    quo: dict[Monomial, Fraction] = {}
    while rem:
        lt_r = max(rem)
        expo = tuple(r - s for r, s in zip(lt_r, lt_b))
        if any(e < 0 for e in expo):
            raise ArithmeticError("polynomial division was not exact")
        c = rem[lt_r] / cb
        quo[expo] = quo.get(expo, Fraction(0)) + c
        for eb, vb in b_terms.items():
            e = tuple(x + y for x, y in zip(expo, eb))
            nv = rem.get(e, Fraction(0)) - c * vb
            if nv:
                rem[e] = nv
            else:
                rem.pop(e, None)
    return Poly(a.vars, quo)
