"""Deterministic generators for the counterexample families.

Every generator returns a `FamilyInstance`: the polynomial, its declared
x/u-block split, and a manifest of expected properties that downstream
modules can replay.  Generators validate their own output where the
construction relies on genericity (witness evaluations, cone tests,
certificate existence) and fail loudly instead of emitting an instance whose
manifest might be wrong; the exceptional family additionally retries with a
deterministic perturbation of its tail summand before giving up.

Canonical shapes only: the tail polynomials (g, h, p, the biform parts) have
fixed monomial defaults, overridable by keyword.  Identical parameters always
produce bit-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Optional, Sequence

from .apolar import catalecticant, depends_on_all_vars, hilbert_vector, is_unimodal
from .errors import (
    DegenerateInstanceError,
    InfeasibleParametersError,
    RetriesExhaustedError,
)
from .hessian import hessian_vanishes, is_cone
from .lefschetz import (
    LinearForm,
    key_criterion,
    verify_key_certificate,
    verify_obstruction_certificate,
    wlp_check_element,
    wlp_obstruction,
)
from .polycore import Monomial, Poly, VariableSet, mono_basis, mono_count, poly_sum

FAMILY_KINDS = (
    "ikeda",
    "exceptional",
    "gnp",
    "perazzo",
    "permutti",
    "gn",
    "wlpodd",
    "thmwlp",
    "prop44",
)


@dataclass(frozen=True)
class FamilySpec:
    """Which family, with which parameters, and the seed for verification.

    `overrides` records the text form of any explicitly supplied tail
    polynomials, so serialized specs describe the instance completely.
    """

    kind: str
    params: dict
    seed: int = 0
    overrides: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind, "params": dict(self.params), "seed": self.seed}
        if self.overrides:
            out["overrides"] = dict(self.overrides)
        return out


def _override_texts(**named: Optional[Poly]) -> dict:
    return {name: poly.to_text() for name, poly in named.items() if poly is not None}


@dataclass(frozen=True)
class Manifest:
    """Expected properties of an instance; every claim is machine-checkable."""

    hess_pattern: tuple[tuple[int, bool], ...] = ()  # (order, vanishes)
    hilbert: Optional[tuple[int, ...]] = None
    unimodal: Optional[bool] = None
    cone: Optional[bool] = None
    dim_a1: Optional[int] = None
    slp: Optional[str] = None
    slp_fail_level: Optional[int] = None
    wlp: Optional[str] = None
    wlp_fail_level: Optional[int] = None
    wlp_witness: Optional[LinearForm] = None
    key_certificate_orders: tuple[int, ...] = ()
    obstruction_level: Optional[int] = None
    obstruction_size: Optional[int] = None

    def to_json_dict(self) -> dict:
        out: dict = {}
        if self.hess_pattern:
            out["hess_pattern"] = {str(k): v for k, v in self.hess_pattern}
        if self.hilbert is not None:
            out["hilbert"] = list(self.hilbert)
        for name in ("unimodal", "cone", "dim_a1", "slp", "slp_fail_level",
                     "wlp", "wlp_fail_level", "obstruction_level", "obstruction_size"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        if self.wlp_witness is not None:
            out["wlp_witness"] = self.wlp_witness.to_json()
        if self.key_certificate_orders:
            out["key_certificate_orders"] = list(self.key_certificate_orders)
        return out


@dataclass(frozen=True)
class FamilyInstance:
    f: Poly
    spec: FamilySpec
    manifest: Manifest

    def to_json_dict(self) -> dict:
        vs = self.f.vars
        out = self.spec.to_json_dict()
        out.update(
            {
                "vars": list(vs.names),
                "split": vs.n_x,
                "poly": self.f.to_text(),
                "manifest": self.manifest.to_json_dict(),
            }
        )
        return out


def _mono(vs: VariableSet, pairs: Mapping[str, int], coeff: int = 1) -> Poly:
    expo = [0] * len(vs)
    for name, e in pairs.items():
        expo[vs.index(name)] = e
    return Poly.monomial(vs, tuple(expo), coeff)


def _power_sum(vs: VariableSet, names: Sequence[str], d: int) -> Poly:
    return poly_sum(vs, [_mono(vs, {n: d}) for n in names])


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InfeasibleParametersError(message)


def _verify(cond: bool, message: str) -> None:
    if not cond:
        raise DegenerateInstanceError(message)


def _check_nondegenerate(f: Poly, what: str) -> None:
    _verify(depends_on_all_vars(f), f"{what}: some variable is superfluous")
    _verify(not is_cone(f).is_cone, f"{what}: instance is a cone")


# -- the fixed codimension-4 example ------------------------------------------


def gen_ikeda() -> FamilyInstance:
    """The degree-5 form in 4 variables whose order-2 Hessian vanishes."""
    vs = VariableSet(("x0", "x1", "u1", "u2"), n_x=2)
    f = poly_sum(
        vs,
        [
            _mono(vs, {"x0": 1, "u1": 3, "u2": 1}),
            _mono(vs, {"x1": 1, "u1": 1, "u2": 3}),
            _mono(vs, {"x0": 3, "x1": 2}),
        ],
    )
    manifest = Manifest(
        hess_pattern=((1, False), (2, True)),
        hilbert=(1, 4, 10, 10, 4, 1),
        unimodal=True,
        cone=False,
        dim_a1=4,
        slp="fails",
        slp_fail_level=2,
        key_certificate_orders=(2,),
    )
    return FamilyInstance(f, FamilySpec("ikeda", {}), manifest)


# -- prescribed intermediate vanishing ----------------------------------------


def gen_exceptional(
    n: int,
    d: int,
    k: int,
    *,
    h: Optional[Poly] = None,
    p: Optional[Poly] = None,
    seed: int = 0,
) -> FamilyInstance:
    """Degree-d form whose Hessians vanish exactly for orders 2..k.

    Shape: x2*u^(k-1)*v^(d-k) + x3*u^(d-2)*v plus tail summands h(x2,x3) and
    p(x4..xn).  The vanishing orders are certified structurally; the
    nonvanishing of orders 1 and k+1 is verified by witness evaluation, with
    a bounded deterministic perturbation of h on failure.
    """
    _require(n >= 3, "need n >= 3")
    _require(d >= 5, "need d >= 5")
    _require(2 <= k and 2 * k < d, "need 2 <= k < d/2")
    x_names = tuple(f"x{i}" for i in range(2, n + 1))
    vs = VariableSet(x_names + ("u", "v"), n_x=len(x_names))
    core = poly_sum(
        vs,
        [
            _mono(vs, {"x2": 1, "u": k - 1, "v": d - k}),
            _mono(vs, {"x3": 1, "u": d - 2, "v": 1}),
        ],
    )
    if h is not None:
        _require(
            not h.is_zero()
            and h.degree == d
            and h.supported_on({vs.index("x2"), vs.index("x3")}),
            "override h must be degree d in x2, x3",
        )
    base_h = h if h is not None else _power_sum(vs, ("x2", "x3"), d)
    spare = x_names[2:]
    if p is not None:
        spare_idx = {vs.index(x) for x in spare}
        _require(
            p.is_zero() or (p.degree == d and p.supported_on(spare_idx)),
            "override p must be degree d in x4..xn",
        )
    tail_p = p if p is not None else _power_sum(vs, spare, d)

    hess_pattern = [(1, False)] + [(r, True) for r in range(2, k + 1)]
    check_above = 2 * (k + 1) <= d
    if check_above:
        hess_pattern.append((k + 1, False))
    manifest = Manifest(
        hess_pattern=tuple(hess_pattern),
        cone=False,
        dim_a1=n + 1,
        slp="fails",
        slp_fail_level=2,
        key_certificate_orders=tuple(range(2, k + 1)),
    )
    spec = FamilySpec("exceptional", {"n": n, "d": d, "k": k}, seed, _override_texts(h=h, p=p))

    perturbation = _mono(vs, {"x2": d - 1, "x3": 1})
    last_error = "unverified"
    for attempt in range(4):
        f = core + base_h + perturbation.scale(attempt) + tail_p
        try:
            _check_nondegenerate(f, "exceptional")
            for r in range(2, k + 1):
                _verify(
                    key_criterion(f, r) is not None,
                    f"exceptional: no vanishing certificate at order {r}",
                )
            _verify(
                not hessian_vanishes(f, 1, seed=seed).vanishes,
                "exceptional: classical Hessian vanished",
            )
            if check_above:
                _verify(
                    not hessian_vanishes(f, k + 1, seed=seed).vanishes,
                    f"exceptional: Hessian of order {k + 1} vanished",
                )
            return FamilyInstance(f, spec, manifest)
        except DegenerateInstanceError as exc:
            last_error = str(exc)
            if h is not None:
                raise
    raise RetriesExhaustedError(
        f"exceptional({n},{d},{k}): perturbation retries exhausted: {last_error}"
    )


# -- bilinear-shape families with a u-subring overflow -------------------------


def gen_gnp(
    m: int,
    n: Optional[int],
    k: int,
    e: int,
    variant: str = "lemma_m2",
    *,
    seed: int = 0,
) -> FamilyInstance:
    """Sum of products (degree-k x-form) * (degree-e u-form) with hess^k = 0.

    Variants fix the canonical choices: `lemma_m2` is the five-variable
    shape with the minimal number of x-variables; `maximal` pairs k-th powers
    of fresh x-variables with the full degree-e monomial basis of the
    u-block; `minimal` pairs the full degree-k x-monomial basis with as few
    u-forms as that requires.
    """
    _require(m >= 2, "need m >= 2")
    _require(k >= 1, "need k >= 1")
    _require(e > k, "need e > k")
    d = e + k
    if variant == "lemma_m2":
        _require(m == 2, "lemma_m2 variant requires m = 2")
        _require(n is None or n == 2, "lemma_m2 variant forces n = 2")
        vs = VariableSet(("x", "y", "z", "u", "v"), n_x=3)
        parts = [
            _mono(vs, {"x": k - j, "y": j, "u": e - j, "v": j})
            for j in range(k + 1)
        ]
        parts.append(_mono(vs, {"z": k, "u": e - k - 1, "v": k + 1}))
        f = poly_sum(vs, parts)
        dim_a1 = 5
        params = {"m": m, "n": 2, "k": k, "e": e, "variant": variant}
    elif variant == "maximal":
        s = mono_count(m, e)
        _require(n is None or n == s - 1, f"maximal variant forces n = {s - 1}")
        x_names = tuple(f"x{j}" for j in range(1, s + 1))
        u_names = tuple(f"u{j}" for j in range(1, m + 1))
        vs = VariableSet(x_names + u_names, n_x=s)
        u_monos = mono_basis(VariableSet(u_names), e)
        parts = []
        for j, um in enumerate(u_monos):
            expo = [0] * len(vs)
            expo[j] = k
            for t, ee in enumerate(um):
                expo[s + t] = ee
            parts.append(Poly.monomial(vs, tuple(expo)))
        f = poly_sum(vs, parts)
        dim_a1 = m + s
        params = {"m": m, "n": s - 1, "k": k, "e": e, "variant": variant}
    elif variant == "minimal":
        _require(n is not None, "minimal variant needs n")
        _require(n >= m, "minimal variant needs n >= m")
        s = mono_count(n + 1, k)
        _require(
            s <= mono_count(m, e),
            f"not enough independent degree-{e} u-forms: need {s}",
        )
        x_names = tuple(f"x{j}" for j in range(n + 1))
        u_names = tuple(f"u{j}" for j in range(1, m + 1))
        vs = VariableSet(x_names + u_names, n_x=n + 1)
        x_monos = mono_basis(VariableSet(x_names), k)
        u_monos = _covering_monomials(m, e, s)
        parts = []
        for xm, um in zip(x_monos, u_monos):
            parts.append(Poly.monomial(vs, tuple(xm) + (0,) * m) * Poly.monomial(vs, (0,) * (n + 1) + tuple(um)))
        f = poly_sum(vs, parts)
        dim_a1 = m + n + 1
        params = {"m": m, "n": n, "k": k, "e": e, "variant": variant}
    else:
        raise InfeasibleParametersError(f"unknown gnp variant {variant!r}")

    _check_nondegenerate(f, f"gnp/{variant}")
    _verify(
        key_criterion(f, k) is not None,
        f"gnp/{variant}: no vanishing certificate at order {k}",
    )
    manifest = Manifest(
        hess_pattern=((k, True),),
        cone=False,
        dim_a1=dim_a1,
        slp="fails",
        key_certificate_orders=(k,),
    )
    return FamilyInstance(f, FamilySpec("gnp", params, seed), manifest)


def _covering_monomials(m: int, degree: int, count: int) -> list[Monomial]:
    """First `count` degree monomials in m variables, patched to use them all."""
    monos = mono_basis(VariableSet(tuple(f"u{j}" for j in range(1, m + 1))), degree)
    if count > len(monos):
        raise InfeasibleParametersError(
            f"need {count} distinct degree-{degree} monomials in {m} variables, "
            f"only {len(monos)} exist"
        )
    chosen = monos[:count]
    covered = {i for mo in chosen for i, ee in enumerate(mo) if ee}
    missing = [i for i in range(m) if i not in covered]
    for slot, i in enumerate(missing, start=1):
        replacement = tuple(degree if t == i else 0 for t in range(m))
        if replacement not in chosen:
            chosen[-slot] = replacement
    return chosen


# -- classical vanishing-Hessian families --------------------------------------


def gen_perazzo(
    m: int,
    n: int,
    d: int,
    *,
    gs: Optional[Sequence[Poly]] = None,
    h: Optional[Poly] = None,
    seed: int = 0,
) -> FamilyInstance:
    """x0*g0 + ... + xn*gn + h with u-block forms g_i; classical Hessian zero."""
    _require(m >= 2, "need m >= 2")
    _require(n >= 2, "need n >= 2")
    _require(n + 1 > m, "need n + 1 > m (forces algebraic dependence)")
    _require(d >= 3, "need d >= 3")
    _require(
        n + 1 <= mono_count(m, d - 1),
        f"need {n + 1} distinct degree-{d - 1} monomials in {m} variables",
    )
    x_names = tuple(f"x{j}" for j in range(n + 1))
    u_names = tuple(f"u{j}" for j in range(1, m + 1))
    vs = VariableSet(x_names + u_names, n_x=n + 1)
    if gs is None:
        g_monos = _covering_monomials(m, d - 1, n + 1)
        gs_polys = [Poly.monomial(vs, (0,) * (n + 1) + tuple(gm)) for gm in g_monos]
    else:
        _require(len(gs) == n + 1, f"need exactly {n + 1} u-block forms")
        gs_polys = list(gs)
    parts = [Poly.variable(vs, i) * gs_polys[i] for i in range(n + 1)]
    if h is not None:
        _require(
            h.is_zero() or (h.degree == d and h.supported_on(vs.u_indices)),
            "h must be a degree-d u-block form",
        )
        parts.append(h)
    f = poly_sum(vs, parts)
    _check_nondegenerate(f, "perazzo")
    _verify(key_criterion(f, 1) is not None, "perazzo: no vanishing certificate")
    manifest = Manifest(
        hess_pattern=((1, True),),
        cone=False,
        dim_a1=m + n + 1,
        slp="fails",
        slp_fail_level=1,
        key_certificate_orders=(1,),
    )
    spec = FamilySpec(
        "perazzo",
        {"m": m, "n": n, "d": d},
        seed,
        _override_texts(h=h, **{f"g{i}": g for i, g in enumerate(gs or [])}),
    )
    return FamilyInstance(f, spec, manifest)


def gen_permutti(
    m: int,
    n: int,
    e: int,
    d: int,
    *,
    Ps: Optional[Mapping[int, Optional[Poly]]] = None,
    seed: int = 0,
) -> FamilyInstance:
    """Sum of Q^j * P_j with Q = sum x_i g_i of degree e; Hessian zero.

    The g_i default to distinct degree-(e-1) u-block monomials, so they are
    linearly independent yet algebraically dependent (their count exceeds the
    number of u-variables).  P_j defaults to a power of the first u-variable
    of the right degree; entries of `Ps` may be replaced or set to None/zero.
    """
    _require(m >= 2, "need m >= 2")
    _require(
        e >= 3,
        "need e >= 3: degree-(e-1) forms that are linearly independent but "
        "algebraically dependent exist only for e - 1 >= 2",
    )
    _require(n + 1 > m, "need n + 1 > m (forces algebraic dependence)")
    mu = d // e
    _require(mu >= 1, "need d >= e")
    _require(
        n + 1 <= mono_count(m, e - 1),
        f"need {n + 1} distinct degree-{e - 1} monomials in {m} variables",
    )
    x_names = tuple(f"x{j}" for j in range(n + 1))
    u_names = tuple(f"u{j}" for j in range(1, m + 1))
    vs = VariableSet(x_names + u_names, n_x=n + 1)
    g_monos = _covering_monomials(m, e - 1, n + 1)
    Q = poly_sum(
        vs,
        [
            Poly.variable(vs, i) * Poly.monomial(vs, (0,) * (n + 1) + tuple(gm))
            for i, gm in enumerate(g_monos)
        ],
    )
    parts = []
    for j in range(mu + 1):
        if Ps is not None and j in Ps:
            pj = Ps[j]
            if pj is None or pj.is_zero():
                continue
            _require(
                pj.degree == d - j * e and pj.supported_on(vs.u_indices),
                f"P_{j} must be a degree-{d - j * e} u-block form",
            )
        else:
            pj = _mono(vs, {"u1": d - j * e})
        parts.append(Q**j * pj)
    f = poly_sum(vs, parts)
    _verify(not f.is_zero(), "permutti: all biform parts were zero")
    _check_nondegenerate(f, "permutti")
    _verify(
        hessian_vanishes(f, 1, seed=seed).vanishes,
        "permutti: classical Hessian did not vanish",
    )
    manifest = Manifest(
        hess_pattern=((1, True),),
        cone=False,
        dim_a1=m + n + 1,
        slp="fails",
        slp_fail_level=1,
    )
    p_over = {}
    if Ps:
        p_over = {f"P{j}": ("0" if pj is None else pj.to_text()) for j, pj in Ps.items()}
    return FamilyInstance(
        f, FamilySpec("permutti", {"m": m, "n": n, "e": e, "d": d}, seed, p_over), manifest
    )


def gen_gn(
    m: int,
    n: int,
    r: int,
    e: int,
    d: int,
    *,
    seed: int = 0,
) -> FamilyInstance:
    """Canonical composite-core family: biforms in s cores Q_l and the u-block.

    The x-variables are split into s = n - r groups; group l contributes the
    core Q_l = sum of x_i * (degree-(e-1) monomial in the u-block), with
    distinct monomials inside each group.  The biforms P_j are single
    monomials chosen so every core appears.  All forms built this way from
    fewer base forms than cores have algebraically dependent partials, so the
    classical Hessian vanishes; this is verified per instance together with
    the cone test.
    """
    _require(m >= 2, "need m >= 2")
    _require(1 <= r < n, "need 1 <= r < n (so that s = n - r >= 1)")
    _require(e >= 2, "need e >= 2")
    _require(d > e, "need d > e")
    _require(
        m == r + 1,
        "canonical instantiation uses the u-variables themselves as the base "
        "forms, which needs m = r + 1",
    )
    s = n - r
    mu = d // e
    u_names = tuple(f"u{j}" for j in range(1, m + 1))
    x_names = tuple(f"x{j}" for j in range(n + 1))
    vs = VariableSet(x_names + u_names, n_x=n + 1)
    base = (n + 1) // s
    rem = (n + 1) % s
    sizes = [base + 1 if l < rem else base for l in range(s)]
    _require(
        max(sizes) <= mono_count(m, e - 1),
        f"a core group of {max(sizes)} x-variables needs as many distinct "
        f"degree-{e - 1} monomials in {m} variables",
    )
    all_monos = mono_basis(VariableSet(u_names), e - 1)
    groups: list[list[Monomial]] = [all_monos[: size] for size in sizes]
    covered = {i for grp in groups for mo in grp for i, ee in enumerate(mo) if ee}
    covered.add(0)  # the biform u-parts are powers of u1
    missing = [i for i in range(m) if i not in covered]
    for slot, i in enumerate(missing, start=1):
        groups[-1][-slot] = tuple((e - 1) if t == i else 0 for t in range(m))
    cores: list[Poly] = []
    xi = 0
    for grp in groups:
        parts = []
        for mo in grp:
            parts.append(Poly.variable(vs, xi) * Poly.monomial(vs, (0,) * (n + 1) + tuple(mo)))
            xi += 1
        cores.append(poly_sum(vs, parts))
    # single-monomial biforms: z-part degree j, u-part a power of u1,
    # chosen so that every core index appears in some biform
    uncovered = list(range(s))
    z_parts: dict[int, tuple[int, ...]] = {}
    for j in range(mu, 0, -1):
        take = uncovered[: min(j, len(uncovered))]
        uncovered = uncovered[len(take) :]
        expo = [0] * s
        for t in take:
            expo[t] = 1
        expo[0] += j - len(take)
        z_parts[j] = tuple(expo)
    _require(
        not uncovered,
        "single-monomial biforms cannot involve every core: increase d or "
        "reduce the number of cores",
    )
    parts = [_mono(vs, {"u1": d})]
    for j, zexpo in z_parts.items():
        term = _mono(vs, {"u1": d - j * e})
        for l, ee in enumerate(zexpo):
            term = term * cores[l] ** ee
        parts.append(term)
    f = poly_sum(vs, parts)
    _check_nondegenerate(f, "gn")
    _verify(
        hessian_vanishes(f, 1, seed=seed).vanishes,
        "gn: classical Hessian did not vanish",
    )
    manifest = Manifest(
        hess_pattern=((1, True),),
        cone=False,
        dim_a1=m + n + 1,
        slp="fails",
        slp_fail_level=1,
    )
    return FamilyInstance(
        f,
        FamilySpec("gn", {"m": m, "n": n, "r": r, "e": e, "d": d}, seed),
        manifest,
    )


# -- families failing the weak property ----------------------------------------


def gen_wlpodd(N: int, d: int, *, seed: int = 0) -> FamilyInstance:
    """Odd socle degree, unimodal Hilbert vector, weak property fails.

    Even N pairs the degree-q monomials of the u-block with their twins in
    x-variables; odd N drops the last pairing and adds a second anchor term.
    The middle Hessian vanishes (certified), which kills the middle map
    A_q -> A_{q+1} for every linear form.
    """
    _require(d >= 5 and d % 2 == 1, "need odd d >= 5")
    _require(
        N >= 4,
        "need N >= 4: the paired-monomial construction starts at N = 4 "
        "(no instance with N = 3 is provided)",
    )
    q = d // 2
    m = N // 2
    even = N % 2 == 0
    u_names = tuple(f"u{j}" for j in range(1, m + 1))
    x_count = m + 1 if even else m + 2
    x_names = tuple(f"x{j}" for j in range(x_count))
    vs = VariableSet(x_names + u_names, n_x=x_count)
    u_monos = mono_basis(VariableSet(u_names), q)
    nu = len(u_monos)
    parts = [_mono(vs, {"x0": q, "u1": q + 1})]
    upto = nu if even else nu - 1
    for mo in u_monos[:upto]:
        expo = [0] * len(vs)
        for t, ee in enumerate(mo):
            expo[1 + t] = ee  # x1..xm twin
            expo[x_count + t] += ee
        expo[x_count + m - 1] += 1  # extra factor u_m
        parts.append(Poly.monomial(vs, tuple(expo)))
    if not even:
        parts.append(_mono(vs, {f"x{m + 1}": q, f"u{m}": q + 1}))
    f = poly_sum(vs, parts)

    free = N if even else N - 1  # paired variables spanning the bulk of A_k
    extras = (1 if even else 2)
    half = [1]
    for k in range(1, q + 1):
        hk = extras * k + comb(free - 1 + k, k)
        if not even and k == q:
            hk -= 1  # X_m^q annihilates f: its twin monomial is not present
        half.append(hk)
    hilbert = tuple(half + half[::-1])

    _check_nondegenerate(f, "wlpodd")
    _verify(key_criterion(f, q) is not None, "wlpodd: no middle vanishing certificate")
    manifest = Manifest(
        hess_pattern=((q, True),),
        hilbert=hilbert,
        unimodal=True,
        cone=False,
        dim_a1=N + 1,
        slp="fails",
        slp_fail_level=q,
        wlp="fails",
        wlp_fail_level=q,
        key_certificate_orders=(q,),
    )
    return FamilyInstance(f, FamilySpec("wlpodd", {"N": N, "d": d}, seed), manifest)


_THMWLP_EXCLUSIONS = {
    (3, 3): "every algebra with 4 essential variables and socle degree 3 "
            "satisfies the strong property, so the weak one cannot fail",
    (3, 4): "every algebra with 4 essential variables and socle degree 4 "
            "satisfies the strong property, so the weak one cannot fail",
    (4, 4): "every algebra with 5 essential variables and socle degree 4 "
            "satisfies the weak property",
    (3, 6): "every algebra with 4 essential variables and socle degree 6 "
            "satisfies the weak property",
}


def gen_thmwlp(
    N: int,
    d: int,
    *,
    g: Optional[Poly] = None,
    h: Optional[Poly] = None,
    seed: int = 0,
) -> FamilyInstance:
    """Even socle degree, unimodal Hilbert vector, weak property fails.

    Three regimes (d = 4, d = 6, d >= 8) each plant enough operators pushing
    f into the u-subring that some consecutive map can never be injective;
    the failure is certified by an obstruction certificate, not by sampling.
    """
    if (N, d) in _THMWLP_EXCLUSIONS:
        raise InfeasibleParametersError(f"(N,d)=({N},{d}): " + _THMWLP_EXCLUSIONS[(N, d)])
    _require(d >= 4 and d % 2 == 0, "need even d >= 4")
    _require(N >= 3, "need N >= 3")
    if d == 4:
        _require(N >= 5, "d = 4 needs N >= 5")
        core_x = ("x2", "x3", "x4", "x5")
        core = [
            {"x2": 1, "u": 3},
            {"x3": 1, "u": 2, "v": 1},
            {"x4": 1, "u": 1, "v": 2},
            {"x5": 1, "v": 3},
        ]
        level, size = 1, 4
        spare_from = 6
    elif d == 6:
        _require(N >= 4, "d = 6 needs N >= 4")
        core_x = ("x2", "x3", "x4")
        core = [
            {"x2": 1, "u": 2, "v": 3},
            {"x3": 1, "u": 4, "v": 1},
            {"x4": 1, "u": 1, "v": 4},
        ]
        level, size = 2, 5
        spare_from = 5
    else:
        q = d // 2
        core_x = ("x2", "x3")
        core = [
            {"x2": 1, "u": q - 2, "v": q + 1},
            {"x3": 1, "u": 2 * q - 3, "v": 2},
        ]
        level, size = q - 1, q + 2
        spare_from = 4
    spare = tuple(f"x{i}" for i in range(spare_from, N + 1))
    x_names = core_x + spare
    vs = VariableSet(x_names + ("u", "v"), n_x=len(x_names))
    uv = {vs.index("u"), vs.index("v")}
    if g is not None:
        _require(g.is_zero() or (g.degree == d and g.supported_on(uv)), "g must be degree d in u, v")
    g_poly = g if g is not None else _power_sum(vs, ("u", "v"), d)
    if h is not None:
        spare_idx = {vs.index(x) for x in spare}
        _require(h.is_zero() or (h.degree == d and h.supported_on(spare_idx)), "h must be degree d in the spare x-variables")
    h_poly = h if h is not None else _power_sum(vs, spare, d)
    f = poly_sum(vs, [_mono(vs, t) for t in core]) + g_poly + h_poly

    hilbert = None
    if (N, d) == (5, 4):
        hilbert = (1, 6, 6, 6, 1)
    elif (N, d) == (4, 6):
        hilbert = (1, 5, 8, 8, 8, 5, 1)

    _check_nondegenerate(f, "thmwlp")
    cert = wlp_obstruction(f, level)
    _verify(cert is not None, f"thmwlp: no obstruction at level {level}")
    _verify(
        cert.s == size,
        f"thmwlp: obstruction has {cert.s} operators, expected {size}",
    )
    manifest = Manifest(
        hilbert=hilbert,
        unimodal=True,
        cone=False,
        dim_a1=N + 1,
        wlp="fails",
        wlp_fail_level=level,
        obstruction_level=level,
        obstruction_size=size,
    )
    spec = FamilySpec("thmwlp", {"N": N, "d": d}, seed, _override_texts(g=g, h=h))
    return FamilyInstance(f, spec, manifest)


_PROP44_CORES = {
    "i": ({"x0": 1, "u": 3}, {"x1": 1, "u": 1, "v": 2}, {"x2": 1, "u": 2, "v": 1}),
    "ii": ({"x0": 1, "u": 2, "v": 1}, {"x1": 1, "u": 3}, {"x2": 1, "v": 3}),
    "iii": None,  # mixed signs, built explicitly below
}


def gen_prop44(case: str, h: Optional[Poly] = None, *, seed: int = 0) -> FamilyInstance:
    """Codimension 5, socle degree 4: Hessian vanishes yet the weak property holds.

    The three canonical cores come with their known witness (U+V for cases
    i and ii, V for case iii); the tail h is any binary quartic in u, v.
    """
    if case not in ("i", "ii", "iii"):
        raise InfeasibleParametersError(f"unknown case {case!r}, expected i, ii or iii")
    vs = VariableSet(("x0", "x1", "x2", "u", "v"), n_x=3)
    uv = {vs.index("u"), vs.index("v")}
    if case == "iii":
        core = poly_sum(
            vs,
            [
                _mono(vs, {"x0": 1, "u": 2, "v": 1}),
                _mono(vs, {"x0": 1, "v": 3}, -1),
                _mono(vs, {"x1": 1, "u": 3}),
                _mono(vs, {"x1": 1, "u": 1, "v": 2}, -1),
                _mono(vs, {"x2": 1, "v": 3}),
            ],
        )
        witness = LinearForm.from_coeffs((0, 0, 0, 0, 1))
    else:
        core = poly_sum(vs, [_mono(vs, t) for t in _PROP44_CORES[case]])
        witness = LinearForm.from_coeffs((0, 0, 0, 1, 1))
    if h is not None:
        _require(h.is_zero() or (h.degree == 4 and h.supported_on(uv)), "h must be a binary quartic in u, v")
    h_poly = h if h is not None else _power_sum(vs, ("u", "v"), 4)
    f = core + h_poly
    _check_nondegenerate(f, "prop44")
    _verify(
        hessian_vanishes(f, 1, seed=seed).vanishes,
        "prop44: classical Hessian did not vanish",
    )
    ok, _ = wlp_check_element(f, witness)
    _verify(ok, "prop44: the canonical witness fails for this h")
    manifest = Manifest(
        hess_pattern=((1, True),),
        cone=False,
        dim_a1=5,
        slp="fails",
        slp_fail_level=1,
        wlp="holds",
        wlp_witness=witness,
    )
    spec = FamilySpec("prop44", {"case": case}, seed, _override_texts(h=h))
    return FamilyInstance(f, spec, manifest)


# -- manifest replay ------------------------------------------------------------


def replay_manifest(
    inst: FamilyInstance, *, mode: str = "probabilistic", seed: int = 0
) -> list[tuple[str, bool, str]]:
    """Re-verify every manifest claim through the analysis modules.

    Returns (claim, passed, detail) triples; certificates are re-searched and
    independently replayed, never trusted from the instance.
    """
    from .lefschetz import slp_generic, wlp_generic  # local to avoid cycle at import

    f = inst.f
    man = inst.manifest
    results: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        results.append((name, ok, detail))

    for k, expect_vanish in man.hess_pattern:
        verdict = hessian_vanishes(f, k, mode, seed)
        check(
            f"hess[{k}] {'=0' if expect_vanish else '!=0'}",
            verdict.vanishes == expect_vanish,
            verdict.mode,
        )
    if man.hilbert is not None:
        hv = hilbert_vector(f)
        check("hilbert", hv.dims == man.hilbert, f"{hv.dims} vs {man.hilbert}")
    if man.unimodal is not None:
        check("unimodal", is_unimodal(hilbert_vector(f)) == man.unimodal)
    if man.cone is not None:
        check("cone", is_cone(f).is_cone == man.cone)
    if man.dim_a1 is not None:
        got = catalecticant(f, 1).rank()
        check("dim_a1", got == man.dim_a1, f"{got} vs {man.dim_a1}")
    for k in man.key_certificate_orders:
        cert = key_criterion(f, k)
        check(
            f"key_certificate[{k}]",
            cert is not None and verify_key_certificate(f, cert),
        )
    if man.obstruction_level is not None:
        cert = wlp_obstruction(f, man.obstruction_level)
        ok = cert is not None and verify_obstruction_certificate(f, cert)
        if ok and man.obstruction_size is not None:
            ok = cert.s == man.obstruction_size
        check(f"obstruction[{man.obstruction_level}]", ok)
    if man.slp is not None:
        report = slp_generic(f, seed=seed)
        ok = report.verdict == man.slp
        if ok and man.slp_fail_level is not None:
            ok = report.level == man.slp_fail_level
        check("slp", ok, report.verdict)
    if man.wlp is not None:
        if man.wlp_witness is not None:
            ok, _ = wlp_check_element(f, man.wlp_witness)
            check("wlp_witness", ok == (man.wlp == "holds"))
        else:
            report = wlp_generic(f, seed=seed)
            ok = report.verdict == man.wlp
            if ok and man.wlp_fail_level is not None:
                ok = report.level == man.wlp_fail_level
            check("wlp", ok, report.verdict)
    return results


def generate(spec: FamilySpec) -> FamilyInstance:
    """Dispatch a FamilySpec to its generator."""
    kind = spec.kind
    params = dict(spec.params)
    seed = spec.seed
    if kind == "ikeda":
        return gen_ikeda()
    if kind == "exceptional":
        return gen_exceptional(params["n"], params["d"], params["k"], seed=seed)
    if kind == "gnp":
        return gen_gnp(
            params["m"],
            params.get("n"),
            params["k"],
            params["e"],
            params.get("variant", "lemma_m2"),
            seed=seed,
        )
    if kind == "perazzo":
        return gen_perazzo(params["m"], params["n"], params["d"], seed=seed)
    if kind == "permutti":
        return gen_permutti(params["m"], params["n"], params["e"], params["d"], seed=seed)
    if kind == "gn":
        return gen_gn(
            params["m"], params["n"], params["r"], params["e"], params["d"], seed=seed
        )
    if kind == "wlpodd":
        return gen_wlpodd(params["N"], params["d"], seed=seed)
    if kind == "thmwlp":
        return gen_thmwlp(params["N"], params["d"], seed=seed)
    if kind == "prop44":
        return gen_prop44(params["case"], seed=seed)
    raise InfeasibleParametersError(f"unknown family kind {spec.kind!r}")
