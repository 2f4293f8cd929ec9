"""The reproducibility suite: every acceptance fixture, runnable as a table.

Each fixture re-derives its expected values through the public API and
reports pass/fail with a short detail string.  The suite is deterministic
given (seed, mode); the CLI `reproduce` subcommand and the acceptance tests
both consume `FIXTURES` so they cannot drift apart.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from . import linalg
from .apolar import ak_basis, catalecticant, hilbert_vector
from .errors import InfeasibleParametersError
from .families import (
    FamilyInstance,
    gen_exceptional,
    gen_gnp,
    gen_ikeda,
    gen_perazzo,
    gen_prop44,
    gen_thmwlp,
    gen_wlpodd,
    replay_manifest,
)
from .hessian import hessian_matrix, hessian_vanishes, is_cone
from .lefschetz import (
    LinearForm,
    key_criterion,
    mult_map,
    verify_key_certificate,
)
from .polycore import (
    Poly,
    VariableSet,
    diff_apply,
    eval_poly,
    linear_change,
    mono_basis,
    parse_poly,
    poly_sum,
)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    mode: str = "probabilistic"


@dataclass(frozen=True)
class Fixture:
    fixture_id: str
    criterion: int
    description: str
    run: Callable[[SuiteConfig], tuple[bool, str]]


@dataclass(frozen=True)
class FixtureOutcome:
    fixture_id: str
    criterion: int
    passed: bool
    detail: str
    millis: float

    def to_json_dict(self) -> dict:
        return {
            "id": self.fixture_id,
            "criterion": self.criterion,
            "passed": self.passed,
            "detail": self.detail,
            "millis": round(self.millis, 3),
        }


def _named(results: Sequence[tuple[str, bool, str]]) -> tuple[bool, str]:
    bad = [name for name, ok, _ in results if not ok]
    if bad:
        return False, "failed: " + ", ".join(bad)
    return True, f"{len(results)} checks"


# -- criterion 1 and 2: fixed small fixtures -----------------------------------


def _run_ikeda(config: SuiteConfig) -> tuple[bool, str]:
    inst = gen_ikeda()
    results = replay_manifest(inst, mode=config.mode, seed=config.seed)
    hv = hilbert_vector(inst.f)
    results.append(("dim_a2", hv[2] == 10, str(hv[2])))
    return _named(results)


def _run_perazzo(config: SuiteConfig) -> tuple[bool, str]:
    inst = gen_perazzo(2, 2, 3)
    verdict = hessian_vanishes(inst.f, 1, "exact", config.seed)
    cone = is_cone(inst.f)
    return _named(
        [
            ("hess=0(exact)", verdict.vanishes and verdict.mode == "exact", ""),
            ("not_cone", not cone.is_cone, ""),
        ]
    )


# -- criterion 3: the prescribed-vanishing sweep --------------------------------

EXCEPTIONAL_SWEEP = [
    (3, 5, 2),
    (3, 6, 2),
    (3, 7, 2),
    (3, 7, 3),
    (3, 8, 2),
    (3, 8, 3),
    (3, 9, 2),
    (3, 9, 3),
    (3, 9, 4),
    (4, 8, 3),
]


def _exceptional_fixture(n: int, d: int, k: int) -> Fixture:
    def run(config: SuiteConfig) -> tuple[bool, str]:
        inst = gen_exceptional(n, d, k, seed=config.seed)
        return _named(replay_manifest(inst, mode=config.mode, seed=config.seed))

    return Fixture(
        f"exceptional/n{n}-d{d}-k{k}",
        3,
        f"orders 2..{k} vanish, orders 1 and {k + 1} do not (n={n}, d={d})",
        run,
    )


# -- criterion 4: bilinear families with overflow certificates ------------------


def _gnp_lemma_fixture(k: int, e: int) -> Fixture:
    def run(config: SuiteConfig) -> tuple[bool, str]:
        inst = gen_gnp(2, 2, k, e, "lemma_m2", seed=config.seed)
        cert = key_criterion(inst.f, k)
        results = [
            ("key_certificate", cert is not None and verify_key_certificate(inst.f, cert), ""),
            ("hess=0(exact)", hessian_vanishes(inst.f, k, "exact", config.seed).vanishes, ""),
            ("dim_a1=5", catalecticant(inst.f, 1).rank() == 5, ""),
        ]
        return _named(results)

    return Fixture(
        f"gnp/lemma-k{k}-e{e}", 4, f"five-variable shape, order-{k} Hessian vanishes", run
    )


def _gnp_maximal_fixture(m: int, e: int) -> Fixture:
    def run(config: SuiteConfig) -> tuple[bool, str]:
        inst = gen_gnp(m, None, 1, e, "maximal", seed=config.seed)
        expected = m + comb(m - 1 + e, e)
        got = catalecticant(inst.f, 1).rank()
        return got == expected, f"codimension {got} vs {expected}"

    return Fixture(
        f"gnp/maximal-m{m}-e{e}", 4, "maximal-variant codimension formula", run
    )


def _gnp_boundary(config: SuiteConfig) -> tuple[bool, str]:
    try:
        gen_gnp(2, 2, 2, 2, "lemma_m2", seed=config.seed)
    except InfeasibleParametersError as exc:
        return True, f"rejected: {exc}"
    return False, "k = e = 2 should be infeasible (needs e > k)"


# -- criteria 5 and 6: weak-property failures ------------------------------------


def _middle_never_injective(
    inst: FamilyInstance, level: int, config: SuiteConfig, trials: int = 20
) -> tuple[bool, str]:
    f = inst.f
    h_src = len(ak_basis(f, level))
    worst = 0
    for t in range(trials):
        rng = random.Random(f"middle:{config.seed}:{t}")
        coeffs = [rng.randint(-64, 64) for _ in range(len(f.vars))]
        if not any(coeffs):
            coeffs[0] = 1
        L = LinearForm.from_coeffs(coeffs)
        r = linalg.rank(mult_map(f, L, level, 1))
        worst = max(worst, r)
        if r >= h_src:
            return False, f"injective at trial {t}"
    return True, f"max rank {worst} < {h_src} over {trials} linear forms"


def _wlpodd_fixture(N: int, d: int) -> Fixture:
    def run(config: SuiteConfig) -> tuple[bool, str]:
        inst = gen_wlpodd(N, d, seed=config.seed)
        q = d // 2
        results = replay_manifest(inst, mode=config.mode, seed=config.seed)
        ok, detail = _middle_never_injective(inst, q, config)
        results.append((f"A{q}->A{q + 1} never injective", ok, detail))
        return _named(results)

    return Fixture(
        f"wlpodd/N{N}-d{d}",
        5,
        "odd socle degree, unimodal, middle map never injective",
        run,
    )


def _thmwlp_fixture(N: int, d: int) -> Fixture:
    def run(config: SuiteConfig) -> tuple[bool, str]:
        inst = gen_thmwlp(N, d, seed=config.seed)
        level = inst.manifest.obstruction_level
        results = replay_manifest(inst, mode=config.mode, seed=config.seed)
        ok, detail = _middle_never_injective(inst, level, config)
        results.append((f"A{level}->A{level + 1} never injective", ok, detail))
        return _named(results)

    return Fixture(
        f"thmwlp/N{N}-d{d}",
        6,
        "even socle degree, unimodal, obstruction certificate replays",
        run,
    )


# -- criterion 7 ------------------------------------------------------------------


def _prop44_fixture(case: str) -> Fixture:
    def run(config: SuiteConfig) -> tuple[bool, str]:
        inst = gen_prop44(case, seed=config.seed)
        results = replay_manifest(inst, mode="exact", seed=config.seed)
        return _named(results)

    return Fixture(
        f"prop44/case-{case}", 7, "vanishing Hessian yet the weak property holds", run
    )


# -- criterion 8: randomized property suites ---------------------------------------


def _random_form(
    rng: random.Random,
    nvars: int,
    degree: int,
    max_terms: int = 6,
    coeff_bound: int = 4,
) -> Poly:
    vs = VariableSet(tuple(f"x{i}" for i in range(nvars)))
    monos = mono_basis(vs, degree)
    count = rng.randint(2, min(max_terms, len(monos)))
    chosen = rng.sample(monos, count)
    terms = {}
    for mo in chosen:
        c = 0
        while c == 0:
            c = rng.randint(-coeff_bound, coeff_bound)
        terms[mo] = Fraction(c)
    return Poly(vs, terms)


def _random_unimodular(rng: random.Random, n: int) -> list[list[int]]:
    upper = [[0] * n for _ in range(n)]
    lower = [[0] * n for _ in range(n)]
    for i in range(n):
        upper[i][i] = rng.choice((-1, 1))
        lower[i][i] = rng.choice((-1, 1))
        for j in range(i + 1, n):
            upper[i][j] = rng.randint(-2, 2)
            lower[j][i] = rng.randint(-2, 2)
    return [
        [sum(lower[i][t] * upper[t][j] for t in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _prop_hilbert_symmetry(config: SuiteConfig) -> tuple[bool, str]:
    rng = random.Random(f"sym:{config.seed}")
    for trial in range(100):
        f = _random_form(rng, rng.randint(2, 4), rng.randint(2, 5))
        dims = hilbert_vector(f).dims
        if any(dims[i] != dims[-1 - i] for i in range(len(dims))):
            return False, f"asymmetric at trial {trial}: {dims}"
    return True, "100 instances"


def _prop_euler(config: SuiteConfig) -> tuple[bool, str]:
    rng = random.Random(f"euler:{config.seed}")
    for trial in range(100):
        f = _random_form(rng, rng.randint(2, 4), rng.randint(1, 5))
        vs = f.vars
        dual = vs.dual()
        total = poly_sum(
            vs,
            [
                Poly.variable(vs, i) * diff_apply(Poly.variable(dual, i), f)
                for i in range(len(vs))
            ],
        )
        if total != f.scale(f.degree):
            return False, f"Euler identity failed at trial {trial}"
    return True, "100 instances"


def _prop_rank_consistency(config: SuiteConfig) -> tuple[bool, str]:
    rng = random.Random(f"wat:{config.seed}")
    for trial in range(50):
        f = _random_form(rng, rng.randint(2, 3), rng.randint(2, 5))
        d = f.degree
        k = rng.randint(0, d // 2)
        coeffs = [rng.randint(-5, 5) for _ in range(len(f.vars))]
        if not any(coeffs):
            coeffs[0] = 1
        L = LinearForm.from_coeffs(coeffs)
        H = hessian_matrix(f, k)
        evaluated = [[eval_poly(e, L.coeffs) for e in row] for row in H.entries]
        hess_rank = linalg.rank(evaluated)
        mult_rank = linalg.rank(mult_map(f, L, k, d - 2 * k))
        if hess_rank != mult_rank:
            return False, f"rank mismatch {hess_rank} vs {mult_rank} at trial {trial}"
    return True, "50 instances"


def _prop_basis_change(config: SuiteConfig) -> tuple[bool, str]:
    from .apolar import AkBasis

    rng = random.Random(f"basis:{config.seed}")
    for trial in range(50):
        f = _random_form(rng, rng.randint(2, 4), rng.randint(2, 5))
        d = f.degree
        k = rng.randint(1, max(1, d // 2))
        if k > d // 2:
            continue
        base = ak_basis(f, k)
        u = _random_unimodular(rng, len(base))
        new_ops = []
        for i in range(len(base)):
            op = poly_sum(
                base.ops[0].vars,
                [base.ops[j].scale(u[i][j]) for j in range(len(base)) if u[i][j]],
            )
            new_ops.append(op)
        new_derived = tuple(diff_apply(op, f) for op in new_ops)
        changed = AkBasis(k, tuple(new_ops), new_derived, None)
        flag_default = hessian_vanishes(f, k, config.mode, config.seed).vanishes
        flag_changed = hessian_vanishes(
            f, k, config.mode, config.seed, basis=changed
        ).vanishes
        if flag_default != flag_changed:
            return False, f"basis change flipped the flag at trial {trial}"
    return True, "50 instances"


def _prop_variable_change(config: SuiteConfig) -> tuple[bool, str]:
    rng = random.Random(f"varchg:{config.seed}")
    for trial in range(50):
        f = _random_form(rng, rng.randint(2, 3), rng.randint(2, 4))
        d = f.degree
        k = rng.randint(0, d // 2)
        m = _random_unimodular(rng, len(f.vars))
        g = linear_change(f, m)
        a = hessian_vanishes(f, k, config.mode, config.seed).vanishes
        b = hessian_vanishes(g, k, config.mode, config.seed).vanishes
        if a != b:
            return False, f"variable change flipped the flag at trial {trial}"
    return True, "50 instances"


def _prop_noncone_nonvanishing(config: SuiteConfig) -> tuple[bool, str]:
    rng = random.Random(f"gn:{config.seed}")
    found = 0
    while found < 50:
        f = _random_form(rng, rng.randint(2, 4), rng.randint(3, 5))
        if is_cone(f).is_cone:
            continue
        found += 1
        if hessian_vanishes(f, 1, config.mode, config.seed).vanishes:
            return False, f"non-cone form with vanishing Hessian: {f.to_text()}"
    return True, "50 non-cone instances"


def _prop_separated(config: SuiteConfig) -> tuple[bool, str]:
    rng = random.Random(f"sep:{config.seed}")
    for trial in range(20):
        d = rng.randint(2, 4)
        a = rng.randint(2, 3)
        b = rng.randint(2, 3)
        g = _random_form(rng, a, d)
        h = _random_form(rng, b, d)
        x_names = tuple(f"x{i}" for i in range(a))
        u_names = tuple(f"u{i}" for i in range(1, b + 1))
        vs = VariableSet(x_names + u_names, n_x=a)
        terms = {}
        for mo, c in g.coeff_map().items():
            terms[tuple(mo) + (0,) * b] = c
        for mo, c in h.coeff_map().items():
            terms[(0,) * a + tuple(mo)] = terms.get((0,) * a + tuple(mo), Fraction(0)) + c
        f = Poly(vs, terms)
        dims_f = hilbert_vector(f).dims
        dims_g = hilbert_vector(g).dims
        dims_h = hilbert_vector(h).dims
        for k in range(1, d):
            if dims_f[k] != dims_g[k] + dims_h[k]:
                return False, f"additivity failed at trial {trial}, degree {k}"
    return True, "20 split pairs"


# -- criterion 9: mode agreement -----------------------------------------------


def _mode_agreement(config: SuiteConfig) -> tuple[bool, str]:
    fixtures: list[tuple[str, Poly, int]] = []

    def add(name: str, f: Poly) -> None:
        d = f.degree
        for k in range(d // 2 + 1):
            if len(ak_basis(f, k)) <= 8:
                fixtures.append((f"{name}[k={k}]", f, k))

    add("ikeda", gen_ikeda().f)
    add("perazzo", gen_perazzo(2, 2, 3).f)
    add("gnp", gen_gnp(2, 2, 1, 2).f)
    add("exceptional", gen_exceptional(3, 5, 2).f)
    add("prop44-i", gen_prop44("i").f)
    vs = VariableSet(("x", "y", "z"))
    add("fermat", parse_poly("x^4 + y^4 + z^4", vs))
    e_vs = VariableSet(("x", "y", "z", "u", "v"), n_x=3)
    add("mixed-quartic", parse_poly("x*u^3 + y*u^2*v + z*u*v^2 + v^4", e_vs))
    checked = 0
    for name, f, k in fixtures:
        prob = hessian_vanishes(f, k, "probabilistic", config.seed).vanishes
        exact = hessian_vanishes(f, k, "exact", config.seed).vanishes
        if prob != exact:
            return False, f"modes disagree on {name}"
        checked += 1
    return True, f"{checked} matrices"


# -- registry -------------------------------------------------------------------


def _fixture(fid: str, criterion: int, description: str, fn) -> Fixture:
    return Fixture(fid, criterion, description, fn)


FIXTURES: list[Fixture] = (
    [
        _fixture("ikeda/full", 1, "profile, Hilbert vector, strong-property failure", _run_ikeda),
        _fixture("perazzo/vanishing-noncone", 2, "classical vanishing Hessian, not a cone", _run_perazzo),
    ]
    + [_exceptional_fixture(n, d, k) for n, d, k in EXCEPTIONAL_SWEEP]
    + [_gnp_lemma_fixture(k, e) for k, e in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4))]
    + [_gnp_maximal_fixture(m, e) for m in (2, 3) for e in (2, 3)]
    + [_fixture("gnp/minimal-dimA1", 4, "minimal instances have five essential variables", lambda c: (
        catalecticant(gen_gnp(2, 2, 1, 2, "minimal", seed=c.seed).f, 1).rank() == 5,
        "",
    ))]
    + [_fixture("gnp/boundary-k-equals-e", 4, "k = e rejected", _gnp_boundary)]
    + [_wlpodd_fixture(N, d) for N, d in ((4, 5), (6, 5), (5, 7))]
    + [_thmwlp_fixture(N, d) for N, d in ((5, 4), (4, 6), (3, 8))]
    + [_prop44_fixture(case) for case in ("i", "ii", "iii")]
    + [
        _fixture("properties/hilbert-symmetry", 8, "Hilbert vectors are symmetric", _prop_hilbert_symmetry),
        _fixture("properties/euler-identity", 8, "sum of x_i d_i f equals deg(f) f", _prop_euler),
        _fixture("properties/rank-consistency", 8, "Hessian rank at a point equals multiplication rank", _prop_rank_consistency),
        _fixture("properties/basis-change", 8, "vanishing flag survives basis changes", _prop_basis_change),
        _fixture("properties/variable-change", 8, "vanishing flag survives coordinate changes", _prop_variable_change),
        _fixture("properties/noncone-nonvanishing", 8, "non-cones in few variables have nonzero Hessian", _prop_noncone_nonvanishing),
        _fixture("properties/separated-additivity", 8, "split-variable Hilbert additivity", _prop_separated),
        _fixture("modes/agreement", 9, "probabilistic and exact flags agree on small matrices", _mode_agreement),
    ]
)


def run_suite(config: SuiteConfig) -> list[FixtureOutcome]:
    outcomes = []
    for fixture in FIXTURES:
        start = time.perf_counter()
        try:
            passed, detail = fixture.run(config)
        except Exception as exc:  # a crashed fixture is a failed fixture
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        millis = (time.perf_counter() - start) * 1000.0
        outcomes.append(
            FixtureOutcome(fixture.fixture_id, fixture.criterion, passed, detail, millis)
        )
    return outcomes


def format_table(outcomes: Sequence[FixtureOutcome]) -> str:
    width = max(len(o.fixture_id) for o in outcomes) + 2
    lines = []
    for o in outcomes:
        status = "PASS" if o.passed else "FAIL"
        lines.append(
            f"{status}  c{o.criterion}  {o.fixture_id:<{width}s} {o.millis:9.1f} ms  {o.detail}"
        )
    failed = sum(1 for o in outcomes if not o.passed)
    lines.append(
        f"{len(outcomes) - failed}/{len(outcomes)} fixtures passed"
        + (f", {failed} FAILED" if failed else "")
    )
    return "\n".join(lines)
