"""Basic-invariant discovery and parameter-system certification.

The discovery campaign works degree by degree.  For each degree m the
dimension table says how big the space of invariants I_m is; products of the
basic invariants already found are evaluated at dim + margin random points
over F_p and their rank measures how much of I_m is already known.  Random
transvectant trees of the right degree are then adjoined greedily, one rank
unit at a time, until the combined rank saturates the dimension; the number
of adjoined generators is d_m.  Monte Carlo ranks certify at sampling level
only, so reports carry the prime, seed, and margin that produced them.

Certification of a candidate parameter system combines four kinds of
evidence: the degree-divisibility filters, a Jacobian rank at sampled points
(algebraic independence), vanishing on random nullforms plus non-vanishing on
generic forms (the nullcone criterion, sampled in both directions), and
graded ideal-membership ranks compared against the numerator of the
Poincare rational form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import ceil
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .cache import EvalCache
from .exprs import Expr, F, Evaluator, expr_to_text, pw, tr
from .forms import BinaryForm
from .modlinalg import ModMatrix, StreamingEchelon, rank as matrix_rank
from .nullcone import random_nullform
from .rings import QQ, DualNumbers, PrimeField
from .series import DegreeSequence, invariant_dimension, poincare_series, to_rational


@dataclass
class PipelineConfig:
    prime: int = 32003
    seed: int = 1
    margin_floor: int = 10
    margin_frac: float = 0.05
    fingerprint_points: int = 32
    candidate_budget: int = 600
    pool_order_cap: int = 0  # 0 means 2 * n
    cache_dir: Optional[str] = None
    threads: int = 1

    def margin(self, dim: int) -> int:
        return max(self.margin_floor, ceil(self.margin_frac * dim))

    def validate(self, n: int) -> None:
        if self.prime <= 2 * n + 1:
            raise ValueError(
                f"prime {self.prime} must exceed 2n + 1 = {2 * n + 1} so the "
                "transvectant prefactors stay invertible"
            )


class PointSet:
    """Seeded random evaluation points (forms over F_p)."""

    def __init__(self, n: int, prime: int, seed: int, count: int, tag: str):
        self.n = n
        self.prime = prime
        self.count = count
        self.key = f"{n}:{prime}:{seed}:{tag}:{count}"
        rng = random.Random(f"points:{self.key}")
        gf = PrimeField(prime)
        self.forms = [
            BinaryForm(gf, n, [rng.randrange(prime) for _ in range(n + 1)])
            for _ in range(count)
        ]


class PointEvaluations:
    """Vectors of invariant values over one point set, memoized and cached."""

    def __init__(self, points: PointSet, cache: Optional[EvalCache] = None):
        self.points = points
        self.cache = cache
        self._evaluators = [Evaluator(f) for f in points.forms]
        self._vectors: Dict[Expr, np.ndarray] = {}

    def vector(self, expr: Expr) -> np.ndarray:
        got = self._vectors.get(expr)
        if got is not None:
            return got
        text = None
        if self.cache is not None:
            text = expr_to_text(expr)
            hit = self.cache.get(self.points.key, text)
            if hit is not None and len(hit) == self.points.count:
                vec = np.array(hit, dtype=np.int64)
                self._vectors[expr] = vec
                return vec
        vec = np.array([ev.scalar(expr) for ev in self._evaluators], dtype=np.int64)
        self._vectors[expr] = vec
        if self.cache is not None:
            self.cache.put(self.points.key, text, [int(v) for v in vec])
        return vec


@dataclass(frozen=True)
class BasisRecord:
    """One discovered basic invariant with its evaluation fingerprint."""

    name: str
    degree: int
    expr: Expr
    fingerprint: Tuple[int, ...]


def monomials_of_degree(
    basis: Sequence[BasisRecord], m: int, require_factor: Optional[set] = None
) -> List[Tuple[Tuple[int, int], ...]]:
    """Multisets of basis records with total degree exactly m.

    Each monomial is a tuple of (basis index, exponent) pairs, enumerated
    deterministically (earlier records first, higher exponents first).  With
    `require_factor` only monomials containing at least one factor from that
    set of basis indices are kept.
    """
    out: List[Tuple[Tuple[int, int], ...]] = []

    def rec(i: int, remaining: int, acc: List[Tuple[int, int]]):
        if remaining == 0:
            mono = tuple(acc)
            if require_factor is None or any(idx in require_factor for idx, _ in mono):
                out.append(mono)
            return
        if i == len(basis):
            return
        d = basis[i].degree
        for k in range(remaining // d, -1, -1):
            if k:
                acc.append((i, k))
                rec(i + 1, remaining - k * d, acc)
                acc.pop()
            else:
                rec(i + 1, remaining, acc)

    rec(0, m, [])
    return out


def monomial_expr(basis: Sequence[BasisRecord], mono) -> Expr:
    """Expression tree for a product monomial (index-0 transvectant chain)."""
    factors = [
        basis[idx].expr if k == 1 else pw(basis[idx].expr, k) for idx, k in mono
    ]
    e = factors[0]
    for g in factors[1:]:
        e = tr(e, g, 0)
    return e


def spanning_products(basis: Sequence[BasisRecord], m: int,
                      require_factor: Optional[set] = None) -> List[Expr]:
    """All monomials in the basis with total degree exactly m, as expressions."""
    if require_factor is None and any(rec.degree >= m for rec in basis):
        raise ValueError("spanning products expect basis entries of degree < m")
    return [
        monomial_expr(basis, mono)
        for mono in monomials_of_degree(basis, m, require_factor)
    ]


def evaluate_at_points(
    exprs: Sequence[Expr], pevals: PointEvaluations, prime: int
) -> ModMatrix:
    """Matrix of invariant values: rows = expressions, columns = points."""
    if not exprs:
        return ModMatrix.zeros(prime, 0, pevals.points.count)
    rows = [pevals.vector(e) for e in exprs]
    return ModMatrix(prime, np.vstack(rows))


def _monomial_vector(
    pevals: PointEvaluations, basis: Sequence[BasisRecord], mono, prime: int
) -> np.ndarray:
    vec = np.ones(pevals.points.count, dtype=np.int64)
    for idx, k in mono:
        base = pevals.vector(basis[idx].expr)
        for _ in range(k):
            vec = vec * base % prime
    return vec


class CandidateGenerator:
    """Seeded random transvectant trees of prescribed degree and order 0.

    A pool of covariants (seeded with f and its nonzero quadratic
    transvectants) grows by random transvection; an invariant of degree m is
    emitted by closing a random pool pair of equal orders whose degrees sum
    to m.  The only contract is that emitted candidates eventually saturate
    I_m, which the caller verifies by rank.
    """

    def __init__(self, n: int, seed: int, order_cap: int = 0):
        self.n = n
        self.rng = random.Random(f"candidates:{seed}:{n}")
        self.order_cap = order_cap or 2 * n
        self._pool: List[Tuple[Expr, int, int]] = [(F, n, 1)]
        self._seen_pool = {F}
        self._seen_out: set = set()
        for k in range(2, n + 1, 2):
            e = tr(F, F, k)
            self._pool.append((e, 2 * n - 2 * k, 2))
            self._seen_pool.add(e)

    def grow(self, max_degree: int, steps: int = 12) -> None:
        for _ in range(steps):
            (ea, oa, da) = self._pool[self.rng.randrange(len(self._pool))]
            (eb, ob, db) = self._pool[self.rng.randrange(len(self._pool))]
            if da + db > max_degree:
                continue
            top = min(oa, ob)
            if top == 0:
                continue
            idx = self.rng.randint(0 if oa + ob <= self.order_cap else 1, top)
            if ea == eb and idx % 2 == 1:
                continue  # (A, A)_odd vanishes identically
            order = oa + ob - 2 * idx
            if order == 0 or order > self.order_cap:
                continue
            e = tr(ea, eb, idx)
            if e in self._seen_pool:
                continue
            self._seen_pool.add(e)
            self._pool.append((e, order, da + db))

    def _closings(self, m: int) -> List[Tuple[Expr, Expr, int]]:
        by_order: Dict[int, List[Tuple[Expr, int]]] = {}
        for e, o, d in self._pool:
            if o >= 1 and d < m:
                by_order.setdefault(o, []).append((e, d))
        found = []
        for o, entries in by_order.items():
            for i, (ea, da) in enumerate(entries):
                for eb, db in entries[i:]:
                    if da + db == m:
                        if ea == eb and o % 2 == 1:
                            continue
                        found.append((ea, eb, o))
        return found

    def candidates(self, m: int) -> Iterator[Expr]:
        """Endless stream of distinct degree-m invariant expressions."""
        attempts_without_close = 0
        while True:
            closings = self._closings(m)
            self.rng.shuffle(closings)
            emitted = False
            for ea, eb, o in closings:
                e = tr(ea, eb, o)
                if e in self._seen_out:
                    continue
                self._seen_out.add(e)
                emitted = True
                yield e
            self.grow(max_degree=m - 1)
            if emitted:
                attempts_without_close = 0
            else:
                attempts_without_close += 1
                if attempts_without_close > 500:
                    raise RuntimeError(
                        f"no degree-{m} invariant reachable from the pool"
                    )


def generate_candidate(
    n: int,
    degree: int,
    seed: int,
    prime: int = 32003,
    fingerprint_points: int = 8,
    max_draws: int = 2000,
) -> Expr:
    """One seeded random order-0 expression of exactly the given degree.

    Candidates that evaluate to zero at the fingerprint points are redrawn;
    running out of draws means the degree is unreachable from the pool.
    """
    gen = CandidateGenerator(n, seed)
    pts = PointSet(n, prime, seed, fingerprint_points, f"gencand:{degree}")
    pevals = PointEvaluations(pts)
    stream = gen.candidates(degree)
    for _ in range(max_draws):
        cand = next(stream)
        if pevals.vector(cand).any():
            return cand
    raise SaturationError(
        f"no nonzero degree-{degree} candidate found within {max_draws} draws"
    )


@dataclass(frozen=True)
class DegreeEvidence:
    degree: int
    dim: int
    n_products: int
    product_rank: int
    d: int
    points: int
    new_names: Tuple[str, ...]


@dataclass
class DmTable:
    n: int
    prime: int
    seed: int
    evidence: Dict[int, DegreeEvidence] = field(default_factory=dict)
    records: List[BasisRecord] = field(default_factory=list)

    def d(self, m: int) -> int:
        ev = self.evidence.get(m)
        return ev.d if ev else 0

    def nonzero(self) -> Dict[int, int]:
        return {m: ev.d for m, ev in sorted(self.evidence.items()) if ev.d}

    def total(self) -> int:
        return sum(ev.d for ev in self.evidence.values())


class SaturationError(RuntimeError):
    """Candidate generation failed to span I_m within budget (inconclusive)."""


def _fingerprint_evals(n: int, cfg: PipelineConfig, cache) -> PointEvaluations:
    pts = PointSet(n, cfg.prime, cfg.seed, cfg.fingerprint_points, "fingerprint")
    return PointEvaluations(pts, cache)


def compute_dm(
    n: int,
    m: int,
    basis: Sequence[BasisRecord],
    cfg: PipelineConfig,
    gen: Optional[CandidateGenerator] = None,
    cache: Optional[EvalCache] = None,
    fingerprints: Optional[PointEvaluations] = None,
) -> Tuple[DegreeEvidence, List[BasisRecord]]:
    """Evidence for d_m plus the newly adjoined basic invariants."""
    cfg.validate(n)
    dim = invariant_dimension(n, m)
    if dim == 0:
        return DegreeEvidence(m, 0, 0, 0, 0, 0, ()), []
    if any(rec.degree >= m for rec in basis):
        raise ValueError(f"basis passed to compute_dm must be settled below degree {m}")
    if gen is None:
        gen = CandidateGenerator(n, cfg.seed, cfg.pool_order_cap)
    if fingerprints is None:
        fingerprints = _fingerprint_evals(n, cfg, cache)
    monos = monomials_of_degree(basis, m)
    margin = cfg.margin(dim)
    for attempt in (1, 2):
        npts = dim + margin
        points = PointSet(n, cfg.prime, cfg.seed, npts, f"dm:{m}:{attempt}")
        pevals = PointEvaluations(points, cache)
        ech = StreamingEchelon(cfg.prime, npts)
        for mono in monos:
            ech.add_row(_monomial_vector(pevals, basis, mono, cfg.prime))
        product_rank = ech.rank
        new_records: List[BasisRecord] = []
        budget = cfg.candidate_budget + 80 * (dim - product_rank)
        draws = 0
        stall = 0
        stream = gen.candidates(m)
        while ech.rank < dim and draws < budget:
            cand = next(stream)
            draws += 1
            vec = pevals.vector(cand)
            if not vec.any():
                continue
            if ech.add_row(vec):
                stall = 0
                fp = tuple(int(v) for v in fingerprints.vector(cand))
                name = f"i{m}_{len(new_records) + 1}"
                new_records.append(BasisRecord(name, m, cand, fp))
            else:
                stall += 1
                if stall % 60 == 0:
                    gen.grow(max_degree=m - 1, steps=30)
        if ech.rank == dim:
            evidence = DegreeEvidence(
                m, dim, len(monos), product_rank, dim - product_rank, npts,
                tuple(r.name for r in new_records),
            )
            return evidence, new_records
        margin *= 2
    raise SaturationError(
        f"degree {m}: rank {ech.rank} < dim {dim} after {draws} candidates "
        f"(prime {cfg.prime}, seed {cfg.seed}); inconclusive"
    )


def _stop_bound(n: int) -> Optional[int]:
    """Degree beyond which no basic invariant exists, from the reference
    rational form (its numerator degree), when a seed sequence is known."""
    from .series import SEED_DEGREES

    seed = SEED_DEGREES.get(n)
    if seed is None:
        return None
    table = poincare_series(n, sum(seed) + max(seed))
    rat = to_rational(table, seed)
    return rat.numerator_degree if rat else None


def find_basic_invariants(
    n: int,
    max_degree: int,
    cfg: PipelineConfig,
    cache: Optional[EvalCache] = None,
    progress=None,
) -> DmTable:
    """Run the discovery campaign for every degree up to max_degree."""
    cfg.validate(n)
    table = DmTable(n, cfg.prime, cfg.seed)
    gen = CandidateGenerator(n, cfg.seed, cfg.pool_order_cap)
    fingerprints = _fingerprint_evals(n, cfg, cache)
    bound = _stop_bound(n)
    top = max_degree if bound is None else min(max_degree, bound)
    for m in range(1, top + 1):
        if invariant_dimension(n, m) == 0:
            continue
        evidence, new_records = compute_dm(
            n, m, table.records, cfg, gen, cache, fingerprints
        )
        table.evidence[m] = evidence
        table.records.extend(new_records)
        if progress is not None:
            progress(evidence)
    return table


# ---------------------------------------------------------------------------
# Certification of candidate parameter systems.

def jacobian_rank(
    exprs: Sequence[Expr], point: Sequence[int], n: int, prime: int
) -> int:
    """Rank of the matrix of partial derivatives at one point over F_p.

    Each coordinate direction costs one dual-number evaluation: the slope
    component of the value at (point + eps * e_i) is the exact derivative.
    """
    dual = DualNumbers(PrimeField(prime))
    point = [c % prime for c in point]
    rows = [[0] * (n + 1) for _ in exprs]
    for i in range(n + 1):
        coeffs = [(c, 1 if j == i else 0) for j, c in enumerate(point)]
        ev = Evaluator(BinaryForm(dual, n, coeffs))
        for r, e in enumerate(exprs):
            rows[r][i] = ev.scalar(e)[1]
    return matrix_rank(ModMatrix(prime, rows))


@dataclass(frozen=True)
class VanishReport:
    nullform_trials: int
    nullform_all_vanish: int
    nullform_failures: Tuple[str, ...]
    generic_trials: int
    generic_all_vanish: int


def vanish_on_nullcone_sample(
    exprs: Sequence[Expr], n: int, trials: int, seed: int, prime: int
) -> VanishReport:
    """Evaluate candidates on random nullforms (exact rationals; every value
    must vanish) and on generic forms over F_p (simultaneous vanishing off
    the nullcone would witness a common zero the nullcone does not contain).
    """
    failures: List[str] = []
    all_vanish = 0
    for t in range(trials):
        nf = random_nullform(n, QQ, seed * 100003 + t)
        ev = Evaluator(nf)
        values = [ev.scalar(e) for e in exprs]
        if all(v == 0 for v in values):
            all_vanish += 1
        else:
            bad = [str(i) for i, v in enumerate(values) if v != 0]
            failures.append(f"trial {t}: nonzero at candidate index {','.join(bad)}")
    gf = PrimeField(prime)
    rng = random.Random(f"generic:{seed}:{n}:{prime}")
    generic_vanish = 0
    for _ in range(trials):
        form = BinaryForm(gf, n, [rng.randrange(prime) for _ in range(n + 1)])
        ev = Evaluator(form)
        if all(ev.scalar(e) == 0 for e in exprs):
            generic_vanish += 1
    return VanishReport(trials, all_vanish, tuple(failures), trials, generic_vanish)


@dataclass(frozen=True)
class MembershipResult:
    degree: int
    dim: int
    achieved_rank: int
    expected_ideal_dim: Optional[int]
    a_coefficient: Optional[int]
    rows_used: int
    points: int

    @property
    def certifies_containment(self) -> bool:
        return self.achieved_rank == self.dim

    @property
    def consistent(self) -> bool:
        if self.expected_ideal_dim is None:
            return self.certifies_containment
        return self.achieved_rank == self.expected_ideal_dim


def ideal_membership_dim(
    hsop: Sequence[Tuple[str, Expr, int]],
    basis: Sequence[BasisRecord],
    degree: int,
    n: int,
    cfg: PipelineConfig,
    cache: Optional[EvalCache] = None,
) -> MembershipResult:
    """Rank of the degree-`degree` slice of the ideal generated by the hsop.

    Rows are h_k * (monomials of degree - deg h_k in the basis); the achieved
    rank at dim + margin points is dim(I_degree intersect H) at sampling
    level.  When the candidate has n - 2 elements the expected value is
    dim I_degree - a_degree with a(t) the numerator of its rational form.
    """
    cfg.validate(n)
    dim = invariant_dimension(n, degree)
    min_deg = min(d for _, _, d in hsop)
    needed = degree - min_deg
    for j in range(1, needed + 1):
        if invariant_dimension(n, j) and not monomials_of_degree(basis, j):
            raise ValueError(
                f"basis cannot reach degree {j} (needed for membership rows at "
                f"degree {degree}); run the discovery campaign further"
            )
    a_i: Optional[int] = None
    expected: Optional[int] = None
    if len(hsop) == n - 2:
        seq = DegreeSequence([d for _, _, d in hsop])
        table = poincare_series(n, seq.total + max(seq.degrees))
        rat = to_rational(table, seq.degrees)
        if rat is not None:
            a_i = rat.numerator[degree] if degree <= rat.numerator_degree else 0
            expected = dim - a_i
    npts = dim + cfg.margin(dim)
    points = PointSet(n, cfg.prime, cfg.seed, npts, f"membership:{degree}")
    pevals = PointEvaluations(points, cache)
    ech = StreamingEchelon(cfg.prime, npts)
    rows_used = 0
    block: List[np.ndarray] = []
    for name, expr, hdeg in hsop:
        hvec = pevals.vector(expr)
        for mono in monomials_of_degree(basis, degree - hdeg):
            row = hvec * _monomial_vector(pevals, basis, mono, cfg.prime) % cfg.prime
            block.append(row)
            if len(block) == 256:
                rows_used += ech.add_rows(np.vstack(block), stop_at=dim)
                block.clear()
                if ech.rank >= dim:
                    break
        if ech.rank >= dim:
            break
    if block and ech.rank < dim:
        rows_used += ech.add_rows(np.vstack(block), stop_at=dim)
    return MembershipResult(degree, dim, ech.rank, expected, a_i, rows_used, npts)


def verify_basis_spans(
    basis: Sequence[BasisRecord],
    degrees: Iterable[int],
    n: int,
    cfg: PipelineConfig,
    cache: Optional[EvalCache] = None,
) -> Dict[int, Tuple[int, int]]:
    """For each degree j: (achieved rank of basis monomials, dim I_j).

    Ranks below the dimension mean the basis cannot span I_j and any
    membership computation built on it would undercount.
    """
    out: Dict[int, Tuple[int, int]] = {}
    for j in sorted(set(degrees)):
        dim = invariant_dimension(n, j)
        if dim == 0:
            out[j] = (0, 0)
            continue
        npts = dim + cfg.margin(dim)
        points = PointSet(n, cfg.prime, cfg.seed, npts, f"spans:{j}")
        pevals = PointEvaluations(points, cache)
        ech = StreamingEchelon(cfg.prime, npts)
        block: List[np.ndarray] = []
        for mono in monomials_of_degree(basis, j):
            block.append(_monomial_vector(pevals, basis, mono, cfg.prime))
            if len(block) == 256:
                ech.add_rows(np.vstack(block), stop_at=dim)
                block.clear()
                if ech.rank >= dim:
                    break
        if block and ech.rank < dim:
            ech.add_rows(np.vstack(block), stop_at=dim)
        out[j] = (ech.rank, dim)
    return out


@dataclass(frozen=True)
class HsopReport:
    n: int
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    verdict: str  # certified-at-sampling-level | refuted | inconclusive
    reasons: Tuple[str, ...]
    count_ok: bool
    degree_filter_ok: bool
    jacobian_ranks: Tuple[int, ...]
    jacobian_required: int
    vanish: Optional[VanishReport]
    membership: Tuple[MembershipResult, ...]
    prime: int
    seed: int


def certify_hsop(
    candidates: Sequence[Tuple[str, Expr, int]],
    n: int,
    cfg: PipelineConfig,
    membership_degrees: Sequence[int] = (),
    basis: Optional[Sequence[BasisRecord]] = None,
    nullcone_trials: int = 100,
    jacobian_points: int = 5,
    cache: Optional[EvalCache] = None,
) -> HsopReport:
    """Aggregate sampling-level evidence that a candidate set is an hsop."""
    cfg.validate(n)
    names = tuple(name for name, _, _ in candidates)
    degrees = tuple(sorted(d for _, _, d in candidates))
    exprs = [e for _, e, _ in candidates]
    reasons: List[str] = []
    required = n - 2 if n >= 3 else 1
    count_ok = len(candidates) == required
    if not count_ok:
        reasons.append(f"expected {required} invariants, got {len(candidates)}")
        return HsopReport(
            n, names, degrees, "refuted", tuple(reasons), False, False, (),
            required, None, (), cfg.prime, cfg.seed,
        )
    from .series import check_sequence

    filt = check_sequence(n, degrees)
    if not filt.ok:
        for t, divisor, need, got in filt.violations:
            reasons.append(
                f"degree filter t={t}: need {need} degrees divisible by "
                f"{divisor}, found {got}"
            )
    rng = random.Random(f"jacobian:{cfg.seed}:{n}:{cfg.prime}")
    jranks = tuple(
        jacobian_rank(
            exprs, [rng.randrange(cfg.prime) for _ in range(n + 1)], n, cfg.prime
        )
        for _ in range(jacobian_points)
    )
    jacobian_ok = max(jranks, default=0) == required
    if not jacobian_ok:
        reasons.append(
            f"jacobian rank never reached {required} at {jacobian_points} "
            f"sampled points (got {jranks})"
        )
    vanish = vanish_on_nullcone_sample(exprs, n, nullcone_trials, cfg.seed, cfg.prime)
    if vanish.nullform_all_vanish != vanish.nullform_trials:
        reasons.append("an invariant failed to vanish on a nullform (hard bug)")
    if vanish.generic_all_vanish:
        reasons.append(
            f"{vanish.generic_all_vanish}/{vanish.generic_trials} generic forms "
            "had every candidate vanishing (common zero off the nullcone?)"
        )
    membership: List[MembershipResult] = []
    inconclusive = False
    for i in sorted(membership_degrees):
        if basis is None:
            raise ValueError("membership degrees need a basis")
        res = ideal_membership_dim(candidates, basis, i, n, cfg, cache)
        membership.append(res)
        if not res.consistent:
            if res.expected_ideal_dim is not None and res.achieved_rank < res.expected_ideal_dim:
                inconclusive = True
                reasons.append(
                    f"membership at degree {i}: rank {res.achieved_rank} below "
                    f"expected {res.expected_ideal_dim} (spanning shortfall?)"
                )
            else:
                reasons.append(
                    f"membership at degree {i}: rank {res.achieved_rank} "
                    f"inconsistent with expected {res.expected_ideal_dim}"
                )
    refuted = (not filt.ok) or (not jacobian_ok) or vanish.generic_all_vanish > 0
    if refuted:
        verdict = "refuted"
    elif inconclusive or vanish.nullform_all_vanish != vanish.nullform_trials:
        verdict = "inconclusive"
    else:
        verdict = "certified-at-sampling-level"
    return HsopReport(
        n, names, degrees, verdict, tuple(reasons), count_ok, filt.ok, jranks,
        required, vanish, tuple(membership), cfg.prime, cfg.seed,
    )
