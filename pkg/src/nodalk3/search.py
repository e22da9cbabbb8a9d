"""Destabilizer search and the closed-form classification.

Three candidate families are swept, one per case analysis:

* ForU  -- potential destabilizers u' = (k1*r/2, (k1*d*H + e1*L)/2, m) of the
  bundle class u on the line b above the pivotal wall; the sweep must come
  back empty (u stays stable).
* ForT  -- potential Jordan-Hoelder factors g = e'*t_{-1} + (k1/2)*u of the
  torsion class t_{-1}; survivors exist exactly in the rank-2, nontrivial
  class group case (the e' = 1/2 branch, k1*(k1 - r) = 3).
* ForV  -- potential destabilizers v' = (k1*r/2, (k1*d*H + e1*L)/2, m) of the
  twisted class v; survivors witness non-descent and hence emptiness of the
  moduli space downstairs.

Rank-zero candidates (0, L, m) against v are excluded by a dedicated routine
mirroring the phase-transitivity argument rather than a wall-height
inequality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .infinitesimal import EpsPoly, EpsRational, compare
from .lattice import (
    DivisorClass,
    LatticeError,
    MukaiVector,
    ProblemInstance,
    mukai_pair,
)
from .plane import (
    DegenerateWallError,
    LimitPhase,
    PolarizationPath,
    VerticalLine,
    effectivity_defect,
    limit_phase_class,
    pivotal_wall,
    wall_of,
)


class InternalInvariantError(RuntimeError):
    """A cross-check the engine guarantees has failed (CLI exit code 3)."""


class Kind(enum.Enum):
    FOR_U = "for-u"
    FOR_T = "for-t"
    FOR_V = "for-v"


@dataclass(frozen=True)
class Candidate:
    """A potential destabilizing class in doubled coordinates.

    For FOR_U / FOR_V: the vector (k1*r/2, (k1*d*H + e1*L)/2, m).
    For FOR_T: the combination g = (e1/2)*t_{-1} + (k1/2)*u; e1 stores the
    doubled torsion weight and m the resulting degree.
    """

    k1: int
    e1: int
    m: Fraction
    kind: Kind


@dataclass(frozen=True)
class Verdict:
    passed: bool
    failures: tuple[str, ...] = ()

    def __post_init__(self):
        assert self.passed == (not self.failures)

    def tags(self) -> tuple[str, ...]:
        return tuple(f.split(":", 1)[0] for f in self.failures)


class Outcome(enum.Enum):
    EMPTY = "empty"
    REDUCED_POINT_LOCALLY_FREE = "reduced_point_locally_free"


@dataclass(frozen=True)
class Classification:
    outcome: Outcome
    reason: str


def m_from_ke(k1: int, e1: int, inst: ProblemInstance) -> Fraction:
    """Degree forced by sphericality: m = k*a - (k^2 + e^2 - 1)/(k*r), k = k1/2, e = e1/2."""
    if k1 == 0:
        raise ValueError("k1 = 0: degree is not determined by sphericality")
    k = Fraction(k1, 2)
    e = Fraction(e1, 2)
    return k * inst.a - (k * k + e * e - 1) / (k * inst.r)


def vv_prime(k1: int, e1: int, r: int) -> Fraction:
    """Pairing of v with the spherical candidate: -k - 2*e*r + (e^2-1)/k + k*r^2."""
    if k1 == 0:
        raise ValueError("k1 = 0: use the rank-zero exclusion routine")
    k = Fraction(k1, 2)
    e = Fraction(e1, 2)
    return -k - 2 * e * r + (e * e - 1) / k + k * r * r


class _Context:
    """Shared exact geometry for one instance: path, default line, pivotal wall."""

    def __init__(self, inst: ProblemInstance):
        self.inst = inst
        self.path = PolarizationPath(inst)
        self.line = VerticalLine(self.path)
        self.u = inst.u()
        self.v = inst.v()
        self.t_minus1 = inst.t(-1)
        self.w_pivot = pivotal_wall(inst, self.path)
        self.pivot_height = self.w_pivot.height_sq(self.line.abscissa)
        if self.pivot_height is None:
            raise InternalInvariantError("pivotal wall misses the default line")
        self.z_u = self.line.charge(self.u)
        self.z_v = self.line.charge(self.v)
        self._rank_zero_forms = None

    def rank_zero_forms(self) -> dict:
        """Per-instance data for the rank-zero exclusion sweep.

        The charge of (0, L, m) has Re = -m + 2*eps*s and Im coefficient
        2*eps, so each cross product against the fixed charges of u and v is
        affine in m and in the evaluation point.  The heights of W_{-1},
        W(u, t_m) and W(v, t_m) on the line share the base 2a/(r*Q) - s^2
        (Q = H_eps^2) shifted by multiples of epsp/eps and 2/Q; the height
        identities are verified here once (heights are affine in m because
        beta and gamma are while alpha is constant), leaving only cheap
        coefficient checks per m.
        """
        if self._rank_zero_forms is None:
            inst = self.inst
            s = self.line.abscissa
            q = self.path.h_eps_sq()
            z_u, z_v = self.z_u, self.z_v
            if z_u.im_coeff.sign() <= 0 or z_v.im_coeff.sign() <= 0:
                raise InternalInvariantError("u or v leaves the upper half-plane on the line")
            base = EpsRational(2 * inst.a, inst.r * q) - s * s
            step = EpsRational(EpsPoly.epsp(), EpsPoly.eps())
            two_over_q = EpsRational(2, q)
            if self.pivot_height != base + step:
                raise InternalInvariantError("pivotal wall height disagrees with its closed form")
            for m in (0, 1):
                t_m = inst.t(m)
                got_u = wall_of(self.u, t_m, self.path).height_sq_value(s)
                got_v = wall_of(self.v, t_m, self.path).height_sq_value(s)
                if got_u != base - m * step:
                    raise InternalInvariantError("W(u, t_m) height disagrees with its closed form")
                if got_v != base - (1 + m) * two_over_q - m * step:
                    raise InternalInvariantError("W(v, t_m) height disagrees with its closed form")
            two_eps = EpsRational(EpsPoly({(1, 0): 2}))
            # phi comparisons as sign(A + c*B + m*C) with c the epsp/eps
            # offset of the sample point above the shared base height
            uv0 = z_v.re_const * z_u.im_coeff - z_u.re_const * z_v.im_coeff
            uv1 = z_v.re_tsq * z_u.im_coeff - z_u.re_tsq * z_v.im_coeff
            pu0 = z_u.re_const * two_eps - two_eps * s * z_u.im_coeff
            pu1 = z_u.re_tsq * two_eps
            pv0 = z_v.re_const * two_eps - two_eps * s * z_v.im_coeff
            pv1 = z_v.re_tsq * two_eps
            self._rank_zero_forms = {
                "base": base,
                "step": step,
                "two_over_q": two_over_q,
                "alpha": EpsPoly({(1, 0): inst.r}) * q,
                "rq": Fraction(inst.r) * q,
                "gamma_u0": EpsPoly({(1, 0): -2 * inst.a}),
                "du_dot": self.path.dot_h_eps(self.u.divisor),
                "gamma_v0": EpsPoly({(1, 0): -2 * (inst.a - inst.r)}),
                "dv_dot": self.path.dot_h_eps(self.v.divisor),
                "A_uv": uv0 + uv1 * base,
                "B_uv": uv1 * step,
                "A_pu": pu0 + pu1 * base,
                "B_pu": pu1 * step,
                "C_pu": z_u.im_coeff,
                "A_pv": pv0 + pv1 * base,
                "B_pv": pv1 * step,
                "C_pv": z_v.im_coeff,
            }
        return self._rank_zero_forms


def _candidate_vector(inst: ProblemInstance, cand: Candidate) -> MukaiVector | None:
    """Build the integral Mukai vector, or None if the candidate is not integral."""
    rank2 = cand.k1 * inst.r  # doubled rank
    deg = cand.m
    div_k1, div_e1 = cand.k1 * inst.d, cand.e1
    if rank2 % 2 != 0 or deg.denominator != 1:
        return None
    try:
        div = DivisorClass(div_k1, div_e1, inst.lattice)
    except LatticeError:
        return None
    return MukaiVector(rank2 // 2, div, int(deg))


def _wall_strictly_above_pivot(
    ctx: _Context, base: MukaiVector, cand_vec: MukaiVector
) -> str | None:
    """None if W(base, cand) meets the line strictly above the pivotal wall,
    else the failure message."""
    try:
        wall = wall_of(base, cand_vec, ctx.path)
    except DegenerateWallError:
        return "wall-position: W=W_{-1}"
    if wall.same_wall(ctx.w_pivot):
        return "wall-position: W=W_{-1}"
    if wall.is_vertical():
        return "wall-position: vertical wall"
    height = wall.height_sq(ctx.line.abscissa)
    if height is None:
        return "wall-position: wall misses the line"
    if compare(height, ctx.pivot_height) <= 0:
        return "wall-position: not strictly above W_{-1}"
    return None


def check_candidate_s(
    inst: ProblemInstance,
    cand: Candidate,
    ctx: _Context | None = None,
    *,
    collect_all: bool = True,
) -> Verdict:
    """Test a ForU candidate against every condition of the stability case
    analysis for u.  No candidate other than u itself defines a wall, and u
    itself fails the strict wall-position test."""
    if cand.kind is not Kind.FOR_U:
        raise ValueError(f"expected a ForU candidate, got {cand.kind}")
    ctx = ctx or _Context(inst)
    failures: list[str] = []
    if (cand.k1 - cand.e1) % 2 != 0:
        return Verdict(False, ("parity: k1 and e1 differ mod 2",))
    vec = _candidate_vector(inst, cand)
    if vec is None:
        return Verdict(False, ("sphericality: no integral class with these coordinates",))
    if vec.square() != -2:
        failures.append(f"sphericality: square = {vec.square()}")
        return Verdict(False, tuple(failures))
    if effectivity_defect(vec, ctx.line).sign() < 0:
        failures.append("effectivity-of-candidate: Im coefficient negative on the line")
    if effectivity_defect(ctx.u - vec, ctx.line).sign() < 0:
        failures.append("effectivity-of-complement: Im coefficient negative on the line")
    pair = mukai_pair(ctx.u, vec)
    if pair >= 0:
        failures.append(f"pairing-sign: uu'={pair}")
    if collect_all or not failures:
        wall_failure = _wall_strictly_above_pivot(ctx, ctx.u, vec)
        if wall_failure:
            failures.append(wall_failure)
    return Verdict(not failures, tuple(failures))


def check_candidate_t(inst: ProblemInstance, cand: Candidate, ctx: _Context | None = None) -> Verdict:
    """Test a ForT candidate g = (e1/2)*t_{-1} + (k1/2)*u.

    Passing candidates are nontrivial spherical factors of the torsion class;
    they exist only for rank 2 with nontrivial class group, in the half-
    integral branch with k1*(k1 - r) = 3.
    """
    if cand.kind is not Kind.FOR_T:
        raise ValueError(f"expected a ForT candidate, got {cand.kind}")
    ctx = ctx or _Context(inst)
    if cand.e1 not in (0, 1, 2):
        return Verdict(False, ("effectivity-of-candidate: torsion weight outside [0, 1]",))
    vec = _candidate_vector(inst, cand)
    if vec is None:
        return Verdict(False, ("sphericality: no integral class with these coordinates",))
    failures: list[str] = []
    if vec.square() != -2:
        failures.append(f"sphericality: square = {vec.square()}")
        return Verdict(False, tuple(failures))
    if effectivity_defect(vec, ctx.line).sign() < 0:
        failures.append("effectivity-of-candidate: Im coefficient negative on the line")
    if effectivity_defect(ctx.t_minus1 - vec, ctx.line).sign() < 0:
        failures.append("effectivity-of-complement: Im coefficient negative on the line")
    if vec == ctx.u:
        failures.append("wall-position: g equals u (trivial factor)")
    elif vec.rank == 0:
        failures.append("wall-position: rank-zero factor is the torsion class itself")
    return Verdict(not failures, tuple(failures))


def check_candidate_v(
    inst: ProblemInstance,
    cand: Candidate,
    ctx: _Context | None = None,
    *,
    collect_all: bool = True,
) -> Verdict:
    """Test a ForV candidate v' = (k1*r/2, (k1*d*H + e1*L)/2, m).

    Survivors are exactly the walls above the pivotal one for the twisted
    class v; they exist iff rank = 2 and the class group is nontrivial.
    """
    if cand.kind is not Kind.FOR_V:
        raise ValueError(f"expected a ForV candidate, got {cand.kind}")
    if cand.k1 == 0:
        raise ValueError("rank-zero candidates are handled by exclude_rank_zero")
    ctx = ctx or _Context(inst)
    if (cand.k1 - cand.e1) % 2 != 0:
        return Verdict(False, ("parity: k1 and e1 differ mod 2",))
    vec = _candidate_vector(inst, cand)
    if vec is None:
        return Verdict(False, ("sphericality: no integral class with these coordinates",))
    failures: list[str] = []
    if vec.square() != -2:
        failures.append(f"sphericality: square = {vec.square()}")
        return Verdict(False, tuple(failures))
    pair = mukai_pair(ctx.v, vec)
    if pair != vv_prime(cand.k1, cand.e1, inst.r):
        raise InternalInvariantError("closed-form vv' disagrees with the Mukai pairing")
    if effectivity_defect(vec, ctx.line).sign() < 0:
        failures.append("effectivity-of-candidate: Im coefficient negative on the line")
    if effectivity_defect(ctx.v - vec, ctx.line).sign() < 0:
        failures.append("effectivity-of-complement: Im coefficient negative on the line")
    if pair >= 0:
        failures.append(f"pairing-sign: vv'={pair}")
    if vec.is_proportional_to(ctx.v) or vec.is_proportional_to(ctx.u):
        # e = 0 forces v' = +-u and e = r with k = 1 forces v' = v; either way
        # the candidate redefines the pivotal wall instead of a new one.
        failures.append("wall-position: W=W_{-1}")
    elif cand.k1 < 0:
        # Negative rank: the slope of v' sits on the wrong side of u, so its
        # wall with v cannot reach above the pivotal wall on the line.
        if not failures:
            try:
                wall = wall_of(ctx.v, vec, ctx.path)
            except DegenerateWallError:
                wall = None
            if wall is not None and not wall.is_vertical() and not wall.same_wall(ctx.w_pivot):
                height = wall.height_sq(ctx.line.abscissa)
                if height is not None and compare(height, ctx.pivot_height) > 0:
                    raise InternalInvariantError(
                        "negative-rank candidate defines a wall above the pivotal wall"
                    )
        failures.append("wall-position: candidate wall not above W_{-1}")
    return Verdict(not failures, tuple(failures))


def exclude_rank_zero(inst: ProblemInstance, m: int, ctx: _Context | None = None) -> Verdict:
    """Exclude the rank-zero candidate (0, L, m) against v.

    m <= -2 fails the pairing sign (v.(0,L,m) = -(2+m)*r >= 0); m = -1 gives
    the pivotal wall itself; m >= 0 is ruled out by the phase-transitivity
    contradiction between the three pairwise walls on the line.
    """
    ctx = ctx or _Context(inst)
    t_m = inst.t(m)
    pair = mukai_pair(ctx.v, t_m)
    assert pair == -(2 + m) * inst.r
    if pair >= 0:
        return Verdict(False, (f"pairing-sign: vv'={pair}",))
    if m == -1:
        return Verdict(False, ("wall-position: W=W_{-1}",))
    # m >= 0: a destabilizing wall W(v, v') above the pivotal wall would need
    # the u-wall W_m below it, but then the phase comparisons between W_m and
    # W_{-1} contradict the limit phases at large t.  Each displayed fact is
    # verified; the wall being above would make them jointly unsatisfiable.
    forms = ctx.rank_zero_forms()
    wall_m = wall_of(ctx.u, t_m, ctx.path)
    wall_v = wall_of(ctx.v, t_m, ctx.path)
    # Coefficient checks; with the height identities verified in the context,
    # they pin W(u, t_m) at base - m*step and W(v, t_m) at
    # base - (1+m)*2/Q - m*step on the line, both strictly below the pivotal
    # wall at base + step.  So the candidate wall never sits above W_{-1}.
    ok_u = (
        wall_m.alpha == forms["alpha"]
        and wall_m.beta == -m * forms["rq"]
        and wall_m.gamma == forms["gamma_u0"] + m * forms["du_dot"]
    )
    ok_v = (
        wall_v.alpha == forms["alpha"]
        and wall_v.beta == -m * forms["rq"]
        and wall_v.gamma == forms["gamma_v0"] + m * forms["dv_dot"]
    )
    if not (ok_u and ok_v):
        raise InternalInvariantError("rank-zero wall coefficients disagree with their closed forms")
    # Phase facts at a sample strictly between W_m and W_{-1} (offset c above
    # the shared base lies in the gap (-m, 1) for every m >= 0).
    c = Fraction(1 - m, 2)
    below_pivot = (forms["A_uv"] + c * forms["B_uv"]).sign()  # phi(u) vs phi(v)
    above_wall_m = (forms["A_pu"] + c * forms["B_pu"] + m * forms["C_pu"]).sign()
    transitive = (forms["A_pv"] + c * forms["B_pv"] + m * forms["C_pv"]).sign()
    if not (below_pivot > 0 and above_wall_m > 0 and transitive > 0):
        raise InternalInvariantError("phase comparisons between W_m and W_{-1} are inconsistent")
    limit = limit_phase_class(t_m)
    if limit not in (LimitPhase.TORSION_HALF, LimitPhase.TORSION_ONE):
        raise InternalInvariantError("rank-zero candidate has an unexpected limit phase")
    return Verdict(
        False,
        (
            "limit-phase-contradiction: "
            f"limit phase {'1/2' if limit is LimitPhase.TORSION_HALF else '1'} contradicts "
            "the phase ordering below W_{-1}",
        ),
    )


@dataclass
class SearchResult:
    """Deterministic outcome of the exhaustive candidate sweep."""

    survivors: list[tuple[Candidate, Verdict]] = field(default_factory=list)
    for_u_survivors: list[tuple[Candidate, Verdict]] = field(default_factory=list)
    for_t_survivors: list[tuple[Candidate, Verdict]] = field(default_factory=list)
    rank_zero: list[tuple[int, Verdict]] = field(default_factory=list)
    audit: list[tuple[Candidate, Verdict]] = field(default_factory=list)

    def survivor_triples(self) -> list[tuple[int, int, int]]:
        return [(c.k1, c.e1, int(c.m)) for c, _ in self.survivors]


def search_all(
    inst: ProblemInstance,
    bound_k1: int,
    bound_e1: int,
    *,
    audit: bool = False,
) -> SearchResult:
    """Sweep every candidate family within the bounds.

    Bounds of at least 2r + 4 cover all cases the analysis touches (|k1| <= 5
    and |e1| <= 2r + 1 suffice); larger bounds turn "everything outside fails"
    into a tested claim.
    """
    if bound_k1 < 1 or bound_e1 < 1:
        raise ValueError("search bounds must be positive")
    ctx = _Context(inst)
    result = SearchResult()

    for k1 in range(-bound_k1, bound_k1 + 1):
        if k1 == 0:
            continue
        for e1 in range(-bound_e1, bound_e1 + 1):
            m = m_from_ke(k1, e1, inst)
            for kind, checker, bucket in (
                (Kind.FOR_V, check_candidate_v, result.survivors),
                (Kind.FOR_U, check_candidate_s, result.for_u_survivors),
            ):
                cand = Candidate(k1, e1, m, kind)
                if not audit and ((k1 - e1) % 2 != 0 or m.denominator != 1):
                    continue  # cannot be an integral spherical class
                verdict = checker(inst, cand, ctx, collect_all=audit)
                if verdict.passed:
                    bucket.append((cand, verdict))
                if audit:
                    result.audit.append((cand, verdict))

    for e1 in (0, 1, 2):
        for k1 in range(-bound_k1, bound_k1 + 1):
            if k1 == 0 and e1 == 0:
                continue
            deg = Fraction(k1, 2) * inst.a - Fraction(e1, 2)
            cand = Candidate(k1, e1, deg, Kind.FOR_T)
            verdict = check_candidate_t(inst, cand, ctx)
            if verdict.passed:
                result.for_t_survivors.append((cand, verdict))
            if audit:
                result.audit.append((cand, verdict))

    for m in range(-bound_k1, bound_k1 + 1):
        verdict = exclude_rank_zero(inst, m, ctx)
        if verdict.passed:
            raise InternalInvariantError(f"rank-zero candidate m={m} was not excluded")
        result.rank_zero.append((m, verdict))

    key = lambda pair: (pair[0].k1, pair[0].e1)
    result.survivors.sort(key=key)
    result.for_u_survivors.sort(key=key)
    result.for_t_survivors.sort(key=key)
    return result


def default_bounds(inst: ProblemInstance) -> tuple[int, int]:
    return 12, 4 * inst.r + 4


def classify(inst: ProblemInstance, *, cross_check: bool = True) -> Classification:
    """Closed-form classification, optionally cross-checked against the sweep."""
    result, _ = classify_with_search(inst, run_search=cross_check)
    return result


def classify_with_search(
    inst: ProblemInstance,
    bound_k1: int | None = None,
    bound_e1: int | None = None,
    *,
    run_search: bool = True,
) -> tuple[Classification, SearchResult | None]:
    """Classification plus the full sweep it was checked against."""
    empty = inst.lattice.class_group_nontrivial and inst.r == 2
    if empty:
        outcome = Classification(Outcome.EMPTY, "rank 2 with nontrivial class group: descent obstructed")
    elif inst.r == 1:
        outcome = Classification(
            Outcome.REDUCED_POINT_LOCALLY_FREE, "rank 1: twist of the structure sheaf"
        )
    else:
        outcome = Classification(
            Outcome.REDUCED_POINT_LOCALLY_FREE, "no destabilizing wall above the pivotal wall"
        )
    search = None
    if run_search:
        bk, be = default_bounds(inst)
        search = search_all(inst, bound_k1 or bk, bound_e1 or be)
        if bool(search.survivors) != empty:
            raise InternalInvariantError(
                "closed-form classification disagrees with the exhaustive sweep"
            )
    return outcome, search
