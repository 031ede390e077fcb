"""Statement verifiers: each takes concrete operators, checks the
hypotheses of one range or domain statement, computes both sides of its
conclusion exactly, and returns a structured Report.

Status semantics: a report is Verified only when every hypothesis check
passed (exactly or by a clean probe sweep, the per-hypothesis detail
records which) and the conclusion holds; a failing conclusion under
passing hypotheses is Refuted and surfaces a witness, which for a proved
statement means a bug in this library rather than in the statement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .analysis import (
    bh_inf_status,
    check_3star,
    check_maximal,
    check_monotone,
    simeq,
)
from .config import limits
from .errors import (
    IncompleteAnalysisError,
    InputError,
    InternalCheckError,
    PreconditionError,
)
from .linalg import Matrix, Q, Vector
from .operators import (
    LinearRelation,
    Operator,
    Scenario,
    adjoint,
    apply_operator,
    composite,
    dr_displacement,
    identity_operator,
    image_of_set,
    inverse,
    kuhn_tucker,
    linear_relation_from_generators,
    linear_relation_from_matrix,
    make_operator,
    matrix_operator,
    normal_cone_operator,
    op_compose,
    op_domain,
    op_range,
    op_sum,
    pwl1d_operator,
    reflected_resolvent,
    relation_operator,
    resolvent,
    scale_output,
    scenario_embedding,
)
from .polyhedra import (
    Polyhedron,
    PolySet,
    convex_hull,
    polyset_contains,
    polyset_equal,
    polyset_image,
    polyset_intersect,
    polyset_minkowski,
    polyset_negate,
    polyset_product,
    polyset_scale,
    rel_interior_point,
)
from .reports import HypothesisResult, Report, derive_status

# re-exported here because the probe pool is shared with domain probing
from .analysis import _point_pool as _probe_pool


def _three_star_hypothesis(name: str, m: Operator) -> HypothesisResult:
    try:
        verdict = check_3star(m)
    except IncompleteAnalysisError as exc:
        return HypothesisResult(name, "unknown", str(exc))
    if verdict.tag == "Proved":
        return HypothesisResult(name, "pass", "proved on the subspace graph")
    if verdict.tag == "ProbePassed":
        return HypothesisResult(name, "probe", f"{verdict.probes_used} probes bounded")
    x, u, _ = verdict.witness
    return HypothesisResult(name, "fail", f"pairing against ({x}, {u}) is unbounded")


def _monotone_hypothesis(name: str, m: Operator) -> HypothesisResult:
    verdict = check_monotone(m)
    if verdict.holds:
        return HypothesisResult(name, "pass", "pairing nonnegative on all piece pairs")
    (x, u), (y, v) = verdict.witness
    return HypothesisResult(
        name, "fail", f"graph points ({x}, {u}) and ({y}, {v}) have negative pairing"
    )


def _maximal_hypothesis(name: str, m: Operator) -> HypothesisResult:
    try:
        verdict = check_maximal(m)
    except PreconditionError as exc:
        return HypothesisResult(name, "fail", str(exc))
    if verdict.holds:
        return HypothesisResult(name, "pass", "resolvent range covers the space")
    return HypothesisResult(name, "fail", f"point {verdict.witness} escapes ran(Id + M)")


def _relation_preimage(l: LinearRelation, s: PolySet) -> PolySet:
    """The set of x whose image under the relation meets s."""
    flipped = linear_relation_from_generators(
        l.dim_out,
        l.dim_in,
        [
            g.block(l.dim_in, l.dim_in + l.dim_out).concat(g.block(0, l.dim_in))
            for g in l.graph_subspace.basis
        ],
    )
    return image_of_set(relation_operator(flipped), s)


def verify_theorem1(s: Scenario, meta: Optional[dict] = None) -> Report:
    """Range of a structured sum A + sum_k L_k* B_k L_k.

    Hypotheses: A monotone, every inner operator three-star, the composite
    maximal.  Conclusion: with D the common preimage of the inner domains,
    ran(composite) and A(D) + sum_k L_k*(ran B_k) agree up to closure and
    relative interior.
    """
    hyps = [_monotone_hypothesis("A monotone", s.a)]
    for idx, (_, b) in enumerate(s.couples, start=1):
        hyps.append(_three_star_hypothesis(f"B_{idx} three-star", b))
    comp = composite(s)
    hyps.append(_maximal_hypothesis("composite maximal", comp))

    d_set = PolySet.full(s.a.dim_in)
    for l, b in s.couples:
        d_set = polyset_intersect(d_set, _relation_preimage(l, op_domain(b)))

    lhs = op_range(comp)
    rhs = image_of_set(s.a, d_set)
    for l, b in s.couples:
        rhs = polyset_minkowski(rhs, image_of_set(relation_operator(adjoint(l)), op_range(b)))

    conclusion = None
    conclusion_holds = None
    witnesses = []
    if all(h.ok for h in hyps):
        conclusion = simeq(lhs, rhs)
        conclusion_holds = conclusion.holds and not d_set.is_empty
        if conclusion.witness is not None:
            witnesses.append(conclusion.witness)
    report_meta = dict(s.options)
    if meta:
        report_meta.update(meta)
    if d_set.is_empty:
        report_meta["common_domain_empty"] = True
    return Report(
        statement_id="Theorem1",
        hypothesis_results=tuple(hyps),
        lhs_set=lhs,
        rhs_set=rhs,
        conclusion=conclusion,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion_holds),
        meta=report_meta,
    )


def chain_inequality_holds(s: Scenario, rng: random.Random, count: int) -> bool:
    """Sampled check of the coupling inequality behind the structured sum.

    For two sampled tuples through the scenario embedding, the pairing of
    the outer points dominates the sum of the pairings of the inner
    points.  Exact on every sampled pair; a single violation is fatal.
    """
    emb = scenario_embedding(s)
    from .polyhedra import sample_point

    pieces = emb.pieces
    if not pieces:
        raise InputError("the scenario embedding is empty")
    for i in range(count):
        p1 = emb.split(sample_point(pieces[i % len(pieces)], rng))
        p2 = emb.split(sample_point(pieces[(i * 7 + 3) % len(pieces)], rng))
        lhs = (p1["x"] - p2["x"]).dot(p1["value"] - p2["value"])
        rhs = Q(0)
        for k in range(len(s.couples)):
            rhs += (p1["y"][k] - p2["y"][k]).dot(p1["v"][k] - p2["v"][k])
        if lhs < rhs:
            return False
    return True


def verify_corollary_surjective(a: Operator, b: Operator, meta: Optional[dict] = None) -> Report:
    """A monotone plus a surjective three-star operator is surjective."""
    if a.dim_in != b.dim_in or not a.square or not b.square:
        raise InputError("the surjectivity corollary needs two square operators on one space")
    n = a.dim_in
    full = PolySet.full(n)
    hyps = [_monotone_hypothesis("A monotone", a), _three_star_hypothesis("B three-star", b)]
    ran_b = op_range(b)
    eq = polyset_equal(ran_b, full)
    hyps.append(
        HypothesisResult(
            "B surjective",
            "pass" if eq.holds else "fail",
            "" if eq.holds else f"point {eq.witness} escapes ran B",
        )
    )
    total = op_sum(a, b)
    hyps.append(_maximal_hypothesis("sum maximal", total))

    conclusion = None
    conclusion_holds = None
    witnesses = []
    lhs = op_range(total)
    if all(h.ok for h in hyps):
        conclusion = simeq(lhs, full)
        conclusion_holds = conclusion.holds
        if conclusion.witness is not None:
            witnesses.append(conclusion.witness)
    return Report(
        statement_id="Corollary1",
        hypothesis_results=tuple(hyps),
        lhs_set=lhs,
        rhs_set=full,
        conclusion=conclusion,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion_holds),
        meta=dict(meta or {}),
    )


def verify_domain_description(m: Operator, probes: Sequence, meta: Optional[dict] = None) -> Report:
    """Probe-verified description of the domain through pairing finiteness.

    Forward direction: at sampled domain points z with u a value of M at z,
    the infimum of the pairing against (z, u) is exactly zero.  Reverse
    direction: each caller probe (z, w) with a finite infimum must have z
    in the domain.  Both directions are finite evidence, so the protocol
    is recorded as probe-verified rather than exact.
    """
    probes = list(probes)
    if not probes:
        raise InputError("the domain description needs at least one probe")
    maximal = check_maximal(m)
    if not maximal.holds:
        raise PreconditionError("the domain description needs a maximally monotone operator")
    hyps = [HypothesisResult("operator maximally monotone", "pass", "Minty criterion")]
    dom = op_domain(m)
    witnesses = []
    conclusion_holds = True

    budget = limits().probe_budget
    forward = _probe_pool(dom)[:budget]
    for z in forward:
        values = apply_operator(m, z)
        if values.is_empty:  # pragma: no cover - z was sampled from the domain
            raise InternalCheckError("domain sample has no operator value")
        u = rel_interior_point(values.pieces[0])
        st = bh_inf_status(m, z, u)
        if st.tag != "Bounded" or st.lower_bound != 0:
            conclusion_holds = False
            witnesses.append(z)
    hyps.append(
        HypothesisResult(
            "graph points give zero infimum",
            "probe" if conclusion_holds else "fail",
            f"{len(forward)} domain samples",
        )
    )

    flagged = []
    reverse_ok = True
    for z, w in probes:
        z = z if isinstance(z, Vector) else Vector.of(z)
        w = w if isinstance(w, Vector) else Vector.of(w)
        st = bh_inf_status(m, z, w)
        if st.tag == "Bounded":
            if dom.member(z):
                flagged.append((z, w, "bounded, z in the domain"))
            else:
                reverse_ok = False
                conclusion_holds = False
                witnesses.append(z)
                flagged.append((z, w, "bounded but z escapes the domain"))
        elif st.tag == "Unbounded":
            flagged.append((z, w, "unbounded, no domain conclusion"))
        else:
            flagged.append((z, w, "undecided"))
    hyps.append(
        HypothesisResult(
            "bounded probes land in the domain",
            "probe" if reverse_ok else "fail",
            "; ".join(f"({z}, {w}): {note}" for z, w, note in flagged),
        )
    )

    report_meta = {"protocol": "probe-verified", "forward_samples": len(forward)}
    if meta:
        report_meta.update(meta)
    return Report(
        statement_id="Example9",
        hypothesis_results=tuple(hyps),
        lhs_set=dom,
        rhs_set=None,
        conclusion=conclusion_holds,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion_holds),
        meta=report_meta,
    )


@dataclass(frozen=True)
class WMode:
    """Choice of the candidate set W for the displacement range statement."""

    tag: str
    custom: Optional[PolySet] = None

    def __post_init__(self):
        if self.tag not in ("BothThreeStar", "FullDomainThreeStar", "FullRangeThreeStar", "Custom"):
            raise InputError(f"unknown W mode {self.tag!r}")
        if (self.tag == "Custom") != (self.custom is not None):
            raise InputError("a custom W mode carries exactly one set")


W_BOTH = WMode("BothThreeStar")
W_FULL_DOMAIN = WMode("FullDomainThreeStar")
W_FULL_RANGE = WMode("FullRangeThreeStar")


def custom_w(s: PolySet) -> WMode:
    return WMode("Custom", custom=s)


def _decomposition_certificate(a: Operator, b: Operator, w: Vector) -> bool:
    """Search for a split w = a0 - b0 = p0 + q0 with both pairings bounded."""
    dom_a, dom_b = op_domain(a), op_domain(b)
    ran_a, ran_b = op_range(a), op_range(b)
    a_cands = _probe_pool(dom_a)[:6] + [w + bp for bp in _probe_pool(dom_b)[:6]]
    p_cands = _probe_pool(ran_a)[:6] + [w - qp for qp in _probe_pool(ran_b)[:6]]
    tried = 0
    for a0 in a_cands:
        for p0 in p_cands:
            tried += 1
            if tried > limits().probe_budget:
                return False
            if bh_inf_status(a, a0, p0).tag != "Bounded":
                continue
            if bh_inf_status(b, a0 - w, w - p0).tag == "Bounded":
                return True
    return False


def verify_theorem2(a: Operator, b: Operator, mode: WMode, meta: Optional[dict] = None) -> Report:
    """Range of the displacement Id - T of the composed reflections.

    W is chosen by mode; under the mode's hypotheses the displacement
    range, W, and the convex hull of W agree up to closure and relative
    interior.  The unconditional containment of the displacement range in
    (dom A - dom B) intersected with (ran A + ran B) is checked on every
    run before the equivalence itself.
    """
    for name, m in (("A", a), ("B", b)):
        if not check_maximal(m).holds:
            raise PreconditionError(f"operator {name} is not maximally monotone")
    _, disp = dr_displacement(a, b)
    ran_disp = op_range(disp)
    dom_a, dom_b = op_domain(a), op_domain(b)
    ran_a, ran_b = op_range(a), op_range(b)
    n = a.dim_in
    full = PolySet.full(n)

    envelope = polyset_intersect(
        polyset_minkowski(dom_a, polyset_negate(dom_b)),
        polyset_minkowski(ran_a, ran_b),
    )
    for piece in ran_disp.pieces:
        held = polyset_contains(envelope, piece)
        if not held.holds:  # pragma: no cover - unconditional for maximal pairs
            raise InternalCheckError(
                f"displacement range point {held.witness} escapes its envelope"
            )
    hyps = [
        HypothesisResult(
            "displacement range inside (dom A - dom B) and (ran A + ran B)",
            "pass",
            "checked exactly",
        )
    ]

    if mode.tag == "BothThreeStar":
        hyps.append(_three_star_hypothesis("A three-star", a))
        hyps.append(_three_star_hypothesis("B three-star", b))
        w_set = envelope
    elif mode.tag == "FullDomainThreeStar":
        hyps.append(_three_star_hypothesis("A three-star", a))
        eq = polyset_equal(dom_a, full)
        hyps.append(
            HypothesisResult(
                "dom A is the whole space",
                "pass" if eq.holds else "fail",
                "" if eq.holds else f"point {eq.witness} escapes dom A",
            )
        )
        w_set = polyset_minkowski(ran_a, ran_b)
    elif mode.tag == "FullRangeThreeStar":
        hyps.append(_three_star_hypothesis("A three-star", a))
        eq = polyset_equal(ran_a, full)
        hyps.append(
            HypothesisResult(
                "ran A is the whole space",
                "pass" if eq.holds else "fail",
                "" if eq.holds else f"point {eq.witness} escapes ran A",
            )
        )
        w_set = polyset_minkowski(dom_a, polyset_negate(dom_b))
    else:
        w_set = mode.custom
        if w_set.ambient_dim != n:
            raise InputError("the custom W lives in the wrong dimension")
        covered = True
        for piece in ran_disp.pieces:
            held = polyset_contains(w_set, piece)
            if not held.holds:
                covered = False
                break
        hyps.append(
            HypothesisResult(
                "W contains the displacement range",
                "pass" if covered else "fail",
                "" if covered else f"point {held.witness} of the range escapes W",
            )
        )
        samples = _probe_pool(w_set)[: max(1, limits().probe_budget // 8)]
        missing = [w for w in samples if not _decomposition_certificate(a, b, w)]
        hyps.append(
            HypothesisResult(
                "sampled W points admit bounded decompositions",
                "probe" if not missing else "unknown",
                f"{len(samples)} samples"
                if not missing
                else f"no certificate found for {missing[0]}",
            )
        )

    conclusion = None
    conclusion_holds = None
    witnesses = []
    if all(h.ok for h in hyps):
        first = simeq(ran_disp, w_set)
        hull = convex_hull(w_set) if not w_set.is_empty else None
        second = (
            simeq(w_set, PolySet.of(hull))
            if hull is not None
            else simeq(w_set, PolySet.empty(n))
        )
        conclusion = (first, second)
        conclusion_holds = first.holds and second.holds
        for verdict in (first, second):
            if verdict.witness is not None:
                witnesses.append(verdict.witness)
    return Report(
        statement_id="Theorem2",
        hypothesis_results=tuple(hyps),
        lhs_set=ran_disp,
        rhs_set=w_set,
        conclusion=conclusion,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion_holds),
        meta=dict(meta or {}),
    )


def _relation_matrix(l: LinearRelation) -> Optional[Matrix]:
    """The matrix of a single-valued everywhere-defined linear relation."""
    basis = l.graph_subspace.basis
    if len(basis) != l.dim_in:
        return None
    xcols = Matrix.of([[b[i] for b in basis] for i in range(l.dim_in)])
    inv = xcols.inverse()
    if inv is None:
        return None
    ucols = Matrix.of([[b[l.dim_in + i] for b in basis] for i in range(l.dim_out)])
    return ucols.mul(inv)


def verify_kt_range(
    a: Operator, b: Operator, l: LinearRelation, variant: str, meta: Optional[dict] = None
) -> Report:
    """Range of the Kuhn-Tucker operator of a primal-dual pair.

    Variant I needs the inner operator three-star and describes the range
    through the twisted graph of A; variant II needs both operators
    three-star and describes it as a product of two sums.
    """
    if variant not in ("I", "II"):
        raise InputError(f"unknown Kuhn-Tucker variant {variant!r}")
    lmat = _relation_matrix(l)
    if lmat is None:
        raise InputError("the coupling map must be a single-valued everywhere-defined matrix")
    n, m = l.dim_in, l.dim_out
    k_op = kuhn_tucker(a, b, l)
    hyps = [_monotone_hypothesis("A monotone", a), _monotone_hypothesis("B monotone", b)]
    if variant == "II":
        hyps.append(_three_star_hypothesis("A three-star", a))
    hyps.append(_three_star_hypothesis("B three-star", b))
    hyps.append(_maximal_hypothesis("Kuhn-Tucker operator maximal", k_op))

    lstar_ran_b = polyset_image(op_range(b), lmat.transpose())
    if variant == "I":
        # twist (x, u) -> (u, -L x) of the graph of A
        rows = []
        for i in range(n):
            rows.append([Q(0)] * n + [Q(1) if j == i else Q(0) for j in range(n)])
        for i in range(m):
            rows.append([-lmat.row(i)[j] for j in range(n)] + [Q(0)] * n)
        twisted = polyset_image(a.graph, Matrix.of(rows))
        rhs = polyset_minkowski(twisted, polyset_product(lstar_ran_b, op_domain(b)))
        statement = "KTRangeI"
    else:
        first = polyset_minkowski(op_range(a), lstar_ran_b)
        second = polyset_minkowski(polyset_image(op_domain(a), lmat.scale(Q(-1))), op_domain(b))
        rhs = polyset_product(first, second)
        statement = "KTRangeII"

    lhs = op_range(k_op)
    conclusion = None
    conclusion_holds = None
    witnesses = []
    if all(h.ok for h in hyps):
        conclusion = simeq(lhs, rhs)
        conclusion_holds = conclusion.holds
        if conclusion.witness is not None:
            witnesses.append(conclusion.witness)
    return Report(
        statement_id=statement,
        hypothesis_results=tuple(hyps),
        lhs_set=lhs,
        rhs_set=rhs,
        conclusion=conclusion,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion_holds),
        meta=dict(meta or {}),
    )


def verify_reflected_composition(a: Operator, b: Operator, meta: Optional[dict] = None) -> Report:
    """Range of Id minus the composition of the two reflected resolvents.

    Under a full-domain three-star first operator this range agrees with
    2 ran A + 2 ran B.  The factorization of Id - R_B R_A through the
    resolvent difference is asserted as an exact graph identity first.
    """
    for name, m in (("A", a), ("B", b)):
        if not check_maximal(m).holds:
            raise PreconditionError(f"operator {name} is not maximally monotone")
    n = a.dim_in
    ra, rb = reflected_resolvent(a), reflected_resolvent(b)
    lhs_op = op_sum(identity_operator(n), scale_output(op_compose(rb, ra), Q(-1)))
    alt = scale_output(
        op_sum(resolvent(a), scale_output(op_compose(resolvent(b), ra), Q(-1))), Q(2)
    )
    if not polyset_equal(lhs_op.graph, alt.graph).holds:  # pragma: no cover
        raise InternalCheckError("the displacement factorization identity failed")

    hyps = [_three_star_hypothesis("A three-star", a)]
    eq = polyset_equal(op_domain(a), PolySet.full(n))
    hyps.append(
        HypothesisResult(
            "dom A is the whole space",
            "pass" if eq.holds else "fail",
            "" if eq.holds else f"point {eq.witness} escapes dom A",
        )
    )

    lhs = op_range(lhs_op)
    rhs = polyset_minkowski(polyset_scale(op_range(a), Q(2)), polyset_scale(op_range(b), Q(2)))
    conclusion = None
    conclusion_holds = None
    witnesses = []
    if all(h.ok for h in hyps):
        conclusion = simeq(lhs, rhs)
        conclusion_holds = conclusion.holds
        if conclusion.witness is not None:
            witnesses.append(conclusion.witness)
    return Report(
        statement_id="Example2",
        hypothesis_results=tuple(hyps),
        lhs_set=lhs,
        rhs_set=rhs,
        conclusion=conclusion,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion_holds),
        meta=dict(meta or {}),
    )


def verify_sum_range_bound(a: Operator, b: Operator, meta: Optional[dict] = None) -> Report:
    """The naive sum-range bound ran(A+B) vs ran A + ran B.

    This equivalence needs both operators three-star; the catalog carries
    a deliberate contrast instance where the first hypothesis fails and
    the two sides genuinely differ, reported as HypothesisFailed with the
    separating witness kept visible.
    """
    hyps = [
        _three_star_hypothesis("A three-star", a),
        _three_star_hypothesis("B three-star", b),
        _maximal_hypothesis("sum maximal", op_sum(a, b)),
    ]
    lhs = op_range(op_sum(a, b))
    rhs = polyset_minkowski(op_range(a), op_range(b))
    conclusion = simeq(lhs, rhs)
    witnesses = [conclusion.witness] if conclusion.witness is not None else []
    return Report(
        statement_id="BrezisHaraux",
        hypothesis_results=tuple(hyps),
        lhs_set=lhs,
        rhs_set=rhs,
        conclusion=conclusion,
        witnesses=tuple(witnesses),
        status=derive_status(hyps, conclusion.holds),
        meta=dict(meta or {}),
    )


# -- builtin catalog ---------------------------------------------------------


def _rotation():
    return matrix_operator(Matrix.of([[0, -1], [1, 0]]))


def _horizontal_axis_cone():
    return normal_cone_operator(
        Polyhedron.from_h(2, [], [(Vector.of([0, 1]), Q(0))])
    )


def _example3_scenario() -> Scenario:
    return Scenario(
        _rotation(),
        [(linear_relation_from_matrix(Matrix.identity(2)), _horizontal_axis_cone())],
        options={"name": "example3_rotation_normalcone"},
    )


def _point_cone(values) -> Operator:
    return normal_cone_operator(Polyhedron.point(Vector.of(values)))


def _interval_cone(lo, hi) -> Operator:
    return normal_cone_operator(Polyhedron.box([lo], [hi]))


def builtin_scenarios() -> dict:
    """Deterministic catalog of named verification runs for the CLI.

    Each entry maps a name to (description, thunk); the thunk builds the
    operators fresh and returns a single Report.
    """
    catalog = {}

    def add(name, description, thunk):
        catalog[name] = (description, thunk)

    add(
        "example3_rotation_normalcone",
        "structured sum of the quarter-turn with the horizontal-axis normal cone",
        lambda: verify_theorem1(_example3_scenario(), meta={"scenario": "example3"}),
    )
    add(
        "example3_brezis_haraux_contrast",
        "EXPECTED FAILURE: the naive sum-range bound breaks without three-star",
        lambda: verify_sum_range_bound(
            _rotation(), _horizontal_axis_cone(), meta={"expected_failure": True}
        ),
    )
    add(
        "theorem2_mode_ii_identity_plus_point",
        "displacement range for the identity against a point normal cone",
        lambda: verify_theorem2(identity_operator(1), _point_cone([0]), W_FULL_DOMAIN),
    )
    add(
        "theorem2_mode_i_interval_cones",
        "displacement range for two interval normal cones shifted apart",
        lambda: verify_theorem2(
            op_sum(identity_operator(1), _interval_cone(0, 1)),
            op_sum(identity_operator(1), _interval_cone(-1, 0)),
            W_BOTH,
        ),
    )
    add(
        "theorem2_custom_point_cones",
        "custom W singleton for two point normal cones",
        lambda: verify_theorem2(
            _point_cone([2]),
            _point_cone([-1]),
            custom_w(PolySet.of(Polyhedron.point(Vector.of([3])))),
        ),
    )
    add(
        "corollary1_interval_plus_identity",
        "interval normal cone plus the identity is surjective",
        lambda: verify_corollary_surjective(_interval_cone(0, 1), identity_operator(1)),
    )
    add(
        "corollary1_zero_plus_identity",
        "zero operator plus the identity is surjective",
        lambda: verify_corollary_surjective(
            matrix_operator(Matrix.of([[0, 0], [0, 0]])), identity_operator(2)
        ),
    )
    add(
        "corollary1_rotation_plus_identity",
        "quarter-turn plus the identity is surjective",
        lambda: verify_corollary_surjective(_rotation(), identity_operator(2)),
    )
    add(
        "example9_interval_normalcone",
        "domain description of the interval normal cone through pairing probes",
        lambda: verify_domain_description(
            _interval_cone(0, 1),
            [
                (Vector.of([Q(1, 2)]), Vector.of([0])),
                (Vector.of([2]), Vector.of([0])),
                (Vector.of([-1]), Vector.of([-3])),
            ],
        ),
    )
    add(
        "kt_variant_i_identity_triple",
        "Kuhn-Tucker range, variant I, identity data on the line",
        lambda: verify_kt_range(
            identity_operator(1),
            identity_operator(1),
            linear_relation_from_matrix(Matrix.identity(1)),
            "I",
        ),
    )
    add(
        "kt_variant_ii_identity_triple",
        "Kuhn-Tucker range, variant II, identity data on the line",
        lambda: verify_kt_range(
            identity_operator(1),
            identity_operator(1),
            linear_relation_from_matrix(Matrix.identity(1)),
            "II",
        ),
    )
    add(
        "kt_variant_ii_point_and_interval",
        "Kuhn-Tucker range, variant II, point cone against an interval cone",
        lambda: verify_kt_range(
            _point_cone([0]),
            _interval_cone(-1, 1),
            linear_relation_from_matrix(Matrix.identity(1)),
            "II",
        ),
    )
    add(
        "kt_variant_i_interval_zero_map",
        "Kuhn-Tucker range, variant I, interval cone with the zero coupling",
        lambda: verify_kt_range(
            identity_operator(1),
            _interval_cone(-1, 1),
            linear_relation_from_matrix(Matrix.of([[0]])),
            "I",
        ),
    )
    add(
        "example2_identity_plus_point",
        "reflected composition of the identity with a point normal cone",
        lambda: verify_reflected_composition(identity_operator(1), _point_cone([0])),
    )
    add(
        "example2_identity_pair",
        "reflected composition of the identity with itself",
        lambda: verify_reflected_composition(identity_operator(1), identity_operator(1)),
    )
    add(
        "example2_identity_plus_interval",
        "reflected composition of the identity with an interval normal cone",
        lambda: verify_reflected_composition(identity_operator(1), _interval_cone(-1, 1)),
    )
    add(
        "lemma2_interval_refinement",
        "sandwich criterion on an interval against its refinement",
        lambda: _lemma2_interval_refinement(),
    )
    add(
        "rint_identity_square_normal_cone",
        "range of the square normal cone equals its convex hull",
        lambda: _rint_square(),
    )
    add(
        "theorem1_staircase_pair",
        "structured sum of a staircase with a scaled linear inner operator",
        lambda: verify_theorem1(
            Scenario(
                pwl1d_operator([(0, 0), (1, 0), (1, 1)], head=(-1, 0), tail=(0, 1)),
                [
                    (
                        linear_relation_from_matrix(Matrix.of([[2]])),
                        matrix_operator(Matrix.of([[1]])),
                    )
                ],
                options={"name": "theorem1_staircase_pair"},
            )
        ),
    )
    return catalog


def _lemma2_interval_refinement() -> Report:
    from .analysis import check_lemma2

    c = PolySet.of(Polyhedron.box([0], [1]))
    d = PolySet.make(1, [Polyhedron.box([0], [1]), Polyhedron.point(Vector.of([1]))])
    return check_lemma2(c, d)


def _rint_square() -> Report:
    from .analysis import rint_range_identity

    return rint_range_identity(normal_cone_operator(Polyhedron.box([0, 0], [1, 1])))


def run_builtin(name: str) -> Report:
    if not name:
        raise InputError("the scenario name must not be empty")
    catalog = builtin_scenarios()
    if name not in catalog:
        raise InputError(f"unknown builtin scenario {name!r}")
    return catalog[name][1]()
