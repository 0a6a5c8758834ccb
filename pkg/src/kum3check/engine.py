"""Derivation pipeline from a configuration document to the certificates.

Every quantity is computed at most once and cached; downstream steps see
exactly the objects their derivations consume, so one engine instance
reproduces the whole chain from the constant table to the rank, kernel
and bookkeeping certificates.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .bookkeeping import (
    BlowupComparison,
    CanonicalDims,
    HodgeDiamond,
    InvariantWeight4,
    InvariantWeight6,
    RankTable,
    Row,
    TraceAverages,
    blowup_comparison,
    build_rank_table,
    canonical_dims,
    diamond_from_half,
    invariant_weight4,
    invariant_weight6,
    trace_averages,
    weight4_kuenneth_total,
)
from .config import ConfigDocument
from .fujiki import (
    AuxiliaryValues,
    FujikiTable,
    WVClasses,
    WVInputs,
    ZRelations,
    auxiliary_values,
    deg8,
    derive_z_relations,
    express_w_v,
    multiply,
)
from .kummer import (
    DGramCertificate,
    FixedClassIntersections,
    IndependenceCertificate,
    InjectivityCertificate,
    component_cube_from_total,
    d_gram_certificate,
    deg4_independence_certificate,
    qbar_injectivity_certificate,
    two_torsion,
    w_dot_v_total,
)
from .linalg import Matrix
from .quadspace import K3Hilb2Pack, QuadSpace
from .wgeometry import (
    THETAS,
    DPairings,
    QbarRestriction,
    RestrictionFactor,
    SPrimeVectors,
    VRestrictionData,
    WModel,
    WOtherRestriction,
    WSelfRestriction,
    build_gram19,
    build_v_model,
    build_w_model,
    d_self_pairings,
    derive_restriction_factor,
    restrict_qbar,
    restrict_w_other,
    restrict_w_self,
    s_prime_vectors,
    v_restriction_data,
)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ValueError(f"{what} must be an integer, got {value}")
    return value.numerator


class Engine:
    """Lazy, memoised derivation chain over one configuration document."""

    def __init__(self, doc: ConfigDocument):
        self.doc = doc

    # -- degree-wise constants and the z basis ------------------------------

    @cached_property
    def table(self) -> FujikiTable:
        return FujikiTable.from_entries(self.doc.fujiki_values())

    @cached_property
    def relations(self) -> ZRelations:
        return derive_z_relations(self.table)

    @cached_property
    def pack(self) -> K3Hilb2Pack:
        d = self.doc
        return K3Hilb2Pack(
            fujiki_constant=d.fourfold("fujiki_constant"),
            qbar_fujiki=d.fourfold("qbar_fujiki"),
            qbar_square=d.fourfold("qbar_square"),
            c2_qbar_ratio=d.fourfold("c2_qbar_ratio"),
            c4_degree=d.fourfold("c4_degree"),
        )

    # -- the fixed fourfold and its nineteen invariant classes --------------

    @cached_property
    def restriction_factor(self) -> RestrictionFactor:
        return derive_restriction_factor(self.pack, self.doc.geometry("xi_square"))

    @cached_property
    def w_model(self) -> WModel:
        return build_w_model(self.pack, self.restriction_factor.factor)

    @cached_property
    def gram19(self) -> Matrix:
        return build_gram19(self.w_model)

    @cached_property
    def ambient(self) -> QuadSpace:
        return QuadSpace(
            labels=self.doc.h2_labels,
            gram=self.doc.h2_gram,
            name="ambient",
            hilb2_pack=self.pack,
        )

    @cached_property
    def qbar_restriction(self) -> QbarRestriction:
        return restrict_qbar(self.w_model, self.ambient)

    @cached_property
    def v_data(self) -> VRestrictionData:
        vm = build_v_model(THETAS[0])
        return v_restriction_data(
            vm,
            self.doc.geometry("xi_square"),
            self.doc.geometry("surface_c2_degree"),
            self.doc.geometry("normal_c2_degree"),
        )

    @cached_property
    def w_other_all(self) -> tuple[WOtherRestriction, ...]:
        return tuple(
            restrict_w_other(
                self.w_model,
                self.gram19,
                self.pack,
                theta,
                self.doc.geometry("surface_c2_degree"),
                self.doc.geometry("normal_c2_degree"),
                self.doc.geometry("xi_square"),
            )
            for theta in THETAS
        )

    @cached_property
    def sprime(self) -> SPrimeVectors:
        return s_prime_vectors(self.w_model)

    @cached_property
    def w_self(self) -> WSelfRestriction:
        return restrict_w_self(
            self.w_model,
            self.gram19,
            self.pack,
            self.qbar_restriction,
            self.w_other_all,
            c4_w_component=self.doc.geometry("c4_component_pairing"),
            w_sq_w_other=self.doc.geometry("normal_c2_degree"),
            qbar_w_sq=self.aux.qbar_w_sq,
        )

    # -- sum classes on the sixfold ------------------------------------------

    @cached_property
    def wv_inputs(self) -> WVInputs:
        return WVInputs(
            w_sq_w_other=self.doc.geometry("normal_c2_degree"),
            w_triple_distinct=self.doc.geometry("transversal_points"),
            c2_v_pair=self.doc.geometry("restricted_c2_degree"),
            c_w_component=self.restriction_factor.c_w_component,
            c_v_pair=self.v_data.c_v_pair,
        )

    @cached_property
    def w_dot_v(self) -> Fraction:
        data = self.wv_inputs
        return w_dot_v_total(
            data.w_sq_w_other, data.w_triple_distinct, data.label_count
        )

    @cached_property
    def wv(self) -> WVClasses:
        data = self.wv_inputs

        def solver(total: Fraction) -> Fraction:
            return component_cube_from_total(
                total, data.w_sq_w_other, data.w_triple_distinct, data.label_count
            )

        return express_w_v(self.table, self.relations, data, self.w_dot_v, solver)

    @cached_property
    def aux(self) -> AuxiliaryValues:
        return auxiliary_values(self.relations, self.wv, self.wv_inputs)

    # -- certificates ----------------------------------------------------------

    @cached_property
    def fixed_intersections(self) -> FixedClassIntersections:
        rel = self.relations
        wv = self.wv
        n = self.wv_inputs.label_count
        return FixedClassIntersections(
            qbar2_w=multiply(wv.w, deg8(1, 0), rel) / n,
            qbarz_w=multiply(wv.w, deg8(0, 1), rel) / n,
            qbar_w_sq=self.aux.qbar_w_sq,
            qbar_w_pair=self.aux.qbar_w_pair,
            w_cube=wv.w_component_cube,
            w_sq_w_other=self.wv_inputs.w_sq_w_other,
            w_triple_distinct=self.wv_inputs.w_triple_distinct,
            c2_qbar2=self.table.c("C(qbar^2*c2)"),
            c2_qbarz=multiply(rel.c2, deg8(0, 1), rel),
            qbar_c2_sq=self.table.c("C(qbar*c2^2)"),
            ratio=rel.ratio,
            w_qbar_coeff=wv.w.qbar,
            w_z_coeff=wv.w.z,
            label_count=n,
        )

    @cached_property
    def independence(self) -> IndependenceCertificate:
        return deg4_independence_certificate(self.fixed_intersections)

    @cached_property
    def injectivity(self) -> InjectivityCertificate:
        return qbar_injectivity_certificate(self.fixed_intersections)

    @cached_property
    def d_pairings(self) -> DPairings:
        return d_self_pairings(self.w_model, self.w_self.coeffs)

    @cached_property
    def d_gram(self) -> DGramCertificate:
        return d_gram_certificate(
            self.d_pairings.diagonal, self.d_pairings.same_block
        )

    # -- cohomology bookkeeping -------------------------------------------------

    @cached_property
    def sixfold_diamond(self) -> HodgeDiamond:
        return diamond_from_half(self.doc.sixfold_half(), 6)

    @cached_property
    def abelian_diamond(self) -> HodgeDiamond:
        return diamond_from_half(self.doc.abelian_half(), 2)

    @cached_property
    def weight4(self) -> InvariantWeight4:
        return invariant_weight4(
            self.doc.length4_weight4_row(),
            self.abelian_diamond,
            self.sixfold_diamond,
        )

    @cached_property
    def weight4_total(self) -> Row:
        return weight4_kuenneth_total(
            self.weight4.translation_fixed,
            self.abelian_diamond,
            self.sixfold_diamond,
        )

    @cached_property
    def weight6(self) -> InvariantWeight6:
        return invariant_weight6(
            self.doc.hodge_int("length4 b6"),
            self.abelian_diamond,
            self.sixfold_diamond,
            self.weight4.fixed_rank,
        )

    @cached_property
    def rank_table(self) -> RankTable:
        return build_rank_table(
            base_rank=self.sixfold_diamond.betti(2),
            spin_rank=self.doc.hodge_int("spin rank"),
            odd_rank=self.doc.hodge_int("odd rank"),
        )

    @cached_property
    def canonical(self) -> CanonicalDims:
        return canonical_dims(
            self.independence.rank, self.d_gram.rank, self.injectivity.rank
        )

    @cached_property
    def traces(self) -> TraceAverages:
        # spin sits in the middle degree; every other even summand is fixed
        even_fixed = sum(
            total
            for name, total in zip(
                self.rank_table.component_names, self.rank_table.component_totals
            )
            if name != "spin"
        )
        return trace_averages(
            euler_total=self.sixfold_diamond.euler,
            fourfold_euler=_as_int(self.pack.c4_degree, "fourfold Euler number"),
            reflection_extra_points=self.doc.hodge_int("reflection extra points"),
            translation_surface_count=self.doc.hodge_int(
                "translation surface count"
            ),
            surface_euler=self.doc.hodge_int("surface euler"),
            even_fixed_dim=even_fixed,
            odd_dim=self.doc.hodge_int("odd rank"),
        )

    @cached_property
    def blowup(self) -> BlowupComparison:
        # each blown-up centre is one fourfold carrying one holomorphic two-form
        return blowup_comparison(
            self.sixfold_diamond,
            center_count=len(two_torsion()),
            center_h20=1,
            target_h31=self.doc.hodge_int("blowup h(3,1) target"),
            target_h40=self.doc.hodge_int("blowup h(4,0) target"),
        )
