"""Exact winding-number calculus on surfaces, assemblage generation
certificates, Picard-lattice adjunction arithmetic, Milnor numbers of plane
germs, and the abelianized simple-braid calculus, joined into end-to-end
monodromy reports."""

from .picard import (
    AdjointReport,
    DivisorClass,
    JetLedger,
    JetSplitting,
    PicardLattice,
    adjoint_and_root,
    catalog_lattice,
    catalog_names,
    genus_of_section,
    intersect,
    jet_compose,
    jet_splitting_certificate,
    lefschetz_full_decision,
    smoothed_genus,
)
from .curveconf import (
    Crossing,
    CurveSystem,
    IntersectionGraph,
    NeighborhoodInvariants,
    chain,
    dynkin,
    e6_a7_core,
    intersection_graph,
    is_arboreal,
    is_e_arboreal,
    is_spanning,
    neighborhood_invariants,
)
from .winding import (
    HomologyCurve,
    QuadraticFormMod2,
    TwistWord,
    WindingContext,
    WindingFunction,
    act,
    coherence_check,
    enumerate_forms,
    is_admissible,
    orbit_gcd,
    reduce_mod,
    twist_value,
)
from .assemblage import (
    Assemblage,
    AssemblageState,
    AssemblageStep,
    FramingCertificate,
    ReportDocument,
    apply_step,
    capping_order,
    certify,
    monodromy_report,
    smoothing_assemblage,
    verify_core,
)
from .milnor import (
    MilnorResult,
    PlaneGerm,
    jacobian,
    jet_requirement,
    milnor_number,
    morsification_reference,
)
from .braidcalc import (
    BraidGenerator,
    CorrectionPlan,
    PsiImage,
    boundary_twist,
    correction_plan,
    homology_trace,
    in_stabilizer,
    meridian,
    point_push,
    psi,
    stabilizer_element,
)

__version__ = "0.1.0"
