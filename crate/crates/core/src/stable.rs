//! Bookkeeping for surfaces carrying `1/3(1,1)` points: contraction of
//! disjoint `(-3)`-curves, the Riemann–Roch correction for `2K`, and the
//! canonical resolution of nodes on a triple-cover branch locus.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::{z3_invariants, CoverError, CoverSpec, InvariantReport};
use crate::lattice::{blow_up, pullback, DivisorClass, LatticeError};
use crate::num::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StableError {
    #[error("nothing to contract: count must be at least 1")]
    EmptyContraction,
    #[error("chi + K^2 + correction = {0} is not an integer; the singularity ledger is inconsistent")]
    NonIntegralBicanonical(ExactRational),
    #[error("node resolution needs a degree 3 cover, got degree {0}")]
    NotTriple(u8),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Singular points carried by a normal surface.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularityLedger {
    pub third11_count: u64,
    /// ADE points; they leave `K²`, `χ` and every correction unchanged.
    pub canonical_count: u64,
}

impl SingularityLedger {
    pub fn third11(count: u64) -> Self {
        SingularityLedger { third11_count: count, canonical_count: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSurfaceRecord {
    pub k_squared: ExactRational,
    #[serde(with = "crate::num::bigint")]
    pub chi: BigInt,
    pub ledger: SingularityLedger,
    pub ample_canonical: bool,
    pub smoothable: bool,
    pub in_component_without_canonical_models: bool,
}

/// Contract `count` disjoint `(-3)`-curves on a smooth surface with the
/// given invariants. Each contraction adds `1/3` to `K²` and leaves `χ`
/// alone; the resulting points admit no Q-Gorenstein smoothing.
pub fn contract_minus3(chi: impl Into<BigInt>, k_squared_smooth: impl Into<BigInt>, count: u64) -> Result<StableSurfaceRecord, StableError> {
    if count == 0 {
        return Err(StableError::EmptyContraction);
    }
    let k_squared = ExactRational::integer(k_squared_smooth) + ExactRational::new(count, 3).expect("nonzero denominator");
    Ok(StableSurfaceRecord {
        k_squared,
        chi: chi.into(),
        ledger: SingularityLedger::third11(count),
        ample_canonical: false,
        smoothable: false,
        in_component_without_canonical_models: false,
    })
}

/// `Σ R_{X,x}(2K_X)`: `-1/3` per `1/3(1,1)` point, nothing for ADE points.
pub fn rr_correction(ledger: &SingularityLedger) -> ExactRational {
    -ExactRational::new(ledger.third11_count, 3).expect("nonzero denominator")
}

/// `h⁰(2K_X) = χ(2K_X) = χ + K² + Σ R_{X,x}(2K_X)`.
///
/// Also sets `in_component_without_canonical_models` on the record: the
/// flag holds exactly when the count differs from the smooth value `χ + K²`.
pub fn h0_2k(record: &mut StableSurfaceRecord) -> Result<BigInt, StableError> {
    let smooth_value = ExactRational::integer(record.chi.clone()) + record.k_squared.clone();
    let total = smooth_value.clone() + rr_correction(&record.ledger);
    let value = total.to_integer().ok_or_else(|| StableError::NonIntegralBicanonical(total.clone()))?;
    record.in_component_without_canonical_models = ExactRational::integer(value.clone()) != smooth_value;
    Ok(value)
}

/// Result of resolving the nodes of a triple-cover branch locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeResolution {
    /// The cover over the base blown up at every node, branch classes
    /// `b*D_i - Σ E` over the new exceptional curves.
    pub resolved_spec: CoverSpec,
    pub resolved: InvariantReport,
    /// The singular cover itself: one `1/3(1,1)` point per node.
    pub unresolved: StableSurfaceRecord,
}

/// Canonical resolution of a triple cover with `t` declared nodes.
///
/// With `t = 0` the resolved and unresolved surfaces coincide and the ledger
/// is empty.
pub fn resolve_node_bookkeeping(spec: &CoverSpec) -> Result<NodeResolution, StableError> {
    if spec.degree() != 3 {
        return Err(StableError::NotTriple(spec.degree()));
    }
    let t = spec.transversal_node_count();
    let resolved_spec = if t == 0 {
        spec.clone()
    } else {
        let base = blow_up(spec.base(), t, spec.base().points_in_general_position())?;
        let exceptional = DivisorClass::outer_exceptional_sum(&base)?;
        let mut branch = Vec::with_capacity(2);
        for d in spec.branch() {
            branch.push(&pullback(&base, d)? - &exceptional);
        }
        CoverSpec::new(3, base, branch)?.with_smoothness(spec.smoothness_assumed())
    };
    let resolved = z3_invariants(&resolved_spec)?;
    let unresolved = if t == 0 {
        StableSurfaceRecord {
            k_squared: resolved.k_squared.clone(),
            chi: resolved.chi.clone(),
            ledger: SingularityLedger::default(),
            ample_canonical: false,
            smoothable: true,
            in_component_without_canonical_models: false,
        }
    } else {
        let k2 = resolved.k_squared.to_integer().expect("smooth triple covers have integral K^2");
        contract_minus3(resolved.chi.clone(), k2, u64::from(t))?
    };
    Ok(NodeResolution { resolved_spec, resolved, unresolved })
}

/// `K²` difference between the unresolved and resolved surfaces.
pub fn contraction_gain(resolution: &NodeResolution) -> ExactRational {
    resolution.unresolved.k_squared.clone() - resolution.resolved.k_squared.clone()
}
