//! Logical actions of transversal unitaries, closure of the group they
//! generate on the code space, and approximation gaps to target gates.

use num_complex::Complex;
use num_traits::Float;

use crate::code_model::{merge_parts, CodeSpace, MergedLayout, SubsystemLayout};
use crate::operator_core::{
    canonical_phase, embed_on_subsystems, projective_distance, tol_floor, DenseOperator,
};
use crate::{real, Error, Result, Scalar};

/// Named single-qubit gates accepted in gate specifications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateName {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
}

impl GateName {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "I" => Some(Self::I),
            "X" => Some(Self::X),
            "Y" => Some(Self::Y),
            "Z" => Some(Self::Z),
            "H" => Some(Self::H),
            "S" => Some(Self::S),
            "Sdg" => Some(Self::Sdg),
            "T" => Some(Self::T),
            "Tdg" => Some(Self::Tdg),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::I => "I",
            Self::X => "X",
            Self::Y => "Y",
            Self::Z => "Z",
            Self::H => "H",
            Self::S => "S",
            Self::Sdg => "Sdg",
            Self::T => "T",
            Self::Tdg => "Tdg",
        }
    }

    pub fn matrix<T: Scalar>(self) -> DenseOperator<T> {
        let zero = T::zero();
        let one = T::one();
        let c = |re: T, im: T| Complex::new(re, im);
        let entries: [Complex<T>; 4] = match self {
            Self::I => [c(one, zero), c(zero, zero), c(zero, zero), c(one, zero)],
            Self::X => [c(zero, zero), c(one, zero), c(one, zero), c(zero, zero)],
            Self::Y => [c(zero, zero), c(zero, -one), c(zero, one), c(zero, zero)],
            Self::Z => [c(one, zero), c(zero, zero), c(zero, zero), c(-one, zero)],
            Self::H => {
                let s = Float::sqrt(real::<T>(0.5));
                [c(s, zero), c(s, zero), c(s, zero), c(-s, zero)]
            }
            Self::S => [c(one, zero), c(zero, zero), c(zero, zero), c(zero, one)],
            Self::Sdg => [c(one, zero), c(zero, zero), c(zero, zero), c(zero, -one)],
            Self::T => {
                let a = Float::sqrt(real::<T>(0.5));
                [c(one, zero), c(zero, zero), c(zero, zero), c(a, a)]
            }
            Self::Tdg => {
                let a = Float::sqrt(real::<T>(0.5));
                [c(one, zero), c(zero, zero), c(zero, zero), c(a, -a)]
            }
        };
        DenseOperator::from_rows(2, &entries).expect("gate matrix")
    }
}

/// One factor of a transversal gate: a named gate or an explicit unitary.
#[derive(Clone, Debug)]
pub enum GateFactor<T: Scalar> {
    Named(GateName),
    Matrix(DenseOperator<T>),
}

impl<T: Scalar> GateFactor<T> {
    pub fn matrix(&self) -> DenseOperator<T> {
        match self {
            GateFactor::Named(name) => name.matrix(),
            GateFactor::Matrix(m) => m.clone(),
        }
    }
}

/// A transversal gate: one unitary factor per transversal part.
#[derive(Clone, Debug)]
pub struct TransversalGateSpec<T: Scalar> {
    pub label: String,
    factors: Vec<GateFactor<T>>,
}

impl<T: Scalar> TransversalGateSpec<T> {
    pub fn new(label: impl Into<String>, factors: Vec<GateFactor<T>>) -> Self {
        Self {
            label: label.into(),
            factors,
        }
    }

    /// The same named gate on every part.
    pub fn uniform(name: GateName, n_parts: usize) -> Self {
        Self {
            label: format!("{}@all", name.label()),
            factors: vec![GateFactor::Named(name); n_parts],
        }
    }

    /// A named gate on selected parts, identity elsewhere.
    pub fn named_at(name: GateName, part_indices: &[usize], n_parts: usize) -> Result<Self> {
        let mut factors = vec![GateFactor::Named(GateName::I); n_parts];
        for &p in part_indices {
            if p >= n_parts {
                return Err(Error::argument(format!(
                    "part index {p} out of range ({n_parts} parts)"
                )));
            }
            factors[p] = GateFactor::Named(name);
        }
        let indices: Vec<String> = part_indices.iter().map(|p| p.to_string()).collect();
        Ok(Self {
            label: format!("{}@{}", name.label(), indices.join(",")),
            factors,
        })
    }

    pub fn n_parts(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[GateFactor<T>] {
        &self.factors
    }

    /// Check factor count, per-part dimensions, and unitarity of the
    /// factors.
    pub fn validate(&self, merged: &MergedLayout) -> Result<()> {
        if self.factors.len() != merged.part_dims.len() {
            return Err(Error::validation(format!(
                "gate '{}' has {} factors for {} parts",
                self.label,
                self.factors.len(),
                merged.part_dims.len()
            )));
        }
        let unit_tol = tol_floor::<T>(1e-10, 100.0);
        for (p, factor) in self.factors.iter().enumerate() {
            let m = factor.matrix();
            if m.dim() != merged.part_dims[p] {
                return Err(Error::DimensionMismatch {
                    expected: merged.part_dims[p],
                    got: m.dim(),
                });
            }
            if !m.is_unitary(unit_tol) {
                return Err(Error::validation(format!(
                    "gate '{}': factor on part {p} is not unitary",
                    self.label
                )));
            }
        }
        Ok(())
    }

    /// Realize the gate on the full system in the original subsystem order.
    ///
    /// Each factor embeds on its part's members; factors on disjoint parts
    /// commute, so the product of embeddings is the tensor over parts.
    pub fn to_global(&self, layout: &SubsystemLayout) -> Result<DenseOperator<T>> {
        let merged = merge_parts(layout)?;
        self.validate(&merged)?;
        let mut out = DenseOperator::<T>::identity(layout.total_dim());
        for (factor, members) in self.factors.iter().zip(&merged.part_members) {
            let embedded = embed_on_subsystems(&factor.matrix(), members, layout.dims())?;
            out = &out * &embedded;
        }
        Ok(out)
    }
}

/// The unitary a logical operator induces on the codeword basis, in
/// canonical phase.
#[derive(Clone, Debug)]
pub struct LogicalAction<T: Scalar> {
    pub matrix: DenseOperator<T>,
    /// Word over the generating vocabulary that produced this action.
    pub source: String,
}

impl<T: Scalar> LogicalAction<T> {
    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn code_dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Extract the logical action of a unitary: `B^dag U B` in canonical phase.
///
/// Fails with `NotLogical` (carrying the residual) when `‖(I−P)UP‖_F > tol`,
/// i.e. when `U` does not preserve the code space.
pub fn logical_action<T: Scalar>(
    cs: &CodeSpace<T>,
    u: &DenseOperator<T>,
    tol: T,
) -> Result<LogicalAction<T>> {
    if u.dim() != cs.dim() {
        return Err(Error::DimensionMismatch {
            expected: cs.dim(),
            got: u.dim(),
        });
    }
    let residual = cs.off_code_residual(u);
    if residual > tol {
        return Err(Error::NotLogical {
            residual: residual.to_f64().unwrap_or(f64::NAN),
            label: None,
        });
    }
    let compressed = DenseOperator::new(cs.logical_matrix(u))?;
    // Any unitary on the code space has an entry of magnitude at least
    // 1/sqrt(code_dim), far above this anchor threshold.
    let matrix = canonical_phase(&compressed, tol_floor::<T>(1e-8, 100.0))?;
    Ok(LogicalAction {
        matrix,
        source: "U".to_string(),
    })
}

/// Extract the logical action of a transversal gate spec, labeled by it.
pub fn logical_action_of_spec<T: Scalar>(
    cs: &CodeSpace<T>,
    layout: &SubsystemLayout,
    spec: &TransversalGateSpec<T>,
    tol: T,
) -> Result<LogicalAction<T>> {
    let global = spec.to_global(layout)?;
    match logical_action(cs, &global, tol) {
        Ok(action) => Ok(action.with_source(spec.label.clone())),
        Err(Error::NotLogical { residual, .. }) => Err(Error::NotLogical {
            residual,
            label: Some(spec.label.clone()),
        }),
        Err(other) => Err(other),
    }
}

/// The set of logical actions generated by a transversal vocabulary.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup<T: Scalar> {
    /// Projectively distinct logical actions, in discovery order; the
    /// identity is always element 0.
    pub elements: Vec<LogicalAction<T>>,
    /// True iff closure terminated before hitting `max_size`.
    pub closed: bool,
    pub dedup_tol: T,
    pub generator_count: usize,
}

impl<T: Scalar> EnumeratedGroup<T> {
    /// Index of the element within `dedup_tol` of `m`, if any.
    pub fn find(&self, m: &DenseOperator<T>) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| match projective_distance(&e.matrix, m) {
                Ok(d) => d <= self.dedup_tol,
                Err(_) => false,
            })
    }

    /// Re-verify the closure property on the final element list: every
    /// pairwise product lands within `dedup_tol` of a listed element.
    pub fn verify_closure(&self) -> Result<bool> {
        for a in &self.elements {
            for b in &self.elements {
                let prod = canonical_phase(&(&a.matrix * &b.matrix), tol_floor::<T>(1e-8, 100.0))?;
                if self.find(&prod).is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Breadth-first closure of the logical actions of `generators` under
/// composition.
///
/// Generator actions and their inverses seed the expansion in listed order,
/// so element lists are reproducible. New products are deduplicated by
/// projective distance at `dedup_tol`. Stops closed when a round adds
/// nothing; stops open (closed = false) as soon as `max_size` distinct
/// elements exist and another distinct product is found.
pub fn close_group<T: Scalar>(
    cs: &CodeSpace<T>,
    layout: &SubsystemLayout,
    generators: &[TransversalGateSpec<T>],
    max_size: usize,
    dedup_tol: T,
) -> Result<EnumeratedGroup<T>> {
    if generators.is_empty() {
        return Err(Error::argument("closure needs at least one generator"));
    }
    if max_size == 0 {
        return Err(Error::argument("max_size must be positive"));
    }
    let extraction_tol = tol_floor::<T>(crate::defaults::LOGICAL_TOL, 1000.0);
    let mut vocabulary: Vec<LogicalAction<T>> = Vec::with_capacity(2 * generators.len());
    for spec in generators {
        let action = logical_action_of_spec(cs, layout, spec, extraction_tol)?;
        let inverse = LogicalAction {
            matrix: canonical_phase(&action.matrix.adjoint(), tol_floor::<T>(1e-8, 100.0))?,
            source: format!("{}^-1", spec.label),
        };
        vocabulary.push(action);
        vocabulary.push(inverse);
    }

    let code_dim = cs.code_dim();
    let identity = LogicalAction {
        matrix: DenseOperator::<T>::identity(code_dim),
        source: "1".to_string(),
    };
    let mut elements: Vec<LogicalAction<T>> = vec![identity];
    let mut frontier: Vec<usize> = vec![0];
    let phase_tol = tol_floor::<T>(1e-8, 100.0);

    loop {
        let mut fresh: Vec<usize> = Vec::new();
        for &f_idx in &frontier {
            for g in &vocabulary {
                let product = &elements[f_idx].matrix * &g.matrix;
                let product = canonical_phase(&product, phase_tol)?;
                let duplicate =
                    elements
                        .iter()
                        .any(|e| match projective_distance(&e.matrix, &product) {
                            Ok(d) => d <= dedup_tol,
                            Err(_) => false,
                        });
                if duplicate {
                    continue;
                }
                if elements.len() >= max_size {
                    // another distinct element exists beyond the cap
                    return Ok(EnumeratedGroup {
                        elements,
                        closed: false,
                        dedup_tol,
                        generator_count: generators.len(),
                    });
                }
                let source = if elements[f_idx].source == "1" {
                    g.source.clone()
                } else {
                    format!("{}*{}", elements[f_idx].source, g.source)
                };
                elements.push(LogicalAction {
                    matrix: product,
                    source,
                });
                fresh.push(elements.len() - 1);
            }
        }
        if fresh.is_empty() {
            return Ok(EnumeratedGroup {
                elements,
                closed: true,
                dedup_tol,
                generator_count: generators.len(),
            });
        }
        frontier = fresh;
    }
}

/// Smallest projective distance from `target` to any element of the group.
pub fn approximation_gap<T: Scalar>(
    group: &EnumeratedGroup<T>,
    target: &DenseOperator<T>,
) -> Result<T> {
    if group.elements.is_empty() {
        return Err(Error::argument("approximation gap over an empty group"));
    }
    let mut best = Float::max_value();
    for e in &group.elements {
        let d = projective_distance(&e.matrix, target)?;
        if d < best {
            best = d;
        }
    }
    Ok(best)
}
