use std::collections::HashSet;

use serde::Serialize;

use super::map::{GradedMap, Mode};
use crate::a0_delta::UComplex;
use crate::core_algebra::{Bigrading, F2Matrix, Monomial, Poly, Variable};
use crate::error::{Error, Result};

pub const DIFFERENTIAL_SHIFT: Bigrading = Bigrading::diagonal(-1);

/// A finitely generated free bigraded chain complex over F2[U, V].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotComplex {
    name: String,
    ids: Vec<String>,
    differential: GradedMap,
}

/// Outcome of [`KnotComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub generators: usize,
    pub arrows: usize,
    pub s3_type: Option<bool>,
}

impl KnotComplex {
    /// Build from generators and differential entries `(source, target, monomial)`.
    ///
    /// Repeated entries cancel in pairs.
    pub fn from_entries(
        name: impl Into<String>,
        generators: Vec<(String, Bigrading)>,
        entries: &[(usize, usize, Monomial)],
    ) -> Result<Self> {
        let (ids, gradings): (Vec<_>, Vec<_>) = generators.into_iter().unzip();
        check_ids(&ids)?;
        let n = ids.len();
        let mut bits = F2Matrix::zeros(n, n);
        for &(g, h, m) in entries {
            if gradings[h] + m.degree() != gradings[g] + DIFFERENTIAL_SHIFT {
                return Err(Error::BidegreeViolated {
                    source_id: ids[g].clone(),
                    target_id: ids[h].clone(),
                });
            }
            bits.toggle(h, g);
        }
        Self::from_bits(name, ids, gradings, bits)
    }

    /// Build from a polynomial matrix given as `(source, target, entry)`.
    pub fn from_poly_entries(
        name: impl Into<String>,
        generators: Vec<(String, Bigrading)>,
        entries: &[(usize, usize, Poly)],
    ) -> Result<Self> {
        for (g, h, p) in entries {
            if p.len() > 1 {
                return Err(Error::BidegreeViolated {
                    source_id: generators[*g].0.clone(),
                    target_id: generators[*h].0.clone(),
                });
            }
        }
        let flat: Vec<_> = entries
            .iter()
            .flat_map(|(g, h, p)| p.terms().map(move |m| (*g, *h, m)))
            .collect();
        Self::from_entries(name, generators, &flat)
    }

    pub fn from_bits(
        name: impl Into<String>,
        ids: Vec<String>,
        gradings: Vec<Bigrading>,
        bits: F2Matrix,
    ) -> Result<Self> {
        check_ids(&ids)?;
        let differential = GradedMap::new(
            gradings.clone(),
            gradings,
            Mode::Straight,
            DIFFERENTIAL_SHIFT,
            bits,
        )
        .map_err(|(h, g)| Error::BidegreeViolated {
            source_id: ids[g].clone(),
            target_id: ids[h].clone(),
        })?;
        let c = Self {
            name: name.into(),
            ids,
            differential,
        };
        c.check_square()?;
        Ok(c)
    }

    pub(crate) fn from_differential(name: impl Into<String>, ids: Vec<String>, differential: GradedMap) -> Self {
        Self {
            name: name.into(),
            ids,
            differential,
        }
    }

    fn check_square(&self) -> Result<()> {
        let sq = self.differential.bits().mul(self.differential.bits());
        if let Some((_, g)) = sq.ones().min_by_key(|&(h, g)| (g, h)) {
            return Err(Error::DifferentialSquare(self.ids[g].clone()));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn gradings(&self) -> &[Bigrading] {
        self.differential.source()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    pub fn identity(&self) -> GradedMap {
        GradedMap::identity(self.gradings())
    }

    /// A zero map of the given mode and shift from this complex to `target`.
    pub fn zero_map(&self, target: &KnotComplex, mode: Mode, shift: Bigrading) -> GradedMap {
        GradedMap::zero(self.gradings().to_vec(), target.gradings().to_vec(), mode, shift)
    }

    /// A self-map built from `(source, target)` bit positions; errors name the bad entry.
    pub fn endomorphism(&self, name: &str, mode: Mode, ones: &[(usize, usize)]) -> Result<GradedMap> {
        let n = self.len();
        let bits = F2Matrix::from_entries(n, n, &ones.iter().map(|&(g, h)| (h, g)).collect::<Vec<_>>());
        GradedMap::new(
            self.gradings().to_vec(),
            self.gradings().to_vec(),
            mode,
            Bigrading::ZERO,
            bits,
        )
        .map_err(|(h, g)| Error::MapGrading {
            map: name.to_string(),
            source_id: self.ids[g].clone(),
            target_id: self.ids[h].clone(),
        })
    }

    /// Is `f` a chain map from `self` to `target`?
    pub fn is_chain_map(&self, target: &KnotComplex, f: &GradedMap) -> bool {
        f.compose(&self.differential) == target.differential.compose(f)
    }

    /// Does every arrow carry a nonunit monomial?
    pub fn is_reduced(&self) -> bool {
        self.differential.entries().iter().all(|(_, _, m)| !m.is_unit())
    }

    pub fn arrow_count(&self) -> usize {
        self.differential.bits().count_ones()
    }

    /// The partial derivative of the differential with respect to `var`.
    pub fn derivative_map(&self, var: Variable) -> GradedMap {
        let shift = match var {
            Variable::U => Bigrading::new(2, 0),
            Variable::V => Bigrading::new(0, 2),
        };
        let n = self.len();
        let mut bits = F2Matrix::zeros(n, n);
        for (g, h, m) in self.differential.entries() {
            if m.derivative(var).is_some() {
                bits.set(h, g, true);
            }
        }
        GradedMap::new_unchecked(
            self.gradings().to_vec(),
            self.gradings().to_vec(),
            Mode::Straight,
            DIFFERENTIAL_SHIFT + shift,
            bits,
        )
    }

    /// `(Φ, Ψ)`: the formal derivatives of the differential in `U` and `V`.
    pub fn phi_psi_maps(&self) -> (GradedMap, GradedMap) {
        (self.derivative_map(Variable::U), self.derivative_map(Variable::V))
    }

    /// The Sarkar map `id + Φ∘Ψ`.
    pub fn sarkar_map(&self) -> GradedMap {
        let (phi, psi) = self.phi_psi_maps();
        self.identity().add(&phi.compose(&psi))
    }

    /// Check the structural invariants, and S3 type when requested.
    pub fn validate(&self, require_s3_type: bool) -> Result<ValidationReport> {
        if self.is_empty() {
            return Err(Error::NoGenerators);
        }
        check_ids(&self.ids)?;
        for (g, h, _) in self.differential.entries() {
            if self.differential.allowed(h, g).is_none() {
                return Err(Error::BidegreeViolated {
                    source_id: self.ids[g].clone(),
                    target_id: self.ids[h].clone(),
                });
            }
        }
        self.check_square()?;
        let s3_type = if require_s3_type {
            self.check_s3_type()?;
            Some(true)
        } else {
            None
        };
        Ok(ValidationReport {
            generators: self.len(),
            arrows: self.arrow_count(),
            s3_type,
        })
    }

    /// Verify that setting either variable to 1 leaves homology a single free tower
    /// generated in degree zero.
    pub fn check_s3_type(&self) -> Result<()> {
        if self.gradings().iter().any(|g| g.alexander().is_none()) {
            return Err(Error::NotS3Type("half-integral Alexander grading".into()));
        }
        for var in [Variable::U, Variable::V] {
            let label = match var {
                Variable::U => "U = 1",
                Variable::V => "V = 1",
            };
            let h = UComplex::specialize(self, var).homology()?;
            if h.tower_count() != 1 {
                return Err(Error::NotS3Type(format!(
                    "homology at {label} has {} free towers",
                    h.tower_count()
                )));
            }
            if !h.torsion.is_empty() {
                return Err(Error::NotS3Type(format!("homology at {label} has torsion")));
            }
            let top = h.towers[0].grading;
            if top != 0 {
                return Err(Error::NotS3Type(format!(
                    "tower at {label} is generated in degree {top}"
                )));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &KnotComplex) -> KnotComplex {
        let ids = self.ids.iter().chain(other.ids.iter()).cloned().collect();
        Self::from_differential(
            format!("{}+{}", self.name, other.name),
            ids,
            self.differential.direct_sum(&other.differential),
        )
    }

    /// The same complex with every grading moved by `shift`.
    pub fn shifted(&self, shift: Bigrading) -> KnotComplex {
        let gr: Vec<_> = self.gradings().iter().map(|&g| g + shift).collect();
        Self::from_differential(
            self.name.clone(),
            self.ids.clone(),
            self.differential.regraded(gr.clone(), gr, DIFFERENTIAL_SHIFT),
        )
    }

    pub fn relabeled(&self, ids: Vec<String>) -> Result<KnotComplex> {
        assert_eq!(ids.len(), self.len());
        check_ids(&ids)?;
        Ok(Self::from_differential(self.name.clone(), ids, self.differential.clone()))
    }

    /// Reorder generators: new generator `i` is old generator `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> KnotComplex {
        let ids = perm.iter().map(|&i| self.ids[i].clone()).collect();
        Self::from_differential(self.name.clone(), ids, self.differential.select(perm, perm))
    }

    /// Conjugate the differential by a basis change `p` (columns: new basis in old
    /// coordinates), returning the complex in the new basis.
    pub fn change_basis(&self, p: &GradedMap, p_inv: &GradedMap) -> KnotComplex {
        Self::from_differential(
            self.name.clone(),
            self.ids.clone(),
            p_inv.compose(&self.differential).compose(p),
        )
    }

    /// Tensor product of the underlying complexes.
    pub fn tensor(&self, other: &KnotComplex) -> KnotComplex {
        let ids = self
            .ids
            .iter()
            .flat_map(|a| other.ids.iter().map(move |b| format!("{a}|{b}")))
            .collect();
        let d = self
            .differential
            .tensor(&other.identity())
            .add(&self.identity().tensor(&other.differential));
        Self::from_differential(format!("{}#{}", self.name, other.name), ids, d)
    }

    pub fn dual(&self) -> KnotComplex {
        Self::from_differential(dual_name(&self.name), self.ids.clone(), self.differential.dual())
    }
}

pub(crate) fn dual_name(name: &str) -> String {
    match name.strip_prefix('-') {
        Some(rest) => rest.to_string(),
        None => format!("-{name}"),
    }
}

fn check_ids(ids: &[String]) -> Result<()> {
    if ids.is_empty() {
        return Err(Error::NoGenerators);
    }
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::DuplicateGenerator(id.clone()));
        }
    }
    Ok(())
}
