use super::complex::{dual_name, KnotComplex};
use super::map::{GradedMap, Mode};
use crate::core_algebra::Bigrading;
use crate::error::{Error, Result};
use crate::morphisms::{commutes_up_to_homotopy, homotopic_endo, homotopy_inverse};

/// A knot complex with a diffeomorphism action `φ` (straight) and the involution `ι`
/// (skew).
///
/// A homotopy inverse of `φ` is stored alongside it so that dualizing never searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiIotaComplex {
    complex: KnotComplex,
    phi: GradedMap,
    phi_inv: GradedMap,
    iota: GradedMap,
}

impl PhiIotaComplex {
    /// Assemble a triple, solving for a homotopy inverse of `φ`.
    pub fn new(complex: KnotComplex, phi: GradedMap, iota: GradedMap) -> Result<Self> {
        check_shape(&complex, &phi, Mode::Straight, "phi")?;
        let phi_inv = homotopy_inverse(&complex, &phi).ok_or(Error::NoPhiInverse)?;
        Self::with_phi_inverse(complex, phi, phi_inv, iota)
    }

    /// Assemble a triple with a known homotopy inverse of `φ`.
    pub fn with_phi_inverse(complex: KnotComplex, phi: GradedMap, phi_inv: GradedMap, iota: GradedMap) -> Result<Self> {
        check_shape(&complex, &phi, Mode::Straight, "phi")?;
        check_shape(&complex, &phi_inv, Mode::Straight, "phi inverse")?;
        check_shape(&complex, &iota, Mode::Skew, "iota")?;
        for (name, f) in [("phi", &phi), ("phi inverse", &phi_inv), ("iota", &iota)] {
            if !complex.is_chain_map(&complex, f) {
                return Err(Error::NotChainMap(name.into()));
            }
        }
        Ok(Self {
            complex,
            phi,
            phi_inv,
            iota,
        })
    }

    /// An `ι`-complex: `φ` is the identity.
    pub fn iota_complex(complex: KnotComplex, iota: GradedMap) -> Result<Self> {
        let id = complex.identity();
        Self::with_phi_inverse(complex, id.clone(), id, iota)
    }

    /// `F[U, V]` with `φ = ι = id`.
    pub fn trivial() -> Self {
        let c = KnotComplex::from_entries("unknot", vec![("u".into(), Bigrading::ZERO)], &[])
            .expect("unknot is valid");
        let iota = c.endomorphism("iota", Mode::Skew, &[(0, 0)]).expect("unknot involution");
        Self::iota_complex(c, iota).expect("unknot triple")
    }

    pub fn complex(&self) -> &KnotComplex {
        &self.complex
    }

    pub fn name(&self) -> &str {
        self.complex.name()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.complex = self.complex.with_name(name);
        self
    }

    pub fn phi(&self) -> &GradedMap {
        &self.phi
    }

    pub fn phi_inverse(&self) -> &GradedMap {
        &self.phi_inv
    }

    pub fn iota(&self) -> &GradedMap {
        &self.iota
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// Replace `φ`, solving for its homotopy inverse.
    pub fn with_phi(&self, phi: GradedMap) -> Result<Self> {
        Self::new(self.complex.clone(), phi, self.iota.clone())
    }

    pub fn with_phi_and_inverse(&self, phi: GradedMap, phi_inv: GradedMap) -> Result<Self> {
        Self::with_phi_inverse(self.complex.clone(), phi, phi_inv, self.iota.clone())
    }

    /// Forget `φ`.
    pub fn forget_phi(&self) -> Self {
        let id = self.complex.identity();
        Self {
            complex: self.complex.clone(),
            phi: id.clone(),
            phi_inv: id,
            iota: self.iota.clone(),
        }
    }

    pub fn is_iota_complex(&self) -> bool {
        self.phi == self.complex.identity()
    }

    /// Verify every homotopy-level axiom: `ι² ≃ s`, `φ∘ι ≃ ι∘φ` and that the stored
    /// inverse is a two-sided homotopy inverse of `φ`.
    pub fn check_axioms(&self) -> Result<()> {
        let c = &self.complex;
        let id = c.identity();
        if homotopic_endo(c, &self.iota.compose(&self.iota), &c.sarkar_map()).is_err() {
            return Err(Error::InvalidComplex("iota squared is not homotopic to the Sarkar map".into()));
        }
        if commutes_up_to_homotopy(c, &self.phi, &self.iota).is_err() {
            return Err(Error::InvalidComplex("phi and iota do not homotopy-commute".into()));
        }
        if homotopic_endo(c, &self.phi.compose(&self.phi_inv), &id).is_err()
            || homotopic_endo(c, &self.phi_inv.compose(&self.phi), &id).is_err()
        {
            return Err(Error::InvalidComplex("stored phi inverse is not a homotopy inverse".into()));
        }
        Ok(())
    }

    /// Involutive tensor product: `φ1⊗φ2` and `ι = (id⊗id + Φ1⊗Ψ2)∘(ι1⊗ι2)`.
    pub fn tensor(&self, other: &PhiIotaComplex) -> PhiIotaComplex {
        let complex = self.complex.tensor(&other.complex);
        let (big_phi, _) = self.complex.phi_psi_maps();
        let (_, big_psi) = other.complex.phi_psi_maps();
        let correction = complex.identity().add(&big_phi.tensor(&big_psi));
        let iota = correction.compose(&self.iota.tensor(&other.iota));
        Self {
            phi: self.phi.tensor(&other.phi),
            phi_inv: self.phi_inv.tensor(&other.phi_inv),
            iota,
            complex,
        }
    }

    /// The dual triple: gradings negated, `ι` transposed, and `φ` replaced by the
    /// transpose of its homotopy inverse.
    pub fn dual(&self) -> PhiIotaComplex {
        Self {
            complex: self.complex.dual(),
            phi: self.phi_inv.dual(),
            phi_inv: self.phi.dual(),
            iota: self.iota.dual(),
        }
    }

    pub fn direct_sum(&self, other: &PhiIotaComplex) -> PhiIotaComplex {
        Self {
            complex: self.complex.direct_sum(&other.complex),
            phi: self.phi.direct_sum(&other.phi),
            phi_inv: self.phi_inv.direct_sum(&other.phi_inv),
            iota: self.iota.direct_sum(&other.iota),
        }
    }

    pub fn relabeled(&self, ids: Vec<String>) -> Result<PhiIotaComplex> {
        Ok(Self {
            complex: self.complex.relabeled(ids)?,
            ..self.clone()
        })
    }

    /// Reorder generators: new generator `i` is old generator `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> PhiIotaComplex {
        Self {
            complex: self.complex.permuted(perm),
            phi: self.phi.select(perm, perm),
            phi_inv: self.phi_inv.select(perm, perm),
            iota: self.iota.select(perm, perm),
        }
    }

    /// Express every structure map in a new basis; `p` has the new basis vectors as
    /// columns and `p_inv` is its inverse.
    pub fn change_basis(&self, p: &GradedMap, p_inv: &GradedMap) -> PhiIotaComplex {
        let conj = |f: &GradedMap| p_inv.compose(f).compose(p);
        Self {
            complex: self.complex.change_basis(p, p_inv),
            phi: conj(&self.phi),
            phi_inv: conj(&self.phi_inv),
            iota: conj(&self.iota),
        }
    }

    /// The dual with its name restored when dualizing twice.
    pub fn dual_name(&self) -> String {
        dual_name(self.complex.name())
    }
}

fn check_shape(c: &KnotComplex, f: &GradedMap, mode: Mode, name: &str) -> Result<()> {
    if f.source() != c.gradings() || f.target() != c.gradings() || f.shift() != Bigrading::ZERO {
        return Err(Error::InvalidComplex(format!("{name} has the wrong shape")));
    }
    if f.mode() != mode {
        return Err(Error::InvalidComplex(format!("{name} must be {}", mode.as_str())));
    }
    Ok(())
}
