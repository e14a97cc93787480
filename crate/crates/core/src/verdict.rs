//! Strong-cork verdicts: rules that turn computed invariants plus surgery and
//! diffeomorphism parameters into a conclusion, a citation and a replayable certificate.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::a0_delta::{delta_with, DeltaResult, Window, WindowPolicy};
use crate::cfk::{serialize_complex, thin_model, PhiIotaComplex};
use crate::connected::{s_nontrivial_seeded, Method, SNontriviality, GREEDY_SEED};
use crate::error::{Error, Result};
use crate::morphisms::{homotopic_endo, local_map_exists, NoLocalMap, Obstruction};

pub const RULE_GOMPF: &str = "Theorem 1.2";
pub const RULE_DELTA: &str = "delta criterion";
pub const RULE_SPLIT: &str = "Theorem 4.1";
pub const RULE_PERIODIC: &str = "Corollary 5.3";

/// Computation knobs shared by every rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub window: WindowPolicy,
    /// Seed for the greedy connected-complex search.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            window: WindowPolicy::default(),
            seed: GREEDY_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    StrongCork,
    Inconclusive,
}

/// `2·Arf + |τ| ≡ 1 or 2 (mod 4)`, the thin-knot criterion.
pub fn cor13_arithmetic(arf: u8, tau: i32) -> bool {
    matches!((2 * arf as u32 + tau.unsigned_abs()) % 4, 1 | 2)
}

/// The criterion for `s·T(2, 2n+1)`: `n` odd and `s ≡ 2, 3 (mod 4)`.
pub fn cor51_rule(s: u32, n: u32) -> bool {
    n % 2 == 1 && matches!(s % 4, 2 | 3)
}

/// `(Arf, τ, determinant)` of `s·T(2, 2n+1)`.
pub fn torus_sum_invariants(s: u32, n: u32) -> (u8, i32, u64) {
    let arf_one = matches!(n % 4, 1 | 2);
    let arf = ((s as u64 * arf_one as u64) % 2) as u8;
    (arf, (s * n) as i32, (2 * n as u64 + 1).pow(s))
}

/// Parity of the number of boxes on the main diagonal of a thin complex:
/// `(D − 2|τ| − 1)/4 mod 2`.
pub fn thin_parity(determinant: u64, tau: i32) -> Result<bool> {
    let top = determinant as i64 - 2 * tau.unsigned_abs() as i64 - 1;
    if top < 0 || top % 4 != 0 {
        return Err(Error::InvalidArgument(format!(
            "(D - 2|tau| - 1)/4 is not a non-negative integer for D = {determinant}, tau = {tau}"
        )));
    }
    Ok((top / 4) % 2 == 1)
}

/// Where the complex of a knot comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComplexSource {
    ThinModel { tau: i32, odd_boxes: bool },
    Bundled { name: String },
    File { path: String },
    Explicit,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotDescriptor {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_invariant: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arf: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u64>,
    pub thin: bool,
    pub complex_source: ComplexSource,
    #[serde(skip)]
    complex: Option<PhiIotaComplex>,
}

impl KnotDescriptor {
    /// A Floer-thin knot given by its classical invariants.
    pub fn thin(name: impl Into<String>, tau: i32, arf: u8, determinant: u64) -> Result<Self> {
        let name = name.into();
        if arf > 1 {
            return Err(Error::InvalidArgument(format!("{name}: Arf invariant must be 0 or 1")));
        }
        if determinant.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("{name}: determinant {determinant} is not odd")));
        }
        if !matches!((determinant + 4 * arf as u64) % 8, 1 | 7) {
            return Err(Error::InvalidArgument(format!(
                "{name}: Arf {arf} is inconsistent with determinant {determinant}"
            )));
        }
        let odd_boxes = thin_parity(determinant, tau)?;
        Ok(Self {
            name,
            tau_invariant: Some(tau),
            arf: Some(arf),
            determinant: Some(determinant),
            thin: true,
            complex_source: ComplexSource::ThinModel { tau, odd_boxes },
            complex: None,
        })
    }

    /// A knot given directly by its complex.
    pub fn from_complex(name: impl Into<String>, source: ComplexSource, x: PhiIotaComplex) -> Self {
        Self {
            name: name.into(),
            tau_invariant: None,
            arf: None,
            determinant: None,
            thin: false,
            complex_source: source,
            complex: Some(x),
        }
    }

    pub fn complex(&self) -> Result<PhiIotaComplex> {
        if let Some(x) = &self.complex {
            return Ok(x.clone());
        }
        match &self.complex_source {
            ComplexSource::ThinModel { tau, odd_boxes } => Ok(thin_model(*tau, *odd_boxes)?.with_name(self.name.clone())),
            other => Err(Error::InvalidArgument(format!("{}: no complex attached for source {other:?}", self.name))),
        }
    }

    /// The arithmetic criterion, when the knot is thin with known invariants.
    pub fn arithmetic_criterion(&self) -> Option<bool> {
        match (self.thin, self.arf, self.tau_invariant) {
            (true, Some(arf), Some(tau)) => Some(cor13_arithmetic(arf, tau)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiffeoSpec {
    /// `t_λ^i t_μ^j` on the swallow-follow torus; acts on the complex as `s^i ⊗ id`.
    TorusTwist { i: i64, j: i64 },
    /// Power of a periodic involution `τ` with `τ² ≃ s`.
    PeriodicTau { i: i64 },
    Split { phi1: String, phi2: String },
    Explicit { phi: String },
}

/// Evidence behind a strong-cork conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `s ≄ id` on the connected complex: a set of equations summing to `0 = 1`.
    SNontrivial {
        knot: String,
        complex_digest: String,
        conn_shape: Option<String>,
        conn_generators: usize,
        obstruction: Obstruction,
    },
    /// A cylinder cycle `(x, y, z)` in grading `-2δ` with `x` nontorsion.
    DeltaPositive {
        complex: String,
        complex_digest: String,
        dualized: bool,
        delta: i32,
        grading: i32,
        x: Vec<usize>,
        y: Vec<usize>,
        z: Vec<usize>,
        window: Window,
    },
    /// No grading-preserving local map `source → target`, confirmed by `δ > 0` on the tensor.
    NoLocalMap {
        source: String,
        target: String,
        source_digest: String,
        target_digest: String,
        search: NoLocalMap,
        tensor_delta: i32,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SNontrivial { .. } => "s_nontrivial",
            Certificate::DeltaPositive { .. } => "delta_positive",
            Certificate::NoLocalMap { .. } => "no_local_map",
        }
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    /// `kind:` followed by the first 16 hex digits of the SHA-256 of the canonical JSON.
    pub fn reference(&self) -> String {
        let digest = Sha256::digest(self.canonical_json().as_bytes());
        format!("{}:{}", self.kind(), &hex(&digest)[..16])
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 (16 hex digits) of the canonical file text of a triple.
pub fn complex_digest(x: &PhiIotaComplex) -> String {
    hex(&Sha256::digest(serialize_complex(x).as_bytes()))[..16].to_string()
}

/// Inputs sufficient to recompute a verdict.
#[derive(Clone, Debug)]
enum Replay {
    Gompf { knot: Box<KnotDescriptor>, m: i64, i: i64, j: i64 },
    Delta { x: Box<PhiIotaComplex>, m: i64 },
    Split { x1: Box<PhiIotaComplex>, x2: Box<PhiIotaComplex>, m: i64 },
    Periodic { x: Box<PhiIotaComplex>, m: i64, i: i64 },
}

#[derive(Clone, Debug)]
struct ReplayInputs {
    rule: Replay,
    settings: Settings,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub knot: String,
    pub diffeo: DiffeoSpec,
    pub m: i64,
    pub conclusion: Conclusion,
    pub rule: &'static str,
    pub certificate_ref: Option<String>,
    /// Why the rule did or did not fire.
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip)]
    replay: ReplayInputs,
}

impl Verdict {
    fn new(
        knot: &str,
        diffeo: DiffeoSpec,
        m: i64,
        rule: &'static str,
        outcome: std::result::Result<Certificate, String>,
        reason_ok: String,
        replay: ReplayInputs,
    ) -> Self {
        let (conclusion, certificate, reason) = match outcome {
            Ok(c) => (Conclusion::StrongCork, Some(c), reason_ok),
            Err(reason) => (Conclusion::Inconclusive, None, reason),
        };
        Verdict {
            knot: knot.to_string(),
            diffeo,
            m,
            conclusion,
            rule,
            certificate_ref: certificate.as_ref().map(Certificate::reference),
            reason,
            certificate,
            replay,
        }
    }

    pub fn is_strong_cork(&self) -> bool {
        self.conclusion == Conclusion::StrongCork
    }

    /// Recompute the verdict from its inputs and compare conclusion and certificate.
    pub fn replay(&self) -> Result<()> {
        let st = &self.replay.settings;
        let again = match &self.replay.rule {
            Replay::Gompf { knot, m, i, j } => verdict_gompf_with(knot, *m, *i, *j, st)?,
            Replay::Delta { x, m } => verdict_delta_with(x, *m, st)?,
            Replay::Split { x1, x2, m } => verdict_split_with(x1, x2, *m, st)?,
            Replay::Periodic { x, m, i } => verdict_periodic_with(x, *m, *i, st)?,
        };
        if again.conclusion != self.conclusion || again.certificate_ref != self.certificate_ref {
            return Err(Error::ConsistencyViolation(format!(
                "replay of {} gave {:?} / {:?}, recorded {:?} / {:?}",
                self.knot, again.conclusion, again.certificate_ref, self.conclusion, self.certificate_ref
            )));
        }
        if let Some(c) = &self.certificate {
            if Some(c.reference()) != self.certificate_ref {
                return Err(Error::ConsistencyViolation("certificate does not match its reference".into()));
            }
        }
        Ok(())
    }
}

fn nonzero(m: i64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("surgery coefficient 1/m needs m ≠ 0".into()));
    }
    Ok(())
}

fn s_certificate(name: &str, x: &PhiIotaComplex, s: SNontriviality) -> std::result::Result<Certificate, String> {
    if s.method == Method::Greedy {
        return Err(format!(
            "connected complex found by greedy search ({})",
            s.caveat.unwrap_or("unverified")
        ));
    }
    match s.obstruction {
        Some(obstruction) if s.nontrivial => Ok(Certificate::SNontrivial {
            knot: name.to_string(),
            complex_digest: complex_digest(x),
            conn_shape: s.conn_shape,
            conn_generators: s.conn_generators,
            obstruction,
        }),
        _ => Err("s is homotopic to the identity on the connected complex".into()),
    }
}

/// Gompf's swallow-follow family `(Y_{K,m}, t_λ^i t_μ^j)`.
pub fn verdict_gompf(knot: &KnotDescriptor, m: i64, i: i64, j: i64) -> Result<Verdict> {
    verdict_gompf_with(knot, m, i, j, &Settings::default())
}

pub fn verdict_gompf_with(knot: &KnotDescriptor, m: i64, i: i64, j: i64, settings: &Settings) -> Result<Verdict> {
    nonzero(m)?;
    let replay = ReplayInputs {
        rule: Replay::Gompf {
            knot: Box::new(knot.clone()),
            m,
            i,
            j,
        },
        settings: *settings,
    };
    let outcome = if m % 2 == 0 {
        Err(format!("m = {m} is even"))
    } else if i % 2 == 0 {
        Err(format!("i = {i} is even"))
    } else {
        let x = knot.complex()?;
        s_certificate(&knot.name, &x, s_nontrivial_seeded(&x, settings.seed)?)
    };
    Ok(Verdict::new(
        &knot.name,
        DiffeoSpec::TorusTwist { i, j },
        m,
        RULE_GOMPF,
        outcome,
        format!("{} is S-nontrivial; m and i are odd", knot.name),
        replay,
    ))
}

fn delta_certificate(x: &PhiIotaComplex, dualized: bool, d: &DeltaResult) -> Certificate {
    Certificate::DeltaPositive {
        complex: x.name().to_string(),
        complex_digest: complex_digest(x),
        dualized,
        delta: d.delta,
        grading: d.witness.grading,
        x: d.witness.x.ones().collect(),
        y: d.witness.y.ones().collect(),
        z: d.witness.z.ones().collect(),
        window: d.window,
    }
}

/// `(S³_{1/m}(K), φ)` from `δ`: positive `m` uses `δ(X)`, negative `m` uses `δ(X^∨)`.
pub fn verdict_delta(x: &PhiIotaComplex, m: i64) -> Result<Verdict> {
    verdict_delta_with(x, m, &Settings::default())
}

pub fn verdict_delta_with(x: &PhiIotaComplex, m: i64, settings: &Settings) -> Result<Verdict> {
    nonzero(m)?;
    let replay = ReplayInputs {
        rule: Replay::Delta { x: Box::new(x.clone()), m },
        settings: *settings,
    };
    let mut value = None;
    let outcome = if m % 2 == 0 {
        Err(format!("m = {m} is even"))
    } else {
        let dualized = m < 0;
        let target = if dualized { x.dual() } else { x.clone() };
        let d = delta_with(&target, settings.window)?;
        value = Some(d.delta);
        if d.delta > 0 {
            Ok(delta_certificate(&target, dualized, &d))
        } else {
            Err(format!("delta({}) = {}", target.name(), d.delta))
        }
    };
    Ok(Verdict::new(
        x.name(),
        DiffeoSpec::Explicit { phi: x.name().to_string() },
        m,
        RULE_DELTA,
        outcome,
        format!("delta = {} > 0 and m is odd", value.unwrap_or_default()),
        replay,
    ))
}

/// Both routes to the existence of a local map `X2^∨ → X1`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitRoutes {
    pub local_map_exists: bool,
    /// `δ(X1 ⊗ X2)`; zero exactly when the local map exists.
    pub tensor_delta: i32,
    #[serde(skip)]
    pub search: Option<NoLocalMap>,
}

/// Decide the split hypothesis directly and through `δ` of the tensor product; a
/// disagreement is an error.
pub fn split_routes(x1: &PhiIotaComplex, x2: &PhiIotaComplex) -> Result<SplitRoutes> {
    split_routes_with(x1, x2, WindowPolicy::default())
}

pub fn split_routes_with(x1: &PhiIotaComplex, x2: &PhiIotaComplex, window: WindowPolicy) -> Result<SplitRoutes> {
    let direct = local_map_exists(&x2.dual(), x1, false)?;
    let tensor_delta = delta_with(&x1.tensor(x2), window)?.delta;
    if direct.is_ok() != (tensor_delta == 0) {
        return Err(Error::ConsistencyViolation(format!(
            "local map {}^∨ → {} {} but delta of the tensor is {tensor_delta}",
            x2.name(),
            x1.name(),
            if direct.is_ok() { "exists" } else { "does not exist" }
        )));
    }
    Ok(SplitRoutes {
        local_map_exists: direct.is_ok(),
        tensor_delta,
        search: direct.err(),
    })
}

/// Split diffeomorphism `φ1 # φ2` on `K1 # K2` (caller asserts the sum is slice).
pub fn verdict_split(x1: &PhiIotaComplex, x2: &PhiIotaComplex, m: i64) -> Result<Verdict> {
    verdict_split_with(x1, x2, m, &Settings::default())
}

pub fn verdict_split_with(x1: &PhiIotaComplex, x2: &PhiIotaComplex, m: i64, settings: &Settings) -> Result<Verdict> {
    nonzero(m)?;
    let replay = ReplayInputs {
        rule: Replay::Split {
            x1: Box::new(x1.clone()),
            x2: Box::new(x2.clone()),
            m,
        },
        settings: *settings,
    };
    let outcome = if m % 2 == 0 || m < 0 {
        Err(format!("m = {m} is not positive and odd"))
    } else {
        let routes = split_routes_with(x1, x2, settings.window)?;
        match routes.search {
            Some(search) => Ok(Certificate::NoLocalMap {
                source: x2.dual_name(),
                target: x1.name().to_string(),
                source_digest: complex_digest(&x2.dual()),
                target_digest: complex_digest(x1),
                search,
                tensor_delta: routes.tensor_delta,
            }),
            None => Err(format!("a local map {} → {} exists", x2.dual_name(), x1.name())),
        }
    };
    let knot = format!("{}#{}", x1.name(), x2.name());
    Ok(Verdict::new(
        &knot,
        DiffeoSpec::Split {
            phi1: x1.name().to_string(),
            phi2: x2.name().to_string(),
        },
        m,
        RULE_SPLIT,
        outcome,
        format!("no local map {} → {}; m is positive and odd", x2.dual_name(), x1.name()),
        replay,
    ))
}

/// Powers of a periodic involution `τ` (stored as `φ`) with `τ² ≃ s`.
pub fn verdict_periodic(x: &PhiIotaComplex, m: i64, i: i64) -> Result<Verdict> {
    verdict_periodic_with(x, m, i, &Settings::default())
}

pub fn verdict_periodic_with(x: &PhiIotaComplex, m: i64, i: i64, settings: &Settings) -> Result<Verdict> {
    nonzero(m)?;
    let c = x.complex();
    if homotopic_endo(c, &x.phi().compose(x.phi()), &c.sarkar_map()).is_err() {
        return Err(Error::InvalidArgument(format!("{}: tau squared is not homotopic to s", x.name())));
    }
    let replay = ReplayInputs {
        rule: Replay::Periodic {
            x: Box::new(x.clone()),
            m,
            i,
        },
        settings: *settings,
    };
    let outcome = if m % 2 == 0 {
        Err(format!("m = {m} is even"))
    } else if i.rem_euclid(4) == 0 {
        Err(format!("i = {i} is divisible by 4"))
    } else {
        let plain = x.forget_phi();
        s_certificate(x.name(), &plain, s_nontrivial_seeded(&plain, settings.seed)?)
    };
    Ok(Verdict::new(
        x.name(),
        DiffeoSpec::PeriodicTau { i },
        m,
        RULE_PERIODIC,
        outcome,
        format!("{} is S-nontrivial; m odd and i not divisible by 4", x.name()),
        replay,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::{figure_eight, figure_eight_with_actions, torus};

    #[test]
    fn arithmetic_examples() {
        assert!(cor13_arithmetic(1, 0));
        assert!(!cor13_arithmetic(0, 0));
        assert!(cor13_arithmetic(0, 2));
        assert!(cor51_rule(2, 1));
        assert!(!cor51_rule(1, 1));
        assert!(!cor51_rule(4, 1));
    }

    #[test]
    fn torus_sum_arithmetic_matches_criterion() {
        for s in 1..=8 {
            for n in 1..=5 {
                let (arf, tau, _) = torus_sum_invariants(s, n);
                assert_eq!(cor13_arithmetic(arf, tau), cor51_rule(s, n), "s={s} n={n}");
            }
        }
    }

    #[test]
    fn thin_descriptor_rejects_bad_invariants() {
        assert!(KnotDescriptor::thin("bad", 0, 0, 4).is_err());
        assert!(KnotDescriptor::thin("bad", 0, 0, 5).is_err());
        assert!(KnotDescriptor::thin("4_1", 0, 1, 5).is_ok());
    }

    #[test]
    fn gompf_gates() {
        let k = KnotDescriptor::thin("4_1", 0, 1, 5).unwrap();
        let v = verdict_gompf(&k, 1, 1, 0).unwrap();
        assert_eq!(v.conclusion, Conclusion::StrongCork);
        assert!(v.certificate_ref.as_deref().unwrap().starts_with("s_nontrivial:"));
        v.replay().unwrap();
        assert_eq!(verdict_gompf(&k, 2, 1, 0).unwrap().conclusion, Conclusion::Inconclusive);
        assert_eq!(verdict_gompf(&k, 1, 2, 0).unwrap().conclusion, Conclusion::Inconclusive);
        let t = KnotDescriptor::from_complex("T2_3", ComplexSource::Explicit, torus(1).unwrap());
        assert_eq!(verdict_gompf(&t, 1, 1, 0).unwrap().conclusion, Conclusion::Inconclusive);
    }

    #[test]
    fn delta_verdicts() {
        let k = figure_eight_with_actions();
        let v = verdict_delta(&k.tensor(&k), 1).unwrap();
        assert_eq!(v.conclusion, Conclusion::StrongCork);
        v.replay().unwrap();
        let plain = figure_eight();
        assert_eq!(verdict_delta(&plain.tensor(&plain), 1).unwrap().conclusion, Conclusion::Inconclusive);
        assert_eq!(verdict_delta(&PhiIotaComplex::trivial(), 1).unwrap().conclusion, Conclusion::Inconclusive);
    }

    #[test]
    fn periodic_gates() {
        let k = figure_eight_with_actions();
        assert_eq!(verdict_periodic(&k, 1, 1).unwrap().conclusion, Conclusion::StrongCork);
        assert_eq!(verdict_periodic(&k, 1, 4).unwrap().conclusion, Conclusion::Inconclusive);
        assert_eq!(verdict_periodic(&k, 2, 1).unwrap().conclusion, Conclusion::Inconclusive);
    }
}
