use std::collections::BTreeMap;

use regwt_core::arith::Rational;
use regwt_core::decomposition::cyclo_decomposition;
use regwt_core::duality::{check_dual_type_props_in, classify, DualTypeData, PhiPool};
use regwt_core::lattice::{degree_of_omega_check, omega};
use regwt_core::orbifold::{is_dual_pair, orbifold_poincare, DiagonalGroup};
use regwt_core::rings::{exceptional_length, milnor_check_presentation, verify_theorem_i, RingPresentation};
use regwt_core::{signature, Error, WeightSystem};
use serde::{Deserialize, Serialize};

/// Orbifold series are skipped above this Coxeter number unless requested.
pub const ORBIFOLD_AUTO_LIMIT: u64 = 30;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Toggle {
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckSet {
    pub theorem: bool,
    pub lemma: bool,
    pub saito: bool,
    pub orbifold: bool,
    pub milnor: bool,
    pub exceptional: bool,
}

impl CheckSet {
    pub const ALL: Self = Self {
        theorem: true,
        lemma: true,
        saito: true,
        orbifold: true,
        milnor: true,
        exceptional: true,
    };
    pub const NONE: Self = Self {
        theorem: false,
        lemma: false,
        saito: false,
        orbifold: false,
        milnor: false,
        exceptional: false,
    };

    pub fn is_empty(&self) -> bool {
        *self == Self::NONE
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Top degree for the presentation check; `2h` when unset.
    pub max_degree: Option<usize>,
    pub orbifold: Toggle,
    pub checks: CheckSet,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_degree: None,
            orbifold: Toggle::Auto,
            checks: CheckSet::ALL,
        }
    }
}

impl Options {
    pub fn orbifold_enabled(&self, h: u64) -> bool {
        match self.orbifold {
            Toggle::On => true,
            Toggle::Off => false,
            Toggle::Auto => h <= ORBIFOLD_AUTO_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRef {
    pub weights: [u64; 3],
    pub h: u64,
}

impl From<&WeightSystem> for WeightRef {
    fn from(w: &WeightSystem) -> Self {
        Self {
            weights: w.weights(),
            h: w.h(),
        }
    }
}

impl std::fmt::Display for WeightRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "({a},{b},{c};{})", self.h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u64,
    pub alphas: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(rename = "type")]
    pub tag: String,
    pub params: Vec<u64>,
    pub family_weights: WeightRef,
    pub dual_weights: WeightRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    /// Coefficients of `χ_W` from `T^0`.
    pub chi: Vec<u64>,
    pub mu: u64,
    pub epsilon: i64,
    pub genus: u64,
    pub exponents: Vec<i64>,
    pub signature: Signature,
    /// Divisor `d` of `h` to the exponent `e(d)` of `(λ^d - 1)`.
    #[serde(with = "int_keys")]
    pub cyclotomic: BTreeMap<u64, i64>,
    pub classifying_poset: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl CheckSummary {
    fn from_witnesses(witnesses: Vec<String>) -> Self {
        Self {
            passed: witnesses.is_empty(),
            witnesses,
        }
    }

    fn failed(msg: impl Into<String>) -> Self {
        Self {
            passed: false,
            witnesses: vec![msg.into()],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verifications {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem_i: Option<CheckSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma_omega: Option<CheckSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saito_duality: Option<CheckSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbifold_duality: Option<CheckSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub milnor: Option<CheckSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_length: Option<CheckSummary>,
}

impl Verifications {
    pub fn entries(&self) -> [(&'static str, Option<&CheckSummary>); 6] {
        [
            ("lemma_omega", self.lemma_omega.as_ref()),
            ("theorem_i", self.theorem_i.as_ref()),
            ("saito_duality", self.saito_duality.as_ref()),
            ("orbifold_duality", self.orbifold_duality.as_ref()),
            ("milnor", self.milnor.as_ref()),
            ("exceptional_length", self.exceptional_length.as_ref()),
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.entries().iter().all(|(_, c)| c.is_none_or(|c| c.passed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub weights: [u64; 3],
    pub h: u64,
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Invariants>,
    #[serde(default)]
    pub classification: Vec<Classification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<WeightRef>,
    /// `χ(W, G⁰_W)` as `"u,v"` (exponents of `y`, `ȳ` in units of `1/2h`) to `"p/q"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbifold_principal: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub verifications: Verifications,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub key: String,
    pub dual_key: Option<String>,
    #[serde(flatten)]
    pub record: AnalysisRecord,
}

impl CatalogEntry {
    pub fn new(record: AnalysisRecord) -> Self {
        let key = key_of(record.weights, record.h);
        let dual_key = record.dual.as_ref().map(|d| key_of(d.weights, d.h));
        Self { key, dual_key, record }
    }
}

/// Integer map keys, read back from JSON string keys.
mod int_keys {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, i64>, s: S) -> Result<S::Ok, S::Error> {
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, i64>, D::Error> {
        BTreeMap::<String, i64>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}

pub fn key_of(mut weights: [u64; 3], h: u64) -> String {
    weights.sort_unstable();
    let [a, b, c] = weights;
    format!("{a},{b},{c};{h}")
}

pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn invariants(w: &WeightSystem) -> Result<Option<Invariants>, Error> {
    let Some(data) = w.exponent_data()? else {
        return Ok(None);
    };
    let sig = signature(w)?;
    let decomposition = cyclo_decomposition(w)?;
    let chi = data
        .chi
        .coeffs()
        .iter()
        .map(|c| u64::try_from(c).map_err(|_| Error::Structural(format!("χ coefficient {c} out of range"))))
        .collect::<Result<_, _>>()?;
    Ok(Some(Invariants {
        chi,
        mu: data.mu,
        epsilon: data.epsilon,
        genus: sig.genus,
        exponents: data.exponents,
        signature: Signature {
            genus: sig.genus,
            alphas: sig.alphas,
        },
        cyclotomic: decomposition.entries().collect(),
        classifying_poset: decomposition.classifying_poset(),
    }))
}

fn lemma_summary(t: &DualTypeData) -> CheckSummary {
    match omega(&t.family_weights, t) {
        Ok(p) if degree_of_omega_check(&t.family_weights, &p) => CheckSummary::from_witnesses(Vec::new()),
        Ok(_) => CheckSummary::failed("deg ω_W · a1 a2 a3 ≠ h · α"),
        Err(e) => CheckSummary::failed(e.to_string()),
    }
}

fn theorem_summary(t: &DualTypeData, n: usize) -> CheckSummary {
    match verify_theorem_i(&t.family_weights, t, n) {
        Ok(r) => CheckSummary {
            passed: r.passed(),
            witnesses: r.witnesses,
        },
        Err(e) => CheckSummary::failed(e.to_string()),
    }
}

fn milnor_summary(t: &DualTypeData) -> CheckSummary {
    let run = || -> Result<CheckSummary, Error> {
        let p = omega(&t.family_weights, t)?;
        let pres = RingPresentation::new(t, &p)?;
        let r = milnor_check_presentation(&pres, &t.family_weights)?;
        Ok(if r.passed {
            CheckSummary::from_witnesses(Vec::new())
        } else {
            CheckSummary::failed(format!(
                "Milnor dimensions {:?} vs χ_W {:?} (total {})",
                r.dims, r.expected, r.total
            ))
        })
    };
    run().unwrap_or_else(|e| CheckSummary::failed(e.to_string()))
}

fn exceptional_summary(w: &WeightSystem) -> Option<CheckSummary> {
    if w.epsilon() == 0 {
        return None;
    }
    Some(match exceptional_length(w) {
        Ok(r) if r.matches => CheckSummary::from_witnesses(Vec::new()),
        Ok(r) => CheckSummary::failed(format!("length {} vs μ_W* = {}", r.length, r.mu_dual)),
        Err(e) => CheckSummary::failed(e.to_string()),
    })
}

fn orbifold_terms(w: &WeightSystem) -> Result<Option<BTreeMap<String, String>>, Error> {
    let s = orbifold_poincare(w, &DiagonalGroup::principal(w))?;
    Ok(s.laurent_terms().map(|terms| {
        terms
            .iter()
            .map(|((u, v), c)| (format!("{u},{v}"), rational_string(c)))
            .collect()
    }))
}

/// The full pipeline for one weight system. `pool` must be the regular systems of
/// Coxeter number `h`; it is built on demand when absent.
pub fn analyze(w: &WeightSystem, opts: &Options, pool: Option<&PhiPool>) -> Result<AnalysisRecord, Error> {
    let mut record = AnalysisRecord {
        weights: w.weights(),
        h: w.h(),
        regular: false,
        invariants: invariants(w)?,
        classification: Vec::new(),
        dual: None,
        orbifold_principal: None,
        verifications: Verifications::default(),
    };
    if record.invariants.is_none() {
        return Ok(record);
    }
    record.regular = true;
    let matches = classify(w)?;
    record.classification = matches
        .iter()
        .map(|t| Classification {
            tag: t.tag().as_str().to_string(),
            params: t.params(),
            family_weights: (&t.family_weights).into(),
            dual_weights: (&t.dual_weights).into(),
        })
        .collect();
    let orbifold_on = opts.orbifold_enabled(w.h());
    if orbifold_on {
        record.orbifold_principal = orbifold_terms(w)?;
    }
    let Some(t) = matches.first() else {
        return Ok(record);
    };
    let dual = t.dual_weights.canonical();
    record.dual = Some((&dual).into());

    let checks = &opts.checks;
    let v = &mut record.verifications;
    if checks.lemma {
        v.lemma_omega = Some(lemma_summary(t));
    }
    if checks.theorem {
        let n = opts.max_degree.unwrap_or(2 * w.h() as usize);
        v.theorem_i = Some(theorem_summary(t, n));
    }
    if checks.saito {
        let owned;
        let pool = match pool {
            Some(p) => p,
            None => {
                owned = PhiPool::new(w.h())?;
                &owned
            }
        };
        v.saito_duality = Some(match check_dual_type_props_in(w, pool) {
            Ok(r) => CheckSummary::from_witnesses(r.failures().into_iter().map(String::from).collect()),
            Err(e) => CheckSummary::failed(e.to_string()),
        });
    }
    if checks.orbifold && orbifold_on {
        v.orbifold_duality = Some(match is_dual_pair(w, &dual) {
            Ok(true) => CheckSummary::from_witnesses(Vec::new()),
            Ok(false) => CheckSummary::failed(format!(
                "χ(W*, {{1}}) ≠ -ȳ^ĉ χ(W, G⁰)(y, ȳ^-1) for W* = {}",
                WeightRef::from(&dual)
            )),
            Err(e) => CheckSummary::failed(e.to_string()),
        });
    }
    if checks.milnor {
        v.milnor = Some(milnor_summary(t));
    }
    if checks.exceptional {
        v.exceptional_length = exceptional_summary(w);
    }
    Ok(record)
}
