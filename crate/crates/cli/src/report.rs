//! Law suites and reporting.
//!
//! [`run_law_suite`] drives the verifiers in `prehilb_core::laws` over seeded
//! random instances. Each law runs on its own deterministic sub-stream of the
//! configured seed, so a report is a pure function of `(config, seed)` and the
//! JSON export is byte-identical across runs. Wall time is measured for the
//! console but deliberately excluded from serialization and equality.

use std::time::Instant;

use prehilb_core::laws::{
    cartesian_check, check_beck_chevalley, check_exists_adjunction, check_frobenius,
    check_orthomodular, check_perp_adjunction, exists_along, find_distributivity_counterexample,
    nonfibred_witness, recover_scalar,
};
use prehilb_core::matrix::Matrix;
use prehilb_core::sample::Sampler;
use prehilb_core::{preimage, pullback, Morphism, Subobject};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::LatticeGraph;

/// The registered law suites, by CLI name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawName {
    ExistsAdjunction,
    ExistsFunctoriality,
    BeckChevalley,
    Frobenius,
    Orthomodularity,
    Orthocomplement,
    PerpAdjunction,
    ScalarRecovery,
    ClosureReflection,
    Factorization,
    LatticeLaws,
    DaggerLemmas,
    PullbackStability,
    DistributivityCounterexample,
    NonfibredPerp,
    PerpPreimageCounterexample,
}

impl LawName {
    pub const ALL: [LawName; 16] = [
        LawName::ExistsAdjunction,
        LawName::ExistsFunctoriality,
        LawName::BeckChevalley,
        LawName::Frobenius,
        LawName::Orthomodularity,
        LawName::Orthocomplement,
        LawName::PerpAdjunction,
        LawName::ScalarRecovery,
        LawName::ClosureReflection,
        LawName::Factorization,
        LawName::LatticeLaws,
        LawName::DaggerLemmas,
        LawName::PullbackStability,
        LawName::DistributivityCounterexample,
        LawName::NonfibredPerp,
        LawName::PerpPreimageCounterexample,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LawName::ExistsAdjunction => "exists-adjunction",
            LawName::ExistsFunctoriality => "exists-functoriality",
            LawName::BeckChevalley => "beck-chevalley",
            LawName::Frobenius => "frobenius",
            LawName::Orthomodularity => "orthomodularity",
            LawName::Orthocomplement => "orthocomplement",
            LawName::PerpAdjunction => "perp-adjunction",
            LawName::ScalarRecovery => "scalar-recovery",
            LawName::ClosureReflection => "closure-reflection",
            LawName::Factorization => "factorization",
            LawName::LatticeLaws => "lattice-laws",
            LawName::DaggerLemmas => "dagger-lemmas",
            LawName::PullbackStability => "pullback-stability",
            LawName::DistributivityCounterexample => "distributivity-counterexample",
            LawName::NonfibredPerp => "nonfibred-perp",
            LawName::PerpPreimageCounterexample => "perp-preimage-counterexample",
        }
    }

    // sub-stream index for the sampler
    fn stream(&self) -> u64 {
        LawName::ALL.iter().position(|l| l == self).unwrap() as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown law `{0}`; available laws: {}", LawName::ALL.map(|l| l.as_str()).join(", "))]
pub struct UnknownLaw(pub String);

impl std::str::FromStr for LawName {
    type Err = UnknownLaw;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LawName::ALL
            .iter()
            .find(|l| l.as_str() == s)
            .copied()
            .ok_or_else(|| UnknownLaw(s.to_string()))
    }
}

impl std::fmt::Display for LawName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What to run: which laws, the dimension bound, the instance count, and the
/// seed recorded in the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub laws: Vec<LawName>,
    pub dims: usize,
    pub samples: usize,
    pub seed: u64,
}

/// The outcome of one law suite. `wall_ms` is console-only: it is skipped by
/// serde and ignored by equality so reports stay deterministic functions of
/// the config.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl PartialEq for SuiteReport {
    fn eq(&self, other: &Self) -> bool {
        self.suite == other.suite
            && self.seed == other.seed
            && self.instances == other.instances
            && self.passed == other.passed
            && self.failed == other.failed
            && self.witnesses == other.witnesses
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lattice: Option<LatticeGraph>,
}

impl Report {
    pub fn empty() -> Self {
        Report { suites: Vec::new(), lattice: None }
    }

    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("dot export requires a report with a lattice payload")]
    NoLattice,
}

/// Serializes a report. JSON output has sorted keys and no volatile fields,
/// so identical configurations yield byte-identical text; dot output renders
/// the lattice payload and errors when there is none.
pub fn export_report(report: &Report, format: ExportFormat) -> Result<String, ExportError> {
    match format {
        ExportFormat::Json => {
            let value = serde_json::to_value(report).expect("reports serialize");
            Ok(value.to_string())
        }
        ExportFormat::Dot => {
            report.lattice.as_ref().map(crate::lattice::to_dot).ok_or(ExportError::NoLattice)
        }
    }
}

pub fn parse_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

struct SuiteOutcome {
    instances: usize,
    passed: usize,
    failed: usize,
    witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 16;

fn run_instances(
    samples: usize,
    mut instance: impl FnMut(usize) -> Result<(), String>,
) -> SuiteOutcome {
    let mut outcome =
        SuiteOutcome { instances: samples, passed: 0, failed: 0, witnesses: Vec::new() };
    for index in 0..samples {
        match instance(index) {
            Ok(()) => outcome.passed += 1,
            Err(witness) => {
                outcome.failed += 1;
                if outcome.witnesses.len() < MAX_WITNESSES {
                    outcome.witnesses.push(witness);
                }
            }
        }
    }
    outcome
}

/// Runs the configured suites. Deterministic given the config.
pub fn run_law_suite(config: &SuiteConfig) -> Report {
    let suites = config
        .laws
        .iter()
        .map(|law| {
            let started = Instant::now();
            let mut sampler = Sampler::with_stream(config.seed, law.stream());
            let outcome = run_law(*law, config, &mut sampler);
            SuiteReport {
                suite: law.as_str().to_string(),
                seed: config.seed,
                instances: outcome.instances,
                passed: outcome.passed,
                failed: outcome.failed,
                witnesses: outcome.witnesses,
                wall_ms: started.elapsed().as_millis(),
            }
        })
        .collect();
    Report { suites, lattice: None }
}

fn run_law(law: LawName, config: &SuiteConfig, s: &mut Sampler) -> SuiteOutcome {
    let dims = config.dims.max(1);
    let samples = config.samples;
    match law {
        LawName::ExistsAdjunction => run_instances(samples, |_| {
            let (x, y) = (s.dim(dims), s.dim(dims));
            let f = s.morphism(x, y);
            let m = s.subobject(x);
            let n = s.subobject(y);
            if check_exists_adjunction(&f, &m, &n) {
                Ok(())
            } else {
                Err(format!("f={f} M={m} N={n}"))
            }
        }),
        LawName::ExistsFunctoriality => run_instances(samples, |_| {
            let (x, y, z) = (s.dim(dims), s.dim(dims), s.dim(dims));
            let f = s.morphism(x, y);
            let g = s.morphism(y, z);
            let m = s.subobject(x);
            let composed = exists_along(&g.compose(&f), &m);
            let stepwise = exists_along(&g, &exists_along(&f, &m));
            let identity_law = exists_along(&Morphism::identity(x), &m) == m;
            if composed == stepwise && identity_law {
                Ok(())
            } else {
                Err(format!("f={f} g={g} M={m}"))
            }
        }),
        LawName::BeckChevalley => run_instances(samples, |_| {
            let z = s.dim(dims);
            let (x, y) = (s.dim(dims), s.dim(dims));
            let f = s.morphism(x, z);
            let g = s.morphism(y, z);
            let square = pullback(&f, &g);
            for _ in 0..3 {
                let n = s.subobject(y);
                if !check_beck_chevalley(&square, &n) {
                    return Err(format!("f={f} g={g} N={n}"));
                }
            }
            Ok(())
        }),
        LawName::Frobenius => run_instances(samples, |_| {
            let (x, y) = (s.dim(dims), s.dim(dims));
            let f = s.morphism(x, y);
            let m = s.subobject(x);
            let n = s.subobject(y);
            if check_frobenius(&f, &m, &n) {
                Ok(())
            } else {
                Err(format!("f={f} M={m} N={n}"))
            }
        }),
        LawName::Orthomodularity => run_instances(samples, |_| {
            let n = s.dim_between(2, dims.max(2));
            let (inner, outer) = s.nested_pair(n);
            if check_orthomodular(&inner, &outer)
                && inner.join(&inner.perp().meet(&outer)) == outer
            {
                Ok(())
            } else {
                Err(format!("M={inner} N={outer}"))
            }
        }),
        LawName::Orthocomplement => run_instances(samples, |_| {
            let n = s.dim(dims);
            let m = s.subobject(n);
            let other = s.subobject(n);
            let laws = m.meet(&m.perp()) == Subobject::bottom(n)
                && m.join(&m.perp()) == Subobject::top(n)
                && m.perp().perp() == m
                && m.meet(&other).perp() == m.perp().join(&other.perp())
                && m.join(&other).perp() == m.perp().meet(&other.perp());
            if laws {
                Ok(())
            } else {
                Err(format!("M={m} N={other}"))
            }
        }),
        LawName::PerpAdjunction => run_instances(samples, |_| {
            let (x, y) = (s.dim(dims), s.dim(dims));
            let f = s.morphism(x, y);
            let m = s.subobject(x);
            let n = s.subobject(y);
            if check_perp_adjunction(&f, &m, &n) {
                Ok(())
            } else {
                Err(format!("f={f} M={m} N={n}"))
            }
        }),
        LawName::ScalarRecovery => run_instances(samples, |_| {
            let (x, y) = (s.dim(dims), s.dim(dims));
            let f = s.nonzero_morphism(x, y);
            let scalar = s.scalar();
            let g = f.dagger().scale(&scalar);
            if recover_scalar(&f, &g) == Some(scalar.clone()) {
                Ok(())
            } else {
                Err(format!("f={f} s={}", prehilb_core::scalar::format_scalar(&scalar)))
            }
        }),
        LawName::ClosureReflection => run_instances(samples, |_| {
            let n = s.dim(dims);
            let k = s.dim(n);
            let cols = s.full_rank_cols(n, k);
            let closed = Subobject::closure(n, &cols).expect("full-rank columns are a mono");
            let target = s.subobject(n);
            let laws = closed.contains_cols(&cols)
                && Subobject::closure(n, &closed.basis()).expect("basis is a mono") == closed
                && (closed.leq(&target) == target.contains_cols(&cols));
            if laws {
                Ok(())
            } else {
                Err(format!("m={cols:?} N={target}"))
            }
        }),
        LawName::Factorization => run_instances(samples, |_| {
            let (x, y) = (s.dim(dims), s.dim(dims));
            let f = s.morphism(x, y);
            let t = f.factorize();
            let r = t.middle.dom();
            let rebased = t.change_bases(&s.invertible(r), &s.invertible(r));
            let laws = t.reconstruct() == f
                && f.cokernel() == f.image().perp()
                && rebased.image == t.image
                && rebased.coimage == t.coimage
                && rebased.reconstruct() == f;
            if laws {
                Ok(())
            } else {
                Err(format!("f={f}"))
            }
        }),
        LawName::LatticeLaws => run_instances(samples, |_| {
            let n = s.dim(dims);
            let (a, b, c) = (s.subobject(n), s.subobject(n), s.subobject(n));
            let laws = a.meet(&b) == b.meet(&a)
                && a.join(&b) == b.join(&a)
                && a.meet(&b).meet(&c) == a.meet(&b.meet(&c))
                && a.join(&b).join(&c) == a.join(&b.join(&c))
                && a.meet(&a.join(&b)) == a
                && a.join(&a.meet(&b)) == a
                && a.meet(&Subobject::top(n)) == a
                && a.join(&Subobject::bottom(n)) == a
                && pullback(&a.basis_morphism(), &b.basis_morphism()).apex_dim()
                    == a.meet(&b).rank();
            if laws {
                Ok(())
            } else {
                Err(format!("M={a} N={b} P={c}"))
            }
        }),
        LawName::DaggerLemmas => run_instances(samples, |_| {
            let n = s.dim(dims);
            let unitary = s.isometry(n, n);
            let flags = unitary.classify();
            if !(flags.dagger_mono && flags.epi && flags.dagger_iso) {
                return Err(format!("u={unitary}"));
            }
            let big = s.dim(dims);
            let mid = s.dim(big);
            let small = s.dim(mid);
            let first = s.isometry(mid, big).dagger();
            let second = s.isometry(small, mid).dagger();
            if !second.compose(&first).classify().dagger_epi {
                return Err(format!("e1={first} e2={second}"));
            }
            let (x, y) = (s.dim(dims), s.dim(dims));
            let f = s.morphism(x, y);
            if f.classify().mono != f.kernel().is_bottom() {
                return Err(format!("f={f}"));
            }
            Ok(())
        }),
        LawName::PullbackStability => run_instances(samples, |_| {
            let y = s.dim(dims);
            let z = s.dim(y);
            let x = s.dim(dims);
            let f = s.morphism(x, z);
            let g = s.epi(y, z);
            let square = pullback(&f, &g);
            if !square.commutes() {
                return Err(format!("square for f={f} g={g} does not commute"));
            }
            if !square.leg_left.classify().epi {
                return Err(format!("f={f} g={g}: pulled-back leg is not epi"));
            }
            let w = s.dim(dims);
            let u = s.morphism(w, square.apex_dim());
            let h1 = square.leg_left.compose(&u);
            let h2 = square.leg_right.compose(&u);
            if square.mediate(&h1, &h2) != Some(u) {
                return Err(format!("f={f} g={g}: mediation failed"));
            }
            Ok(())
        }),
        LawName::DistributivityCounterexample => {
            let mut outcome =
                SuiteOutcome { instances: 1, passed: 0, failed: 0, witnesses: Vec::new() };
            if config.dims < 2 {
                match find_distributivity_counterexample(config.dims) {
                    None => {
                        outcome.passed = 1;
                        outcome.witnesses.push(format!(
                            "no counterexample: the subspace lattice in dimension {} is a chain, hence distributive",
                            config.dims
                        ));
                    }
                    Some(_) => outcome.failed = 1,
                }
            } else {
                match find_distributivity_counterexample(config.dims) {
                    Some(w) if w.lhs != w.rhs => {
                        outcome.passed = 1;
                        outcome.witnesses.push(format!(
                            "M={} N={} P={} meet(M, join(N, P))={} join(meet(M, N), meet(M, P))={}",
                            w.first, w.second, w.third, w.lhs, w.rhs
                        ));
                    }
                    _ => outcome.failed = 1,
                }
            }
            outcome
        }
        LawName::NonfibredPerp => {
            let mut outcome =
                SuiteOutcome { instances: 1, passed: 0, failed: 0, witnesses: Vec::new() };
            let w = nonfibred_witness();
            let expected_lhs = w.morphism.matrix().clone();
            let reproduced = w.flags.over_cartesian
                && !w.flags.perp_cartesian
                && w.lhs == expected_lhs
                && w.rhs == Matrix::zeros(2, 2)
                && cartesian_check(&w.morphism, &w.sub_dom, &w.sub_cod) == w.flags;
            if reproduced {
                outcome.passed = 1;
                outcome.witnesses.push(format!(
                    "f={} M={} N={} over_cartesian=true perp_cartesian=false lhs={} rhs={}",
                    w.morphism, w.sub_dom, w.sub_cod, w.lhs, w.rhs
                ));
            } else {
                outcome.failed = 1;
            }
            outcome
        }
        LawName::PerpPreimageCounterexample => {
            let mut outcome =
                SuiteOutcome { instances: 1, passed: 0, failed: 0, witnesses: Vec::new() };
            let f = Morphism::row_vector(vec![
                prehilb_core::scalar::int(1),
                prehilb_core::scalar::int(0),
            ]);
            let m = Subobject::bottom(1);
            let of_complement = preimage(&f, &m.perp());
            let complement_of = preimage(&f, &m).perp();
            let expected = Subobject::from_span(2, &[vec![
                prehilb_core::scalar::int(1),
                prehilb_core::scalar::int(0),
            ]]);
            if of_complement == Subobject::top(2)
                && complement_of == expected
                && of_complement != complement_of
            {
                outcome.passed = 1;
                outcome.witnesses.push(format!(
                    "f={f} m={m} preimage(f, perp(m))={of_complement} perp(preimage(f, m))={complement_of} unequal"
                ));
            } else {
                outcome.failed = 1;
            }
            outcome
        }
    }
}
