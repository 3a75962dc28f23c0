//! Machine checks of the blowup shift relation
//! `β_{i,s}(S') = β_{i, s + (i+1) n_1}(S)` and of the supporting statements
//! about Arf semigroups, together with the face matching between `Δ'_s`
//! (for `S'`) and `Δ_t` (for `S`, `t = s + (i+1) n_1`).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arf::{
    blowup, check_pomoc, enumerate_arf, is_arf, quotient, same_multiplicity_blowup,
    theorem_precondition, PomocClause,
};
use crate::betti::{degree_bound, graded_betti, BettiTable};
use crate::complex::{face_vertices, subset_sums, Face, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::homology::FieldSpec;
use crate::semigroup::NumericalSemigroup;
use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub i: usize,
    pub s: i64,
    /// `β_{i,s}(S')`
    pub blowup_dim: usize,
    /// `β_{i,s+(i+1)n_1}(S)`
    pub shifted_dim: usize,
}

/// Record of the `i = 0` instance, which is not part of the check: both
/// tables have `β_0` supported at degree 0 only, so the shifted comparison
/// pairs `β_{0,0}(S') = 1` with `β_{0,n_1}(S) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexZeroNote {
    pub excluded: bool,
    pub blowup_beta_0_0: usize,
    pub shifted_beta_0_n1: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub semigroup: Vec<i64>,
    pub blowup: Vec<i64>,
    #[serde(serialize_with = "serialize_field")]
    pub field: FieldSpec,
    pub verdict: Verdict,
    /// `(i, s)` pairs compared, `s` being the degree on the blowup side.
    pub checked: Vec<(usize, i64)>,
    pub mismatches: Vec<Mismatch>,
    pub i0_note: IndexZeroNote,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn serialize_field<S: serde::Serializer>(field: &FieldSpec, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&field.to_string())
}

pub fn check_theorem(s: &NumericalSemigroup, field: FieldSpec) -> Result<TheoremReport> {
    theorem_precondition(s)?;
    let b = blowup(s);
    let table = graded_betti(s, field)?;
    let blowup_table = graded_betti(&b, field)?;
    Ok(compare_tables(s, &b, &table, &blowup_table, field))
}

/// Compares every `(i, s)`, `i >= 1`, at which either side is nonzero.
pub fn compare_tables(
    s: &NumericalSemigroup,
    b: &NumericalSemigroup,
    table: &BettiTable,
    blowup_table: &BettiTable,
    field: FieldSpec,
) -> TheoremReport {
    let n1 = s.multiplicity();
    let shift = |i: usize| (i as i64 + 1) * n1;

    let mut pairs: BTreeSet<(usize, i64)> = BTreeSet::new();
    for &(i, deg) in blowup_table.entries().keys() {
        if i >= 1 {
            pairs.insert((i, deg));
        }
    }
    for &(i, deg) in table.entries().keys() {
        if i >= 1 {
            pairs.insert((i, deg - shift(i)));
        }
    }

    let mismatches: Vec<Mismatch> = pairs
        .iter()
        .filter_map(|&(i, deg)| {
            let lhs = blowup_table.get(i, deg);
            let rhs = table.get(i, deg + shift(i));
            (lhs != rhs).then_some(Mismatch {
                i,
                s: deg,
                blowup_dim: lhs,
                shifted_dim: rhs,
            })
        })
        .collect();

    TheoremReport {
        semigroup: s.generators().to_vec(),
        blowup: b.generators().to_vec(),
        field,
        verdict: if mismatches.is_empty() { Verdict::Pass } else { Verdict::Fail },
        checked: pairs.into_iter().collect(),
        mismatches,
        i0_note: IndexZeroNote {
            excluded: true,
            blowup_beta_0_0: blowup_table.get(0, 0),
            shifted_beta_0_n1: table.get(0, n1),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Proposition {
    /// Arf semigroups have multiplicity equal to embedding dimension.
    MultiplicityEqualsEmbeddingDimension,
    /// Least elements of the nonzero residue classes mod `n_1` are generators.
    ResidueMinimaAreGenerators,
    /// The blowup equals `S(n_1)`.
    BlowupIsQuotient,
    /// The blowup is Arf.
    BlowupIsArf,
    /// Same multiplicity: `G(S') = {n_1, n_2 - n_1, ..., n_k - n_1}`.
    BlowupGenerators,
    PomocShiftOnce,
    PomocShiftTwice,
    PomocUnshifted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "witness")]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The blowup drops multiplicity, so the statement does not apply.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionResult {
    pub proposition: Proposition,
    pub outcome: Outcome,
}

impl PropositionResult {
    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }
}

pub fn check_propositions(s: &NumericalSemigroup) -> Result<Vec<PropositionResult>> {
    if !is_arf(s) {
        return Err(Error::NotArf);
    }
    let gens = s.generators();
    let n1 = s.multiplicity();
    let b = blowup(s);
    let mut results = Vec::new();
    let mut push = |proposition, outcome| results.push(PropositionResult { proposition, outcome });

    push(
        Proposition::MultiplicityEqualsEmbeddingDimension,
        if s.embedding_dimension() as i64 == n1 {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("multiplicity {n1}, embedding dimension {}", s.embedding_dimension()))
        },
    );

    let stray: Vec<i64> = s
        .min_elements_mod_multiplicity()
        .into_iter()
        .filter(|&w| w != 0 && !gens.contains(&w))
        .collect();
    push(
        Proposition::ResidueMinimaAreGenerators,
        if stray.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("residue minima {stray:?} are not generators"))
        },
    );

    let q = quotient(s, n1)?;
    let top = s.conductor() + gens[gens.len() - 1] + n1;
    let differs = (0..=top).find(|&x| q.contains(x) != b.contains(x));
    push(
        Proposition::BlowupIsQuotient,
        match (q.is_closed(), differs) {
            (true, None) => Outcome::Pass,
            (false, _) => Outcome::Fail(format!("S({n1}) is not closed under addition")),
            (true, Some(x)) => Outcome::Fail(format!("{x} separates S({n1}) from the blowup")),
        },
    );

    push(
        Proposition::BlowupIsArf,
        if is_arf(&b) {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("blowup <{b}> is not Arf"))
        },
    );

    if same_multiplicity_blowup(s) {
        let mut expected = vec![n1];
        expected.extend(gens[1..].iter().map(|&g| g - n1));
        push(
            Proposition::BlowupGenerators,
            if b.generators() == expected.as_slice() {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("blowup generators {:?}, expected {expected:?}", b.generators()))
            },
        );
        let violations = check_pomoc(s)?;
        for (prop, clause) in [
            (Proposition::PomocShiftOnce, PomocClause::ShiftOnce),
            (Proposition::PomocShiftTwice, PomocClause::ShiftTwice),
            (Proposition::PomocUnshifted, PomocClause::Unshifted),
        ] {
            let first = violations.iter().find(|v| v.clause == clause);
            push(
                prop,
                match first {
                    None => Outcome::Pass,
                    Some(v) => Outcome::Fail(format!(
                        "x = {}: in S {}, in blowup {}",
                        v.x, v.in_s, v.in_blowup
                    )),
                },
            );
        }
    } else {
        for prop in [
            Proposition::BlowupGenerators,
            Proposition::PomocShiftOnce,
            Proposition::PomocShiftTwice,
            Proposition::PomocUnshifted,
        ] {
            push(prop, Outcome::NotApplicable);
        }
    }
    Ok(results)
}

/// The four kinds of faces left over by the identity matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FaceType {
    /// `(i-1)`-face of `Δ_t` only, with `t - Σ_F n = 0`.
    One,
    /// `(i-1)`-face of `Δ_t` only containing vertex 1, with `t - Σ_F n = n_l`.
    Two,
    /// `i`-face of `Δ_t` only containing vertex 1, with `t - Σ_F n = 0`.
    Three,
    /// `i`-face of `Δ'_s` only avoiding vertex 1, with `t - Σ_F n = n_l - n_1`.
    Four,
}

/// Decides the type of an unmatched face from its shape alone.
///
/// `size` is `|F|`, `has_first` whether vertex 1 is in `F`, `in_shifted`
/// whether `F ∈ Δ_t`, and `residual = t - Σ_F n`.
fn face_type(
    gens: &[i64],
    i: usize,
    size: usize,
    has_first: bool,
    in_shifted: bool,
    residual: i64,
) -> Option<FaceType> {
    let n1 = gens[0];
    if in_shifted {
        if size == i && residual == 0 {
            Some(FaceType::One)
        } else if size == i && has_first && gens.contains(&residual) {
            Some(FaceType::Two)
        } else if size == i + 1 && has_first && residual == 0 {
            Some(FaceType::Three)
        } else {
            None
        }
    } else if size == i + 1 && !has_first && gens[1..].iter().any(|&g| g - n1 == residual) {
        Some(FaceType::Four)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnmatchedFaceReport {
    pub i: usize,
    pub s: i64,
    pub t: i64,
    pub type1: Vec<Vec<usize>>,
    pub type2: Vec<Vec<usize>>,
    pub type3: Vec<Vec<usize>>,
    pub type4: Vec<Vec<usize>>,
    /// Faces of size `i` present in both complexes.
    pub matched_cycle_faces: usize,
    /// Faces of size `i + 1` present in both complexes.
    pub matched_boundary_faces: usize,
}

impl UnmatchedFaceReport {
    pub fn counts(&self) -> [usize; 4] {
        [self.type1.len(), self.type2.len(), self.type3.len(), self.type4.len()]
    }

    pub fn is_empty(&self) -> bool {
        self.counts().iter().all(|&c| c == 0)
    }
}

/// Compares the faces of size `i` and `i + 1` of `Δ'_s` and `Δ_t` under the
/// identity on vertex sets and bins every unmatched face. Fails with
/// [`Error::ClassificationGap`] if some unmatched face fits no type.
pub fn classify_unmatched_faces(s: &NumericalSemigroup, i: usize, degree: i64) -> Result<UnmatchedFaceReport> {
    theorem_precondition(s)?;
    let k = s.embedding_dimension();
    if i == 0 {
        return Err(Error::InvalidArgument("homological index must be at least 1".into()));
    }
    if k > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            vertices: k,
            max: MAX_VERTICES,
        });
    }
    let b = blowup(s);
    let gens = s.generators();
    let bgens = b.generators();
    let n1 = gens[0];
    let t = degree + (i as i64 + 1) * n1;

    let mut report = UnmatchedFaceReport {
        i,
        s: degree,
        t,
        type1: Vec::new(),
        type2: Vec::new(),
        type3: Vec::new(),
        type4: Vec::new(),
        matched_cycle_faces: 0,
        matched_boundary_faces: 0,
    };
    let mut gaps: Vec<Face> = Vec::new();

    for mask in 0u32..(1u32 << k) {
        let size = mask.count_ones() as usize;
        if size != i && size != i + 1 {
            continue;
        }
        let (mut sum, mut bsum) = (0i64, 0i64);
        for j in 0..k {
            if mask >> j & 1 == 1 {
                sum += gens[j];
                bsum += bgens[j];
            }
        }
        let in_blowup = b.contains(degree - bsum);
        let in_shifted = s.contains(t - sum);
        match (in_blowup, in_shifted) {
            (true, true) if size == i => report.matched_cycle_faces += 1,
            (true, true) => report.matched_boundary_faces += 1,
            (false, false) => {}
            _ => match face_type(gens, i, size, mask & 1 == 1, in_shifted, t - sum) {
                Some(FaceType::One) => report.type1.push(face_vertices(mask)),
                Some(FaceType::Two) => report.type2.push(face_vertices(mask)),
                Some(FaceType::Three) => report.type3.push(face_vertices(mask)),
                Some(FaceType::Four) => report.type4.push(face_vertices(mask)),
                None => gaps.push(mask),
            },
        }
    }
    if let Some(&first) = gaps.first() {
        return Err(Error::ClassificationGap {
            i,
            s: degree,
            count: gaps.len(),
            first: face_vertices(first),
        });
    }
    Ok(report)
}

/// Unmatched-face totals over every `(i, s)` for one semigroup.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct UnmatchedSummary {
    /// Faces of each type, summed over all `(i, s)`.
    pub counts: [usize; 4],
    /// Number of `(i, s)` pairs with at least one unmatched face.
    pub pairs: usize,
}

/// Runs the face classification at every `(i, s)` with `1 <= i <= k` and
/// `t >= 0` at once.
///
/// Write `x = s - Σ_F n'` for a face `F` of size `m`. Then `F ∈ Δ'_s` iff
/// `x ∈ S'` and `F ∈ Δ_t` iff `x + δ n_1 ∈ S` with
/// `δ = i + 1 - m + [1 ∈ F]`, which is 0, 1 or 2. Both memberships are false
/// for `x < -2 n_1` and true past both conductors, so three finite scans
/// find every `x` at which some face can be unmatched. Faces are grouped by
/// `(Σ_F n, m, [1 ∈ F])`, which determines their type.
pub fn scan_unmatched_faces(s: &NumericalSemigroup) -> Result<UnmatchedSummary> {
    theorem_precondition(s)?;
    let k = s.embedding_dimension();
    if k > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            vertices: k,
            max: MAX_VERTICES,
        });
    }
    let b = blowup(s);
    let gens = s.generators();
    let n1 = gens[0];
    let top = s.conductor().max(b.conductor()) + 1;
    let exceptional: Vec<Vec<i64>> = (0..3)
        .map(|delta| {
            (-2 * n1..=top)
                .filter(|&x| b.contains(x) != s.contains(x + delta * n1))
                .collect()
        })
        .collect();

    // (sum, size, has_first) -> (number of faces, a representative)
    let mut classes: BTreeMap<(i64, usize, bool), (usize, Face)> = BTreeMap::new();
    for (mask, &sum) in subset_sums(gens).iter().enumerate() {
        let mask = mask as Face;
        let key = (sum, mask.count_ones() as usize, mask & 1 == 1);
        classes.entry(key).or_insert((0, mask)).0 += 1;
    }

    let mut summary = UnmatchedSummary::default();
    let mut pairs: BTreeSet<(usize, i64)> = BTreeSet::new();
    for (&(sum, size, has_first), &(count, representative)) in &classes {
        let bsum = sum - (size as i64 - has_first as i64) * n1;
        for i in [size.wrapping_sub(1), size] {
            if i == 0 || i > k {
                continue;
            }
            let delta = (i + 1 - size) as i64 + has_first as i64;
            for &x in &exceptional[delta as usize] {
                let degree = x + bsum;
                let t = degree + (i as i64 + 1) * n1;
                if t < 0 {
                    continue;
                }
                let in_shifted = s.contains(t - sum);
                match face_type(gens, i, size, has_first, in_shifted, t - sum) {
                    Some(ty) => {
                        summary.counts[ty as usize] += count;
                        pairs.insert((i, degree));
                    }
                    None => {
                        return Err(Error::ClassificationGap {
                            i,
                            s: degree,
                            count,
                            first: face_vertices(representative),
                        })
                    }
                }
            }
        }
    }
    summary.pairs = pairs.len();
    Ok(summary)
}

/// Range of `(i, s)` pairs at which the complexes can differ: `t >= 0` and
/// not both complexes full simplices.
pub fn degree_window(s: &NumericalSemigroup, i: usize) -> (i64, i64) {
    let n1 = s.multiplicity();
    let shift = (i as i64 + 1) * n1;
    let b = blowup(s);
    (-shift, degree_bound(&b).max(degree_bound(s) - shift))
}

/// Per-semigroup record of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepFailure {
    pub generators: Vec<i64>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropositionFailure {
    pub generators: Vec<i64>,
    pub proposition: Proposition,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub bound: i64,
    pub field: String,
    /// Arf semigroups enumerated.
    pub total: usize,
    /// Those whose blowup keeps the multiplicity.
    pub eligible: usize,
    pub passes: usize,
    pub failures: Vec<SweepFailure>,
    pub i0_excluded: bool,
    pub classification_gaps: usize,
    /// Unmatched faces of types 1 to 4 across the eligible semigroups.
    pub unmatched_faces: [usize; 4],
    pub propositions_checked: usize,
    pub proposition_failures: Vec<PropositionFailure>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.proposition_failures.is_empty() && self.classification_gaps == 0
    }
}

struct SemigroupOutcome {
    eligible: bool,
    theorem: Option<TheoremReport>,
    unmatched: Option<UnmatchedSummary>,
    propositions: Vec<PropositionResult>,
}

fn check_one(s: &NumericalSemigroup, field: FieldSpec) -> Result<SemigroupOutcome> {
    let propositions = check_propositions(s)?;
    let eligible = same_multiplicity_blowup(s);
    let (theorem, unmatched) = if eligible {
        (Some(check_theorem(s, field)?), Some(scan_unmatched_faces(s)?))
    } else {
        (None, None)
    };
    Ok(SemigroupOutcome {
        eligible,
        theorem,
        unmatched,
        propositions,
    })
}

/// Checks the shift relation and the face classification on every Arf
/// semigroup with conductor at most `bound` whose blowup keeps the
/// multiplicity, and the propositions on all of them.
///
/// Mismatches are collected. A classification gap aborts with an error.
pub fn sweep(bound: i64, field: FieldSpec, jobs: usize) -> Result<SweepReport> {
    let corpus: Vec<NumericalSemigroup> = enumerate_arf(bound).collect();
    let outcomes: Vec<Result<SemigroupOutcome>> = if jobs <= 1 {
        corpus.iter().map(|s| check_one(s, field)).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
        pool.install(|| corpus.par_iter().map(|s| check_one(s, field)).collect())
    };

    let mut report = SweepReport {
        schema_version: SCHEMA_VERSION,
        bound,
        field: field.to_string(),
        total: corpus.len(),
        eligible: 0,
        passes: 0,
        failures: Vec::new(),
        i0_excluded: true,
        classification_gaps: 0,
        unmatched_faces: [0; 4],
        propositions_checked: 0,
        proposition_failures: Vec::new(),
    };
    for (s, outcome) in corpus.iter().zip(outcomes) {
        let outcome = outcome?;
        report.propositions_checked += 1;
        for r in &outcome.propositions {
            if let Outcome::Fail(w) = &r.outcome {
                report.proposition_failures.push(PropositionFailure {
                    generators: s.generators().to_vec(),
                    proposition: r.proposition,
                    witness: w.clone(),
                });
            }
        }
        if !outcome.eligible {
            continue;
        }
        report.eligible += 1;
        let theorem = outcome.theorem.expect("eligible semigroups are checked");
        if theorem.passed() {
            report.passes += 1;
        } else {
            report.failures.push(SweepFailure {
                generators: theorem.semigroup.clone(),
                mismatches: theorem.mismatches,
            });
        }
        let unmatched = outcome.unmatched.expect("eligible semigroups are scanned");
        for (acc, c) in report.unmatched_faces.iter_mut().zip(unmatched.counts) {
            *acc += c;
        }
    }
    Ok(report)
}
