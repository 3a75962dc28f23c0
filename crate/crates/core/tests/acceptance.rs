//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use arf_betti::betti::{degree_bound, DegreeHomology};
use arf_betti::cli;
use arf_betti::homology::{boundary_matrix, composition_vanishes};
use arf_betti::{
    enumerate_arf, graded_betti, reduced_homology_dims, squarefree_divisor_complex, FieldSpec, NumericalSemigroup,
    SimplicialComplex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::Members;

/// Largest complex (total faces) handed to the dense rational oracle.
const ORACLE_FACE_LIMIT: usize = 512;
/// Embedding-dimension cap for the `∂∘∂ = 0` check on full complexes.
const BOUNDARY_CHECK_MAX_K: usize = 10;

type Outcome = Result<String, String>;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arf-betti").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn sweep_json(field: &str) -> Result<Value, String> {
    let (code, out, err) = run_cli(&["sweep", "--bound", "40", "--field", field, "--json"]);
    if code != 0 {
        return Err(format!("sweep over {field} exited {code}: {err}{out}"));
    }
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn theorem_sweep(q: &Value, gf: &Value) -> Outcome {
    for r in [q, gf] {
        let eligible = r["eligible"].as_u64().unwrap();
        if r["passes"].as_u64() != Some(eligible)
            || !r["failures"].as_array().unwrap().is_empty()
            || r["classification_gaps"].as_u64() != Some(0)
            || r["i0_excluded"] != Value::Bool(true)
        {
            return Err(format!("sweep over {} did not pass: {r}", r["field"]));
        }
    }
    let verdict = |r: &Value| {
        (
            r["total"].clone(),
            r["eligible"].clone(),
            r["passes"].clone(),
            r["failures"].clone(),
            r["unmatched_faces"].clone(),
        )
    };
    if verdict(q) != verdict(gf) {
        return Err("Q and GF(32749) verdicts differ".into());
    }
    Ok(format!(
        "{} Arf semigroups, {} eligible, all pass over Q and GF(32749); no classification gaps",
        q["total"], q["eligible"]
    ))
}

fn golden_pair() -> Outcome {
    let blowup_expected: BTreeSet<(usize, i64)> = [(0, 0), (1, 8), (1, 9), (1, 10), (2, 13), (2, 14)].into();
    let shifted_expected: BTreeSet<(usize, i64)> = [(0, 0), (1, 14), (1, 15), (1, 16), (2, 22), (2, 23)].into();
    for (gens, expected) in [(&[3, 4, 5][..], &blowup_expected), (&[3, 7, 8][..], &shifted_expected)] {
        let s = NumericalSemigroup::from_generators(gens).unwrap();
        let oracle = common::betti_table(gens, degree_bound(&s), 0);
        let computed = graded_betti(&s, FieldSpec::Rationals).unwrap();
        let keys: BTreeSet<_> = oracle.keys().copied().collect();
        if &keys != expected || oracle.values().any(|&v| v != 1) {
            return Err(format!("oracle table for {gens:?} is {oracle:?}"));
        }
        if computed.entries() != &oracle {
            return Err(format!("computed table for {gens:?} differs from the oracle"));
        }
    }
    let shifted: BTreeSet<(usize, i64)> = blowup_expected
        .iter()
        .filter(|&&(i, _)| i >= 1)
        .map(|&(i, s)| (i, s + (i as i64 + 1) * 3))
        .collect();
    let target: BTreeSet<(usize, i64)> = shifted_expected.iter().filter(|&&(i, _)| i >= 1).copied().collect();
    if shifted != target {
        return Err("shift by 6 and 9 does not map the tables onto each other".into());
    }
    Ok("<3,4,5> and <3,7,8> match the oracle and correspond under shifts 6 (i=1) and 9 (i=2)".into())
}

fn faces_as_groups(c: &SimplicialComplex) -> Vec<Vec<Vec<usize>>> {
    let mut groups: Vec<Vec<Vec<usize>>> = Vec::new();
    for f in c.face_lists() {
        if groups.len() <= f.len() {
            groups.resize(f.len() + 1, Vec::new());
        }
        groups[f.len()].push(f);
    }
    groups
}

fn homology_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for trial in 0..500 {
        let n = rng.gen_range(0..=6usize);
        let facet_count = rng.gen_range(0..=5usize);
        let facets: Vec<Vec<usize>> = (0..facet_count)
            .map(|_| (1..=n).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let groups = common::close_downward(&facets);
        let masks = facets.iter().map(|f| f.iter().fold(0u32, |acc, &v| acc | 1 << (v - 1)));
        let complex = SimplicialComplex::from_faces(n, masks).unwrap();
        for (p, field) in [(0, FieldSpec::Rationals), (2, FieldSpec::PrimeField(2))] {
            let expected = common::reduced_homology(&groups, p);
            let got = reduced_homology_dims(&complex, field);
            if got.as_slice() != expected.as_slice() {
                return Err(format!("random complex {trial} {facets:?} over {field}: {got:?} vs {expected:?}"));
            }
        }
    }

    let (mut compared, mut skipped) = (0usize, 0usize);
    for s in enumerate_arf(20) {
        let gens = s.generators().to_vec();
        let members = Members::new(&gens, s.conductor() + gens[gens.len() - 1]);
        let morse = DegreeHomology::new(&s).unwrap();
        let counts = common::subset_counts(&gens);
        for degree in 0..=degree_bound(&s) {
            if f_vector(&counts, &s, degree).iter().sum::<u64>() > ORACLE_FACE_LIMIT as u64 {
                skipped += 1;
                continue;
            }
            let complex = squarefree_divisor_complex(&s, degree).unwrap();
            let groups = common::divisor_complex(&gens, &members, degree);
            let expected = common::reduced_homology(&groups, 0);
            if faces_as_groups(&complex) != groups {
                return Err(format!("Δ_{degree} of <{s}> has the wrong faces"));
            }
            let full = reduced_homology_dims(&complex, FieldSpec::Rationals);
            let column = morse.betti_column(degree, FieldSpec::Rationals);
            // The matched complex has no cells of full cardinality, so the
            // column is one entry shorter than the oracle for full simplices.
            let width = expected.len().max(column.len());
            let at = |v: &[usize], m: usize| v.get(m).copied().unwrap_or(0);
            let column_matches = (0..width).all(|m| at(&expected, m) == at(&column, m));
            if full.as_slice() != expected.as_slice() || !column_matches {
                return Err(format!("Δ_{degree} of <{s}>: {full:?} / {column:?} vs oracle {expected:?}"));
            }
            compared += 1;
        }
    }
    Ok(format!(
        "500 random complexes over Q and GF(2); {compared} complexes Δ_s with conductor <= 20 match \
         ({skipped} with more than {ORACLE_FACE_LIMIT} faces not handed to the dense oracle)"
    ))
}

fn enumeration_oracle() -> Outcome {
    let all = common::all_semigroups(16);
    for bound in 0..=16i64 {
        let expected: BTreeSet<Vec<i64>> = all
            .iter()
            .filter_map(|table| {
                let members = Members::from_table(table.clone());
                let conductor = members.frobenius() + 1;
                (conductor <= bound && common::is_arf(&members, conductor)).then(|| members.minimal_generators())
            })
            .collect();
        let got: Vec<Vec<i64>> = enumerate_arf(bound).map(|s| s.generators().to_vec()).collect();
        let got_set: BTreeSet<Vec<i64>> = got.iter().cloned().collect();
        if got.len() != got_set.len() {
            return Err(format!("enumeration with bound {bound} repeats a semigroup"));
        }
        if got_set != expected {
            return Err(format!(
                "bound {bound}: {} enumerated vs {} by gap-set search",
                got_set.len(),
                expected.len()
            ));
        }
    }
    Ok(format!("equal sets for every bound 0..=16 ({} numerical semigroups searched)", all.len()))
}

fn propositions(q: &Value) -> Outcome {
    let failures = q["proposition_failures"].as_array().unwrap();
    if q["propositions_checked"] != q["total"] || !failures.is_empty() {
        return Err(format!("proposition failures: {failures:?}"));
    }
    Ok(format!("{} Arf semigroups with conductor <= 40, zero failures", q["total"]))
}

/// `f_m(Δ_s)` for every `m`.
fn f_vector(counts: &[Vec<u64>], s: &NumericalSemigroup, degree: i64) -> Vec<u64> {
    counts
        .iter()
        .map(|by_sum| {
            by_sum
                .iter()
                .enumerate()
                .filter(|&(sum, &c)| c > 0 && s.contains(degree - sum as i64))
                .map(|(_, &c)| c)
                .sum()
        })
        .collect()
}

/// `Σ (-1)^(m-1) f_m`, a face of size `m` having dimension `m - 1`.
fn reduced_euler(f: &[u64]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(m, &c)| if m % 2 == 1 { c as i64 } else { -(c as i64) })
        .sum()
}

fn structural_invariants() -> Outcome {
    let corpus: Vec<NumericalSemigroup> = enumerate_arf(24).collect();
    let mut boundary_pairs = 0usize;
    let mut euler_checks = 0usize;
    for s in &corpus {
        let k = s.embedding_dimension();
        let table = graded_betti(s, FieldSpec::Rationals).map_err(|e| e.to_string())?;
        for (&(i, degree), &dim) in table.entries() {
            if i == 0 && (degree != 0 || dim != 1) {
                return Err(format!("<{s}>: β_0,{degree} = {dim}"));
            }
            if i >= k.max(1) {
                return Err(format!("<{s}>: β_{i},{degree} = {dim} with k = {k}"));
            }
        }
        if table.get(0, 0) != 1 {
            return Err(format!("<{s}>: β_0,0 != 1"));
        }

        let counts = common::subset_counts(s.generators());
        for degree in 0..=degree_bound(s) {
            let homology: i64 = (0..=k)
                .map(|i| {
                    let h = table.get(i, degree) as i64;
                    // β_{i,s} sits in reduced degree i - 1
                    if i % 2 == 1 { h } else { -h }
                })
                .sum();
            let from_faces = reduced_euler(&f_vector(&counts, s, degree));
            if homology != from_faces {
                return Err(format!("<{s}>, s = {degree}: Euler characteristic {from_faces} vs homology {homology}"));
            }
            euler_checks += 1;
        }

        if k <= BOUNDARY_CHECK_MAX_K {
            for degree in s.elements_in(0, degree_bound(s)) {
                let c = squarefree_divisor_complex(s, degree).unwrap();
                let top = c.dimension().unwrap();
                for d in 1..=top {
                    if !composition_vanishes(&boundary_matrix(&c, d - 1), &boundary_matrix(&c, d)) {
                        return Err(format!("<{s}>, s = {degree}: ∂∘∂ != 0 at d = {d}"));
                    }
                    boundary_pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} Arf semigroups with conductor <= 24: β_0 and β_(i>=k) clean, {euler_checks} Euler identities, \
         {boundary_pairs} boundary compositions vanish (full complexes for k <= {BOUNDARY_CHECK_MAX_K})",
        corpus.len()
    ))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_arf-betti");
    let commands: &[&[&str]] = &[
        &["info", "3,7,8"],
        &["info", "4,6,7", "--json"],
        &["arf-check", "4,6,7"],
        &["arf-check", "3,7,8", "--json"],
        &["arf-closure", "4,6,7", "--json"],
        &["blowup", "3,7,8", "--json"],
        &["complex", "3,4,5", "8", "--json"],
        &["betti", "4,6,7,9", "--json"],
        &["betti", "5,11,12,13,14", "--field", "gf:3"],
        &["verify", "3,7,8", "--json"],
        &["verify", "2,3"],
        &["enumerate", "--bound", "12", "--json"],
        &["sweep", "--bound", "16", "--json"],
        &["sweep", "--bound", "16", "--jobs", "3", "--json"],
    ];
    let run = |args: &[&str]| {
        let o = Command::new(bin).args(args).output().expect("binary runs");
        (o.status.code(), o.stdout, o.stderr)
    };
    for args in commands {
        if run(args) != run(args) {
            return Err(format!("two runs of {args:?} differ"));
        }
    }
    let serial = run(&["sweep", "--bound", "16", "--json"]);
    let parallel = run(&["sweep", "--bound", "16", "--jobs", "3", "--json"]);
    if serial != parallel {
        return Err("sweep output depends on --jobs".into());
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len()))
}

fn report(n: usize, name: &str, started: Instant, outcome: &Outcome) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("criterion {n} PASS [{name}] {detail} ({secs:.1}s)"),
        Err(why) => println!("criterion {n} FAIL [{name}] {why} ({secs:.1}s)"),
    }
    outcome.is_ok()
}

fn main() {
    let mut all_ok = true;

    let t = Instant::now();
    let sweeps = sweep_json("q").and_then(|q| sweep_json("gf:32749").map(|gf| (q, gf)));
    let c1 = sweeps.as_ref().map_err(Clone::clone).and_then(|(q, gf)| theorem_sweep(q, gf));
    all_ok &= report(1, "theorem sweep, conductor <= 40", t, &c1);

    let t = Instant::now();
    all_ok &= report(2, "golden pair <3,7,8> / <3,4,5>", t, &golden_pair());

    let t = Instant::now();
    all_ok &= report(3, "homology oracle equivalence", t, &homology_oracle());

    let t = Instant::now();
    all_ok &= report(4, "enumeration oracle equivalence", t, &enumeration_oracle());

    let t = Instant::now();
    let c5 = sweeps.as_ref().map_err(Clone::clone).and_then(|(q, _)| propositions(q));
    all_ok &= report(5, "proposition suite, conductor <= 40", t, &c5);

    let t = Instant::now();
    all_ok &= report(6, "structural invariants, conductor <= 24", t, &structural_invariants());

    let t = Instant::now();
    all_ok &= report(7, "determinism", t, &determinism());

    if !all_ok {
        std::process::exit(1);
    }
}
