//! Built-in fixtures and a small agreement fuzz, run by `dyadic selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bong::{a_invariant_of_lattice, binary_isometric, g_membership, BongSymbol};
use crate::classify::{
    binary_transform_reachable, isotropy_search, reachable_set, Registry,
};
use crate::error::Result;
use crate::field::Field;
use crate::invariants::alpha_vector;
use crate::lattice::GramLattice;
use crate::random::random_pair;
use crate::{is_inf, FieldElement};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_outcome(name: &str, r: Result<std::result::Result<String, String>>) -> CheckResult {
        let (passed, detail) = match r {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SelfTestConfig {
    pub seed: u64,
    /// fuzz pairs per field
    pub trials: usize,
    pub q2: Field,
    pub e2: Field,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        SelfTestConfig {
            seed: 0,
            trials: 40,
            q2: Field::q2(),
            e2: Field::x2_plus_2(),
        }
    }
}

impl SelfTestConfig {
    /// Same configuration with entry (i, j) of the Q_2 Hilbert table flipped.
    pub fn with_hilbert_fault(mut self, i: usize, j: usize) -> SelfTestConfig {
        self.q2 = self.q2.with_hilbert_fault(i, j);
        self
    }
}

type Outcome = std::result::Result<String, String>;

fn expect(cond: bool, ok: impl Into<String>, bad: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad())
    }
}

fn counterexample(f: &Field) -> Result<Outcome> {
    let l = GramLattice::diagonal_ints(f, &[1, 1, 1, 1]);
    let k = GramLattice::diagonal_ints(f, &[7, 7, 7, 7]);
    let reg = Registry::default();
    for d in reg.select("all", f)? {
        if !d.decide(&l, &k)?.isometric {
            return Ok(Err(format!("{} says not isometric", d.name())));
        }
    }
    let s = BongSymbol::from_ints(f, &[1, 1, 1, 1]);
    let t = BongSymbol::from_ints(f, &[7, 7, 7, 7]);
    let reach = binary_transform_reachable(&s, &t)?;
    let n = reachable_set(&s)?.len();
    Ok(expect(!reach && n == 8, "isometric, unreachable, 8 states", || {
        format!("reachable = {reach}, {n} states")
    }))
}

fn g_fixture(f: &Field) -> Result<Outcome> {
    for a in [1, 5] {
        for (eta, want) in [(1, true), (5, true), (3, false), (7, false)] {
            if g_membership(&f.elem(eta), &f.elem(a))? != want {
                return Ok(Err(format!("{eta} in g({a}) should be {want}")));
            }
        }
    }
    Ok(Ok("g(1) = g(5) = {1,5}".into()))
}

fn binary_examples(f: &Field) -> Result<Outcome> {
    let s = |v: &[i64]| BongSymbol::from_ints(f, v);
    let a = binary_isometric(&s(&[1, 1]), &s(&[5, 5]))?;
    let b = binary_isometric(&s(&[1, 5]), &s(&[5, 1]))?;
    Ok(expect(a && b, "<1,1> = <5,5>, <1,5> = <5,1>", || format!("{a} {b}")))
}

fn a_fixtures(f: &Field) -> Result<Outcome> {
    let hyp = GramLattice::from_ints(f, &[vec![0, 1], vec![1, 0]])?;
    let (a, _) = a_invariant_of_lattice(&hyp)?;
    let want = f.rational(-1, 4);
    if !f.same_square_class(&a, &want)? {
        return Ok(Err("hyperbolic plane: a(L) not in the class of -1/4".into()));
    }
    let a22 = GramLattice::from_ints(f, &[vec![2, 1], vec![1, 2]])?;
    let (a, _) = a_invariant_of_lattice(&a22)?;
    let want = &(-&f.delta()) * &f.rational(1, 4);
    Ok(expect(
        f.same_square_class(&a, &want)?,
        "hyperbolic -1/4, [[2,1],[1,2]] -Δ/4",
        || "[[2,1],[1,2]]: a(L) not in the class of -Δ/4".into(),
    ))
}

fn field_facts(f: &Field) -> Result<Outcome> {
    let checks: [(&str, bool); 6] = [
        ("(-1,-1) = -1", f.hilbert(&f.elem(-1), &f.elem(-1))? == -1),
        ("(5,3) = 1", f.hilbert(&f.elem(5), &f.elem(3))? == 1),
        ("d(5) = 2", f.defect(&f.elem(5))? == 2),
        ("d(3) = 1", f.defect(&f.elem(3))? == 1),
        ("d(17) = inf", is_inf(f.defect(&f.elem(17))?)),
        ("-Δ/4 in A", f.in_a(&(&(-&f.delta()) * &f.rational(1, 4)))?),
    ];
    match checks.iter().find(|c| !c.1) {
        Some((name, _)) => Ok(Err(format!("{name} fails"))),
        None => Ok(Ok("Hilbert symbols, defects, A membership".into())),
    }
}

fn unimodular_alpha(f: &Field) -> Result<Outcome> {
    let a = alpha_vector(&BongSymbol::from_ints(f, &[1, 1, 1, 1]))?;
    Ok(expect(a.alpha2 == vec![2, 2, 2], "alpha = (1,1,1)", || {
        format!("alpha2 = {:?}", a.alpha2)
    }))
}

fn hilbert_table(f: &Field) -> Result<Outcome> {
    let n = f.class_count();
    let reps: Vec<FieldElement> = (0..n).map(|i| f.class_rep(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let h = f.class_hilbert(i, j);
            let iso = isotropy_search(&[reps[i].clone(), reps[j].clone(), f.elem(-1)]);
            if (h == 1) != iso {
                return Ok(Err(format!("entry ({i}, {j}) is {h}, isotropy says {iso}")));
            }
        }
    }
    Ok(Ok(format!("{n}x{n} table matches isotropy search")))
}

fn agreement(f: &Field, seed: u64, trials: usize) -> Result<Outcome> {
    let reg = Registry::default();
    let deciders = reg.select("all", f)?;
    let results: Vec<Result<Option<String>>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let n = rng.gen_range(1..=4);
            let (l, k) = random_pair(f, &mut rng, n, -2, 6);
            let verdicts = deciders
                .iter()
                .map(|d| Ok((d.name(), d.decide(&l, &k)?.isometric)))
                .collect::<Result<Vec<_>>>()?;
            Ok(verdicts
                .iter()
                .any(|v| v.1 != verdicts[0].1)
                .then(|| format!("trial {t}: {verdicts:?}")))
        })
        .collect();
    for r in results {
        if let Some(msg) = r? {
            return Ok(Err(msg));
        }
    }
    Ok(Ok(format!("{trials} pairs, deciders agree")))
}

/// Runs every check; the report is in a fixed order.
pub fn run(cfg: &SelfTestConfig) -> Vec<CheckResult> {
    let q2 = &cfg.q2;
    let e2 = &cfg.e2;
    vec![
        CheckResult::from_outcome("counterexample", counterexample(q2)),
        CheckResult::from_outcome("g_fixture", g_fixture(q2)),
        CheckResult::from_outcome("binary_examples", binary_examples(q2)),
        CheckResult::from_outcome("a_invariant", a_fixtures(q2)),
        CheckResult::from_outcome("field_facts", field_facts(q2)),
        CheckResult::from_outcome("unimodular_alpha", unimodular_alpha(q2)),
        CheckResult::from_outcome("hilbert_table_q2", hilbert_table(q2)),
        CheckResult::from_outcome("hilbert_table_e2", hilbert_table(e2)),
        CheckResult::from_outcome("agreement_q2", agreement(q2, cfg.seed, cfg.trials)),
        CheckResult::from_outcome("agreement_e2", agreement(e2, cfg.seed ^ 0x5eed, cfg.trials)),
    ]
}
