//! Acceptance criteria 1–8, one line each. Exit status is nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use dyadic_lattice::bong::{g_membership, good_bong, BongSymbol};
use dyadic_lattice::classify::{
    binary_transform_reachable, isometric_2adic, isometric_beli, isometric_omeara,
    isotropy_search, reachable_set,
};
use dyadic_lattice::field::{hilbert_q2, Field, FieldElement};
use dyadic_lattice::invariants::{alpha_recursive, alpha_vector, bong_weight_orders};
use dyadic_lattice::lattice::{omeara_invariants, GramLattice};
use dyadic_lattice::random::{
    random_classes, random_element, random_lattice, random_pair, random_symbol,
    random_unimodular, transform,
};
use dyadic_lattice::spaces::{anisotropic_dim, represents, SpaceInvariants};
use dyadic_lattice::{is_inf, INF};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fields() -> [Field; 2] {
    [Field::q2(), Field::x2_plus_2()]
}

fn rng_for(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diag(f: &Field, v: &[i64]) -> GramLattice {
    GramLattice::diagonal_ints(f, v)
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let f = Field::q2();
    let (l, k) = (diag(&f, &[1, 1, 1, 1]), diag(&f, &[7, 7, 7, 7]));
    let err = |e: dyadic_lattice::Error| e.to_string();
    ensure(isometric_beli(&l, &k).map_err(err)?.isometric, || "beli says not isometric".into())?;
    ensure(isometric_omeara(&l, &k).map_err(err)?.isometric, || "omeara says not isometric".into())?;
    ensure(isometric_2adic(&l, &k).map_err(err)?.isometric, || "2adic says not isometric".into())?;
    let s = BongSymbol::from_ints(&f, &[1, 1, 1, 1]);
    let t = BongSymbol::from_ints(&f, &[7, 7, 7, 7]);
    ensure(!binary_transform_reachable(&s, &t).map_err(err)?, || "(7,7,7,7) reachable".into())?;
    let set = reachable_set(&s).map_err(err)?;
    let five = f.class_index(&f.elem(5)).map_err(err)?;
    ensure(set.len() == 8, || format!("reachable set has {} states", set.len()))?;
    for st in &set {
        ensure(st.iter().all(|&c| c == 0 || c == five), || format!("state {st:?} leaves {{1,5}}"))?;
        ensure(st.iter().filter(|&&c| c == five).count() % 2 == 0, || format!("state {st:?} has odd 5-count"))?;
    }
    let ms = t0.elapsed().as_millis();
    ensure(ms < 1000, || format!("took {ms} ms"))?;
    Ok(format!("3 deciders isometric, 8 reachable states, {ms} ms"))
}

fn criterion_2() -> Outcome {
    let f = Field::q2();
    let err = |e: dyadic_lattice::Error| e.to_string();
    for a in [1, 5] {
        let a = f.elem(a);
        for eta in [1i64, 3, 5, 7, 17, 21, -1, -3] {
            let got = g_membership(&f.elem(eta), &a).map_err(err)?;
            let want = eta.rem_euclid(8) == 1 || eta.rem_euclid(8) == 5;
            ensure(got == want, || format!("eta = {eta}: got {got}"))?;
        }
    }
    Ok("g(1) = g(5) = {1,5}·squares; 3, 7 excluded".into())
}

fn criterion_3() -> Outcome {
    let t0 = Instant::now();
    let per_field = 500;
    let mut summary = Vec::new();
    for (fi, f) in fields().into_iter().enumerate() {
        let results: Vec<Result<(bool, Option<String>), String>> = (0..per_field)
            .into_par_iter()
            .map(|trial| {
                let mut rng = rng_for(0xA11CE + fi as u64, trial);
                let n = rng.gen_range(1..=5);
                let (l, k) = random_pair(&f, &mut rng, n, -2, 6);
                let b = isometric_beli(&l, &k).map_err(|e| format!("trial {trial}: {e}"))?;
                let o = isometric_omeara(&l, &k).map_err(|e| format!("trial {trial}: {e}"))?;
                let mut bad = None;
                if b.isometric != o.isometric {
                    bad = Some(format!("trial {trial}: beli {} omeara {}", b.isometric, o.isometric));
                }
                if f.e() == 1 {
                    let t = isometric_2adic(&l, &k).map_err(|e| format!("trial {trial}: {e}"))?;
                    if t.isometric != b.isometric {
                        bad = Some(format!("trial {trial}: beli {} 2adic {}", b.isometric, t.isometric));
                    }
                }
                Ok((b.isometric, bad))
            })
            .collect();
        let mut iso = 0;
        for r in results {
            let (i, bad) = r?;
            if let Some(b) = bad {
                return Err(format!("e={}: {b}", f.e()));
            }
            iso += i as usize;
        }
        summary.push(format!("e={}: {per_field} pairs, {iso} isometric", f.e()));
    }
    let secs = t0.elapsed().as_secs_f64();
    ensure(secs <= 300.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{}; 0 disagreements; {secs:.1} s", summary.join(", ")))
}

fn criterion_4() -> Outcome {
    let trials = 200;
    let results: Vec<Result<(), String>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let f = &fields()[trial % 2];
            let mut rng = rng_for(0xB0B, trial);
            let n = rng.gen_range(1..=5);
            let l = random_lattice(f, &mut rng, n, -2, 6);
            let u = random_unimodular(f, &mut rng, n);
            let k = transform(&l, &u);
            let e = |x: dyadic_lattice::Error| format!("trial {trial}: {x}");
            let (sl, sk) = (good_bong(&l).map_err(e)?, good_bong(&k).map_err(e)?);
            ensure(sl.r() == sk.r(), || format!("trial {trial}: R differs"))?;
            let (al, ak) = (alpha_vector(&sl).map_err(e)?, alpha_vector(&sk).map_err(e)?);
            ensure(al == ak, || format!("trial {trial}: alpha differs"))?;
            ensure(isometric_beli(&l, &k).map_err(e)?.isometric, || format!("trial {trial}: beli"))?;
            ensure(isometric_omeara(&l, &k).map_err(e)?.isometric, || format!("trial {trial}: omeara"))?;
            if f.e() == 1 {
                ensure(isometric_2adic(&l, &k).map_err(e)?.isometric, || format!("trial {trial}: 2adic"))?;
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{trials} basis changes: R, alpha and verdicts invariant"))
}

/// Checks every listed property of α on one symbol.
fn alpha_properties(s: &BongSymbol) -> Result<(), String> {
    let e2 = 2 * s.field.e() as i64;
    let r = s.r();
    let a2 = alpha_vector(s).map_err(|e| e.to_string())?.alpha2;
    let rec = alpha_recursive(s).map_err(|e| e.to_string())?.alpha2;
    ensure(a2 == rec, || format!("recursive {rec:?} vs direct {a2:?}"))?;
    let m = a2.len();
    for i in 0..m {
        let gap = r[i + 1] - r[i];
        let half2 = gap + e2; // doubled (R_{i+1}−R_i)/2 + e
        ensure(!is_inf(a2[i]), || "infinite alpha".into())?;
        // nonnegative, zero exactly at gap −2e
        ensure(a2[i] >= 0 && ((a2[i] == 0) == (gap == -e2)), || format!("i={i}: positivity"))?;
        if gap >= e2 {
            ensure(a2[i] == half2, || format!("i={i}: large gap"))?;
        }
        if gap <= e2 {
            ensure(a2[i] >= 2 * gap, || format!("i={i}: lower bound"))?;
            let eq = a2[i] == 2 * gap;
            ensure(eq == (gap == e2 || gap % 2 != 0), || format!("i={i}: equality case"))?;
        }
        if a2[i] != half2 {
            ensure(a2[i] % 2 == 0 && (a2[i] / 2) % 2 != 0, || format!("i={i}: not an odd integer"))?;
        }
        // comparison with 2e mirrors the gap
        ensure((a2[i] - 2 * e2).signum() == (gap - e2).signum(), || format!("i={i}: 2e comparison"))?;
        // value set
        let ok = if a2[i] <= 2 * e2 { a2[i] % 2 == 0 } else { true };
        ensure(ok, || format!("i={i}: value set"))?;
        // closed forms depending on the gap only
        if gap >= e2 || gap == -e2 || gap == 2 - e2 || gap == e2 - 2 {
            ensure(a2[i] == half2, || format!("i={i}: closed form"))?;
        }
        if gap % 2 != 0 {
            ensure(a2[i] == half2.min(2 * gap), || format!("i={i}: odd gap closed form"))?;
        }
    }
    for i in 0..m.saturating_sub(1) {
        ensure(r[i] * 2 + a2[i] <= r[i + 1] * 2 + a2[i + 1], || format!("i={i}: R+α not increasing"))?;
        ensure(-2 * r[i + 1] + a2[i] >= -2 * r[i + 2] + a2[i + 1], || format!("i={i}: −R+α not decreasing"))?;
        if r[i] == r[i + 2] {
            ensure(a2[i] + a2[i + 1] <= 2 * e2, || format!("i={i}: R_(i−1) = R_(i+1) bound"))?;
        }
    }
    // duality and scaling
    let dual = s.dual().map_err(|e| e.to_string())?;
    dual.check_good().map_err(|e| format!("dual not good: {e}"))?;
    let dr: Vec<i64> = r.iter().rev().map(|x| -x).collect();
    ensure(dual.r() == dr, || "dual R".into())?;
    let da = alpha_vector(&dual).map_err(|e| e.to_string())?.alpha2;
    let rev: Vec<i64> = a2.iter().rev().copied().collect();
    ensure(da == rev, || format!("dual alpha {da:?} vs {rev:?}"))?;
    let c = &s.field.rational(3, 1) * &s.field.pi();
    let sa = alpha_vector(&s.scaled(&c)).map_err(|e| e.to_string())?.alpha2;
    ensure(sa == a2, || "scaling changed alpha".into())?;
    Ok(())
}

fn criterion_5() -> Outcome {
    let trials = 1000;
    let results: Vec<Result<(), String>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let f = &fields()[trial % 2];
            let mut rng = rng_for(0xC0FFEE, trial);
            let n = rng.gen_range(2..=8);
            let s = random_symbol(f, &mut rng, n);
            alpha_properties(&s).map_err(|e| format!("trial {trial} R={:?}: {e}", s.r()))
        })
        .collect();
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{trials} symbols, 0 violations"))
}

fn criterion_6() -> Outcome {
    let trials = 200;
    let results: Vec<Result<(), String>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let f = &fields()[trial % 2];
            let mut rng = rng_for(0xD00D, trial);
            let n = rng.gen_range(1..=6);
            let l = random_lattice(f, &mut rng, n, -2, 6);
            let e = |x: dyadic_lattice::Error| format!("trial {trial}: {x}");
            let s = good_bong(&l).map_err(e)?;
            let wo = bong_weight_orders(&s).map_err(e)?;
            let jd = omeara_invariants(&l).map_err(e)?;
            let ctx = || format!("trial {trial} R={:?}", s.r());
            ensure(wo.blocks.len() == jd.t, || format!("{}: t", ctx()))?;
            for (k, b) in wo.blocks.iter().enumerate() {
                ensure(b.end == jd.n[k] && b.r == jd.r[k] && b.u == jd.u[k], || format!("{}: block {k}", ctx()))?;
            }
            ensure(wo.w == jd.w, || format!("{}: w {:?} vs {:?}", ctx(), wo.w, jd.w))?;
            for (k, fo) in wo.f.iter().enumerate() {
                let classical = jd.f[k];
                let ok = fo.value == classical || (fo.above_2e && classical > 2 * f.e() as i64);
                ensure(ok, || format!("{}: f_{} {} vs {}", ctx(), k + 1, fo.value, classical))?;
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{trials} lattices, weights and f-orders match"))
}

/// ord 𝔡(a) − ord a for a = 2^v·u over Q_2. 𝔡(a) is the intersection of
/// the ideals (a − b²), so its order is the largest ord(a − b²) over b
/// mod 2^12; reaching the cap means a is a square.
fn brute_defect_q2(a: i64) -> i64 {
    let m = 1i64 << 12;
    let v = a.trailing_zeros() as i64;
    if v % 2 == 1 {
        return 0;
    }
    let mut best = 0;
    for b in 0..m {
        let diff = (a - b * b).rem_euclid(m);
        let o = if diff == 0 { 12 } else { diff.trailing_zeros() as i64 };
        best = best.max(o);
    }
    if best >= 12 - 1 {
        INF
    } else {
        best - v
    }
}

fn criterion_7() -> Outcome {
    let f = Field::q2();
    let err = |e: dyadic_lattice::Error| e.to_string();
    // Hilbert table against the isotropy oracle
    let reps: Vec<i64> = vec![1, 3, 5, 7, 2, 6, 10, 14];
    for &a in &reps {
        for &b in &reps {
            let (ea, eb) = (f.elem(a), f.elem(b));
            let h = f.hilbert(&ea, &eb).map_err(err)?;
            let iso = isotropy_search(&[ea.clone(), eb.clone(), f.elem(-1)]);
            ensure((h == 1) == iso, || format!("({a},{b}) = {h} but oracle {iso}"))?;
            let closed = hilbert_q2(
                &BigRational::from_integer(BigInt::from(a)),
                &BigRational::from_integer(BigInt::from(b)),
            );
            ensure(closed == h, || format!("closed form ({a},{b})"))?;
        }
    }
    // defects of all classes against the brute-force oracle
    for &a in &reps {
        let d = f.defect(&f.elem(a)).map_err(err)?;
        let want = brute_defect_q2(a);
        ensure(d == want, || format!("d({a}) = {d}, oracle {want}"))?;
    }
    // value set and domination on random pairs
    let pairs = 10_000;
    for (fi, f) in fields().into_iter().enumerate() {
        let e2 = 2 * f.e() as i64;
        let allowed: BTreeSet<i64> = (0..f.e() as i64)
            .map(|j| 2 * j + 1)
            .chain([0, e2, INF])
            .collect();
        let mut rng = rng_for(0xE1E1 + fi as u64, 0);
        for _ in 0..pairs {
            let (va, vb) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let a: FieldElement = random_element(&f, &mut rng, va);
            let b: FieldElement = random_element(&f, &mut rng, vb);
            let (da, db) = (f.defect(&a).map_err(err)?, f.defect(&b).map_err(err)?);
            let dab = f.defect(&(&a * &b)).map_err(err)?;
            for d in [da, db, dab] {
                ensure(allowed.contains(&d), || format!("e={}: d = {d} outside value set", f.e()))?;
            }
            ensure(dab >= da.min(db), || format!("e={}: domination fails", f.e()))?;
        }
    }
    Ok(format!("8x8 Hilbert table, 8 defects, {pairs} pairs per field"))
}

fn multisets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        multisets(n, k, i, cur, out);
        cur.pop();
    }
}

fn criterion_8() -> Outcome {
    let trials = 1000;
    for (fi, f) in fields().into_iter().enumerate() {
        let mut rng = rng_for(0xF00 + fi as u64, 0);
        let h = SpaceInvariants::hyperbolic(&f);
        for t in 0..trials {
            let m = rng.gen_range(0..=4);
            let u = SpaceInvariants::from_classes(&f, &random_classes(&f, &mut rng, m));
            let v = SpaceInvariants::from_classes(&f, &random_classes(&f, &mut rng, m + 1));
            let w = SpaceInvariants::from_classes(&f, &random_classes(&f, &mut rng, m));
            let ctx = |p: &str| format!("e={} trial {t}: {p}", f.e());
            // codimension one against the hyperbolic augmentation
            ensure(represents(&u, &v) == represents(&v, &u.orthogonal_sum(&h)), || ctx("(i)"))?;
            // equal dimensions and one extra line
            let a = rng.gen_range(0..f.class_count());
            let b = rng.gen_range(0..f.class_count());
            let dd = f.class_mul(u.det, w.det);
            let a2 = f.class_mul(a, dd);
            ensure(represents(&u, &w.add_line(a)) == represents(&w, &u.add_line(a2)), || ctx("(ii)"))?;
            if f.class_hilbert(f.class_mul(a, b), dd) == 1 {
                ensure(represents(&u, &w.add_line(a)) == represents(&u, &w.add_line(b)), || ctx("(iii)"))?;
            }
        }
    }
    // anisotropic dimension against the isotropy oracle, all class forms over Q_2
    let f = Field::q2();
    let reps: Vec<FieldElement> = (0..f.class_count()).map(|i| f.class_rep(i)).collect();
    let mut forms = Vec::new();
    for m in 2..=5 {
        multisets(reps.len(), m, 0, &mut Vec::new(), &mut forms);
    }
    let count = forms.len();
    let bad: Vec<String> = forms
        .par_iter()
        .filter_map(|cls| {
            let diag: Vec<FieldElement> = cls.iter().map(|&c| reps[c].clone()).collect();
            let inv = SpaceInvariants::from_classes(&f, cls);
            let aniso = anisotropic_dim(&inv) == cls.len();
            let iso = isotropy_search(&diag);
            (aniso == iso).then(|| format!("{cls:?}: table anisotropic={aniso}, oracle isotropic={iso}"))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{trials} space pairs per field; {count} Q_2 class forms"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("counterexample suite", criterion_1),
        ("g-group fixture", criterion_2),
        ("decider agreement fuzz", criterion_3),
        ("basis-change invariance", criterion_4),
        ("alpha property suite", criterion_5),
        ("bridge identities", criterion_6),
        ("field exactness", criterion_7),
        ("representation logic", criterion_8),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let t0 = Instant::now();
        match run() {
            Ok(msg) => println!("criterion {} PASS  {name}: {msg} [{:.1}s]", i + 1, t0.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
