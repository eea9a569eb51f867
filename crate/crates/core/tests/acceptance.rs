//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coulomb_core::abelian::{self, AbelianTheory, CoulombElement};
use coulomb_core::difference::DifferenceOperator;
use coulomb_core::hypertoric::coulomb_higgs_compare;
use coulomb_core::kac_moody::{named, null_root, reflect, tensor_decompose, CartanMatrix, Weight, WeightSystem};
use coulomb_core::poly::rat;
use coulomb_core::quiver::{fixed_point_nonempty, jordan_coulomb_hilbert, mv_dimension, strata_affine};
use coulomb_core::{CancelToken, Character, Coweight, HalfInt, IntMatrix, Poly, Rational};

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main() {
    let criteria: [(&str, Check, Duration); 12] = [
        ("quantum cyclic relations", c01_quantum_relations, secs(1)),
        ("cyclic Poisson bracket", c02_poisson, secs(1)),
        ("quantum torus relations", c03_torus, secs(1)),
        ("classical product commutative and associative", c04_product, secs(10)),
        ("classical limit of quantization", c05_classical_limit, secs(10)),
        ("Coulomb and Higgs tables agree", c06_duality, secs(60)),
        ("Freudenthal matches Weyl character oracle", c07_freudenthal_oracle, secs(30)),
        ("fundamental times antifundamental", c08_tensor, secs(5)),
        ("fixed points match dual multiplicities", c09_satake, secs(30)),
        ("MV dimension additivity", c10_mv, secs(1)),
        ("abelian and Jordan Hilbert series agree", c11_hilbert, secs(10)),
        ("affine strata enumeration", c12_strata, secs(10)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) => "PASS".to_string(),
            Err(msg) => {
                failed += 1;
                format!("FAIL: {msg}")
            }
        };
        let note = if elapsed > *budget { " (over time budget)" } else { "" };
        println!("criterion {:>2} {name}: {verdict} [{:.2?}]{note}", i + 1, elapsed);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c01_quantum_relations() -> Result<(), String> {
    let w = Poly::var(2, 0);
    let h = Poly::var(2, 1);
    for ell in 1..=5u32 {
        let th = AbelianTheory::cyclic(ell as usize);
        let got = abelian::quantum_relation(&th, &Coweight(vec![1])).map_err(|e| e.to_string())?;
        let want = (
            DifferenceOperator::multiplication(w.pow(ell)),
            DifferenceOperator::multiplication((&w - &h).pow(ell)),
        );
        ensure(got == want, || format!("ℓ = {ell}: got ({}, {})", got.0.display(), got.1.display()))?;
    }
    Ok(())
}

fn c02_poisson() -> Result<(), String> {
    for ell in 1..=5u32 {
        let th = AbelianTheory::cyclic(ell as usize);
        let x = CoulombElement::monopole(&Coweight(vec![1]));
        let y = CoulombElement::monopole(&Coweight(vec![-1]));
        let got = abelian::poisson(&th, &x, &y).map_err(|e| e.to_string())?;
        let want = CoulombElement::term(Coweight(vec![0]), Poly::var(1, 0).pow(ell - 1).scale(&rat(ell as i64)));
        ensure(got == want, || format!("ℓ = {ell}: got {}", got.display()))?;
    }
    Ok(())
}

fn random_coweight(r: &mut ChaCha8Rng, rank: usize, m: i64) -> Coweight {
    Coweight((0..rank).map(|_| r.gen_range(-m..=m)).collect())
}

fn c03_torus() -> Result<(), String> {
    let mut r = rng(3);
    for trial in 0..50 {
        let rank = r.gen_range(1..=3);
        let lam = random_coweight(&mut r, rank, 3);
        let mu = random_coweight(&mut r, rank, 3);
        let u: Vec<i64> = (0..rank).map(|_| r.gen_range(-4..=4)).collect();
        let e_lam = DifferenceOperator::shift(&lam);
        ensure(
            e_lam.multiply(&DifferenceOperator::shift(&mu)).unwrap() == DifferenceOperator::shift(&lam.add(&mu)),
            || format!("trial {trial}: e^λ e^μ ≠ e^(λ+μ)"),
        )?;
        let mut form = u.clone();
        form.push(0);
        let u_op = DifferenceOperator::multiplication(Poly::linear_form(rank + 1, &form));
        let pairing: i64 = lam.0.iter().zip(&u).map(|(a, b)| a * b).sum();
        let mut hbar_coeff = vec![0; rank + 1];
        hbar_coeff[rank] = pairing;
        let want = DifferenceOperator::term(lam.clone(), Poly::linear_form(rank + 1, &hbar_coeff));
        ensure(e_lam.commutator(&u_op).unwrap() == want, || format!("trial {trial}: commutator mismatch"))?;
    }
    Ok(())
}

fn random_theory(r: &mut ChaCha8Rng, m: i64) -> AbelianTheory {
    let rank = r.gen_range(1..=3);
    let n = r.gen_range(1..=4);
    let chars = (0..n).map(|_| Character((0..rank).map(|_| r.gen_range(-m..=m)).collect())).collect();
    AbelianTheory::new(rank, chars).unwrap()
}

fn random_poly(r: &mut ChaCha8Rng, nvars: usize) -> Poly {
    let terms: Vec<(Rational, Vec<u32>)> = (0..r.gen_range(1..=2))
        .map(|_| (rat(r.gen_range(-3..=3)), (0..nvars).map(|_| r.gen_range(0..=2)).collect()))
        .collect();
    Poly::from_terms(nvars, terms)
}

fn random_element(r: &mut ChaCha8Rng, rank: usize) -> CoulombElement {
    (0..r.gen_range(1..=2)).fold(CoulombElement::zero(rank), |acc, _| {
        let lam = random_coweight(r, rank, 2);
        let f = random_poly(r, rank);
        &acc + &CoulombElement::term(lam, f)
    })
}

fn c04_product() -> Result<(), String> {
    let mut r = rng(4);
    let theories: Vec<AbelianTheory> = (0..5).map(|_| random_theory(&mut r, 2)).collect();
    for trial in 0..200 {
        let th = &theories[trial % 5];
        let [a, b, c] = [0; 3].map(|_| random_element(&mut r, th.rank()));
        let m = |x: &CoulombElement, y: &CoulombElement| abelian::classical_product(th, x, y).unwrap();
        ensure(m(&a, &b) == m(&b, &a), || format!("trial {trial}: not commutative"))?;
        ensure(m(&m(&a, &b), &c) == m(&a, &m(&b, &c)), || format!("trial {trial}: not associative"))?;
    }
    Ok(())
}

fn c05_classical_limit() -> Result<(), String> {
    let mut r = rng(5);
    let zero = Rational::zero();
    for trial in 0..200 {
        // unit characters keep the quantum prefactors at moderate degree
        let th = random_theory(&mut r, 1);
        let a = random_element(&mut r, th.rank());
        let b = random_element(&mut r, th.rank());
        let q = |x: &CoulombElement| abelian::quantize(&th, x).unwrap();
        let lhs = q(&a).multiply(&q(&b)).unwrap().specialize_hbar(&zero);
        let rhs = q(&abelian::classical_product(&th, &a, &b).unwrap()).specialize_hbar(&zero);
        ensure(lhs == rhs, || format!("trial {trial}: classical limit mismatch"))?;
    }
    Ok(())
}

fn c06_duality() -> Result<(), String> {
    let samples: [&[&[i64]]; 6] = [
        &[&[1], &[1]],
        &[&[1], &[1], &[1]],
        &[&[1, 0], &[0, 1]],
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        &[&[1, 0], &[0, 1], &[1, 1]],
        &[&[1, 0], &[1, 0], &[0, 1], &[0, 1]],
    ];
    for rows in samples {
        let a = IntMatrix::from_rows(rows).unwrap();
        let rep = coulomb_higgs_compare(&a, HalfInt::from_int(4), &CancelToken::new()).map_err(|e| e.to_string())?;
        ensure(rep.verdict, || format!("{rows:?}: {:?} vs {:?}", rep.coulomb.coefficients(), rep.higgs.coefficients()))?;
    }
    Ok(())
}

/// Integer solution `c` of `A c = v` for an invertible matrix of rank at most 2.
fn solve(a: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    match a.len() {
        1 => (v[0] % a[0][0] == 0).then(|| vec![v[0] / a[0][0]]),
        2 => {
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            let x = v[0] * a[1][1] - a[0][1] * v[1];
            let y = a[0][0] * v[1] - a[1][0] * v[0];
            (x % det == 0 && y % det == 0).then(|| vec![x / det, y / det])
        }
        _ => unreachable!(),
    }
}

/// Weyl's character formula through Kostant's partition function.
struct WeylOracle {
    a: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    memo: HashMap<Vec<i64>, u64>,
}

impl WeylOracle {
    fn new(a: Vec<Vec<i64>>) -> Self {
        let n = a.len();
        // positive roots in simple-root coordinates from the Weyl orbit of the simple roots
        let reflect_root = |i: usize, c: &[i64]| -> Vec<i64> {
            let pairing: i64 = (0..n).map(|j| a[i][j] * c[j]).sum();
            let mut out = c.to_vec();
            out[i] -= pairing;
            out
        };
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while let Some(c) = queue.pop_front() {
            if seen.insert(c.clone()) {
                for i in 0..n {
                    queue.push_back(reflect_root(i, &c));
                }
            }
        }
        let positive = seen.into_iter().filter(|c| c.iter().all(|&x| x >= 0)).collect();
        WeylOracle {
            a,
            positive,
            memo: HashMap::new(),
        }
    }

    /// Number of ways to write `c` as a sum of positive roots with roots taken
    /// in a fixed order starting at index `from`.
    fn kostant(&mut self, c: &[i64], from: usize) -> u64 {
        if c.iter().any(|&x| x < 0) {
            return 0;
        }
        if c.iter().all(|&x| x == 0) {
            return 1;
        }
        if from == self.positive.len() {
            return 0;
        }
        let mut key = c.to_vec();
        key.push(from as i64);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let root = self.positive[from].clone();
        let mut total = 0;
        let mut rest = c.to_vec();
        while rest.iter().all(|&x| x >= 0) {
            total += self.kostant(&rest, from + 1);
            for (x, y) in rest.iter_mut().zip(&root) {
                *x -= y;
            }
        }
        self.memo.insert(key, total);
        total
    }

    /// `(wν, (−1)^ℓ(w))` over the Weyl group for a regular dominant `ν`.
    fn orbit(&self, nu: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let n = self.a.len();
        let mut dist: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        dist.insert(nu.to_vec(), 0);
        let mut queue = VecDeque::from([nu.to_vec()]);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            for i in 0..n {
                let y: Vec<i64> = (0..n).map(|k| x[k] - x[i] * self.a[k][i]).collect();
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist.into_iter().map(|(x, d)| (x, if d % 2 == 0 { 1 } else { -1 })).collect()
    }

    fn multiplicity(&mut self, lam: &[i64], mu: &[i64]) -> i64 {
        let shifted: Vec<i64> = lam.iter().map(|x| x + 1).collect();
        let target: Vec<i64> = mu.iter().map(|x| x + 1).collect();
        let mut total = 0i64;
        for (w, sign) in self.orbit(&shifted) {
            let diff: Vec<i64> = w.iter().zip(&target).map(|(x, y)| x - y).collect();
            if let Some(c) = solve(&self.a, &diff) {
                total += sign * self.kostant(&c, 0) as i64;
            }
        }
        total
    }
}

fn c07_freudenthal_oracle() -> Result<(), String> {
    let cancel = CancelToken::new();
    for name in ["A1", "A2", "B2"] {
        let gcm = named(name).unwrap();
        let n = gcm.size();
        let mut oracle = WeylOracle::new(gcm.rows().to_vec());
        let lambdas: Vec<Vec<i64>> = if n == 1 {
            (0..=3).map(|a| vec![a]).collect()
        } else {
            (0..=3).flat_map(|a| (0..=3).map(move |b| vec![a, b])).collect()
        };
        for lam in lambdas {
            let ws = WeightSystem::new(&gcm, &Weight::finite(lam.clone()), None, &cancel).map_err(|e| e.to_string())?;
            let max_c = ws.by_root_coordinates().keys().flatten().copied().max().unwrap_or(0) + 1;
            let mut boxes = vec![vec![]];
            for _ in 0..n {
                boxes = boxes
                    .into_iter()
                    .flat_map(|b: Vec<i64>| {
                        (0..=max_c).map(move |x| {
                            let mut b = b.clone();
                            b.push(x);
                            b
                        })
                    })
                    .collect();
            }
            for beta in boxes {
                let mu = Weight::finite(lam.clone()).sub(&gcm.root_combination(&beta));
                let got = ws.at_depth(&beta) as i64;
                let want = oracle.multiplicity(&lam, &mu.fund);
                ensure(got == want, || format!("{name} λ={lam:?} μ={:?}: {got} vs oracle {want}", mu.fund))?;
            }
        }
    }
    Ok(())
}

fn c08_tensor() -> Result<(), String> {
    let cancel = CancelToken::new();
    for n in 2..=5usize {
        let gcm = named(&format!("A{}", n - 1)).unwrap();
        let r = n - 1;
        let first = Weight::fundamental(r, 0);
        let last = Weight::fundamental(r, r - 1);
        let got = tensor_decompose(&gcm, &first, &last, &cancel).map_err(|e| e.to_string())?;
        let want = BTreeMap::from([(first.add(&last), 1), (Weight::zero(r), 1)]);
        ensure(got == want, || format!("n = {n}: {got:?}"))?;
    }
    Ok(())
}

fn c09_satake() -> Result<(), String> {
    let cancel = CancelToken::new();
    let depth = 6usize;
    let cases: [(&str, Vec<Weight>); 2] = [
        ("A2", vec![Weight::finite(vec![1, 0]), Weight::finite(vec![1, 1]), Weight::finite(vec![2, 1])]),
        ("A1~", vec![Weight::new(vec![1, 0], 0), Weight::new(vec![0, 1], 0), Weight::new(vec![1, 1], 0), Weight::new(vec![2, 0], 0)]),
    ];
    for (name, lambdas) in cases {
        let gcm = named(name).unwrap();
        let dual = gcm.langlands_dual();
        let n = gcm.size();
        for lam in lambdas {
            let ws = WeightSystem::new(&dual, &lam, Some(depth), &cancel).map_err(|e| e.to_string())?;
            for beta in compositions_up_to(n, depth as i64) {
                let mu = lam.sub(&dual.root_combination(&beta));
                let fixed = fixed_point_nonempty(&gcm, &lam, &mu, &cancel).map_err(|e| e.to_string())?;
                let positive = ws.multiplicity(&mu).map_err(|e| e.to_string())? > 0;
                ensure(fixed == positive, || format!("{name} λ={lam} μ={mu}: {fixed} vs {positive}"))?;
                for i in 0..n {
                    let s = reflect(&dual, i, &mu);
                    let other = fixed_point_nonempty(&gcm, &lam, &s, &cancel).map_err(|e| e.to_string())?;
                    ensure(fixed == other, || format!("{name} λ={lam}: μ={mu} and s_{i}μ={s} disagree"))?;
                }
            }
        }
    }
    Ok(())
}

/// Non-negative integer vectors of length `n` with sum at most `h`.
fn compositions_up_to(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().sum();
                (0..=h - used).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn c10_mv() -> Result<(), String> {
    let mut r = rng(10);
    let names = ["A1", "A2", "A3", "B2", "C3", "G2", "D4", "A1~", "A2~"];
    for trial in 0..100 {
        let gcm: CartanMatrix = named(names[trial % names.len()]).unwrap();
        let n = gcm.size();
        let lam = Weight::new((0..n).map(|_| r.gen_range(0..=3)).collect(), 0);
        let b1: Vec<i64> = (0..n).map(|_| r.gen_range(0..=3)).collect();
        let b2: Vec<i64> = (0..n).map(|_| r.gen_range(0..=3)).collect();
        let kappa = lam.sub(&gcm.root_combination(&b1));
        let mu = kappa.sub(&gcm.root_combination(&b2));
        let whole = mv_dimension(&gcm, &lam, &mu).map_err(|e| e.to_string())?;
        let top = mv_dimension(&gcm, &lam, &kappa).map_err(|e| e.to_string())?;
        let bottom = mv_dimension(&gcm, &kappa, &mu).map_err(|e| e.to_string())?;
        let sum: i64 = b1.iter().chain(&b2).sum();
        ensure(whole == top + bottom && whole as i64 == sum, || {
            format!("trial {trial}: {whole} ≠ {top} + {bottom}")
        })?;
    }
    Ok(())
}

fn c11_hilbert() -> Result<(), String> {
    let cancel = CancelToken::new();
    let top = HalfInt::from_int(4);
    for ell in 1..=4usize {
        let th = AbelianTheory::new(1, vec![Character(vec![1]); ell]).unwrap();
        let a = abelian::hilbert_series(&th, top, &cancel).map_err(|e| e.to_string())?;
        let j = jordan_coulomb_hilbert(1, ell as u32, top, &cancel).map_err(|e| e.to_string())?;
        ensure(a.coefficients() == j.coefficients(), || {
            format!("ℓ = {ell}: {:?} vs {:?}", a.coefficients(), j.coefficients())
        })?;
    }
    Ok(())
}

/// Non-increasing positive sequences summing to `n`, by filtering all
/// compositions.
fn brute_partitions(n: u32) -> BTreeSet<Vec<u32>> {
    fn compositions(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        (1..=n)
            .flat_map(|first| {
                compositions(n - first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    compositions(n).into_iter().filter(|c| c.windows(2).all(|w| w[0] >= w[1])).collect()
}

fn c12_strata() -> Result<(), String> {
    let gcm = named("A1~").unwrap();
    // for this matrix α_0 = 2Λ_0 − 2Λ_1 + δ and α_1 = 2Λ_1 − 2Λ_0, so δ = α_0 + α_1
    ensure(null_root(&gcm).unwrap() == Weight::new(vec![0, 0], 1), || "unexpected null root".into())?;
    let in_q_plus = |x: &Weight| -> bool {
        let (a, b, d) = (x.fund[0], x.fund[1], x.delta);
        let c0 = d;
        let twice_c1 = 2 * d - a;
        a + b == 0 && twice_c1 % 2 == 0 && c0 >= 0 && twice_c1 >= 0
    };
    let lam = Weight::new(vec![2, 0], 0);
    let mu = Weight::new(vec![2, 0], -2);
    let bound = 2u32;
    let got = strata_affine(&gcm, &lam, &mu, bound, &CancelToken::new()).map_err(|e| e.to_string())?;
    let got_set: BTreeSet<(Weight, Vec<u32>)> = got.iter().map(|s| (s.kappa.clone(), s.partition.clone())).collect();
    ensure(got_set.len() == got.len(), || "duplicate strata".into())?;
    ensure(got_set.contains(&(lam.clone(), vec![])), || "(λ, ∅) missing".into())?;

    let constraint = |kappa: &Weight, k: u32| {
        let top = Weight::new(lam.fund.clone(), lam.delta - k as i64);
        kappa.is_dominant() && in_q_plus(&top.sub(kappa)) && in_q_plus(&kappa.sub(&mu))
    };
    for (kappa, p) in &got_set {
        let k: u32 = p.iter().sum();
        ensure(k <= bound && constraint(kappa, k), || format!("({kappa}, {p:?}) violates the constraint"))?;
    }

    let mut brute = BTreeSet::new();
    for k in 0..=bound {
        for a in 0..=4 {
            for b in 0..=4 {
                for d in -6..=2 {
                    let kappa = Weight::new(vec![a, b], d);
                    if constraint(&kappa, k) {
                        for p in brute_partitions(k) {
                            brute.insert((kappa.clone(), p));
                        }
                    }
                }
            }
        }
    }
    ensure(brute == got_set, || format!("library {got_set:?} vs brute force {brute:?}"))
}
