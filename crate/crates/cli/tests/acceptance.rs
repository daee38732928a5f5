//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process fails if any criterion fails other than those listed in
//! `KNOWN_FALSE`, whose literal statement is false and is reported as such.

#![allow(clippy::needless_range_loop)]

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use k3_lattice::lattice::{
    binary_equivalent, genus_equal, hilbert_symbol, is_isotropic_rational, local_invariants, represents, Place,
};
use k3_lattice::monodromy::{self, build_root_context, weyl_membership, AcampoVerdict, KulikovType, MonodromyMatrix};
use k3_lattice::mukai::{self, AlgebraicMukaiLattice, MukaiVector};
use k3_lattice::real_k3::{self, LatticeInvolution, RealInvariants, TopologicalType};
use k3_lattice::{arith, IntMatrix, IntegralLattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

/// Criterion 3's sweep asserts an identity with counterexamples such as
/// `(r, s, n, m) = (1, 1, 2, 4)`.
const KNOWN_FALSE: &[u32] = &[3];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture_gram(name: &str) -> IntegralLattice {
    let text = std::fs::read_to_string(fixtures().join(name)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let src = if v.get("lattice").is_some() { &v["lattice"]["gram"] } else { v.get("gram").unwrap_or(&v["matrix"]) };
    let rows: Vec<Vec<i64>> = serde_json::from_value(src.clone()).unwrap();
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntegralLattice::new(IntMatrix::from_i64(&rows), None).unwrap()
}

fn fixture_matrix(name: &str) -> IntMatrix {
    let text = std::fs::read_to_string(fixtures().join(name)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let rows: Vec<Vec<i64>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&rows)
}

fn random_unimodular(rng: &mut StdRng, n: usize, steps: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let mut e = IntMatrix::identity(n);
            e[(i, j)] = big(rng.gen_range(-2..=2));
            p = &p * &e;
        }
    }
    p
}

/// Block sums of involutions on `U` and `⟨±2⟩`, written in a random basis.
fn random_involution(rng: &mut StdRng, max_rank: usize) -> LatticeInvolution {
    let u = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let mut gram = IntMatrix::zeros(0, 0);
    let mut mat = IntMatrix::zeros(0, 0);
    while gram.nrows() == 0 || (gram.nrows() + 2 <= max_rank && rng.gen_bool(0.5)) {
        let (g, m) = match rng.gen_range(0..4) {
            0 => (u.clone(), u.clone()),
            1 => (u.clone(), -&IntMatrix::identity(2)),
            2 => (u.clone(), IntMatrix::identity(2)),
            _ => {
                let k = if rng.gen_bool(0.5) { 2 } else { -2 };
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                (IntMatrix::from_i64(&[&[k]]), IntMatrix::from_i64(&[&[s]]))
            }
        };
        gram = gram.block_diag(&g);
        mat = mat.block_diag(&m);
    }
    let n = gram.nrows();
    let p = random_unimodular(rng, n, 3 * n);
    let p_inv = p.unimodular_inverse().unwrap();
    LatticeInvolution::new(IntegralLattice::new(gram.congruence(&p), None).unwrap(), &(&p_inv * &mat) * &p).unwrap()
}

fn c1_discriminant_pair() -> Check {
    let start = Instant::now();
    let pix = fixture_gram("pix.json");
    let piy = fixture_gram("piy.json");
    ensure(pix.determinant() == &big(-145) && piy.determinant() == &big(-145), "determinants")?;
    ensure(genus_equal(&pix, &piy), "genus differs")?;
    ensure(!binary_equivalent(&pix, &piy).map_err(|e| e.to_string())?, "lattices reported equivalent")?;
    for w in [[-1, 2], [25, -2]] {
        ensure(pix.evaluate(&[big(w[0]), big(w[1])]).unwrap() == big(-2), "(2f-C)² or (25C-2f)² is not -2")?;
    }
    let w = represents(&pix, &big(-2)).map_err(|e| e.to_string())?.ok_or("ΠX does not represent -2")?;
    ensure(pix.evaluate(&w).unwrap() == big(-2), "witness does not evaluate to -2")?;
    ensure(represents(&piy, &big(-2)).map_err(|e| e.to_string())?.is_none(), "ΠY represents -2")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("det -145 twice, same genus, inequivalent, witness {w:?}"))
}

fn c2_chern_numbers() -> Check {
    let c2 = |h2: i64, d: i64, r: i64, s: i64| {
        let pic = AlgebraicMukaiLattice::new(IntegralLattice::rank_one(h2).unwrap());
        mukai::c2_from_mukai(&pic, &MukaiVector::from_i64(r, &[d], s)).unwrap()
    };
    let got = [c2(12, 1, 2, 3), c2(14, 1, 2, 4), c2(2, 0, 2, -22)];
    ensure(got == [big(5), big(5), big(24)], format!("got {got:?}"))?;
    Ok("5, 5, 24".into())
}

fn c3_index_sweep() -> (Check, Check) {
    let start = Instant::now();
    let (mut total, mut bad, mut first_bad) = (0u64, 0u64, None);
    let (mut restricted, mut restricted_bad) = (0u64, 0u64);
    for r in 1..=30i64 {
        for s in 1..=30i64 {
            for m in 1..=60i64 {
                if r.gcd(&s).gcd(&m) != 1 {
                    continue;
                }
                for n in 1..=30i64 {
                    let ok = mukai::index_transfer_check(&big(r), &big(s), &big(n), &big(m)).unwrap();
                    // Independent recomputation of the same identity.
                    let lhs = (n * (n * r * s + r - s)).gcd(&m);
                    assert_eq!(ok, lhs == n.gcd(&m));
                    total += 1;
                    if !ok {
                        bad += 1;
                        first_bad.get_or_insert((r, s, n, m));
                    }
                    if (2 * r * s) % m == 0 {
                        restricted += 1;
                        restricted_bad += u64::from(!ok);
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();

    let mut rng = StdRng::seed_from_u64(3);
    let mut symbolic = Ok(());
    for _ in 0..100 {
        // r·s = a²·t makes (r, a·h, s) isotropic on ⟨h²⟩ with h² = 2rt.
        let (r, t, a, n) = (rng.gen_range(1..=20i64), rng.gen_range(1..=20i64), rng.gen_range(1..=5i64), rng.gen_range(-10..=10i64));
        let (s, h2) = (a * a * t, 2 * r * t);
        let pic = AlgebraicMukaiLattice::new(IntegralLattice::rank_one(h2).unwrap());
        let v = MukaiVector::from_i64(r, &[a], s);
        if !mukai::is_isotropic(&pic, &v).unwrap() {
            symbolic = Err(format!("({r}, {a}h, {s}) not isotropic"));
            break;
        }
        let got = mukai::c2_from_mukai(&pic, &v.scale(&big(n))).unwrap();
        if got != big(n * (n * r * s + r - s)) {
            symbolic = Err(format!("c2 of {n}·({r}, {a}h, {s}) is {got}"));
            break;
        }
    }

    let literal = (|| {
        symbolic.clone()?;
        ensure(elapsed < Duration::from_secs(10), format!("sweep took {elapsed:.2?}"))?;
        ensure(
            bad == 0,
            format!(
                "{bad} of {total} triples violate gcd(n(nrs+r-s), m) = gcd(n, m), first {:?} as (r, s, n, m)",
                first_bad.unwrap()
            ),
        )?;
        Ok(format!("{total} triples, 100 symbolic c2 checks"))
    })();
    let supplementary = (|| {
        symbolic?;
        ensure(restricted_bad == 0, format!("{restricted_bad} of {restricted} fail"))?;
        Ok(format!("moduli dividing 2rs: {restricted} triples hold; c2(n·v) = n(nrs+r-s) on 100 random vectors"))
    })();
    (literal, supplementary)
}

fn distinct_primes(mut n: u64) -> u32 {
    let (mut count, mut p) = (0, 2);
    while p * p <= n {
        if n.is_multiple_of(p) {
            count += 1;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    count + u32::from(n > 1)
}

fn c4_partner_counts() -> Check {
    let fm = |n: u64| mukai::fm_partner_count(&BigInt::from(n)).unwrap();
    ensure(fm(6) == big(2) && fm(7) == big(1), "fm(6), fm(7)")?;
    for n in 1..=100u64 {
        let tau = distinct_primes(n);
        let expected = if tau == 0 { 1 } else { 1u64 << (tau - 1) };
        ensure(fm(n) == BigInt::from(expected), format!("fm({n}) = {}, expected {expected}", fm(n)))?;
    }
    Ok("fm(6) = 2, fm(7) = 1, n ≤ 100 agree with 2^(τ(n)-1)".into())
}

fn c5_nikulin() -> Check {
    let ty = |r, a, delta| real_k3::topological_type(&RealInvariants { r, a, delta });
    ensure(ty(10, 10, 0) == Ok(TopologicalType::Empty), "(10,10,0)")?;
    ensure(ty(10, 8, 0) == Ok(TopologicalType::TwoTori), "(10,8,0)")?;
    let mut admissible = 0;
    for r in 0..=20u32 {
        for a in 0..=r {
            if r + a > 22 || (r - a) % 2 == 1 {
                continue;
            }
            for delta in 0..=1u8 {
                admissible += 1;
                match ty(r, a, delta).map_err(|e| e.to_string())? {
                    TopologicalType::General { g, k } => {
                        let (g2, k2) = (22 - i64::from(r) - i64::from(a), i64::from(r) - i64::from(a));
                        ensure(g2 >= 0 && k2 >= 0, "negative genus or sphere count")?;
                        ensure((i64::from(2 * g), i64::from(2 * k)) == (g2, k2), format!("({r},{a},{delta}) gave g={g}, k={k}"))?;
                    }
                    _ => ensure((r, delta) == (10, 0) && (a == 10 || a == 8), format!("({r},{a},{delta})"))?,
                }
            }
        }
    }
    let u = IntegralLattice::hyperbolic_plane();
    let swap = LatticeInvolution::new(u.clone(), IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
    let neg = LatticeInvolution::new(u, -&IntMatrix::identity(2)).unwrap();
    let inv = |i: &LatticeInvolution| real_k3::real_invariants(i).map_err(|e| e.to_string());
    ensure(inv(&swap)? == RealInvariants { r: 1, a: 1, delta: 1 }, "swap on U")?;
    ensure(inv(&neg)? == RealInvariants { r: 2, a: 0, delta: 0 }, "-1 on U")?;
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let i = random_involution(&mut rng, 8);
        let ext = real_k3::extend_to_mukai(&i).map_err(|e| e.to_string())?;
        ensure(inv(&ext)?.delta == inv(&i)?.delta, "extension changed δ")?;
    }
    Ok(format!("{admissible} admissible triples, involution pipeline, 100 random extensions"))
}

/// Nonzero zeros of an integral form with all coordinates in `[-b, b]`;
/// the last coordinate is solved for exactly.
fn has_box_zero(g: &[Vec<i64>], b: i64) -> bool {
    let n = g.len();
    let last = n - 1;
    let mut x = vec![-b; last];
    loop {
        let lin: i64 = (0..last).map(|i| g[last][i] * x[i]).sum();
        let q: i64 = (0..last).map(|i| (0..last).map(|j| g[i][j] * x[i] * x[j]).sum::<i64>()).sum();
        let gl = g[last][last];
        let nonzero = x.iter().any(|&v| v != 0);
        // gl·y² + 2·lin·y + q = 0
        if gl == 0 {
            if lin == 0 {
                if q == 0 {
                    return true;
                }
            } else if q % (2 * lin) == 0 && (q / (2 * lin)).abs() <= b {
                return true;
            }
        } else {
            let disc = lin * lin - gl * q;
            if disc >= 0 {
                let root = arith::isqrt(&BigInt::from(disc)).to_i64().unwrap();
                if root * root == disc {
                    for num in [-lin + root, -lin - root] {
                        if num % gl == 0 && (num / gl).abs() <= b && (nonzero || num != 0) {
                            return true;
                        }
                    }
                }
            }
        }
        let mut i = 0;
        loop {
            if i == last {
                return false;
            }
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
            i += 1;
        }
    }
}

fn c6_local_global() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..200 {
        let mut draw = || loop {
            let v: i64 = rng.gen_range(-500..=500);
            if v != 0 {
                break big(v);
            }
        };
        let (a, b) = (draw(), draw());
        let mut primes = arith::prime_divisors(&(&a * &b * 2));
        primes.sort();
        primes.dedup();
        let mut product = hilbert_symbol(&a, &b, &Place::Real).unwrap();
        for p in primes {
            product *= hilbert_symbol(&a, &b, &Place::prime(p).unwrap()).unwrap();
        }
        ensure(product == 1, format!("product over places of ({a},{b}) is {product}"))?;
    }

    let (mut found, mut tested) = (0, 0);
    while tested < 50 {
        let n = rng.gen_range(3..=4);
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            g[i][i] = 2 * rng.gen_range(-4..=4);
            for j in 0..i {
                let v = rng.gen_range(-4..=4);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
        let Ok(l) = IntegralLattice::new(IntMatrix::from_i64(&rows), None) else { continue };
        tested += 1;
        if has_box_zero(&g, 50) {
            found += 1;
            ensure(is_isotropic_rational(&l), format!("zero found for {g:?} but reported anisotropic"))?;
        }
    }

    let l = IntegralLattice::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, -6]]).unwrap();
    ensure(!is_isotropic_rational(&l), "diag(2,2,-6) reported isotropic")?;
    // Rank 3 criterion: isotropic iff (-1, -d)_p = ε_p everywhere.
    let minus_d = -l.determinant();
    let local = local_invariants(&l);
    let branch = |p: i64| hilbert_symbol(&big(-1), &minus_d, &Place::prime(p).unwrap()).unwrap() == local.hasse[&big(p)];
    // The local conditions fail at 2 and at 3, an even number as reciprocity demands.
    ensure(!branch(3) && !branch(2), "no obstruction at 3")?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("reciprocity on 200 pairs, {found} of 50 random forms with box zeros all isotropic, diag(2,2,-6) blocked at 2 and 3"))
}

fn c7_monodromy() -> Check {
    let names = ["identity.json", "rot4.json", "unip2.json", "unip3.json"];
    let expected = [(1, 1), (4, 1), (1, 2), (1, 3)];
    let kulikov = [Some(KulikovType::I), None, Some(KulikovType::II), Some(KulikovType::III)];
    let mut rng = StdRng::seed_from_u64(7);
    for ((name, ef), kt) in names.iter().zip(expected).zip(kulikov) {
        let base = fixture_matrix(name);
        for round in 0..=20 {
            let t = if round == 0 {
                base.clone()
            } else {
                let p = random_unimodular(&mut rng, base.nrows(), 6);
                &(&p * &base) * &p.unimodular_inverse().unwrap()
            };
            let t = MonodromyMatrix::new(t).unwrap();
            ensure(monodromy::quasi_unipotency(&t).unwrap() == ef, format!("{name}: (e, f)"))?;
            ensure(monodromy::kulikov_type(&t).ok() == kt, format!("{name}: Kulikov type"))?;
            let euler = t.matrix().trace() + 2;
            let verdict = monodromy::acampo_test(&t).unwrap();
            let agrees = match verdict {
                AcampoVerdict::SectionExists { euler: e } => e == euler && !euler.is_zero(),
                AcampoVerdict::Inconclusive => euler.is_zero(),
            };
            ensure(agrees, format!("{name}: A'Campo verdict"))?;
        }
    }
    let t = MonodromyMatrix::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
    let (m, n) = monodromy::primitive_log(&t).unwrap();
    ensure(m == big(2).into() && n == IntMatrix::from_i64(&[&[0, 1], &[0, 0]]), "primitive log of [[1,2],[0,1]]")?;
    Ok("fixture indices, Kulikov types, logarithm and A'Campo stable under 20 conjugations each".into())
}

fn negated_cartan(edges: &[(usize, usize)], n: usize) -> IntegralLattice {
    let mut g = IntMatrix::identity(n).scale(&big(-2));
    for &(i, j) in edges {
        g[(i, j)] = big(1);
        g[(j, i)] = big(1);
    }
    IntegralLattice::new(g, None).unwrap()
}

fn box_roots(l: &IntegralLattice, b: i64) -> usize {
    let n = l.rank();
    let mut x = vec![-b; n];
    let mut count = 0;
    loop {
        let v: Vec<BigInt> = x.iter().map(|&c| big(c)).collect();
        if l.evaluate(&v).unwrap() == big(-2) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
            i += 1;
        }
    }
}

fn c8_weyl() -> Check {
    let start = Instant::now();
    let unit = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    };
    let systems = [
        ("A1", negated_cartan(&[], 1), 2),
        ("A2", negated_cartan(&[(0, 1)], 2), 6),
        ("D4", negated_cartan(&[(0, 1), (1, 2), (1, 3)], 4), 24),
    ];
    for (name, l, expected) in &systems {
        let ctx = build_root_context(l, &unit(l.rank())).map_err(|e| e.to_string())?;
        let oracle = box_roots(l, 3);
        ensure(ctx.roots().len() == *expected && oracle == *expected, format!("{name}: {} roots, oracle {oracle}", ctx.roots().len()))?;
    }
    let a1a1 = negated_cartan(&[], 2);
    let ctx = build_root_context(&a1a1, &unit(2)).unwrap();
    let minus = -&IntMatrix::identity(2);
    let word = weyl_membership(&ctx, &minus).unwrap().ok_or("-I rejected")?;
    ensure(word.len() == 2 && ctx.compose(&word) == minus, "word for -I")?;
    let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    ensure(weyl_membership(&ctx, &swap).unwrap().is_none(), "swap accepted")?;

    // Random elements of W(D4) recompose from the returned words.
    let d4 = &systems[2].1;
    let ctx = build_root_context(d4, &unit(4)).unwrap();
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..50 {
        let w: Vec<usize> = (0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..ctx.simple_roots().len())).collect();
        let t = ctx.compose(&w);
        let word = weyl_membership(&ctx, &t).unwrap().ok_or("element of W(D4) rejected")?;
        ensure(ctx.compose(&word) == t, "word does not recompose")?;
    }
    let minus = -&IntMatrix::identity(4);
    let word = weyl_membership(&ctx, &minus).unwrap().ok_or("-I rejected in D4")?;
    ensure(ctx.compose(&word) == minus, "-I word in D4")?;
    within(start, Duration::from_secs(60))?;
    Ok("root counts 2, 6, 24; A1+A1 words; 50 D4 words recompose".into())
}

fn c9_jacobian() -> Check {
    let lattice = fixture_gram("twosummand.json");
    let mut count = 0;
    for a in -10..=10i64 {
        for b in -10..=10i64 {
            for c in -10..=10i64 {
                for d in -10..=10i64 {
                    if c * b - a * d != 1 {
                        continue;
                    }
                    count += 1;
                    let (v, w) = mukai::jacobian_action_images(&big(a), &big(b), &big(c), &big(d)).unwrap();
                    let (v, w) = (v.coordinates(), w.coordinates());
                    let got = (lattice.evaluate(&v).unwrap(), lattice.evaluate(&w).unwrap(), lattice.pairing(&v, &w).unwrap());
                    ensure(got == (big(0), big(0), big(-1)), format!("({a},{b},{c},{d}) gave {got:?}"))?;
                }
            }
        }
    }
    Ok(format!("{count} quadruples"))
}

fn c10_paper_suite() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_k3lat"))
        .args(["--format", "json", "paper-suite"])
        .output()
        .map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let claims = v["result"]["claims"].as_array().ok_or("no claims")?;
    let failed: Vec<&str> = claims.iter().filter(|c| c["pass"] != true).filter_map(|c| c["id"].as_str()).collect();
    ensure(out.status.success() && failed.is_empty(), format!("failed claims: {failed:?}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} claims pass", claims.len()))
}

fn main() {
    let mut unexpected = Vec::new();
    let mut report = |n: u32, label: &str, title: &str, check: Check| {
        let (status, detail) = match &check {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {label:<4} {status}  {title}: {detail}");
        if check.is_err() && (!KNOWN_FALSE.contains(&n) || label != n.to_string()) {
            unexpected.push(label.to_string());
        }
    };
    report(1, "1", "discriminant-145 pair", c1_discriminant_pair());
    report(2, "2", "Chern numbers", c2_chern_numbers());
    let (literal, supplementary) = c3_index_sweep();
    report(3, "3", "index transfer sweep", literal);
    report(3, "3b", "index transfer, geometric moduli", supplementary);
    report(4, "4", "partner counts", c4_partner_counts());
    report(5, "5", "real K3 classification", c5_nikulin());
    report(6, "6", "local-global isotropy", c6_local_global());
    report(7, "7", "monodromy", c7_monodromy());
    report(8, "8", "Weyl groups", c8_weyl());
    report(9, "9", "Jacobian SL2 identities", c9_jacobian());
    report(10, "10", "paper suite", c10_paper_suite());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
