//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Expected values come from oracles written
//! in this file, independent of the library code path they check.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use toricdeg::bott::{
    decide_symplectomorphic, hirzebruch_classify, is_hypercube, shift_move, verify_degeneration_move, BottData,
    CohClass, CohRing, Decision,
};
use toricdeg::gromov::{best_simplex_lb, fits, gw_formula, RootFamily, RootSystemSpec};
use toricdeg::rational::{q, q_frac, qvec};
use toricdeg::valuation::{
    build_semigroup, check_cone_condition, check_saturation, monomial_expansions, slide, valuation_image,
    SlideDirection,
};
use toricdeg::{hull, hull_of_lattice_points, AffineUnimodular, HPolytope, HalfSpace, Q};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Sliding by brute force: the class of `p` is every point of the set on the
/// line through `p` in direction `-e_k + c e_l`.
fn oracle_slide(pts: &BTreeSet<Vec<i64>>, k: usize, l: usize, c: i64) -> BTreeSet<Vec<i64>> {
    pts.iter()
        .map(|p| {
            let shift = pts
                .iter()
                .filter(|r| {
                    (0..p.len()).all(|i| i == k || i == l || r[i] == p[i]) && r[l] - p[l] == -c * (r[k] - p[k])
                })
                .map(|r| r[k])
                .min()
                .unwrap();
            let mut out = p.clone();
            out[k] -= shift;
            out[l] += c * shift;
            out
        })
        .collect()
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// Valuation image by dense row reduction modulo a 61-bit prime: with columns
/// sorted lexicographically, the pivot columns of the echelon form are the
/// lowest terms of the span. The expansion uses `f_k = u_k + u_l^c`.
fn oracle_valuation(pts: &BTreeSet<Vec<i64>>, k: usize, l: usize, c: u32) -> BTreeSet<Vec<i64>> {
    let rows: Vec<BTreeMap<Vec<i64>, u64>> = pts
        .iter()
        .map(|p| {
            let a = p[k] as u64;
            (0..=a)
                .map(|j| {
                    let mut e = p.clone();
                    e[k] -= j as i64;
                    e[l] += c as i64 * j as i64;
                    (e, binom(a, j) % P)
                })
                .collect()
        })
        .collect();
    let cols: Vec<Vec<i64>> = rows.iter().flat_map(|r| r.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&Vec<i64>, usize> = cols.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0; cols.len()];
            for (e, x) in r {
                v[index[e]] = *x;
            }
            v
        })
        .collect();
    let mut pivots = BTreeSet::new();
    let mut row = 0;
    for col in 0..cols.len() {
        let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, pr);
        let inv = powmod(m[row][col], P - 2);
        for x in m[row].iter_mut() {
            *x = mulmod(*x, inv);
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for j in 0..cols.len() {
                    let sub = mulmod(f, m[row][j]);
                    m[r][j] = (m[r][j] + P - sub) % P;
                }
            }
        }
        pivots.insert(cols[col].clone());
        row += 1;
    }
    pivots
}

/// Lattice points of `{x : a·x <= b}` inside the box `[lo, hi]ⁿ`.
fn oracle_lattice_points(rows: &[(Vec<i64>, i64)], n: usize, lo: i64, hi: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut x = vec![lo; n];
    loop {
        if rows.iter().all(|(a, b)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() <= *b) {
            out.insert(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            x[i] += 1;
            if x[i] <= hi {
                break;
            }
            x[i] = lo;
            i += 1;
        }
    }
}

/// Quotient `ℚ[x]/(x_i² + Σ_j A^i_j x_i x_j)` by rewriting `x_i²` with the
/// smallest such `i` first.
struct RingOracle {
    a: Vec<Vec<i64>>,
}

type Poly = BTreeMap<Vec<u32>, Q>;

impl RingOracle {
    fn n(&self) -> usize {
        self.a.len()
    }

    fn reduce(&self, poly: &Poly) -> BTreeMap<u32, Q> {
        let mut work: Vec<(Vec<u32>, Q)> = poly.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        let mut out: BTreeMap<u32, Q> = BTreeMap::new();
        while let Some((e, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match e.iter().position(|&p| p >= 2) {
                None => {
                    let mask = e.iter().enumerate().fold(0u32, |m, (i, &p)| m | (p << i));
                    let slot = out.entry(mask).or_insert_with(Q::zero);
                    *slot += c;
                }
                Some(i) => {
                    for j in 0..self.n() {
                        if self.a[i][j] != 0 {
                            let mut f = e.clone();
                            f[i] -= 1;
                            f[j] += 1;
                            work.push((f, &c * q(-self.a[i][j])));
                        }
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn product(&self, a: &[Q], b: &[Q]) -> Poly {
        let mut out = Poly::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                let c = &a[i] * &b[j];
                if !c.is_zero() {
                    let mut e = vec![0; self.n()];
                    e[i] += 1;
                    e[j] += 1;
                    *out.entry(e).or_insert_with(Q::zero) += c;
                }
            }
        }
        out
    }

    /// `x_i² + Σ_j A^i_j x_i x_j` with `x` replaced by the given linear forms.
    fn relation(&self, a: &[Vec<i64>], i: usize, images: &[Vec<Q>]) -> Poly {
        let mut out = self.product(&images[i], &images[i]);
        for (j, &aij) in a[i].iter().enumerate() {
            if aij != 0 {
                for (e, c) in self.product(&images[i], &images[j]) {
                    *out.entry(e).or_insert_with(Q::zero) += c * q(aij);
                }
            }
        }
        out
    }
}

fn class_terms(c: &CohClass) -> BTreeMap<u32, Q> {
    c.terms().iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect()
}

/// Vertices of a hypercube `Δ(A, λ)`: for each subset of upper facets, solve
/// the triangular system `p_j = λ_j - Σ_{i<j} A^i_j p_i` or `p_j = 0`.
fn oracle_bott_vertices(b: &BottData) -> BTreeSet<Vec<Q>> {
    let n = b.n();
    (0..1u32 << n)
        .map(|mask| {
            let mut p = vec![Q::zero(); n];
            for j in 0..n {
                if mask >> j & 1 == 1 {
                    let mut v = b.lambda[j].clone();
                    for i in 0..j {
                        v -= q(b.a[i][j]) * &p[i];
                    }
                    p[j] = v;
                }
            }
            p
        })
        .collect()
}

fn det_i(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] as i128 * det_i(&minor)
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Per-criterion generator; `TORICDEG_SEED` shifts every stream.
fn rng(criterion: u64) -> ChaCha8Rng {
    let base: u64 = std::env::var("TORICDEG_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    ChaCha8Rng::seed_from_u64(base.wrapping_mul(1_000_003).wrapping_add(criterion))
}

fn random_hypercube_bott(rng: &mut ChaCha8Rng, n: usize, entry: i64, lam: i64) -> BottData {
    loop {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                a[i][j] = rng.gen_range(-entry..=entry);
            }
        }
        let lambda = (0..n).map(|_| q(rng.gen_range(1..=lam))).collect();
        let b = BottData::new(a, lambda).unwrap();
        if is_hypercube(&b) {
            return b;
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        if rng.gen_bool(0.25) {
            m.swap(i, j);
        } else {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            for c in 0..n {
                m[i][c] += s * m[j][c];
            }
        }
    }
    m
}

/// A Delzant polytope in the orthant with a standard corner at the origin:
/// a Bott polytope, a dilated simplex, or a Bott polytope with its origin
/// corner cut off, moved by a random unimodular map and normalized back.
fn random_smooth_polytope(rng: &mut ChaCha8Rng, n: usize) -> HPolytope {
    loop {
        let (entry, lam) = if n == 2 { (2, 3) } else { (1, 2) };
        let base = match rng.gen_range(0..3) {
            0 => random_hypercube_bott(rng, n, entry, lam).polytope(),
            1 => {
                let t = rng.gen_range(1..=3);
                let mut rows: Vec<(Vec<i64>, Q)> =
                    (0..n).map(|i| ((0..n).map(|j| if i == j { -1 } else { 0 }).collect(), Q::zero())).collect();
                rows.push((vec![1; n], q(t)));
                HPolytope::from_inequalities(n, &rows).unwrap()
            }
            _ => {
                let p = random_hypercube_bott(rng, n, entry, lam + 1).polytope();
                let long_edges = (0..n).all(|i| {
                    let mut e = vec![Q::zero(); n];
                    e[i] = q(2);
                    p.contains(&e)
                });
                if !long_edges {
                    continue;
                }
                let mut hs = p.halfspaces().to_vec();
                hs.push(HalfSpace::new(vec![-1; n], q(-1)).unwrap());
                HPolytope::new(n, hs).unwrap()
            }
        };
        let t: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-3..=3))).collect();
        let moved = base.transform(&AffineUnimodular::new(random_unimodular(rng, n), t).unwrap()).unwrap();
        let (p, _) = moved.normalize().unwrap();
        if !p.is_delzant_smooth().unwrap().is_smooth() {
            panic!("generator produced a non-smooth polytope");
        }
        if p.lattice_points().unwrap().len() <= 80 {
            return p;
        }
    }
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let mut rng = rng(1);
    let mut count = 0;
    for i in 0..60 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let p = random_smooth_polytope(&mut rng, n);
        let k = rng.gen_range(0..n - 1);
        let l = rng.gen_range(k + 1..n);
        let c = rng.gen_range(1..=4u32);
        let d = SlideDirection::new(k, l, c);
        let pts = p.lattice_points().unwrap();
        let slid = slide(&pts, &d).unwrap();
        let image = valuation_image(&monomial_expansions(&pts, &d).unwrap()).unwrap();
        ensure(slid == image, || format!("instance {i}: slide and valuation image differ"))?;
        let raw: BTreeSet<Vec<i64>> = pts.iter().cloned().collect();
        ensure(slid.points() == &oracle_slide(&raw, k, l, c as i64), || format!("instance {i}: slide oracle"))?;
        ensure(image.points() == &oracle_valuation(&raw, k, l, c), || format!("instance {i}: valuation oracle"))?;
        count += 1;
    }
    Ok(format!("{count} random Delzant polytopes (2D and 3D), c in [1, 4]"))
}

fn criterion_2() -> Outcome {
    let (a_entry, c, l1, l2) = (0i64, 2i64, 1i64, 3i64);
    // ν(f₁^a f₂^b) = (0, 2a + b) for the monomials, plus ν(f₁ - f₂²) = (1, 0)
    // and ν(f₁f₂ - f₂³) = (1, 1).
    let mut expected: BTreeSet<Vec<i64>> = BTreeSet::new();
    for a in 0..=l1 {
        for b in 0..=l2 {
            expected.insert(vec![0, c * a + b]);
        }
    }
    expected.insert(vec![1, 0]);
    expected.insert(vec![1, 1]);
    ensure(expected.len() == 8, || "expected set should have 8 points".into())?;

    let rect = HPolytope::cuboid(&[0, 0], &[l1, l2]).unwrap();
    let d = SlideDirection::new(0, 1, c as u32);
    let s = build_semigroup(&rect, Some(&d), 1).unwrap();
    let level = s.level(1).unwrap();
    ensure(level.points() == &expected, || format!("level 1 is {:?}", level.points()))?;
    let direct = valuation_image(&monomial_expansions(&rect.lattice_points().unwrap(), &d).unwrap()).unwrap();
    ensure(direct.points() == &expected, || "valuation image differs".into())?;

    // Facet e₂ + (2c - A)e₁ at level λ₂ + (c - A)λ₁, with the other facets of Δ(A, λ).
    let normal = vec![2 * c - a_entry, 1];
    let rhs = l2 + (c - a_entry) * l1;
    let trapezoid = HPolytope::from_inequalities(
        2,
        &[(vec![-1, 0], q(0)), (vec![0, -1], q(0)), (vec![1, 0], q(l1)), (normal.clone(), q(rhs))],
    )
    .unwrap();
    let h = hull_of_lattice_points(level).unwrap();
    ensure(h == trapezoid, || "hull is not the predicted trapezoid".into())?;
    let target = BottData::hirzebruch(4, q(1), q(5)).unwrap().polytope();
    ensure(h == target && normal == vec![4, 1] && rhs == 5, || "hull is not Δ(4, (1, 5))".into())?;
    Ok("ν(L) = 8 points, hull = Δ(4, (1, 5))".into())
}

fn criterion_3() -> Outcome {
    let square = HPolytope::cuboid(&[0, 0], &[2, 2]).unwrap();
    let d = SlideDirection::new(0, 1, 2);
    let s = build_semigroup(&square, Some(&d), 2).unwrap();
    let sat = check_saturation(&s);

    let box_rows = |m: i64| vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 0], 2 * m), (vec![0, 1], 2 * m)];
    let lvl1 = oracle_slide(&oracle_lattice_points(&box_rows(1), 2, 0, 2), 0, 1, 2);
    let lvl2 = oracle_slide(&oracle_lattice_points(&box_rows(2), 2, 0, 4), 0, 1, 2);
    // The x₁ = 1 column keeps (1, 0) and (1, 2); (1, 3) is not a value.
    ensure(lvl1.contains(&vec![1, 2]) && !lvl1.contains(&vec![1, 3]) && lvl1.len() == 9, || {
        format!("oracle level 1 is {lvl1:?}")
    })?;
    ensure(s.level(1).unwrap().points() == &lvl1 && s.level(2).unwrap().points() == &lvl2, || {
        "semigroup levels differ from the oracle".into()
    })?;
    // Smallest degree-1 point missing from S whose double is in S.
    let bound = 2 * 2 * 3;
    let oracle = (0..=bound)
        .flat_map(|x| (0..=bound).map(move |y| vec![x, y]))
        .filter(|x| !lvl1.contains(x) && lvl2.contains(&vec![2 * x[0], 2 * x[1]]))
        .min();
    let Some(want) = oracle else { return Err("oracle found no witness".into()) };
    let w = sat.witness.as_ref().ok_or("library reports saturated")?;
    ensure(w.level == 1 && w.multiple == 2 && w.point == want, || format!("witness {w:?}, oracle {want:?}"))?;
    Ok(format!("not saturated: (1, {:?}) ∉ S, (2, {:?}) ∈ S", want, [2 * want[0], 2 * want[1]]))
}

fn criterion_4() -> Outcome {
    let b = BottData::hirzebruch(0, q(1), q(3)).unwrap();
    let r = verify_degeneration_move(&b, 0, 1, Some(4), 4).map_err(|e| e.to_string())?;
    ensure(r.target == BottData::hirzebruch(4, q(1), q(5)).unwrap(), || format!("target {:?}", r.target))?;
    ensure(r.passed() && r.levels == vec![true; 4], || format!("levels {:?}", r.levels))?;
    ensure(r.ring_map.is_valid(), || "ring map invalid".into())?;
    ensure(r.slide == Some(SlideDirection::new(0, 1, 2)), || "unexpected slide".into())?;

    let p = b.polytope();
    let s = build_semigroup(&p, r.slide.as_ref(), 4).unwrap();
    let cone = check_cone_condition(&s, &r.target.polytope()).unwrap();
    ensure(cone.holds(), || format!("{:?}", cone.certificate))?;
    for m in 1..=4i64 {
        let src = oracle_lattice_points(&[(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 0], m), (vec![0, 1], 3 * m)], 2, 0, 3 * m);
        let tgt = oracle_lattice_points(
            &[(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 0], m), (vec![4, 1], 5 * m)],
            2,
            0,
            5 * m,
        );
        ensure(oracle_slide(&src, 0, 1, 2) == tgt, || format!("oracle level {m} differs"))?;
        ensure(s.level(m as usize).unwrap().points() == &tgt, || format!("library level {m} differs"))?;
    }
    Ok("levels 1..4 match mΔ(4, (1, 5)) ∩ ℤ²".into())
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let mut done = 0;
    while done < 100 {
        let len = rng.gen_range(2..=6);
        let lam: Vec<i64> = (0..len).map(|_| rng.gen_range(-10..=10)).collect();
        let diffs: Vec<i64> =
            (0..len).flat_map(|i| (0..len).map(move |j| (i, j))).map(|(i, j)| (lam[i] - lam[j]).abs()).filter(|&d| d > 0).collect();
        let Some(&want) = diffs.iter().min() else { continue };
        let spec = RootSystemSpec::new(RootFamily::A, len - 1).unwrap();
        let lq = qvec(&lam);
        let got = gw_formula(&spec, &lq).unwrap();
        ensure(got == q(want), || format!("λ = {lam:?}: got {got}, want {want}"))?;

        let mut perm = lq.clone();
        perm.shuffle(&mut rng);
        ensure(gw_formula(&spec, &perm).unwrap() == got, || format!("permutation changes value for {lam:?}"))?;
        let t = q_frac(rng.gen_range(1..=9), rng.gen_range(1..=9));
        let scaled: Vec<Q> = lq.iter().map(|x| x * &t).collect();
        ensure(gw_formula(&spec, &scaled).unwrap() == &got * &t, || format!("scaling fails for {lam:?}"))?;
        done += 1;
    }
    // Weyl invariance and scaling for the other families.
    for (fam, rank, dim) in
        [(RootFamily::B, 3, 3), (RootFamily::C, 3, 3), (RootFamily::D, 4, 4), (RootFamily::G2, 2, 3)]
    {
        let spec = RootSystemSpec::new(fam, rank).unwrap();
        for _ in 0..10 {
            let mut lam: Vec<Q> = (0..dim).map(|_| q_frac(rng.gen_range(-12..=12), rng.gen_range(1..=3))).collect();
            if fam == RootFamily::G2 {
                let mean = lam.iter().fold(Q::zero(), |a, x| a + x) / q(3);
                lam = lam.iter().map(|x| x - &mean).collect();
            }
            let Ok(base) = gw_formula(&spec, &lam) else { continue };
            for i in 0..spec.roots().len() {
                let r = spec.reflect(&lam, i);
                ensure(gw_formula(&spec, &r).unwrap() == base, || format!("{fam}: reflection {i} changes value"))?;
            }
            let t = q_frac(rng.gen_range(1..=9), rng.gen_range(1..=9));
            let scaled: Vec<Q> = lam.iter().map(|x| x * &t).collect();
            ensure(gw_formula(&spec, &scaled).unwrap() == &base * &t, || format!("{fam}: scaling fails"))?;
        }
    }
    Ok("100 type-A weights match min |λ_i - λ_j|; Weyl invariance and scaling hold for A, B, C, D, G2".into())
}

/// Exact optimum of `max a` over `Ψ(𝔖²(a)) + x ⊆ Δ` for one `Ψ`, by
/// enumerating the vertices of the feasibility polytope in `(a, x₁, x₂)`.
fn oracle_lp(facets: &[(Vec<i64>, i64)], psi: &[[i64; 2]; 2]) -> (i128, i128) {
    let mut rows: Vec<([i128; 3], i128)> = vec![([-1, 0, 0], 0)];
    for (n, b) in facets {
        let (n1, n2) = (n[0] as i128, n[1] as i128);
        rows.push(([0, n1, n2], *b as i128));
        for col in 0..2 {
            let g = n1 * psi[0][col] as i128 + n2 * psi[1][col] as i128;
            rows.push(([g, n1, n2], *b as i128));
        }
    }
    let det3 = |m: [[i128; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let mut best: (i128, i128) = (0, 1);
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for k in j + 1..rows.len() {
                let m = [rows[i].0, rows[j].0, rows[k].0];
                let h = [rows[i].1, rows[j].1, rows[k].1];
                let mut d = det3(m);
                if d == 0 {
                    continue;
                }
                let mut z = [0i128; 3];
                for (c, zc) in z.iter_mut().enumerate() {
                    let mut mc = m;
                    for r in 0..3 {
                        mc[r][c] = h[r];
                    }
                    *zc = det3(mc);
                }
                if d < 0 {
                    d = -d;
                    z = [-z[0], -z[1], -z[2]];
                }
                let feasible = rows.iter().all(|(g, hb)| g[0] * z[0] + g[1] * z[1] + g[2] * z[2] <= hb * d);
                if feasible && z[0] * best.1 > best.0 * d {
                    best = (z[0], d);
                }
            }
        }
    }
    best
}

fn oracle_best_simplex(p: &HPolytope, bound: i64) -> Q {
    let facets: Vec<(Vec<i64>, i64)> = p
        .halfspaces()
        .iter()
        .map(|h| (h.normal.clone(), toricdeg::rational::as_integer(&h.rhs).expect("integral rhs")))
        .collect();
    let mut best = Q::zero();
    let r = -bound..=bound;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    if (a * d - b * c).abs() != 1 {
                        continue;
                    }
                    let (num, den) = oracle_lp(&facets, &[[a, b], [c, d]]);
                    let v = Q::new(num.into(), den.into());
                    if v > best {
                        best = v;
                    }
                }
            }
        }
    }
    best
}

fn criterion_6() -> Outcome {
    let square = HPolytope::cuboid(&[0, 0], &[1, 1]).unwrap();
    let fit = best_simplex_lb(&square, 1).map_err(|e| e.to_string())?;
    ensure(fit.a == q(1), || format!("unit square gives {}", fit.a))?;

    let mut rng = rng(6);
    let mut done = 0;
    while done < 25 {
        let k = rng.gen_range(3..=6);
        let pts: Vec<Vec<Q>> = (0..k).map(|_| qvec(&[rng.gen_range(0..=4), rng.gen_range(0..=4)])).collect();
        let p = hull(2, &pts).unwrap();
        if !p.is_full_dimensional() {
            continue;
        }
        let lib = best_simplex_lb(&p, 3).map_err(|e| e.to_string())?;
        let want = oracle_best_simplex(&p, 3);
        ensure(lib.a == want, || format!("polytope {:?}: library {}, oracle {}", p.vertices().unwrap().vertices, lib.a, want))?;
        ensure(fits(&p, &lib).unwrap(), || "returned fit does not fit".into())?;
        ensure(lib.mapped_vertices().iter().all(|v| p.contains(v)), || "mapped vertex outside".into())?;
        done += 1;
    }
    Ok("unit square (B = 1) gives 1; 25 random polygons match the brute-force oracle (B = 3)".into())
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    for t in 0..100 {
        let n = rng.gen_range(1..=5);
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                a[i][j] = rng.gen_range(-5..=5);
            }
        }
        let ring = CohRing::new(&a).unwrap();
        let oracle = RingOracle { a: a.clone() };
        ensure(ring.basis().len() == 1 << n, || format!("case {t}: basis has {} elements", ring.basis().len()))?;

        let gens: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| q(i64::from(i == j))).collect()).collect();
        for i in 0..n {
            let rel = oracle.relation(&a, i, &gens);
            let terms: Vec<(Vec<u32>, Q)> = rel.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
            ensure(ring.reduce(&terms).unwrap().is_zero(), || format!("case {t}: relation {i} not annihilated"))?;
        }
        // Products of basis monomials against the rewriting oracle.
        for _ in 0..8 {
            let (m1, m2) = (rng.gen_range(0..1u32 << n), rng.gen_range(0..1u32 << n));
            let lib = ring.mul(&CohClass::monomial(n, m1, Q::one()), &CohClass::monomial(n, m2, Q::one()));
            let e: Vec<u32> = (0..n).map(|i| (m1 >> i & 1) + (m2 >> i & 1)).collect();
            let want = oracle.reduce(&Poly::from([(e, Q::one())]));
            ensure(class_terms(&lib) == want, || format!("case {t}: product {m1} * {m2}"))?;
        }
        for k in 0..n {
            let y = ring.y(k);
            let alpha = ring.alpha(k);
            let lhs = ring.mul(&y, &y);
            let rhs = ring.mul(&alpha, &alpha).scale(&q_frac(1, 4));
            ensure(class_terms(&lhs) == class_terms(&rhs), || format!("case {t}: y_{k}² ≠ α_{k}²/4"))?;
            let yl = y.linear_part();
            let al = alpha.linear_part();
            let want = oracle.reduce(&oracle.product(&al, &al));
            let want: BTreeMap<u32, Q> = want.into_iter().map(|(m, c)| (m, c * q_frac(1, 4))).filter(|(_, c)| !c.is_zero()).collect();
            ensure(oracle.reduce(&oracle.product(&yl, &yl)) == want, || format!("case {t}: oracle y_{k}²"))?;
            ensure(class_terms(&lhs) == want, || format!("case {t}: library y_{k}² vs oracle"))?;
        }
    }
    Ok("100 random A (n ≤ 5, |entries| ≤ 5): rank 2ⁿ, relations vanish, y_k² = α_k²/4".into())
}

/// Product of `𝓗` models on consecutive blocks, terminal last in each block.
fn standard_model(blocks: &[usize], lambda: &[Q]) -> BottData {
    let n: usize = blocks.iter().sum();
    let mut a = vec![vec![0; n]; n];
    let mut start = 0;
    for &size in blocks {
        let terminal = start + size - 1;
        for row in a.iter_mut().take(terminal).skip(start) {
            row[terminal] = -1;
        }
        start += size;
    }
    BottData::new(a, lambda.to_vec()).unwrap()
}

/// Random certified shifts and relabelings that keep the hypercube property.
fn scramble(rng: &mut ChaCha8Rng, b: &BottData, steps: usize) -> BottData {
    let n = b.n();
    let mut cur = b.clone();
    let mut done = 0;
    let mut attempts = 0;
    while done < steps && attempts < 400 {
        attempts += 1;
        if n >= 2 && rng.gen_bool(0.7) {
            let k = rng.gen_range(0..n - 1);
            let l = rng.gen_range(k + 1..n);
            let delta = *[-2i64, -1, 1, 2].choose(rng).unwrap();
            if let Ok(mv) = shift_move(&cur, k, l, delta) {
                if mv.certified() && is_hypercube(&mv.target) {
                    cur = mv.target;
                    done += 1;
                }
            }
        } else {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            if let Ok(next) = cur.permuted(&perm) {
                if is_hypercube(&next) {
                    cur = next;
                    done += 1;
                }
            }
        }
    }
    cur
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut left = n;
    let mut parts = Vec::new();
    while left > 0 {
        let s = rng.gen_range(1..=left);
        parts.push(s);
        left -= s;
    }
    parts
}

fn check_certificate(b: &BottData, bt: &BottData, d: &Decision) -> Result<(), String> {
    let Decision::Yes(cert) = d else { return Err(format!("expected Yes, got {d:?}")) };
    let n = b.n();
    // Λᵀ(Δ_std(b̃)) = Δ_std(b), compared on vertex sets.
    let lam = &cert.lambda_matrix;
    ensure(det_i(lam).abs() == 1, || "Λ is not unimodular".into())?;
    let src = oracle_bott_vertices(&cert.std_source.data);
    let moved: BTreeSet<Vec<Q>> = oracle_bott_vertices(&cert.std_target.data)
        .iter()
        .map(|v| (0..n).map(|i| (0..n).fold(Q::zero(), |acc, j| acc + q(lam[j][i]) * &v[j])).collect())
        .collect();
    ensure(moved == src, || "Λᵀ does not map Δ_std(b̃) onto Δ_std(b)".into())?;
    // F[ω] = [ω̃].
    let f = &cert.map.matrix;
    ensure(det_i(f).abs() == 1, || "F is not invertible over ℤ".into())?;
    let image: Vec<Q> = (0..n).map(|j| (0..n).fold(Q::zero(), |acc, i| acc + &b.lambda[i] * q(f[i][j]))).collect();
    ensure(image == bt.lambda, || format!("F[ω] = {image:?}, [ω̃] = {:?}", bt.lambda))?;
    // F descends to cohomology.
    let target = RingOracle { a: bt.a.clone() };
    let images: Vec<Vec<Q>> = f.iter().map(|r| qvec(r)).collect();
    for i in 0..n {
        ensure(target.reduce(&target.relation(&b.a, i, &images)).is_empty(), || format!("F kills relation {i}? no"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let (mut yes, mut no) = (0, 0);
    while yes < 50 || no < 50 {
        let n = rng.gen_range(2..=4);
        let blocks = random_partition(&mut rng, n);
        let lambda: Vec<Q> = (0..n).map(|_| q_frac(rng.gen_range(1..=12), rng.gen_range(1..=2))).collect();
        let base = standard_model(&blocks, &lambda);
        if !is_hypercube(&base) {
            continue;
        }
        let b1 = scramble(&mut rng, &base, 5);
        if yes < 50 {
            let b2 = scramble(&mut rng, &base, 5);
            let d = decide_symplectomorphic(&b1, &b2).map_err(|e| e.to_string())?;
            check_certificate(&b1, &b2, &d).map_err(|e| format!("{:?} vs {:?}: {e}", b1, b2))?;
            yes += 1;
        }
        if no < 50 {
            let mut perturbed = lambda.clone();
            let i = rng.gen_range(0..n);
            perturbed[i] += q_frac(1, 2);
            let other = standard_model(&blocks, &perturbed);
            if !is_hypercube(&other) {
                continue;
            }
            let b2 = scramble(&mut rng, &other, 5);
            let d = decide_symplectomorphic(&b1, &b2).map_err(|e| e.to_string())?;
            ensure(!d.is_yes(), || format!("{b1:?} vs perturbed {b2:?}: expected No"))?;
            no += 1;
        }
    }
    Ok("50 scripted equivalent pairs: Yes with verified certificates; 50 perturbed pairs: No".into())
}

fn criterion_9() -> Outcome {
    let mut instances = Vec::new();
    for a in (-8..=8).step_by(2) {
        for l1 in 1..=10 {
            for l2 in 1..=10 {
                let b = BottData::hirzebruch(a, q(l1), q(l2)).unwrap();
                if is_hypercube(&b) {
                    instances.push(b);
                }
            }
        }
    }
    let n = instances.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let disagreements: Vec<(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let c = hirzebruch_classify(&instances[i], &instances[j]).unwrap();
            let d = decide_symplectomorphic(&instances[i], &instances[j]).unwrap();
            c != d.is_yes()
        })
        .copied()
        .collect();
    ensure(disagreements.is_empty(), || {
        let (i, j) = disagreements[0];
        format!("{} disagreements, first {:?} vs {:?}", disagreements.len(), instances[i], instances[j])
    })?;
    Ok(format!("{n} instances, all {} pairs agree", pairs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("slide equals valuation image", criterion_1),
        ("rectangle slide reproduction", criterion_2),
        ("saturation counterexample", criterion_3),
        ("Hirzebruch degeneration end to end", criterion_4),
        ("coroot formula for Gromov width", criterion_5),
        ("simplex search vs brute force", criterion_6),
        ("Bott cohomology ring", criterion_7),
        ("symplectic rigidity decisions", criterion_8),
        ("Hirzebruch consistency", criterion_9),
    ];
    if let Ok(seed) = std::env::var("TORICDEG_SEED") {
        println!("seed {seed}");
    }
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
