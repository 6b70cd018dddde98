//! The acceptance criteria as report checks. `--max-n` caps every degree
//! range at `min(stated bound, max_n)`.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_rational::BigRational;
use parity_groups::abelian::{
    chart, chart_equiv, membership, project_node, quotient_table, IntegerVector, RationalVector, Sublattice,
};
use parity_groups::group::{
    closure, embedded_generators, enumerate_pn, isomorphism, kernel, standard_subgroup, z2_even_weight_span_check,
    EmbeddedKind, StandardKind,
};
use parity_groups::lattice::{automorphism_set, build_complex, full_quotient_automorphisms, rotation_group, verify_prop1};
use parity_groups::lie::{
    bracket_closure, closure_report, factor_monomial, generator_set, odo_decompose, p_formula, random_orthogonal,
    random_unitary, so11_generator, so2_generator, ComplexMatrix, RationalMatrix, Tolerances,
};
use parity_groups::{Caps, ParityKind, PartitionSpec, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::report::{Check, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    All,
    Parity,
    Kernels,
    Listings,
    Generation,
    Quotients,
    Charts,
    Prop1,
    Det,
    Lie,
    Monomial,
    Unitary,
}

impl Criterion {
    const EACH: [Criterion; 11] = [
        Criterion::Parity,
        Criterion::Kernels,
        Criterion::Listings,
        Criterion::Generation,
        Criterion::Quotients,
        Criterion::Charts,
        Criterion::Prop1,
        Criterion::Det,
        Criterion::Lie,
        Criterion::Monomial,
        Criterion::Unitary,
    ];

    fn id(self) -> usize {
        Self::EACH.iter().position(|&c| c == self).map_or(0, |k| k + 1)
    }
}

pub struct Context {
    pub max_n: usize,
    pub caps: Caps,
    pub tol: Tolerances,
}

impl Context {
    fn cap(&self, stated: usize) -> usize {
        stated.min(self.max_n)
    }
}

pub fn run(which: Criterion, ctx: &Context, report: &mut Report) -> Result<()> {
    let list: Vec<Criterion> = if which == Criterion::All {
        Criterion::EACH.to_vec()
    } else {
        vec![which]
    };
    let mut summary = Vec::new();
    for c in list {
        let before = report.checks.len();
        let checks = match c {
            Criterion::Parity => parity(ctx)?,
            Criterion::Kernels => kernels(ctx)?,
            Criterion::Listings => listings(ctx)?,
            Criterion::Generation => generation(ctx)?,
            Criterion::Quotients => quotients(ctx)?,
            Criterion::Charts => charts(ctx)?,
            Criterion::Prop1 => prop1(ctx, report)?,
            Criterion::Det => det(ctx)?,
            Criterion::Lie => lie(ctx)?,
            Criterion::Monomial => monomial(ctx)?,
            Criterion::Unitary => unitary(ctx)?,
            Criterion::All => unreachable!(),
        };
        for mut check in checks {
            check.name = format!("[{}] {}", c.id(), check.name);
            report.check(check);
        }
        let pass = report.checks[before..].iter().all(|k| k.pass);
        summary.push(format!("criterion {:>2} {:?}: {}", c.id(), c, if pass { "PASS" } else { "FAIL" }));
    }
    report.field("criteria", summary);
    Ok(())
}

fn parity(ctx: &Context) -> Result<Vec<Check>> {
    let mut violations = 0usize;
    let mut count = 0usize;
    for n in 1..=ctx.cap(4) {
        let all = enumerate_pn(n, &ctx.caps)?;
        for g in all.iter() {
            for h in all.iter() {
                let gh = g.compose(h)?;
                for kind in ParityKind::ALL {
                    count += 1;
                    if gh.parity(kind) != g.parity(kind) * h.parity(kind) {
                        violations += 1;
                    }
                }
            }
        }
    }
    Ok(vec![
        Check::new(format!("homomorphism violations ({count} checks)"), 0, violations),
    ])
}

fn kernels(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=ctx.cap(5) {
        let half = (1usize << n) * (1..=n).product::<usize>() / 2;
        for (kind, parity) in [
            (StandardKind::AP, ParityKind::Type1),
            (StandardKind::BP, ParityKind::Type2),
            (StandardKind::CP, ParityKind::Type3),
        ] {
            let k = kernel(n, parity, &ctx.caps)?;
            out.push(Check::new(format!("|{kind}_{n}|"), half, k.len()));
            let s = standard_subgroup(kind, n, &ctx.caps)?;
            out.push(Check::new(format!("{kind}_{n} predicate set = kernel"), true, s == k));
        }
    }
    Ok(out)
}

fn listings(ctx: &Context) -> Result<Vec<Check>> {
    let set = |rows: [[[i8; 2]; 2]; 4]| -> HashSet<Vec<Vec<i8>>> {
        rows.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect()
    };
    let bp2 = set([[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, -1]], [[0, -1], [-1, 0]]]);
    let cp2 = set([[[1, 0], [0, 1]], [[0, 1], [-1, 0]], [[-1, 0], [0, -1]], [[0, -1], [1, 0]]]);
    let mut out = Vec::new();
    for (parity, listing, name) in [(ParityKind::Type2, bp2, "BP2"), (ParityKind::Type3, cp2, "CP2")] {
        let k = kernel(2, parity, &ctx.caps)?;
        let got: HashSet<Vec<Vec<i8>>> = k.iter().map(|g| g.to_matrix().entries().to_vec()).collect();
        out.push(Check::new(format!("{name} listing"), true, k.len() == 4 && got == listing));
    }
    Ok(out)
}

fn generation(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 3..=ctx.cap(5) {
        for kind in [EmbeddedKind::CP2, EmbeddedKind::BP2, EmbeddedKind::AP3] {
            let c = closure(&embedded_generators(kind, n, &ctx.caps)?, &ctx.caps)?;
            let target = standard_subgroup(kind.standard(), n, &ctx.caps)?;
            out.push(Check::new(format!("<{kind:?} copies> = {}_{n}", kind.standard()), target.len(), c.len()));
            out.push(Check::new(format!("<{kind:?} copies> equals {}_{n} as a set", kind.standard()), true, c == target));
        }
    }
    for n in 1..=ctx.cap(8) {
        let r = z2_even_weight_span_check(n)?;
        out.push(Check::new(format!("AZ_2^{n} = pair span"), true, r.equal));
    }
    Ok(out)
}

fn box_points(n: usize) -> Vec<IntegerVector> {
    (0..3usize.pow(n as u32))
        .map(|mut k| {
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (k % 3) as i64;
                    k /= 3;
                    d
                })
                .collect();
            IntegerVector::from_i64(&v)
        })
        .collect()
}

fn class_count(points: &[IntegerVector], lattice: &Sublattice) -> Result<usize> {
    let mut reps: Vec<&IntegerVector> = Vec::new();
    for p in points {
        let mut new = true;
        for r in &reps {
            let d = IntegerVector(p.0.iter().zip(&r.0).map(|(a, b)| a - b).collect());
            if membership(&d, lattice)? {
                new = false;
                break;
            }
        }
        if new {
            reps.push(p);
        }
    }
    Ok(reps.len())
}

fn quotients(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=ctx.cap(6) {
        let points = box_points(n);
        out.push(Check::new(format!("|Z^{n}/BZ^{n}|"), 1usize << n, class_count(&points, &Sublattice::B)?));
        let mut bad = 0;
        let parts = PartitionSpec::all_compositions(n);
        for j in &parts {
            let m = j.block_count();
            let nodes: HashSet<_> = points.iter().map(|p| project_node(p, j)).collect::<Result<_>>()?;
            if quotient_table(j)?.order() != 1u64 << m || nodes.len() != 1 << m {
                bad += 1;
            }
        }
        out.push(Check::new(format!("|Z^{n}/JZ^{n}| = 2^m mismatches over {} partitions", parts.len()), 0, bad));
    }
    Ok(out)
}

fn rational(rng: &mut ChaCha20Rng) -> BigRational {
    BigRational::new(rng.random_range(-60i64..=60).into(), rng.random_range(1i64..=12).into())
}

fn charts(ctx: &Context) -> Result<Vec<Check>> {
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let parts: Vec<PartitionSpec> = (1..=ctx.cap(5)).flat_map(PartitionSpec::all_compositions).collect();
    let mut violations = 0;
    for _ in 0..1000 {
        let j = &parts[rng.random_range(0..parts.len())];
        let n = j.degree();
        let x = RationalVector((0..n).map(|_| rational(&mut rng)).collect());
        let y = RationalVector((0..n).map(|_| rational(&mut rng)).collect());
        let mut z: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
        for b in j.blocks() {
            if b.iter().map(|&a| z[a]).sum::<i64>() % 2 != 0 {
                z[b[0]] += 1;
            }
        }
        let cx = chart(&x, j)?;
        if chart(&x.add(&IntegerVector::from_i64(&z).to_rational())?, j)? != cx
            || chart(&x.add(&y)?, j)? != cx.add(&chart(&y, j)?)?
        {
            violations += 1;
        }
    }
    let mut disagreements = 0;
    for k in 0..1000 {
        let j = &parts[rng.random_range(0..parts.len())];
        let n = j.degree();
        let x = RationalVector((0..n).map(|_| rational(&mut rng)).collect());
        let mut d: Vec<i64> = (0..n).map(|_| rng.random_range(-6..=6)).collect();
        for b in j.blocks() {
            if b.iter().map(|&a| d[a]).sum::<i64>() % 2 != 0 {
                d[b[0]] += 1;
            }
        }
        let mut d = IntegerVector::from_i64(&d).to_rational();
        if k % 2 == 1 {
            let a = rng.random_range(0..n);
            let shift = if rng.random_bool(0.5) {
                BigRational::from_integer(1.into())
            } else {
                BigRational::new(1.into(), rng.random_range(2i64..=9).into())
            };
            d.0[a] += shift;
        }
        let expected = match d.to_integer() {
            Some(v) => membership(&v, &Sublattice::J(j.clone()))?,
            None => false,
        };
        if chart_equiv(&x, &x.add(&d)?, j)? != expected || expected != (k % 2 == 0) {
            disagreements += 1;
        }
    }
    Ok(vec![
        Check::new("chart invariance/homomorphism violations (1000)", 0, violations),
        Check::new("chart equality vs membership disagreements (1000 pairs)", 0, disagreements),
    ])
}

fn prop1(ctx: &Context, report: &mut Report) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut orders = Vec::new();
    for n in 1..=ctx.cap(4) {
        for j in PartitionSpec::all_compositions(n) {
            let r = verify_prop1(&j, &ctx.caps)?;
            out.push(Check::new(format!("{j}: image = predicate set"), true, r.predicate_equals_image));
            out.push(Check::new(format!("{j}: image x kernel = jp"), r.jp_order, r.image_order * r.kernel_order));
            out.push(Check::new(format!("{j}: JP/kernel iso rotations"), true, r.iso_check));
            let sizes = j.block_sizes();
            let target = if sizes.len() == 1 {
                Some(("CP", ParityKind::Type3))
            } else if sizes.iter().all(|&s| s == 1) {
                Some(("BP", ParityKind::Type2))
            } else {
                None
            };
            if let Some((name, parity)) = target {
                let c = build_complex(&j)?;
                let rot = automorphism_set(&c, &rotation_group(&c, &ctx.caps)?)?.to_group()?;
                let k = kernel(n, parity, &ctx.caps)?.to_group()?;
                let iso = isomorphism(&rot, &k, ctx.caps.iso)?.is_some();
                out.push(Check::new(format!("{j}: rotations iso {name}_{n}"), true, iso));
            }
            orders.push(format!(
                "{j}: jp {} kernel {} rotations {}",
                r.jp_order, r.kernel_order, r.rotation_order
            ));
        }
    }
    let one = build_complex(&PartitionSpec::from_sizes(&[1])?)?;
    out.push(Check::new("L^1/2Z rotation group order", 1, rotation_group(&one, &ctx.caps)?.len()));
    for n in 1..=ctx.cap(4) {
        let f = full_quotient_automorphisms(n, &ctx.caps)?;
        out.push(Check::new(format!("|Aut L^{n}/Z^{n}|"), (1usize << n) * (1..=n).product::<usize>(), f.order()));
        out.push(Check::new(format!("Aut L^{n}/Z^{n} iso P_{n}"), true, f.isomorphic_to_pn(&ctx.caps)?));
    }
    report.field("prop1_orders", orders);
    Ok(out)
}

fn det(ctx: &Context) -> Result<Vec<Check>> {
    let mut bad = 0;
    let mut count = 0;
    for n in 1..=ctx.cap(4) {
        for z in enumerate_pn(n, &ctx.caps)?.iter() {
            let rows: Vec<Vec<i64>> = z.to_matrix().entries().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let d = RationalMatrix::from_i64(&refs)?.det();
            count += 1;
            if d != BigRational::from_integer(z.parity(ParityKind::Type3).to_i32().into()) {
                bad += 1;
            }
        }
    }
    Ok(vec![Check::new(format!("det vs Type3 mismatches ({count} elements)"), 0, bad)])
}

fn lie(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=ctx.cap(5) {
        let d = bracket_closure(&generator_set(&PartitionSpec::from_sizes(&[n])?, true))?.dimension();
        out.push(Check::new(format!("dim closure \"{n}\""), n * (n - 1) / 2, d));
    }
    if ctx.max_n >= 2 {
        let d = bracket_closure(&generator_set(&PartitionSpec::from_sizes(&[1, 1])?, true))?.dimension();
        out.push(Check::new("dim closure \"1,1\"", 1, d));
    }
    if ctx.max_n >= 3 {
        let b = bracket_closure(&generator_set(&PartitionSpec::from_sizes(&[2, 1])?, true))?;
        out.push(Check::new("dim closure \"2,1\"", 3, b.dimension()));
        let hand = [so2_generator(1, 2, 3)?, so11_generator(1, 3, 3)?, so11_generator(2, 3, 3)?];
        out.push(Check::new("\"2,1\" closure spans the hand brackets", true, hand.iter().all(|m| b.contains(m))));
    }
    let mut bad = 0;
    let mut count = 0;
    for n in 1..=ctx.cap(4) {
        for j in PartitionSpec::all_compositions(n) {
            let r = closure_report(&j)?;
            let m = j.block_count();
            let hand = j.block_sizes().iter().map(|&s| s * (s - 1) / 2).sum::<usize>() + m * (m - 1) / 2;
            count += 1;
            if !r.spans_equal || p_formula(&j) != hand {
                bad += 1;
            }
        }
    }
    out.push(Check::new(format!("span or p mismatches ({count} partitions)"), 0, bad));
    Ok(out)
}

fn monomial(ctx: &Context) -> Result<Vec<Check>> {
    let mut rng = ChaCha20Rng::seed_from_u64(10);
    let top = ctx.cap(6);
    let mut bad = 0;
    for case in 0..100 {
        let n = 1 + case % top;
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            images.swap(i, rng.random_range(0..=i));
        }
        let mut m = RationalMatrix::zeros(n);
        for (col, &row) in images.iter().enumerate() {
            let v = BigRational::new(rng.random_range(1i64..=50).into(), rng.random_range(1i64..=9).into());
            m.set(row, col, if rng.random_bool(0.5) { -v } else { v });
        }
        if factor_monomial(&m)?.reconstruct() != m {
            bad += 1;
        }
    }
    Ok(vec![Check::new(format!("P·D reconstruction failures (100 cases, n <= {top})"), 0, bad)])
}

fn unitary(ctx: &Context) -> Result<Vec<Check>> {
    let top = ctx.cap(8);
    let (mut worst_rec, mut worst_orth, mut theta_ok, mut failures) = (0.0f64, 0.0f64, true, 0);
    for seed in 0..100u64 {
        let n = 1 + (seed as usize % top);
        let u = random_unitary(n, seed)?;
        match odo_decompose(&u, &ctx.tol) {
            Ok(r) => {
                worst_rec = worst_rec.max((u.matrix() - r.reconstruct()).norm());
                worst_orth = worst_orth.max(r.orthogonality_error);
                theta_ok &= r.thetas.iter().all(|&t| t > -PI / 2.0 && t <= PI / 2.0);
            }
            Err(_) => failures += 1,
        }
    }
    let mut zero_phase = true;
    for seed in 0..20u64 {
        let o = random_orthogonal(1 + (seed as usize % top), seed)?;
        let r = odo_decompose(&ComplexMatrix::from_real(&o), &ctx.tol)?;
        zero_phase &= r.thetas.iter().all(|t| t.abs() <= 1e-12);
    }
    let mut identity_ok = true;
    for n in 1..=top {
        let r = odo_decompose(&ComplexMatrix::identity(n), &ctx.tol)?;
        let prod = &r.o1 * &r.o2;
        identity_ok &= r.thetas.iter().all(|&t| t == 0.0) && (0..n).all(|i| (prod[(i, i)] - 1.0).abs() < 1e-12);
    }
    Ok(vec![
        Check::new("decomposition failures (100 unitaries)", 0, failures),
        Check::with_pass("max reconstruction error", "<= 1e-9", format!("{worst_rec:.2e}"), worst_rec <= 1e-9),
        Check::with_pass("max orthogonality error", "<= 1e-10", format!("{worst_orth:.2e}"), worst_orth <= 1e-10),
        Check::new("theta in (-pi/2, pi/2]", true, theta_ok),
        Check::new("real orthogonal inputs give zero phases", true, zero_phase),
        Check::new("identity gives identity factors", true, identity_ok),
    ])
}
