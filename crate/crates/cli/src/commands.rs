use parity_groups::abelian::{
    chart, chart_equiv, membership, project_node, quotient_table, spherical, Chart, RationalVector, Sublattice,
};
use parity_groups::group::{
    closure, embedded_generators, enumerate_pn, isomorphism, jp_enumerate, kernel, standard_subgroup,
    z2_even_weight_span_check, ElementSet,
};
use parity_groups::lattice::{
    automorphism_set, build_complex, full_quotient_automorphisms, rotation_group, verify_prop1,
};
use parity_groups::lie::{
    bracket_closure, closure_report, factor_monomial, generator_set, is_bracket_closed, odo_decompose, p_formula,
    random_unitary, ComplexMatrix, RationalMatrix, TwoByTwo,
};
use parity_groups::{Caps, Error, ParityKind, Result, SignedPermutation};

use crate::report::{Check, Report};
use crate::verify::{self, Context};
use crate::*;

pub(crate) fn dispatch(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let caps = g.caps();
    match &cli.command {
        Command::Verify(a) => {
            let mut r = report_for("verify", g, a);
            let ctx = Context {
                max_n: a.max_n as usize,
                caps,
                tol: g.tolerances()?,
            };
            verify::run(a.criterion, &ctx, &mut r)?;
            Ok(r)
        }
        Command::Group(c) => group(c, g, &caps),
        Command::Quotient(c) => quotient(c, g),
        Command::Chart(c) => chart_cmd(c, g),
        Command::Lattice(c) => lattice(c, g, &caps),
        Command::Lie(c) => lie(c, g),
        Command::Unitary(c) => unitary(c, g),
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `|P_n| = 2^n n!`, halved for the parity kernels.
fn expected_order(kind: GroupKind, n: usize) -> u128 {
    let full = (1u128 << n) * factorial(n);
    if kind == GroupKind::P {
        full
    } else {
        full / 2
    }
}

fn group_set(kind: GroupKind, n: usize, caps: &Caps) -> Result<ElementSet> {
    match kind.standard() {
        None => enumerate_pn(n, caps),
        Some(k) => standard_subgroup(k, n, caps),
    }
}

fn strings(set: &ElementSet) -> Vec<String> {
    set.iter().map(ToString::to_string).collect()
}

fn group(c: &GroupCmd, g: &GlobalArgs, caps: &Caps) -> Result<Report> {
    match c {
        GroupCmd::Order(a) => {
            let mut r = report_for("group order", g, a);
            let set = group_set(a.kind, a.n, caps)?;
            r.field("order", set.len());
            r.check(Check::new("order = 2^n n! / index", expected_order(a.kind, a.n), set.len() as u128));
            Ok(r)
        }
        GroupCmd::List(a) => {
            let mut r = report_for("group list", g, a);
            let set = group_set(a.kind, a.n, caps)?;
            r.field("order", set.len());
            r.field("elements", strings(&set));
            r.check(Check::new("closed under composition", true, set.is_group()));
            Ok(r)
        }
        GroupCmd::Kernel(a) => {
            let mut r = report_for("group kernel", g, a);
            let k = kernel(a.n, a.parity, caps)?;
            r.field("order", k.len());
            if a.list {
                r.field("elements", strings(&k));
            }
            r.check(Check::new("order = 2^n n! / 2", expected_order(GroupKind::AP, a.n), k.len() as u128));
            r.check(Check::new("every element has parity +1", true, k.iter().all(|e| e.parity(a.parity).is_plus())));
            Ok(r)
        }
        GroupCmd::Parity(a) => {
            let mut r = report_for("group parity", g, a);
            let e = &a.element;
            let [p1, p2, p3] = ParityKind::ALL.map(|k| e.parity(k).to_i32());
            r.field("type1", p1).field("type2", p2).field("type3", p3);
            r.check(Check::new("type3 = type1 · type2", p1 * p2, p3));
            Ok(r)
        }
        GroupCmd::Compose(a) => {
            let mut r = report_for("group compose", g, a);
            let p = a.left.compose(&a.right)?;
            r.field("product", p.to_string());
            for kind in ParityKind::ALL {
                r.check(Check::new(
                    format!("{kind:?} multiplicative"),
                    a.left.parity(kind).to_i32() * a.right.parity(kind).to_i32(),
                    p.parity(kind).to_i32(),
                ));
            }
            Ok(r)
        }
        GroupCmd::Matrix(a) => {
            let mut r = report_for("group matrix", g, a);
            let m = a.element.to_matrix();
            r.field("matrix", m.entries());
            let back = SignedPermutation::from_matrix(&m)?;
            r.check(Check::new("matrix decodes to the element", a.element.to_string(), back.to_string()));
            Ok(r)
        }
        GroupCmd::Generate(a) => {
            let mut r = report_for("group generate", g, a);
            let gens = embedded_generators(a.kind.embedded(), a.n, caps)?;
            let c = closure(&gens, caps)?;
            let target = standard_subgroup(a.kind.embedded().standard(), a.n, caps)?;
            r.field("generators", gens.iter().map(ToString::to_string).collect::<Vec<_>>());
            r.field("closure_order", c.len());
            r.check(Check::new(
                format!("closure = {}_{}", a.kind.embedded().standard(), a.n),
                target.len(),
                c.len(),
            ));
            r.check(Check::new("closure equals the kernel as a set", true, c == target));
            Ok(r)
        }
        GroupCmd::Iso(a) => {
            let mut r = report_for("group iso", g, a);
            let x = group_set(a.kind, a.n, caps)?.to_group()?;
            let y = group_set(a.other, a.n, caps)?.to_group()?;
            let map = isomorphism(&x, &y, caps.iso)?;
            r.field("isomorphic", map.is_some());
            r.field("order_histogram_left", x.order_histogram());
            r.field("order_histogram_right", y.order_histogram());
            Ok(r)
        }
        GroupCmd::Jp(a) => {
            let mut r = report_for("group jp", g, a);
            let jp = jp_enumerate(&a.partition, caps)?;
            let sizes = a.partition.block_sizes();
            // block signs with product +1
            let mut expected: u128 = 1 << (sizes.len() - 1);
            for &s in &sizes {
                expected *= expected_order(GroupKind::CP, s);
            }
            let mut counts = std::collections::BTreeMap::new();
            for &s in &sizes {
                *counts.entry(s).or_insert(0usize) += 1;
            }
            for &k in counts.values() {
                expected *= factorial(k);
            }
            r.field("order", jp.len());
            r.check(Check::new("order = 2^(m-1) · Π |CP_k| · Π (equal blocks)!", expected, jp.len() as u128));
            Ok(r)
        }
        GroupCmd::Z2span(a) => {
            let mut r = report_for("group z2span", g, a);
            let rep = z2_even_weight_span_check(a.n)?;
            r.field("even_weight_count", rep.even_weight_count);
            r.field("pair_span_count", rep.pair_span_count);
            r.check(Check::new("span = even-weight subgroup", true, rep.equal));
            r.check(Check::new("order = 2^(n-1)", 1u64 << (a.n - 1), rep.pair_span_count));
            Ok(r)
        }
    }
}

fn quotient(c: &QuotientCmd, g: &GlobalArgs) -> Result<Report> {
    match c {
        QuotientCmd::Order(a) => {
            let mut r = report_for("quotient order", g, a);
            let q = quotient_table(&a.partition)?;
            r.field("order", q.order());
            r.check(Check::new("order = 2^blocks", 1u64 << a.partition.block_count(), q.order()));
            Ok(r)
        }
        QuotientCmd::Table(a) => {
            let mut r = report_for("quotient table", g, a);
            let q = quotient_table(&a.partition)?;
            r.field("order", q.order());
            r.field("group", &q);
            Ok(r)
        }
        QuotientCmd::Project(a) => {
            let mut r = report_for("quotient project", g, a);
            let node = project_node(&a.x, &a.partition)?;
            let bits: Vec<u8> = node.bits().iter().map(|&b| b as u8).collect();
            r.field("node", &bits);
            let in_j = membership(&a.x, &Sublattice::J(a.partition.clone()))?;
            r.check(Check::new("zero node iff x in JZ^n", in_j, bits.iter().all(|&b| b == 0)));
            Ok(r)
        }
        QuotientCmd::Member(a) => {
            let mut r = report_for("quotient member", g, a);
            let which = match a.lattice {
                LatticeKind::A => Sublattice::A,
                LatticeKind::B => Sublattice::B,
                LatticeKind::J => Sublattice::J(
                    a.partition
                        .clone()
                        .ok_or_else(|| Error::Invalid("--lattice J needs --partition".into()))?,
                ),
            };
            r.field("member", membership(&a.x, &which)?);
            Ok(r)
        }
    }
}

fn chart_cmd(c: &ChartCmd, g: &GlobalArgs) -> Result<Report> {
    match c {
        ChartCmd::Compute(a) => {
            let mut r = report_for("chart compute", g, a);
            let ch = chart(&a.x, &a.partition)?;
            r.field("chart", &ch);
            if a.spherical {
                let angles = (0..a.partition.block_count())
                    .map(|i| {
                        spherical(&ch, i).map(|s| {
                            serde_json::json!({
                                "phi": s.phi.to_string(),
                                "theta": s.theta.iter().map(ToString::to_string).collect::<Vec<_>>(),
                            })
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                r.field("spherical", angles);
            }
            let text = serde_json::to_string(&ch).map_err(|e| Error::Invalid(e.to_string()))?;
            let back: Chart = serde_json::from_str(&text).map_err(|e| Error::Invalid(e.to_string()))?;
            r.check(Check::new("chart JSON round-trips", true, back == ch));
            Ok(r)
        }
        ChartCmd::Equiv(a) => {
            let mut r = report_for("chart equiv", g, a);
            let eq = chart_equiv(&a.x, &a.y, &a.partition)?;
            r.field("equivalent", eq);
            // second route: x - y must be an integer vector in JZ^n
            let diff_in_j = match a.x.sub(&a.y)?.to_integer() {
                Some(d) => membership(&d, &Sublattice::J(a.partition.clone()))?,
                None => false,
            };
            r.check(Check::new("charts agree iff x - y in JZ^n", diff_in_j, eq));
            Ok(r)
        }
    }
}

fn lattice(c: &LatticeCmd, g: &GlobalArgs, caps: &Caps) -> Result<Report> {
    match c {
        LatticeCmd::Complex(a) => {
            let mut r = report_for("lattice complex", g, a);
            let cx = build_complex(&a.partition)?;
            let m = a.partition.block_count();
            let n = a.partition.degree();
            r.field("complex", &cx);
            r.check(Check::new("nodes = 2^m", 1usize << m, cx.nodes().len()));
            r.check(Check::new("circles = n·2^(m-1)", n << (m - 1), cx.circles().len()));
            r.check(Check::new("well formed", true, cx.is_well_formed()));
            Ok(r)
        }
        LatticeCmd::Prop1(a) => {
            let mut r = report_for("lattice prop1", g, a);
            let rep = verify_prop1(&a.partition, caps)?;
            r.field("jp_order", rep.jp_order)
                .field("image_order", rep.image_order)
                .field("kernel_order", rep.kernel_order)
                .field("rotation_order", rep.rotation_order)
                .field("homomorphism_pairs", rep.homomorphism_pairs)
                .field("size_preserving_blocks", rep.size_preserving_blocks)
                .field("relation", &rep.relation);
            r.check(Check::new("image = rotation predicate set", true, rep.predicate_equals_image));
            r.check(Check::new("|image|·|kernel| = |JP|", rep.jp_order, rep.image_order * rep.kernel_order));
            r.check(Check::new("JP/kernel iso rotations", true, rep.iso_check));
            Ok(r)
        }
        LatticeCmd::Rotations(a) => {
            let mut r = report_for("lattice rotations", g, a);
            let cx = build_complex(&a.partition)?;
            let rot = rotation_group(&cx, caps)?;
            let set = automorphism_set(&cx, &rot)?;
            r.field("order", set.len());
            if a.list {
                r.field("elements", strings(&set));
            }
            r.check(Check::new("closed under composition", true, set.is_group()));
            Ok(r)
        }
        LatticeCmd::Full(a) => {
            let mut r = report_for("lattice full", g, a);
            let f = full_quotient_automorphisms(a.n, caps)?;
            r.field("order", f.order());
            r.check(Check::new("order = 2^n n!", expected_order(GroupKind::P, a.n), f.order() as u128));
            r.check(Check::new("isomorphic to P_n", true, f.isomorphic_to_pn(caps)?));
            Ok(r)
        }
    }
}

fn parse_rational_matrix(text: &str) -> Result<RationalMatrix> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("matrix JSON: {e}")))
}

fn two_by_two(kind: AlgebraArg, v: &RationalVector) -> Result<TwoByTwo> {
    match v.0.as_slice() {
        [x, y] => Ok(TwoByTwo::new(kind.kind(), x.clone(), y.clone())),
        _ => Err(Error::Invalid(format!("algebra element needs two entries `x,y`, got {}", v.len()))),
    }
}

fn lie(c: &LieCmd, g: &GlobalArgs) -> Result<Report> {
    match c {
        LieCmd::Generators(a) => {
            let mut r = report_for("lie generators", g, a);
            let gens = generator_set(&a.partition, !a.full);
            r.field("count", gens.len());
            r.field("generators", &gens);
            if !a.full {
                r.check(Check::new("count = p", p_formula(&a.partition), gens.len()));
            }
            Ok(r)
        }
        LieCmd::Closure(a) => {
            let mut r = report_for("lie closure", g, a);
            let gens = generator_set(&a.partition, !a.full);
            let basis = bracket_closure(&gens)?;
            r.field("dimension", basis.dimension());
            r.field("basis", &basis.basis);
            r.check(Check::new("span is bracket-closed", true, is_bracket_closed(&basis)?));
            r.check(Check::new("generators lie in the span", true, gens.iter().all(|m| basis.contains(m))));
            Ok(r)
        }
        LieCmd::Report(a) => {
            let mut r = report_for("lie report", g, a);
            let rep = closure_report(&a.partition)?;
            r.field("p", rep.p)
                .field("dim_minimal", rep.dim_minimal)
                .field("dim_full", rep.dim_full);
            r.check(Check::new("minimal and full generators span the same algebra", true, rep.spans_equal));
            Ok(r)
        }
        LieCmd::Factor(a) => {
            let mut r = report_for("lie factor", g, a);
            let m = parse_rational_matrix(&a.matrix)?;
            let f = factor_monomial(&m)?;
            r.field("factor", &f);
            r.check(Check::new("P·D reconstructs the input", &m, f.reconstruct()));
            Ok(r)
        }
        LieCmd::Algebra(a) => {
            let mut r = report_for("lie algebra", g, a);
            let x = two_by_two(a.kind, &a.a)?;
            let y = two_by_two(a.kind, a.b.as_ref().unwrap_or(&a.a))?;
            let prod = x.mul(&y)?;
            let sum = x.add(&y)?;
            r.field("sum", sum.to_string())
                .field("product", prod.to_string())
                .field("det", parity_groups::abelian::format_rational(&x.det()));
            r.field("inverse", x.inverse().map(|i| i.to_string()));
            if a.kind != AlgebraArg::A {
                r.field("det_one", x.det_kernel_member()?);
            }
            r.check(Check::new("product matches the matrix product", x.to_matrix().mul(&y.to_matrix())?, prod.to_matrix()));
            r.check(Check::new("product commutes", prod.to_string(), y.mul(&x)?.to_string()));
            r.check(Check::new("det is multiplicative", true, x.det() * y.det() == prod.det()));
            Ok(r)
        }
        LieCmd::Exp(a) => {
            let mut r = report_for("lie exp", g, a);
            let tol = g.tolerances()?.reconstruction;
            let (series, closed, det) = exp_demo(a.kind, a.t)?;
            r.field("exp", series);
            // errors are relative to the largest entry, which grows like e^|t| for B
            let scale = closed.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
            let diff = (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| (series[i][j] - closed[i][j]).abs())
                .fold(0.0, f64::max)
                / scale;
            r.check(Check::with_pass("series matches closed form", format!("<= {tol:e}"), diff, diff <= tol));
            let det_err = (det - 1.0).abs() / (scale * scale);
            r.check(Check::with_pass("det = 1", format!("<= {tol:e}"), det_err, det_err <= tol));
            Ok(r)
        }
    }
}

type M2 = [[f64; 2]; 2];

/// `exp(tX)` for the generator `X` of the `det = 1` subgroup of B or C, by
/// power series and by closed form.
fn exp_demo(kind: AlgebraArg, t: f64) -> Result<(M2, M2, f64)> {
    if !t.is_finite() || t.abs() > 20.0 {
        return Err(Error::Invalid(format!("t must be finite with |t| <= 20, got {t}")));
    }
    let (x, closed): (M2, M2) = match kind {
        AlgebraArg::A => return Err(Error::UnsupportedKind(kind.kind())),
        AlgebraArg::B => ([[0.0, 1.0], [1.0, 0.0]], [[t.cosh(), t.sinh()], [t.sinh(), t.cosh()]]),
        AlgebraArg::C => ([[0.0, 1.0], [-1.0, 0.0]], [[t.cos(), t.sin()], [-t.sin(), t.cos()]]),
    };
    let mul = |a: &M2, b: &M2| -> M2 {
        let mut c = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        c
    };
    let mut sum = [[1.0, 0.0], [0.0, 1.0]];
    let mut term = sum;
    let tx = [[t * x[0][0], t * x[0][1]], [t * x[1][0], t * x[1][1]]];
    for k in 1..200 {
        term = mul(&term, &tx);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
    }
    let det = sum[0][0] * sum[1][1] - sum[0][1] * sum[1][0];
    Ok((sum, closed, det))
}

fn unitary(c: &UnitaryCmd, g: &GlobalArgs) -> Result<Report> {
    let tol = g.tolerances()?;
    match c {
        UnitaryCmd::Random(a) => {
            let mut r = report_for("unitary random", g, a);
            let u = random_unitary(a.n, a.seed)?;
            r.field("matrix", &u);
            let err = u.unitarity_error();
            r.check(Check::with_pass("unitarity error", format!("<= {:e}", tol.unitarity), err, err <= tol.unitarity));
            Ok(r)
        }
        UnitaryCmd::Decompose(a) => {
            let mut r = report_for("unitary decompose", g, a);
            let u = match (&a.matrix, a.n) {
                (Some(text), _) => {
                    serde_json::from_str::<ComplexMatrix>(text).map_err(|e| Error::Invalid(format!("matrix JSON: {e}")))?
                }
                (None, Some(n)) => random_unitary(n, a.seed)?,
                (None, None) => return Err(Error::Invalid("give --matrix or --n".into())),
            };
            match odo_decompose(&u, &tol) {
                Ok(d) => {
                    r.field("decomposition", &d);
                    // independent residual from the returned factors
                    let diff = (d.reconstruct() - u.matrix()).norm();
                    r.check(Check::with_pass(
                        "reconstruction error",
                        format!("<= {:e}", tol.reconstruction),
                        diff,
                        diff <= tol.reconstruction,
                    ));
                    r.check(Check::with_pass(
                        "orthogonality error",
                        format!("<= {:e}", tol.orthogonality),
                        d.orthogonality_error,
                        d.orthogonality_error <= tol.orthogonality,
                    ));
                    r.check(Check::with_pass(
                        "imaginary residue",
                        format!("<= {:e}", tol.imaginary),
                        d.imaginary_residue,
                        d.imaginary_residue <= tol.imaginary,
                    ));
                }
                Err(Error::ResidueCheck { what, value, tol }) => {
                    r.check(Check::with_pass(what, format!("<= {tol:e}"), value, false));
                }
                Err(e) => return Err(e),
            }
            Ok(r)
        }
    }
}
