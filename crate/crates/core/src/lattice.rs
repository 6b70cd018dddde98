//! Quotient lattices `L^n / JZ^n` as finite node/circle complexes, their
//! based automorphisms, and the comparison of discrete rotations with the
//! abstract group `JP`.
//!
//! A node is the block-parity class of an integer point (`Z_2^m`). The line
//! through a node along axis `j` of block `i` closes into a circle that
//! meets the two nodes differing in bit `i`. For the full quotient
//! `L^n / Z^n` there is a single node and every line closes into a
//! projective line through it.
//!
//! Automorphisms are the covering-induced maps: a size-preserving block
//! permutation `τ`, an axis bijection `s` carrying block `i` onto block
//! `τ(i)`, and one orientation sign per axis. As a signed permutation the
//! triple is `e_j ↦ ε_j e_{s(j)}`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{
    all_permutations, all_sign_vectors, enumerate_pn, isomorphism, jp_enumerate, size_preserving_block_perms,
    Caps, ElementSet, FiniteGroup, JPElement, Z2Vector,
};
use crate::partition::PartitionSpec;
use crate::signed_perm::{permutation_sign, Sign, SignedPermutation};

/// Largest block count and degree accepted by [`build_complex`].
pub const MAX_COMPLEX_BLOCKS: usize = 10;
pub const MAX_COMPLEX_DEGREE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CircleKind {
    /// Circle of circumference two through two distinct nodes.
    Circle2,
    /// Projective line closing through a single node.
    ProjLine,
}

impl CircleKind {
    /// Orientation multipliers a discrete rotation may apply to one circle.
    pub fn admissible_multipliers(self) -> &'static [Sign] {
        match self {
            CircleKind::Circle2 => &[Sign::Plus],
            CircleKind::ProjLine => &[Sign::Plus, Sign::Minus],
        }
    }
}

/// Circle along `axis` (in `block`) whose remaining node bits are `other`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circle {
    pub block: usize,
    pub axis: usize,
    pub other: Z2Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientComplex {
    partition: PartitionSpec,
    kind: CircleKind,
    node_bits: usize,
    nodes: Vec<Z2Vector>,
    circles: Vec<Circle>,
}

impl QuotientComplex {
    pub fn partition(&self) -> &PartitionSpec {
        &self.partition
    }

    pub fn kind(&self) -> CircleKind {
        self.kind
    }

    pub fn nodes(&self) -> &[Z2Vector] {
        &self.nodes
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn degree(&self) -> usize {
        self.partition.degree()
    }

    /// The two endpoint nodes of a circle (equal for a projective line).
    pub fn endpoints(&self, c: &Circle) -> [Z2Vector; 2] {
        match self.kind {
            CircleKind::Circle2 => [c.other.with_inserted(c.block, false), c.other.with_inserted(c.block, true)],
            CircleKind::ProjLine => [Z2Vector::zeros(0), Z2Vector::zeros(0)],
        }
    }

    pub fn is_incident(&self, node: &Z2Vector, c: &Circle) -> bool {
        self.endpoints(c).contains(node)
    }

    /// Circles meeting `node`, one per axis.
    pub fn circles_at(&self, node: &Z2Vector) -> Vec<&Circle> {
        self.circles.iter().filter(|c| self.is_incident(node, c)).collect()
    }

    /// Node index of `v` (its bit mask).
    pub fn node_index(&self, v: &Z2Vector) -> usize {
        v.to_mask() as usize
    }

    /// Checks node and circle counts, per-node degree and the endpoint rule.
    pub fn is_well_formed(&self) -> bool {
        let n = self.degree();
        let expected_circles = match self.kind {
            CircleKind::Circle2 => n << (self.node_bits - 1),
            CircleKind::ProjLine => n,
        };
        self.nodes.len() == 1 << self.node_bits
            && self.circles.len() == expected_circles
            && self.nodes.iter().all(|v| {
                let at = self.circles_at(v);
                let mut axes: Vec<usize> = at.iter().map(|c| c.axis).collect();
                axes.sort_unstable();
                at.len() == n && axes == (0..n).collect::<Vec<_>>()
            })
            && self.circles.iter().all(|c| {
                let [a, b] = self.endpoints(c);
                match self.kind {
                    CircleKind::Circle2 => {
                        a != b && a.add(&b).map(|d| d.to_mask() == 1 << c.block).unwrap_or(false)
                    }
                    CircleKind::ProjLine => a == b,
                }
            })
    }
}

impl Serialize for QuotientComplex {
    /// `{partition, kind, nodes, circles, incidence}`; blocks and axes are
    /// 1-based, incidence lists node indices into `nodes`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct CircleJson {
            block: usize,
            axis: usize,
            other: Vec<u8>,
        }
        #[derive(Serialize)]
        struct ComplexJson<'a> {
            partition: &'a PartitionSpec,
            kind: CircleKind,
            nodes: Vec<Vec<u8>>,
            circles: Vec<CircleJson>,
            incidence: Vec<[usize; 2]>,
        }
        let bits = |v: &Z2Vector| v.bits().iter().map(|&b| b as u8).collect::<Vec<u8>>();
        ComplexJson {
            partition: &self.partition,
            kind: self.kind,
            nodes: self.nodes.iter().map(bits).collect(),
            circles: self
                .circles
                .iter()
                .map(|c| CircleJson {
                    block: c.block + 1,
                    axis: c.axis + 1,
                    other: bits(&c.other),
                })
                .collect(),
            incidence: self
                .circles
                .iter()
                .map(|c| {
                    let [a, b] = self.endpoints(c);
                    [self.node_index(&a), self.node_index(&b)]
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// `2^m` nodes and `n·2^(m-1)` two-node circles.
pub fn build_complex(j: &PartitionSpec) -> Result<QuotientComplex> {
    let m = j.block_count();
    let n = j.degree();
    if m > MAX_COMPLEX_BLOCKS {
        return Err(Error::CapExceeded {
            what: "complex block count",
            limit: MAX_COMPLEX_BLOCKS as u64,
        });
    }
    if n > MAX_COMPLEX_DEGREE {
        return Err(Error::DegreeTooLarge {
            n,
            max: MAX_COMPLEX_DEGREE,
        });
    }
    let nodes = (0..1u64 << m).map(|k| Z2Vector::from_mask(k, m)).collect();
    let mut circles = Vec::with_capacity(n << (m - 1));
    for (i, block) in j.blocks().iter().enumerate() {
        for &axis in block {
            for w in 0..1u64 << (m - 1) {
                circles.push(Circle {
                    block: i,
                    axis,
                    other: Z2Vector::from_mask(w, m - 1),
                });
            }
        }
    }
    Ok(QuotientComplex {
        partition: j.clone(),
        kind: CircleKind::Circle2,
        node_bits: m,
        nodes,
        circles,
    })
}

/// `L^n / Z^n`: one node and `n` projective lines.
pub fn build_full_quotient(n: usize) -> Result<QuotientComplex> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > MAX_COMPLEX_DEGREE {
        return Err(Error::DegreeTooLarge {
            n,
            max: MAX_COMPLEX_DEGREE,
        });
    }
    let partition = PartitionSpec::singletons(n)?;
    let circles = (0..n)
        .map(|axis| Circle {
            block: axis,
            axis,
            other: Z2Vector::zeros(0),
        })
        .collect();
    Ok(QuotientComplex {
        partition,
        kind: CircleKind::ProjLine,
        node_bits: 0,
        nodes: vec![Z2Vector::zeros(0)],
        circles,
    })
}

/// A based automorphism `(τ, s, ε)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasedAutomorphism {
    tau: Vec<usize>,
    axis_map: Vec<usize>,
    orientation: Vec<Sign>,
}

impl BasedAutomorphism {
    /// Validates that `τ` preserves block sizes and `s` carries each block
    /// onto its image block.
    pub fn new(
        complex: &QuotientComplex,
        tau: Vec<usize>,
        axis_map: Vec<usize>,
        orientation: Vec<Sign>,
    ) -> Result<Self> {
        let j = complex.partition();
        let m = j.block_count();
        let n = j.degree();
        if tau.len() != m || axis_map.len() != n || orientation.len() != n {
            return Err(Error::Invalid("automorphism shape does not match the complex".into()));
        }
        let mut hit = vec![false; m];
        for (i, &t) in tau.iter().enumerate() {
            if t >= m || std::mem::replace(&mut hit[t], true) || j.block(t).len() != j.block(i).len() {
                return Err(Error::Invalid("block permutation must be a size-preserving bijection".into()));
            }
        }
        let mut axis_hit = vec![false; n];
        for (axis, &target) in axis_map.iter().enumerate() {
            if target >= n || std::mem::replace(&mut axis_hit[target], true) {
                return Err(Error::Invalid("axis map is not a bijection".into()));
            }
            if j.block_of(target) != tau[j.block_of(axis)] {
                return Err(Error::Invalid("axis map does not follow the block permutation".into()));
            }
        }
        Ok(BasedAutomorphism {
            tau,
            axis_map,
            orientation,
        })
    }

    pub fn identity(complex: &QuotientComplex) -> Self {
        let n = complex.degree();
        BasedAutomorphism {
            tau: (0..complex.partition().block_count()).collect(),
            axis_map: (0..n).collect(),
            orientation: vec![Sign::Plus; n],
        }
    }

    /// Reads the triple off a block-monomial signed permutation.
    pub fn from_signed_permutation(complex: &QuotientComplex, g: &SignedPermutation) -> Result<Self> {
        let j = complex.partition();
        let tau = j.blocks().iter().map(|b| j.block_of(g.image(b[0]))).collect();
        Self::new(complex, tau, g.images().to_vec(), g.signs().to_vec())
    }

    pub fn block_permutation(&self) -> &[usize] {
        &self.tau
    }

    pub fn axis_map(&self) -> &[usize] {
        &self.axis_map
    }

    pub fn orientation(&self) -> &[Sign] {
        &self.orientation
    }

    pub fn to_signed_permutation(&self) -> SignedPermutation {
        SignedPermutation::new(self.axis_map.clone(), self.orientation.clone()).expect("validated bijection")
    }

    pub fn is_identity(&self) -> bool {
        self.to_signed_permutation().is_identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BasedAutomorphism, complex: &QuotientComplex) -> Result<BasedAutomorphism> {
        let g = self.to_signed_permutation().compose(&other.to_signed_permutation())?;
        Self::from_signed_permutation(complex, &g)
    }

    /// Sign of block `i`: the ordinal permutation sign of `s` on the block
    /// times the product of the block's orientation signs.
    pub fn block_determinant(&self, complex: &QuotientComplex, i: usize) -> Sign {
        let j = complex.partition();
        let ordinal: Vec<usize> = j.block(i).iter().map(|&a| j.position(self.axis_map[a])).collect();
        permutation_sign(&ordinal) * Sign::product(j.block(i).iter().map(|&a| self.orientation[a]))
    }
}

/// Every `(τ, s, ε)` triple, ordered by `(τ, s, ε)`.
pub fn candidate_automorphisms(complex: &QuotientComplex, caps: &Caps) -> Result<Vec<BasedAutomorphism>> {
    let j = complex.partition();
    let n = j.degree();
    let taus = if complex.kind == CircleKind::ProjLine {
        all_permutations(n)
    } else {
        size_preserving_block_perms(j)
    };
    let block_perms: Vec<Vec<Vec<usize>>> = j.blocks().iter().map(|b| all_permutations(b.len())).collect();
    let count = taus.len() as u128
        * block_perms.iter().map(|p| p.len() as u128).product::<u128>()
        * (1u128 << n);
    if count > caps.candidates as u128 {
        return Err(Error::CapExceeded {
            what: "candidate automorphisms",
            limit: caps.candidates as u64,
        });
    }
    let signs: Vec<Vec<Sign>> = all_sign_vectors(n).collect();
    let mut out = Vec::with_capacity(count as usize);
    for tau in &taus {
        // every combination of per-block ordinal bijections
        let mut maps: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
        for (i, perms) in block_perms.iter().enumerate() {
            let src = j.block(i);
            let dst = j.block(tau[i]);
            let mut next = Vec::with_capacity(maps.len() * perms.len());
            for partial in &maps {
                for p in perms {
                    let mut map = partial.clone();
                    for (pos, &axis) in src.iter().enumerate() {
                        map[axis] = dst[p[pos]];
                    }
                    next.push(map);
                }
            }
            maps = next;
        }
        for map in maps {
            for eps in &signs {
                out.push(BasedAutomorphism {
                    tau: tau.clone(),
                    axis_map: map.clone(),
                    orientation: eps.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Discrete-rotation predicate: every even block has block determinant
/// `+1`, and when all blocks are odd the product of block determinants is
/// `+1`. On a projective-line complex every candidate is admissible.
pub fn is_rotation(a: &BasedAutomorphism, complex: &QuotientComplex) -> bool {
    if complex.kind == CircleKind::ProjLine {
        return true;
    }
    let j = complex.partition();
    let dets: Vec<Sign> = (0..j.block_count()).map(|i| a.block_determinant(complex, i)).collect();
    let even_ok = (0..j.block_count())
        .filter(|&i| j.block(i).len().is_multiple_of(2))
        .all(|i| dets[i] == Sign::Plus);
    let all_odd = j.blocks().iter().all(|b| b.len() % 2 == 1);
    even_ok && (!all_odd || Sign::product(dets) == Sign::Plus)
}

/// Candidates passing [`is_rotation`]; fails if the result is not a group.
pub fn rotation_group(complex: &QuotientComplex, caps: &Caps) -> Result<Vec<BasedAutomorphism>> {
    let rotations: Vec<BasedAutomorphism> = candidate_automorphisms(complex, caps)?
        .into_iter()
        .filter(|a| is_rotation(a, complex))
        .collect();
    let set = automorphism_set(complex, &rotations)?;
    if !set.contains(&SignedPermutation::identity(complex.degree())?) {
        return Err(Error::Invalid("rotation set lacks the identity".into()));
    }
    for g in set.iter() {
        for h in set.iter() {
            if !set.contains(&g.compose(h)?) {
                return Err(Error::Invalid(format!("rotation set not closed: {g} ∘ {h}")));
            }
        }
    }
    Ok(rotations)
}

/// Canonical set of the signed permutations underlying `autos`.
pub fn automorphism_set(complex: &QuotientComplex, autos: &[BasedAutomorphism]) -> Result<ElementSet> {
    ElementSet::new(
        complex.degree(),
        autos.iter().map(BasedAutomorphism::to_signed_permutation).collect(),
    )
}

/// The automorphism induced by a `JP` element: blocks move by `τ`, then
/// each target block `t` is scaled by `δ_t` and acted on by `c_t`.
pub fn jp_action(e: &JPElement, complex: &QuotientComplex) -> Result<BasedAutomorphism> {
    let j = complex.partition();
    let m = j.block_count();
    if e.components().len() != m
        || e.components().iter().zip(j.blocks()).any(|(c, b)| c.degree() != b.len())
    {
        return Err(Error::Invalid("JP element does not match the partition".into()));
    }
    let n = j.degree();
    let tau = e.block_permutation().to_vec();
    let mut axis_map = vec![0; n];
    let mut orientation = vec![Sign::Plus; n];
    for (i, block) in j.blocks().iter().enumerate() {
        let t = tau[i];
        let c = &e.components()[t];
        let target = j.block(t);
        for (p, &axis) in block.iter().enumerate() {
            axis_map[axis] = target[c.image(p)];
            orientation[axis] = e.block_signs()[t] * c.sign(p);
        }
    }
    BasedAutomorphism::new(complex, tau, axis_map, orientation)
}

/// Image of a circle under an automorphism, with the orientation the map
/// applies to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircleImage {
    pub circle: Circle,
    pub orientation: Sign,
}

/// `v ↦ v ∘ τ⁻¹`: bit `τ(i)` of the image is bit `i` of `v`.
pub fn apply_node(a: &BasedAutomorphism, v: &Z2Vector) -> Z2Vector {
    let mut bits = vec![false; v.len()];
    for (i, &t) in a.tau.iter().enumerate().take(v.len()) {
        bits[t] = v.get(i);
    }
    Z2Vector::new(bits)
}

pub fn apply_circle(a: &BasedAutomorphism, complex: &QuotientComplex, c: &Circle) -> CircleImage {
    let orientation = a.orientation[c.axis];
    let axis = a.axis_map[c.axis];
    let circle = match complex.kind {
        CircleKind::Circle2 => {
            let block = a.tau[c.block];
            let node = apply_node(a, &c.other.with_inserted(c.block, false));
            Circle {
                block,
                axis,
                other: node.without(block),
            }
        }
        CircleKind::ProjLine => Circle {
            block: axis,
            axis,
            other: c.other.clone(),
        },
    };
    CircleImage { circle, orientation }
}

/// Outcome of comparing the `JP` action with the rotation predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop1Report {
    pub partition: String,
    pub jp_order: usize,
    pub image_order: usize,
    pub kernel_order: usize,
    pub rotation_order: usize,
    /// Pairs on which the homomorphism law was checked.
    pub homomorphism_pairs: usize,
    pub predicate_equals_image: bool,
    /// `JP / kernel` is isomorphic to the rotation group.
    pub iso_check: bool,
    /// Block permutations are restricted to equal-size blocks.
    pub size_preserving_blocks: bool,
    /// "isomorphic" or "equivalent up to kernel of order K".
    pub relation: String,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.predicate_equals_image && self.iso_check && self.image_order * self.kernel_order == self.jp_order
    }
}

/// Pairs checked exhaustively up to this count, sampled beyond it.
const EXHAUSTIVE_PAIR_LIMIT: usize = 4_000_000;
const SAMPLED_PAIRS: usize = 100_000;

pub fn verify_prop1(j: &PartitionSpec, caps: &Caps) -> Result<Prop1Report> {
    let complex = build_complex(j)?;
    let jp = jp_enumerate(j, caps)?;
    let images = jp
        .iter()
        .map(|e| jp_action(e, &complex).map(|a| a.to_signed_permutation()))
        .collect::<Result<Vec<_>>>()?;

    let check_pair = |a: usize, b: usize| -> Result<()> {
        let ab = jp[a].compose_unchecked(&jp[b]);
        let lhs = jp_action(&ab, &complex)?.to_signed_permutation();
        let rhs = images[a].compose(&images[b])?;
        if lhs != rhs {
            return Err(Error::Invalid(format!(
                "JP action is not a homomorphism on partition {j}: {:?} · {:?} ↦ {lhs}, expected {rhs}",
                jp[a], jp[b]
            )));
        }
        Ok(())
    };
    let total = jp.len() * jp.len();
    let homomorphism_pairs = if total <= EXHAUSTIVE_PAIR_LIMIT {
        for a in 0..jp.len() {
            for b in 0..jp.len() {
                check_pair(a, b)?;
            }
        }
        total
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SAMPLED_PAIRS {
            check_pair(rng.random_range(0..jp.len()), rng.random_range(0..jp.len()))?;
        }
        SAMPLED_PAIRS
    };

    let kernel: Vec<usize> = (0..jp.len()).filter(|&k| images[k].is_identity()).collect();
    let image = ElementSet::new(j.degree(), images.clone())?;
    let rotations = rotation_group(&complex, caps)?;
    let rotation_set = automorphism_set(&complex, &rotations)?;

    let jp_group = FiniteGroup::from_elements(&jp, |a, b| a.compose_unchecked(b))?;
    let quotient = jp_group.quotient(&kernel)?;
    let iso_check = isomorphism(&quotient, &rotation_set.to_group()?, caps.iso)?.is_some();

    let relation = if kernel.len() == 1 {
        "isomorphic".to_string()
    } else {
        format!("equivalent up to kernel of order {}", kernel.len())
    };
    Ok(Prop1Report {
        partition: j.to_string(),
        jp_order: jp.len(),
        image_order: image.len(),
        kernel_order: kernel.len(),
        rotation_order: rotation_set.len(),
        homomorphism_pairs,
        predicate_equals_image: image == rotation_set,
        iso_check,
        size_preserving_blocks: true,
        relation,
    })
}

/// Based automorphisms of `L^n / Z^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullQuotientAutomorphisms {
    pub complex: QuotientComplex,
    pub group: ElementSet,
}

impl FullQuotientAutomorphisms {
    pub fn order(&self) -> usize {
        self.group.len()
    }

    /// Whether the group is isomorphic to `P_n`, by table search.
    pub fn isomorphic_to_pn(&self, caps: &Caps) -> Result<bool> {
        let pn = enumerate_pn(self.complex.degree(), caps)?;
        Ok(isomorphism(&self.group.to_group()?, &pn.to_group()?, caps.iso)?.is_some())
    }
}

pub fn full_quotient_automorphisms(n: usize, caps: &Caps) -> Result<FullQuotientAutomorphisms> {
    if n > caps.max_enum_degree {
        return Err(Error::DegreeTooLarge {
            n,
            max: caps.max_enum_degree,
        });
    }
    let complex = build_full_quotient(n)?;
    let admissible: HashSet<Sign> = CircleKind::ProjLine.admissible_multipliers().iter().copied().collect();
    let autos: Vec<BasedAutomorphism> = candidate_automorphisms(&complex, caps)?
        .into_iter()
        .filter(|a| a.orientation.iter().all(|s| admissible.contains(s)))
        .collect();
    let group = automorphism_set(&complex, &autos)?;
    Ok(FullQuotientAutomorphisms { complex, group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::kernel;
    use crate::signed_perm::ParityKind;

    fn part(s: &str) -> PartitionSpec {
        s.parse().unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn complex_shapes() {
        let c = build_complex(&part("2")).unwrap();
        assert_eq!(c.nodes().len(), 2);
        assert_eq!(c.circles().len(), 2);
        for circle in c.circles() {
            let [a, b] = c.endpoints(circle);
            assert_eq!((c.node_index(&a), c.node_index(&b)), (0, 1));
        }
        let c = build_complex(&part("1,1")).unwrap();
        assert_eq!((c.nodes().len(), c.circles().len()), (4, 4));
        let c = build_complex(&part("2,1")).unwrap();
        assert_eq!((c.nodes().len(), c.circles().len()), (4, 6));
        assert!(c.is_well_formed());
        assert!(build_complex(&PartitionSpec::singletons(11).unwrap()).is_err());
    }

    #[test]
    fn complexes_are_well_formed() {
        for n in 1..=6 {
            for j in PartitionSpec::all_compositions(n) {
                let c = build_complex(&j).unwrap();
                assert!(c.is_well_formed(), "{j}");
                assert_eq!(c.circles().len(), n << (j.block_count() - 1));
            }
        }
        assert!(build_full_quotient(3).unwrap().is_well_formed());
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_automorphisms(&build_complex(&part("2")).unwrap(), &caps()).unwrap().len(), 8);
        assert_eq!(candidate_automorphisms(&build_complex(&part("1")).unwrap(), &caps()).unwrap().len(), 2);
        assert_eq!(candidate_automorphisms(&build_complex(&part("2,2")).unwrap(), &caps()).unwrap().len(), 128);
        let tight = Caps { candidates: 100, ..caps() };
        assert!(candidate_automorphisms(&build_complex(&part("2,2")).unwrap(), &tight).is_err());
    }

    #[test]
    fn rotation_predicate_examples() {
        let c = build_complex(&part("2")).unwrap();
        let flip = BasedAutomorphism::new(&c, vec![0], vec![0, 1], vec![Sign::Plus, Sign::Minus]).unwrap();
        assert!(!is_rotation(&flip, &c));
        assert!(is_rotation(&BasedAutomorphism::identity(&c), &c));

        let c = build_complex(&part("1,1")).unwrap();
        let diag = BasedAutomorphism::new(&c, vec![1, 0], vec![1, 0], vec![Sign::Plus, Sign::Plus]).unwrap();
        assert!(is_rotation(&diag, &c));
    }

    #[test]
    fn automorphism_validation() {
        let c = build_complex(&part("2,1")).unwrap();
        // moves a size-2 block onto the size-1 block
        assert!(BasedAutomorphism::new(&c, vec![1, 0], vec![2, 0, 1], vec![Sign::Plus; 3]).is_err());
        // axis map leaves its block
        assert!(BasedAutomorphism::new(&c, vec![0, 1], vec![0, 2, 1], vec![Sign::Plus; 3]).is_err());
        assert!(BasedAutomorphism::new(&c, vec![0, 1], vec![1, 0, 2], vec![Sign::Plus; 3]).is_ok());
    }

    #[test]
    fn rotation_groups() {
        let c = build_complex(&part("2")).unwrap();
        let g = automorphism_set(&c, &rotation_group(&c, &caps()).unwrap()).unwrap().to_group().unwrap();
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 1), (4, 2)]);

        let c = build_complex(&part("1")).unwrap();
        assert_eq!(rotation_group(&c, &caps()).unwrap().len(), 1);

        let c = build_complex(&part("1,1")).unwrap();
        let g = automorphism_set(&c, &rotation_group(&c, &caps()).unwrap()).unwrap().to_group().unwrap();
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 3)]);
    }

    #[test]
    fn jp_action_examples() {
        let j = part("2");
        let c = build_complex(&j).unwrap();
        assert!(jp_action(&JPElement::identity(&j), &c).unwrap().is_identity());
        let r = SignedPermutation::from_one_based(&[2, 1], &[1, -1]).unwrap();
        let e = JPElement::new(&j, vec![r], vec![Sign::Plus], vec![0]).unwrap();
        let a = jp_action(&e, &c).unwrap();
        assert_eq!(a.block_permutation(), &[0]);
        assert_eq!(a.axis_map(), &[1, 0]);
        assert_eq!(a.orientation(), &[Sign::Plus, Sign::Minus]);

        let j = part("1,1");
        let c = build_complex(&j).unwrap();
        let e1 = SignedPermutation::identity(1).unwrap();
        let e = JPElement::new(&j, vec![e1.clone(), e1], vec![Sign::Minus, Sign::Minus], vec![0, 1]).unwrap();
        let a = jp_action(&e, &c).unwrap();
        assert_eq!(a.axis_map(), &[0, 1]);
        assert_eq!(a.orientation(), &[Sign::Minus, Sign::Minus]);
    }

    #[test]
    fn prop1_examples() {
        let r = verify_prop1(&part("2,1"), &caps()).unwrap();
        assert_eq!((r.jp_order, r.kernel_order, r.rotation_order), (8, 1, 8));
        assert!(r.predicate_equals_image && r.iso_check && r.passed());
        assert_eq!(r.relation, "isomorphic");

        let r = verify_prop1(&part("2,2"), &caps()).unwrap();
        assert_eq!((r.jp_order, r.kernel_order, r.rotation_order), (64, 2, 32));
        assert!(r.passed());
        assert_eq!(r.relation, "equivalent up to kernel of order 2");

        let r = verify_prop1(&part("1,1,1"), &caps()).unwrap();
        assert_eq!((r.jp_order, r.kernel_order, r.rotation_order), (24, 1, 24));
        let bp3 = kernel(3, ParityKind::Type2, &caps()).unwrap().to_group().unwrap();
        let c = build_complex(&part("1,1,1")).unwrap();
        let rot = automorphism_set(&c, &rotation_group(&c, &caps()).unwrap()).unwrap();
        assert!(isomorphism(&rot.to_group().unwrap(), &bp3, 5000).unwrap().is_some());
    }

    #[test]
    fn full_quotient() {
        assert_eq!(full_quotient_automorphisms(1, &caps()).unwrap().order(), 2);
        assert_eq!(full_quotient_automorphisms(2, &caps()).unwrap().order(), 8);
        let f3 = full_quotient_automorphisms(3, &caps()).unwrap();
        assert_eq!(f3.order(), 48);
        assert!(f3.isomorphic_to_pn(&caps()).unwrap());
        assert_eq!(f3.complex.nodes().len(), 1);
        assert!(f3.complex.circles().iter().all(|c| f3.complex.kind() == CircleKind::ProjLine && c.other.is_empty()));
    }

    #[test]
    fn apply_examples() {
        let c = build_complex(&part("1,1")).unwrap();
        let id = BasedAutomorphism::identity(&c);
        for v in c.nodes() {
            assert_eq!(&apply_node(&id, v), v);
        }
        for circle in c.circles() {
            assert_eq!(&apply_circle(&id, &c, circle).circle, circle);
        }
        let diag = BasedAutomorphism::new(&c, vec![1, 0], vec![1, 0], vec![Sign::Plus, Sign::Plus]).unwrap();
        for circle in c.circles() {
            let img = apply_circle(&diag, &c, circle);
            assert_eq!(img.circle.axis, 1 - circle.axis);
            assert_eq!(img.circle.other, circle.other);
        }
        let n01 = Z2Vector::new(vec![true, false]);
        assert_eq!(apply_node(&diag, &n01), Z2Vector::new(vec![false, true]));
    }

    #[test]
    fn apply_preserves_incidence() {
        for n in 1..=4 {
            for j in PartitionSpec::all_compositions(n) {
                let c = build_complex(&j).unwrap();
                for a in candidate_automorphisms(&c, &caps()).unwrap() {
                    for circle in c.circles() {
                        let img = apply_circle(&a, &c, circle);
                        for v in c.endpoints(circle) {
                            assert!(c.is_incident(&apply_node(&a, &v), &img.circle), "{j}");
                        }
                    }
                }
            }
        }
    }
}
