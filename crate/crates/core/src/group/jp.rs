//! The finite parity group `JP = (CP_{n_1} × ... × CP_{n_m}) ⋊ BP_m`.
//!
//! An element is a triple `(c, δ, τ)`: one `CP_{n_i}` component per block,
//! block signs with product `+1`, and a block permutation that only swaps
//! blocks of equal size. The law is
//! `(c, δ, τ)(c', δ', τ') = (c · τ(c'), δ · τ(δ'), τ ∘ τ')` with
//! `τ(c')_i = c'_{τ⁻¹(i)}`; the block signs act trivially on the components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{all_permutations, all_sign_vectors, kernel, Caps};
use crate::partition::PartitionSpec;
use crate::signed_perm::{ParityKind, Sign, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JPElement {
    c: Vec<SignedPermutation>,
    delta: Vec<Sign>,
    tau: Vec<usize>,
}

impl JPElement {
    /// Validates every invariant against the partition shape.
    pub fn new(
        partition: &PartitionSpec,
        c: Vec<SignedPermutation>,
        delta: Vec<Sign>,
        tau: Vec<usize>,
    ) -> Result<Self> {
        let sizes = partition.block_sizes();
        let m = sizes.len();
        if c.len() != m || delta.len() != m || tau.len() != m {
            return Err(Error::Invalid(format!("JP element must have {m} components")));
        }
        for (i, ci) in c.iter().enumerate() {
            if ci.degree() != sizes[i] {
                return Err(Error::DegreeMismatch {
                    left: sizes[i],
                    right: ci.degree(),
                });
            }
            if ci.parity(ParityKind::Type3) != Sign::Plus {
                return Err(Error::Invalid(format!("component {} is not in CP_{}", i + 1, sizes[i])));
            }
        }
        if Sign::product(delta.iter().copied()) != Sign::Plus {
            return Err(Error::Invalid("block signs must multiply to +1".into()));
        }
        let mut hit = vec![false; m];
        for (i, &t) in tau.iter().enumerate() {
            if t >= m || std::mem::replace(&mut hit[t], true) {
                return Err(Error::Invalid("block permutation is not a bijection".into()));
            }
            if sizes[t] != sizes[i] {
                return Err(Error::Invalid("block permutation must preserve block sizes".into()));
            }
        }
        Ok(JPElement { c, delta, tau })
    }

    pub fn identity(partition: &PartitionSpec) -> Self {
        let c = partition
            .block_sizes()
            .into_iter()
            .map(|s| SignedPermutation::identity(s).expect("block size within limits"))
            .collect();
        let m = partition.block_count();
        JPElement {
            c,
            delta: vec![Sign::Plus; m],
            tau: (0..m).collect(),
        }
    }

    pub fn components(&self) -> &[SignedPermutation] {
        &self.c
    }

    pub fn block_signs(&self) -> &[Sign] {
        &self.delta
    }

    /// `τ(i)` for each block `i`.
    pub fn block_permutation(&self) -> &[usize] {
        &self.tau
    }

    pub fn is_identity(&self) -> bool {
        self.c.iter().all(SignedPermutation::is_identity)
            && self.delta.iter().all(|s| s.is_plus())
            && self.tau.iter().enumerate().all(|(i, &t)| i == t)
    }

    fn same_shape(&self, other: &JPElement) -> bool {
        self.c.len() == other.c.len()
            && self.c.iter().zip(&other.c).all(|(a, b)| a.degree() == b.degree())
    }

    pub fn compose(&self, other: &JPElement) -> Result<JPElement> {
        if !self.same_shape(other) {
            return Err(Error::Invalid("JP elements belong to different partitions".into()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &JPElement) -> JPElement {
        let m = self.tau.len();
        let mut tau_inv = vec![0; m];
        for (i, &t) in self.tau.iter().enumerate() {
            tau_inv[t] = i;
        }
        let c = (0..m)
            .map(|i| self.c[i].compose_unchecked(&other.c[tau_inv[i]]))
            .collect();
        let delta = (0..m).map(|i| self.delta[i] * other.delta[tau_inv[i]]).collect();
        let tau = other.tau.iter().map(|&t| self.tau[t]).collect();
        JPElement { c, delta, tau }
    }

    pub fn inverse(&self) -> JPElement {
        let m = self.tau.len();
        let mut tau_inv = vec![0; m];
        for (i, &t) in self.tau.iter().enumerate() {
            tau_inv[t] = i;
        }
        // (c, δ, τ)⁻¹ = (τ⁻¹(c⁻¹), τ⁻¹(δ), τ⁻¹)
        let c = (0..m).map(|i| self.c[self.tau[i]].inverse()).collect();
        let delta = (0..m).map(|i| self.delta[self.tau[i]]).collect();
        JPElement { c, delta, tau: tau_inv }
    }
}

/// Block permutations `τ` with `size(τ(i)) = size(i)`, in lexicographic
/// order.
pub fn size_preserving_block_perms(partition: &PartitionSpec) -> Vec<Vec<usize>> {
    let sizes = partition.block_sizes();
    let m = sizes.len();
    // permute within each size class independently
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_sizes: Vec<usize> = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        match class_sizes.iter().position(|&cs| cs == s) {
            Some(k) => classes[k].push(i),
            None => {
                class_sizes.push(s);
                classes.push(vec![i]);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = vec![vec![usize::MAX; m]];
    for class in &classes {
        let perms = all_permutations(class.len());
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for partial in &out {
            for p in &perms {
                let mut tau = partial.clone();
                for (a, &b) in p.iter().enumerate() {
                    tau[class[a]] = class[b];
                }
                next.push(tau);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Every element of `JP` in canonical order.
pub fn jp_enumerate(partition: &PartitionSpec, caps: &Caps) -> Result<Vec<JPElement>> {
    let sizes = partition.block_sizes();
    let m = sizes.len();
    let taus = size_preserving_block_perms(partition);
    let mut order: u128 = taus.len() as u128 * (1u128 << (m - 1));
    for &s in &sizes {
        if s > caps.max_enum_degree {
            return Err(Error::DegreeTooLarge {
                n: s,
                max: caps.max_enum_degree,
            });
        }
        // |CP_s| = 2^(s-1) s!
        order *= (1u128 << (s - 1)) * (1..=s as u128).product::<u128>();
        if order > caps.jp as u128 {
            return Err(Error::CapExceeded {
                what: "JP enumeration",
                limit: caps.jp as u64,
            });
        }
    }
    let cps = sizes
        .iter()
        .map(|&s| kernel(s, ParityKind::Type3, caps).map(|k| k.elements().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let deltas: Vec<Vec<Sign>> = all_sign_vectors(m)
        .filter(|d| Sign::product(d.iter().copied()) == Sign::Plus)
        .collect();

    let mut components: Vec<Vec<SignedPermutation>> = vec![Vec::new()];
    for cp in &cps {
        let mut next = Vec::with_capacity(components.len() * cp.len());
        for prefix in &components {
            for g in cp {
                let mut v = prefix.clone();
                v.push(g.clone());
                next.push(v);
            }
        }
        components = next;
    }

    let mut out = Vec::with_capacity(order as usize);
    for c in &components {
        for delta in &deltas {
            for tau in &taus {
                out.push(JPElement {
                    c: c.clone(),
                    delta: delta.clone(),
                    tau: tau.clone(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{isomorphism, kernel, FiniteGroup};

    fn part(s: &str) -> PartitionSpec {
        s.parse().unwrap()
    }

    fn jp_group(j: &PartitionSpec) -> FiniteGroup {
        let els = jp_enumerate(j, &Caps::default()).unwrap();
        FiniteGroup::from_elements(&els, |a, b| a.compose_unchecked(b)).unwrap()
    }

    #[test]
    fn single_block_is_cp() {
        let j = part("2");
        assert_eq!(jp_enumerate(&j, &Caps::default()).unwrap().len(), 4);
        let cp2 = kernel(2, ParityKind::Type3, &Caps::default()).unwrap().to_group().unwrap();
        assert!(isomorphism(&jp_group(&j), &cp2, 5000).unwrap().is_some());
    }

    #[test]
    fn two_singletons_is_bp2() {
        let j = part("1,1");
        let g = jp_group(&j);
        assert_eq!(g.order(), 4);
        // all non-identity elements are involutions
        assert_eq!(g.order_histogram(), vec![(1, 1), (2, 3)]);
        let bp2 = kernel(2, ParityKind::Type2, &Caps::default()).unwrap().to_group().unwrap();
        assert!(isomorphism(&g, &bp2, 5000).unwrap().is_some());
    }

    #[test]
    fn orders() {
        assert_eq!(jp_enumerate(&part("2,2"), &Caps::default()).unwrap().len(), 64);
        assert_eq!(jp_enumerate(&part("2,1"), &Caps::default()).unwrap().len(), 8);
        assert_eq!(jp_enumerate(&part("1,1,1"), &Caps::default()).unwrap().len(), 24);
        let tight = Caps { jp: 10, ..Caps::default() };
        assert!(jp_enumerate(&part("2,2"), &tight).is_err());
    }

    #[test]
    fn size_preserving_taus() {
        assert_eq!(size_preserving_block_perms(&part("2,1")), vec![vec![0, 1]]);
        assert_eq!(size_preserving_block_perms(&part("2,2")).len(), 2);
        assert_eq!(size_preserving_block_perms(&part("1,2,1")), vec![vec![0, 1, 2], vec![2, 1, 0]]);
        assert_eq!(size_preserving_block_perms(&part("1,1,1")).len(), 6);
    }

    #[test]
    fn validation() {
        let j = part("2,1");
        let r = SignedPermutation::from_one_based(&[2, 1], &[1, -1]).unwrap();
        let e1 = SignedPermutation::identity(1).unwrap();
        assert!(JPElement::new(&j, vec![r.clone(), e1.clone()], vec![Sign::Minus, Sign::Minus], vec![0, 1]).is_ok());
        // odd sign product
        assert!(JPElement::new(&j, vec![r.clone(), e1.clone()], vec![Sign::Minus, Sign::Plus], vec![0, 1]).is_err());
        // swaps blocks of unequal size
        assert!(JPElement::new(&j, vec![r.clone(), e1.clone()], vec![Sign::Plus, Sign::Plus], vec![1, 0]).is_err());
        // component outside CP_2
        let swap = SignedPermutation::from_one_based(&[2, 1], &[1, 1]).unwrap();
        assert!(JPElement::new(&j, vec![swap, e1], vec![Sign::Plus, Sign::Plus], vec![0, 1]).is_err());
    }

    #[test]
    fn group_laws_on_small_partitions() {
        for n in 1..=4 {
            for j in PartitionSpec::all_compositions(n) {
                let els = jp_enumerate(&j, &Caps::default()).unwrap();
                let e = JPElement::identity(&j);
                for a in &els {
                    assert!(a.compose(&a.inverse()).unwrap().is_identity(), "{j}");
                    assert_eq!(&a.compose(&e).unwrap(), a);
                }
                // associativity on a strided sample of triples
                let step = (els.len() / 12).max(1);
                for a in els.iter().step_by(step) {
                    for b in els.iter().step_by(step) {
                        for c in els.iter().step_by(step) {
                            let left = a.compose(b).unwrap().compose(c).unwrap();
                            let right = a.compose(&b.compose(c).unwrap()).unwrap();
                            assert_eq!(left, right, "{j}");
                        }
                    }
                }
            }
        }
    }
}
