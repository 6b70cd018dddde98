//! Cayley tables and isomorphism search for small groups.
//!
//! The search picks a small generating set of the source group, then
//! backtracks over images of the generators. Candidates must match element
//! order and centralizer size, and each partial assignment is extended over
//! the subgroup it generates so that inconsistencies are caught early.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Cayley table of `elements` under `mul`. Fails when the set is not
    /// closed or has no identity.
    pub fn from_elements<T, F>(elements: &[T], mul: F) -> Result<Self>
    where
        T: Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let order = elements.len();
        if order == 0 {
            return Err(Error::Invalid("empty group".into()));
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != order {
            return Err(Error::Invalid("duplicate group elements".into()));
        }
        let mut table = vec![0u32; order * order];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                let z = mul(x, y);
                let k = *index
                    .get(&z)
                    .ok_or_else(|| Error::Invalid("element set is not closed under multiplication".into()))?;
                table[a * order + b] = k as u32;
            }
        }
        Self::from_table(order, table)
    }

    /// Validates a raw row-major table: identity and inverses must exist.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order || table.iter().any(|&v| v as usize >= order) {
            return Err(Error::Invalid("malformed Cayley table".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] as usize == identity)
                    .ok_or_else(|| Error::Invalid("element without inverse".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_associative(&self) -> bool {
        (0..self.order).all(|a| {
            (0..self.order)
                .all(|b| (0..self.order).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted `(element order, count)` pairs.
    pub fn order_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = BTreeMap::new();
        for a in 0..self.order {
            *hist.entry(self.element_order(a)).or_insert(0) += 1;
        }
        hist.into_iter().collect()
    }

    fn centralizer_size(&self, a: usize) -> usize {
        (0..self.order).filter(|&b| self.mul(a, b) == self.mul(b, a)).count()
    }

    fn fingerprints(&self) -> Vec<(usize, usize)> {
        (0..self.order)
            .map(|a| (self.element_order(a), self.centralizer_size(a)))
            .collect()
    }

    /// Elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Quotient by a normal subgroup given as element indices. Cosets are
    /// numbered by their smallest member.
    pub fn quotient(&self, normal: &[usize]) -> Result<FiniteGroup> {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            for &k in normal {
                let x = self.mul(a, k);
                if coset_of[x] != usize::MAX && coset_of[x] != id {
                    return Err(Error::Invalid("subgroup cosets overlap".into()));
                }
                coset_of[x] = id;
            }
        }
        let q = reps.len();
        if q * normal.len() != self.order {
            return Err(Error::Invalid("subgroup does not partition the group".into()));
        }
        let mut table = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset_of[self.mul(a, b)] as u32;
            }
        }
        // well-definedness: products of arbitrary representatives must agree
        for a in 0..self.order {
            for b in 0..self.order {
                let expected = table[coset_of[a] * q + coset_of[b]] as usize;
                if coset_of[self.mul(a, b)] != expected {
                    return Err(Error::Invalid("subgroup is not normal".into()));
                }
            }
        }
        FiniteGroup::from_table(q, table)
    }

    /// A small generating set, picked greedily from elements of largest
    /// order.
    fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut covered = vec![false; self.order];
        covered[self.identity] = true;
        for a in by_order {
            if covered[a] {
                continue;
            }
            gens.push(a);
            covered = vec![false; self.order];
            for x in self.generated(&gens) {
                covered[x] = true;
            }
            if covered.iter().all(|&c| c) {
                break;
            }
        }
        gens
    }
}

/// Extends an assignment of generator images over the generated subgroup.
/// Returns `None` on any inconsistency or collision.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order];
    let mut used = vec![false; h.order];
    map[g.identity] = h.identity;
    used[h.identity] = true;
    let mut queue = VecDeque::from([g.identity]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// An isomorphism `G -> H` as a vector of images, or `None` when the groups
/// are not isomorphic. Deterministic; prefers the identity assignment when
/// the tables coincide.
pub fn isomorphism(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<Option<Vec<usize>>> {
    if g.order > cap || h.order > cap {
        return Err(Error::CapExceeded {
            what: "isomorphism search",
            limit: cap as u64,
        });
    }
    if g.order != h.order {
        return Ok(None);
    }
    let fg = g.fingerprints();
    let fh = h.fingerprints();
    let mut sg = fg.clone();
    let mut sh = fh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(None);
    }
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let mut c: Vec<usize> = (0..h.order).filter(|&t| fh[t] == fg[s]).collect();
            c.sort_by_key(|&t| (t != s, t));
            c
        })
        .collect();

    let mut images = Vec::with_capacity(gens.len());
    if let Some(map) = search(g, h, &gens, &candidates, &mut images) {
        return Ok(Some(map));
    }
    Ok(None)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        return extend(g, h, gens, images).filter(|map| map.iter().all(|&v| v != usize::MAX));
    }
    for &t in &candidates[depth] {
        images.push(t);
        if extend(g, h, &gens[..=depth], images).is_some() {
            if let Some(map) = search(g, h, gens, candidates, images) {
                return Some(map);
            }
        }
        images.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        let els: Vec<usize> = (0..n).collect();
        FiniteGroup::from_elements(&els, |a, b| (a + b) % n).unwrap()
    }

    fn klein() -> FiniteGroup {
        let els: Vec<u8> = (0..4).collect();
        FiniteGroup::from_elements(&els, |a, b| a ^ b).unwrap()
    }

    #[test]
    fn cyclic_vs_klein() {
        assert_eq!(cyclic(4).order_histogram(), vec![(1, 1), (2, 1), (4, 2)]);
        assert_eq!(klein().order_histogram(), vec![(1, 1), (2, 3)]);
        assert!(isomorphism(&cyclic(4), &klein(), 5000).unwrap().is_none());
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let g = cyclic(6);
        let map = isomorphism(&g, &g, 5000).unwrap().unwrap();
        assert_eq!(map, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn relabeled_group_is_found() {
        // Z6 written with a shuffled labeling
        let labels = [3usize, 5, 0, 1, 4, 2];
        let mut inv = [0; 6];
        for (i, &l) in labels.iter().enumerate() {
            inv[l] = i;
        }
        let els: Vec<usize> = (0..6).collect();
        let h = FiniteGroup::from_elements(&els, |&a, &b| labels[(inv[a] + inv[b]) % 6]).unwrap();
        let g = cyclic(6);
        let map = isomorphism(&g, &h, 5000).unwrap().unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(map[g.mul(a, b)], h.mul(map[a], map[b]));
            }
        }
    }

    #[test]
    fn order_mismatch_and_cap() {
        assert!(isomorphism(&cyclic(4), &cyclic(5), 5000).unwrap().is_none());
        assert!(isomorphism(&cyclic(4), &cyclic(4), 3).is_err());
    }

    #[test]
    fn quotient_of_cyclic() {
        let g = cyclic(8);
        let q = g.quotient(&[0, 4]).unwrap();
        assert_eq!(q.order(), 4);
        assert!(isomorphism(&q, &cyclic(4), 5000).unwrap().is_some());
        assert!(g.quotient(&[0, 3]).is_err());
    }

    #[test]
    fn rejects_non_closed_sets() {
        let els: Vec<usize> = (0..3).collect();
        assert!(FiniteGroup::from_elements(&els, |a, b| a + b).is_err());
    }
}
