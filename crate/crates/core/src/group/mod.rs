//! Finite subgroups of `P_n`: enumeration, closure, parity kernels and the
//! standard subgroups `AP_n`, `BP_n`, `CP_n`.

mod iso;
mod jp;
mod z2;

use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed_perm::{ParityKind, Sign, SignedPermutation};

pub use iso::{isomorphism, FiniteGroup};
pub use jp::{jp_enumerate, size_preserving_block_perms, JPElement};
pub use z2::{z2_even_weight_span_check, z2_parity, Z2SpanReport, Z2Vector};

/// Enumeration limits. Every limit is a plain value so callers can override
/// the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest closure result.
    pub closure: usize,
    /// Largest `JP_n` enumeration.
    pub jp: usize,
    /// Largest degree for full `P_n` enumeration.
    pub max_enum_degree: usize,
    /// Largest group handed to isomorphism search.
    pub iso: usize,
    /// Largest candidate-automorphism enumeration.
    pub candidates: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            closure: 10_000_000,
            jp: 1_000_000,
            max_enum_degree: 8,
            iso: 5000,
            candidates: 1_000_000,
        }
    }
}

/// Deduplicated elements of one degree in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    degree: usize,
    elements: Vec<SignedPermutation>,
}

impl ElementSet {
    /// Sorts and deduplicates. All elements must share `degree`.
    pub fn new(degree: usize, mut elements: Vec<SignedPermutation>) -> Result<Self> {
        if let Some(bad) = elements.iter().find(|e| e.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(ElementSet { degree, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SignedPermutation> {
        self.elements.iter()
    }

    pub fn contains(&self, g: &SignedPermutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &SignedPermutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    /// Contains the identity and is closed under composition and inverse.
    pub fn is_group(&self) -> bool {
        let Ok(e) = SignedPermutation::identity(self.degree) else {
            return false;
        };
        self.contains(&e)
            && self.elements.iter().all(|g| self.contains(&g.inverse()))
            && self
                .elements
                .iter()
                .all(|g| self.elements.iter().all(|h| self.contains(&g.compose_unchecked(h))))
    }

    /// Cayley table in canonical element order.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::from_elements(&self.elements, |a, b| a.compose_unchecked(b))
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a SignedPermutation;
    type IntoIter = std::slice::Iter<'a, SignedPermutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl Serialize for ElementSet {
    /// Ordered array of element encodings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

/// Smallest subgroup containing `gens`, by breadth-first right
/// multiplication with the generators.
pub fn closure(gens: &[SignedPermutation], caps: &Caps) -> Result<ElementSet> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Invalid("closure needs at least one generator".into()))?;
    let n = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: n,
            right: bad.degree(),
        });
    }
    let identity = SignedPermutation::identity(n)?;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity.clone()]);
    seen.insert(identity.key());
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.compose_unchecked(s);
            if seen.insert(h.key()) {
                if elements.len() >= caps.closure {
                    return Err(Error::CapExceeded {
                        what: "closure",
                        limit: caps.closure as u64,
                    });
                }
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    ElementSet::new(n, elements)
}

/// Steps `perm` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    while next_permutation(&mut perm) {
        out.push(perm.clone());
    }
    out
}

/// All sign vectors of length `n` in lexicographic order (`+1` first).
pub(crate) fn all_sign_vectors(n: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0u32..1 << n).map(move |bits| {
        (0..n)
            .map(|t| {
                if bits >> (n - 1 - t) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect()
    })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn check_enum_degree(n: usize, caps: &Caps) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > caps.max_enum_degree {
        return Err(Error::DegreeTooLarge {
            n,
            max: caps.max_enum_degree,
        });
    }
    let order = (1u64 << n) * factorial(n);
    if order > caps.closure as u64 {
        return Err(Error::CapExceeded {
            what: "enumeration",
            limit: caps.closure as u64,
        });
    }
    Ok(())
}

fn build_filtered(
    n: usize,
    caps: &Caps,
    mut keep: impl FnMut(&[usize], &[Sign]) -> bool,
) -> Result<ElementSet> {
    check_enum_degree(n, caps)?;
    let mut elements = Vec::new();
    for perm in all_permutations(n) {
        for signs in all_sign_vectors(n) {
            if keep(&perm, &signs) {
                elements.push(SignedPermutation::new(perm.clone(), signs)?);
            }
        }
    }
    // generation order is already canonical
    Ok(ElementSet { degree: n, elements })
}

/// All `2^n n!` elements of `P_n`.
pub fn enumerate_pn(n: usize, caps: &Caps) -> Result<ElementSet> {
    build_filtered(n, caps, |_, _| true)
}

/// Kernel of a parity homomorphism, filtered from `P_n`.
pub fn kernel(n: usize, kind: ParityKind, caps: &Caps) -> Result<ElementSet> {
    let all = enumerate_pn(n, caps)?;
    let elements = all
        .elements
        .into_iter()
        .filter(|g| g.parity(kind) == Sign::Plus)
        .collect();
    Ok(ElementSet { degree: n, elements })
}

/// The three parity subgroups of `P_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StandardKind {
    AP,
    BP,
    CP,
}

impl StandardKind {
    pub fn parity(self) -> ParityKind {
        match self {
            StandardKind::AP => ParityKind::Type1,
            StandardKind::BP => ParityKind::Type2,
            StandardKind::CP => ParityKind::Type3,
        }
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StandardKind::AP => "AP",
            StandardKind::BP => "BP",
            StandardKind::CP => "CP",
        })
    }
}

impl std::str::FromStr for StandardKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AP" => Ok(StandardKind::AP),
            "BP" => Ok(StandardKind::BP),
            "CP" => Ok(StandardKind::CP),
            _ => Err(Error::parse("subgroup kind", format!("unknown kind `{s}`"))),
        }
    }
}

fn inversions_even(perm: &[usize]) -> bool {
    let mut count = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                count += 1;
            }
        }
    }
    count.is_multiple_of(2)
}

fn minus_count_even(signs: &[Sign]) -> bool {
    signs.iter().filter(|&&s| s == Sign::Minus).count() % 2 == 0
}

/// Builds `AP_n`, `BP_n` or `CP_n` from its defining predicate, counting
/// inversions and minus signs rather than evaluating the parity functions.
pub fn standard_subgroup(kind: StandardKind, n: usize, caps: &Caps) -> Result<ElementSet> {
    build_filtered(n, caps, |perm, signs| match kind {
        StandardKind::AP => inversions_even(perm),
        StandardKind::BP => minus_count_even(signs),
        StandardKind::CP => inversions_even(perm) == minus_count_even(signs),
    })
}

/// Small subgroups whose embedded copies generate `AP_n`, `BP_n`, `CP_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EmbeddedKind {
    AP3,
    BP2,
    CP2,
}

impl EmbeddedKind {
    pub fn small_degree(self) -> usize {
        match self {
            EmbeddedKind::AP3 => 3,
            EmbeddedKind::BP2 | EmbeddedKind::CP2 => 2,
        }
    }

    pub fn standard(self) -> StandardKind {
        match self {
            EmbeddedKind::AP3 => StandardKind::AP,
            EmbeddedKind::BP2 => StandardKind::BP,
            EmbeddedKind::CP2 => StandardKind::CP,
        }
    }
}

impl std::str::FromStr for EmbeddedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AP3" => Ok(EmbeddedKind::AP3),
            "BP2" => Ok(EmbeddedKind::BP2),
            "CP2" => Ok(EmbeddedKind::CP2),
            _ => Err(Error::parse("embedded kind", format!("unknown kind `{s}`"))),
        }
    }
}

fn sorted_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Nontrivial elements of the small group placed on every pair (or triple)
/// of axes, identity elsewhere.
pub fn embedded_generators(kind: EmbeddedKind, n: usize, caps: &Caps) -> Result<Vec<SignedPermutation>> {
    let d = kind.small_degree();
    if n < d {
        return Err(Error::Invalid(format!("degree {n} is below {d} for {kind:?}")));
    }
    if n > crate::signed_perm::MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            n,
            max: crate::signed_perm::MAX_DEGREE,
        });
    }
    let small = standard_subgroup(kind.standard(), d, caps)?;
    let mut out = Vec::new();
    for axes in sorted_subsets(n, d) {
        for h in small.iter().filter(|h| !h.is_identity()) {
            out.push(h.embed(&axes, n)?);
        }
    }
    Ok(out)
}
