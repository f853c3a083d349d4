//! Coset partitions G/H and the set-level quotient checks.
//!
//! For an L-subgyrogroup the left cosets partition the carrier; for a
//! strongly-L subgyrogroup the quotient additionally carries well-defined
//! translation maps h_a, is homogeneous via a = y ⊟ x, and commutes with the
//! projection. Each of those statements is verified exhaustively here.
//! Partition failure on a general subgyrogroup is a reportable finding, not a
//! crash: the checks double as an explorer of where the hypotheses bite.

use serde::Serialize;
use thiserror::Error;

use crate::exec;
use crate::mask::SubsetMask;
use crate::table::{GyroTable, Permutation, Side};

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("cosets {first:?} and {second:?} overlap without being equal")]
    PartitionFailure {
        first: Vec<usize>,
        second: Vec<usize>,
    },
    #[error("coset translation by {a} ill-defined: representatives {x} and {y} of one coset map to different cosets")]
    IllDefined { a: usize, x: usize, y: usize },
    #[error("P must be symmetric (⊖P = P) and contain 0")]
    BadSymmetricSet,
}

/// The quotient G/H as a list of disjoint coset masks plus the projection π.
pub struct CosetPartition {
    pub cosets: Vec<SubsetMask>,
    pub projection: Vec<usize>,
    pub subgroup: SubsetMask,
}

impl CosetPartition {
    /// π(a): index of the coset containing a.
    pub fn project(&self, a: usize) -> usize {
        self.projection[a]
    }

    /// Least element of each coset, the deterministic representative choice.
    pub fn representatives(&self) -> Vec<usize> {
        self.cosets
            .iter()
            .map(|c| c.iter().next().expect("nonempty coset"))
            .collect()
    }
}

/// Left coset a ⊕ H.
pub fn coset(g: &GyroTable, h: &SubsetMask, a: usize) -> SubsetMask {
    g.translate_set(a, h, Side::Left)
}

/// Builds G/H, verifying the partition invariants.
///
/// Runs for any subgyrogroup; per the theory the partition is guaranteed for
/// L-subgyrogroups, and a failure for anything else surfaces as
/// [`QuotientError::PartitionFailure`].
pub fn build_quotient(g: &GyroTable, h: &SubsetMask) -> Result<CosetPartition, QuotientError> {
    let n = g.order();
    let mut cosets: Vec<SubsetMask> = Vec::new();
    let mut projection = vec![usize::MAX; n];
    for a in 0..n {
        let c = coset(g, h, a);
        match cosets.iter().position(|k| *k == c) {
            Some(i) => projection[a] = i,
            None => {
                // A new coset must be disjoint from everything seen so far.
                for k in &cosets {
                    if !k.intersect(&c).is_empty() {
                        return Err(QuotientError::PartitionFailure {
                            first: k.elems(),
                            second: c.elems(),
                        });
                    }
                }
                cosets.push(c);
                projection[a] = cosets.len() - 1;
            }
        }
    }
    // a ∈ a⊕H must hold for the projection array to be consistent.
    for a in 0..n {
        if !cosets[projection[a]].contains(a) {
            let c = coset(g, h, a);
            return Err(QuotientError::PartitionFailure {
                first: cosets[projection[a]].elems(),
                second: c.elems(),
            });
        }
    }
    let total: usize = cosets.iter().map(|c| c.len()).sum();
    debug_assert_eq!(total, n);
    debug_assert!(cosets.iter().all(|c| c.len() == h.len()));
    debug_assert_eq!(cosets[projection[0]], *h);
    Ok(CosetPartition {
        cosets,
        projection,
        subgroup: *h,
    })
}

/// Outcome of one exhaustive quotient check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub checked: usize,
    pub witness: Option<Vec<usize>>,
}

impl CheckReport {
    fn from_witness(checked: usize, witness: Option<Vec<usize>>) -> Self {
        CheckReport {
            ok: witness.is_none(),
            checked,
            witness,
        }
    }
}

/// Coset associativity a⊕(b⊕H) = (a⊕b)⊕H over all pairs.
pub fn coset_assoc_check(g: &GyroTable, h: &SubsetMask) -> CheckReport {
    let n = g.order();
    let witness = exec::find_min(n, |a| {
        (0..n)
            .find(|&b| {
                let bh = g.translate_set(b, h, Side::Left);
                g.translate_set(a, &bh, Side::Left) != coset(g, h, g.op(a, b))
            })
            .map(|b| vec![a, b])
    });
    CheckReport::from_witness(n * n, witness)
}

/// The translation h_a on cosets: coset-of-x ↦ coset-of-(a⊕x).
///
/// Verified well-defined (independent of the representative) and bijective;
/// an ill-defined map signals that H is not strongly-L.
pub fn coset_translation(
    p: &CosetPartition,
    g: &GyroTable,
    a: usize,
) -> Result<Permutation, QuotientError> {
    let mut images = Vec::with_capacity(p.cosets.len());
    for c in &p.cosets {
        let mut it = c.iter();
        let first = it.next().expect("nonempty coset");
        let target = p.project(g.op(a, first));
        for x in it {
            if p.project(g.op(a, x)) != target {
                return Err(QuotientError::IllDefined { a, x: first, y: x });
            }
        }
        images.push(target);
    }
    Permutation::from_images(images)
        .map_err(|_| QuotientError::IllDefined { a, x: 0, y: 0 })
}

/// Homogeneity: for every coset pair (xH, yH) with least representatives,
/// the translation by a = y ⊟ x maps xH onto yH.
pub fn homogeneity_check(p: &CosetPartition, g: &GyroTable) -> CheckReport {
    let reps = p.representatives();
    let k = p.cosets.len();
    let witness = exec::find_min(k, |i| {
        for j in 0..k {
            let a = g.codiff(reps[j], reps[i]);
            match coset_translation(p, g, a) {
                Ok(t) if t.apply(i) == j => {}
                _ => return Some(vec![i, j]),
            }
        }
        None
    });
    CheckReport::from_witness(k * k, witness)
}

/// π ∘ λ_a = h_a ∘ π over all a and x.
pub fn translation_commute_check(p: &CosetPartition, g: &GyroTable) -> CheckReport {
    let n = g.order();
    let witness = exec::find_min(n, |a| match coset_translation(p, g, a) {
        Err(_) => Some(vec![a]),
        Ok(t) => (0..n)
            .find(|&x| p.project(g.op(a, x)) != t.apply(p.project(x)))
            .map(|x| vec![a, x]),
    });
    CheckReport::from_witness(n * n, witness)
}

/// V ⊕ H as a union of left cosets; equals π⁻¹(π(V)) when G/H partitions.
pub fn saturate(g: &GyroTable, h: &SubsetMask, v: &SubsetMask) -> SubsetMask {
    let mut out = SubsetMask::empty(g.order());
    for x in v.iter() {
        out = out.union(&coset(g, h, x));
    }
    out
}

/// The finite form of the fiber identity: ⊖a ⊕ ((a⊕H) ∩ P) = H ∩ ((⊖a) ⊕ P),
/// with left translation by ⊖a restricting to a bijection between the sides.
///
/// Requires P symmetric (⊖P = P) with 0 ∈ P.
pub fn intersection_identity_check(
    g: &GyroTable,
    h: &SubsetMask,
    p: &SubsetMask,
    a: usize,
) -> Result<CheckReport, QuotientError> {
    if !p.contains(0) || p.iter().any(|x| !p.contains(g.inv(x))) {
        return Err(QuotientError::BadSymmetricSet);
    }
    let na = g.inv(a);
    let lhs_src = coset(g, h, a).intersect(p);
    let lhs = g.translate_set(na, &lhs_src, Side::Left);
    let rhs = h.intersect(&g.translate_set(na, p, Side::Left));
    // Left translations are injective, so matching images plus equal
    // cardinality certify the restricted bijection.
    let ok = lhs == rhs && lhs.len() == lhs_src.len();
    Ok(CheckReport {
        ok,
        checked: 1,
        witness: if ok { None } else { Some(vec![a]) },
    })
}
