//! Subgyrogroup recognition, enumeration, and hierarchy classification.
//!
//! The hierarchy runs: normal-sufficient ⇒ strongly-L ⇒ L ⇒ subgyrogroup.
//! A subgyrogroup is a subset containing 0 that is closed under ⊕ and ⊖;
//! gyration closure then follows from the gyrator identity and is only
//! re-asserted as a cross-check. "Normal-sufficient" refers to the three
//! sufficient conditions for being the kernel of a homomorphism; kernel-hood
//! itself is never decided, so the flag is deliberately one-sided.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::exec;
use crate::mask::SubsetMask;
use crate::table::{GyroTable, Side};

#[derive(Debug, Error)]
pub enum SubgyroError {
    #[error("empty subset")]
    EmptySubset,
    #[error("not a subgyrogroup: {0}")]
    NotASubgyrogroup(String),
}

/// Per-subset classification flags with witnesses for every false flag.
#[derive(Debug, Clone, Serialize)]
pub struct SubClassification {
    pub is_sub: bool,
    pub is_l: bool,
    pub is_strongly_l: bool,
    pub is_normal_sufficient: bool,
    /// failed property -> lexicographically smallest witness tuple
    pub witnesses: BTreeMap<String, Vec<usize>>,
}

/// Why a subset fails to be a subgyrogroup.
pub fn subgyrogroup_violation(
    g: &GyroTable,
    h: &SubsetMask,
) -> Result<Option<(String, Vec<usize>)>, SubgyroError> {
    if h.is_empty() {
        return Err(SubgyroError::EmptySubset);
    }
    if !h.contains(0) {
        return Ok(Some(("missing_identity".into(), vec![0])));
    }
    for x in h.iter() {
        for y in h.iter() {
            let v = g.op(x, y);
            if !h.contains(v) {
                return Ok(Some(("op_closure".into(), vec![x, y, v])));
            }
        }
        if !h.contains(g.inv(x)) {
            return Ok(Some(("inv_closure".into(), vec![x, g.inv(x)])));
        }
    }
    Ok(None)
}

pub fn is_subgyrogroup(g: &GyroTable, h: &SubsetMask) -> Result<bool, SubgyroError> {
    Ok(subgyrogroup_violation(g, h)?.is_none())
}

/// Classifies a subgyrogroup in the L / strongly-L / normal-sufficient
/// hierarchy by exhaustive quantifier scans.
pub fn classify_subset(g: &GyroTable, h: &SubsetMask) -> Result<SubClassification, SubgyroError> {
    if let Some((prop, w)) = subgyrogroup_violation(g, h)? {
        return Err(SubgyroError::NotASubgyrogroup(format!(
            "{prop} violated at {w:?}"
        )));
    }
    let n = g.order();
    let mut witnesses = BTreeMap::new();

    // Cross-check: gyration closure inside H is a consequence of ⊕/⊖ closure.
    for x in h.iter() {
        for y in h.iter() {
            for z in h.iter() {
                assert!(
                    h.contains(g.gyr(x, y, z)),
                    "gyration closure broken at ({x},{y},{z})"
                );
            }
        }
    }

    // L: gyr[a, h](H) = H for all a in G, h in H.
    let l_witness = exec::find_min(n, |a| {
        h.iter()
            .find(|&hh| g.gyr_map(a, hh).apply_set(h) != *h)
            .map(|hh| vec![a, hh])
    });
    if let Some(w) = &l_witness {
        witnesses.insert("L".into(), w.clone());
    }

    // strongly-L: gyr[a, b](H) ⊆ H for all a, b in G.
    let sl_witness = exec::find_min(n, |a| {
        (0..n)
            .find(|&b| !g.gyr_map(a, b).apply_set(h).is_subset(h))
            .map(|b| vec![a, b])
    });
    if let Some(w) = &sl_witness {
        witnesses.insert("strongly_L".into(), w.clone());
    }

    // Normal-sufficient: (1) gyr[h, a] = id for h in H, a in G;
    // (2) gyr[b, a](H) ⊆ H for all a, b; (3) a⊕H = H⊕a for all a.
    let ns_witness = if sl_witness.is_some() {
        sl_witness.clone()
    } else {
        let gyr_id = exec::find_min(n, |a| {
            h.iter()
                .find(|&hh| !g.gyr_map(hh, a).is_identity())
                .map(|hh| vec![hh, a])
        });
        gyr_id.or_else(|| {
            exec::find_min(n, |a| {
                if g.translate_set(a, h, Side::Left) == g.translate_set(a, h, Side::Right) {
                    None
                } else {
                    Some(vec![a])
                }
            })
        })
    };
    if let Some(w) = &ns_witness {
        witnesses.insert("normal_sufficient".into(), w.clone());
    }

    let c = SubClassification {
        is_sub: true,
        is_l: l_witness.is_none(),
        is_strongly_l: sl_witness.is_none(),
        is_normal_sufficient: ns_witness.is_none(),
        witnesses,
    };
    // Hierarchy invariant must hold for every classified subset.
    assert!(!c.is_normal_sufficient || c.is_strongly_l);
    assert!(!c.is_strongly_l || c.is_l);
    assert!(!c.is_l || c.is_sub);
    Ok(c)
}

/// Least superset of `seeds ∪ {0}` closed under ⊕ and ⊖.
pub fn generate_closure(g: &GyroTable, seeds: &SubsetMask) -> Result<SubsetMask, SubgyroError> {
    if seeds.is_empty() {
        return Err(SubgyroError::EmptySubset);
    }
    let mut s = *seeds;
    s.insert(0);
    loop {
        let mut next = s;
        for x in s.iter() {
            next.insert(g.inv(x));
            for y in s.iter() {
                next.insert(g.op(x, y));
            }
        }
        if next == s {
            return Ok(s);
        }
        s = next;
    }
}

/// Result of subgyrogroup enumeration; `exhaustive` is false when the
/// closure-generated strategy was used above the full-scan bound.
pub struct SubgyroEnumeration {
    pub subgroups: Vec<SubsetMask>,
    pub exhaustive: bool,
}

/// Full subset scan is used up to this carrier order.
pub const FULL_SCAN_BOUND: usize = 20;

/// All subgyrogroups, sorted by (cardinality, bits).
///
/// For orders up to [`FULL_SCAN_BOUND`] every subset containing 0 is tested;
/// above that, closures of generator pools of size at most 3 are collected,
/// which may miss subgyrogroups needing four or more generators.
pub fn enumerate_subgyrogroups(g: &GyroTable) -> SubgyroEnumeration {
    let n = g.order();
    let mut subgroups: Vec<SubsetMask> = if n <= FULL_SCAN_BOUND {
        let count = 1usize << (n - 1);
        let found = exec::collect(count, |m| {
            let mask = SubsetMask::from_bits(n, ((m as u128) << 1) | 1);
            match subgyrogroup_violation(g, &mask) {
                Ok(None) => Some(mask),
                _ => None,
            }
        });
        found.into_iter().flatten().collect()
    } else {
        let mut set = BTreeSet::new();
        set.insert(generate_closure(g, &SubsetMask::singleton(n, 0)).unwrap());
        for a in 0..n {
            let sa = SubsetMask::from_elems(n, &[a]);
            set.insert(generate_closure(g, &sa).unwrap());
            for b in a + 1..n {
                let sab = SubsetMask::from_elems(n, &[a, b]);
                set.insert(generate_closure(g, &sab).unwrap());
                for c in b + 1..n {
                    let sabc = SubsetMask::from_elems(n, &[a, b, c]);
                    set.insert(generate_closure(g, &sabc).unwrap());
                }
            }
        }
        set.into_iter().collect()
    };
    subgroups.sort_by_key(|m| (m.len(), m.bits()));
    SubgyroEnumeration {
        subgroups,
        exhaustive: n <= FULL_SCAN_BOUND,
    }
}
