use serde::Serialize;

use super::CwPoset;
use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use num_traits::{One, Zero};

/// Reduced rational homology of the order complex of an open interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalHomology {
    pub lower: String,
    pub upper: String,
    pub gap: usize,
    /// The open interval is empty, so the order complex is the empty
    /// complex (reduced homology `Q` in degree -1).
    pub empty: bool,
    /// Reduced Betti numbers in degrees `0, 1, ...`.
    pub reduced_betti: Vec<usize>,
    /// Homology of the sphere `S^(gap - 2)`.
    pub is_sphere: bool,
}

/// Chains of the open interval, grouped by length.
fn chains(poset: &CwPoset, elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut by_len: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut sorted = elems.to_vec();
    sorted.sort_by_key(|&c| (poset.dim(c), c));
    fn extend(poset: &CwPoset, sorted: &[usize], chain: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let k = chain.len() - 1;
        if out.len() <= k {
            out.push(Vec::new());
        }
        out[k].push(chain.clone());
        let last = *chain.last().expect("nonempty");
        for &c in sorted {
            if poset.less(last, c) {
                chain.push(c);
                extend(poset, sorted, chain, out);
                chain.pop();
            }
        }
    }
    for &c in &sorted {
        extend(poset, &sorted, &mut vec![c], &mut by_len);
    }
    by_len
}

pub fn interval_homology(poset: &CwPoset, lower: &str, upper: &str) -> Result<IntervalHomology> {
    let (l, u) = (poset.index_of(lower)?, poset.index_of(upper)?);
    if !poset.less(l, u) {
        return Err(Error::Incomparable { lower: lower.to_string(), upper: upper.to_string() });
    }
    let gap = poset.dim(u).saturating_sub(poset.dim(l));
    let elems = poset.open_interval(l, u);
    if elems.is_empty() {
        return Ok(IntervalHomology {
            lower: lower.to_string(),
            upper: upper.to_string(),
            gap,
            empty: true,
            reduced_betti: Vec::new(),
            is_sphere: gap == 1,
        });
    }
    let mut simplices = chains(poset, &elems);
    for level in simplices.iter_mut() {
        level.sort();
    }
    // rank of the augmented boundary map out of degree k, k >= 0
    let boundary_rank = |k: usize| -> usize {
        if k == 0 {
            return 1; // every vertex maps to the empty simplex
        }
        let faces = &simplices[k - 1];
        let rows = simplices[k].iter().map(|s| {
            let mut v = vec![Q::zero(); faces.len()];
            for drop in 0..s.len() {
                let face: Vec<usize> =
                    s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &c)| c).collect();
                let idx = faces.binary_search(&face).expect("faces of chains are chains");
                v[idx] = if drop % 2 == 0 { Q::one() } else { -Q::one() };
            }
            v
        });
        linalg::rank_incremental(rows)
    };
    let top = simplices.len();
    let ranks: Vec<usize> = (0..top).map(boundary_rank).collect();
    let reduced_betti: Vec<usize> = (0..top)
        .map(|k| simplices[k].len() - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect();
    let is_sphere = gap >= 2
        && reduced_betti.iter().enumerate().all(|(k, &b)| b == usize::from(k == gap - 2))
        && reduced_betti.len() > gap - 2;
    Ok(IntervalHomology {
        lower: lower.to_string(),
        upper: upper.to_string(),
        gap,
        empty: false,
        reduced_betti,
        is_sphere,
    })
}
