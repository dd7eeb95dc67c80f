//! Shelling orders for the Stanley-Reisner complexes of `R-bar/I(J1, J2, d)`.
//!
//! Vertices are `y_j` (index `j`) and `z_j` (index `f + j`). A facet picks one
//! of `y_j, z_j` for every `j`; it is allowed when fewer than `d` of its
//! vertices are `y_j` with `j in J1` or `z_j` with `j in J2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::IndexSet;

/// A facet, as the set of positions `j` where it picks `z_j`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Facet {
    z_positions: IndexSet,
}

impl Facet {
    fn vertices(self, f: usize) -> u64 {
        (0..f).map(|j| if self.z_positions.contains(j) { 1u64 << (f + j) } else { 1 << j }).sum()
    }

    /// Positions `j` whose vertex is one of the generators of `I(J1, J2, -)`.
    pub fn marked(self, f: usize, j1: IndexSet, j2: IndexSet) -> IndexSet {
        (0..f)
            .filter(|&j| {
                let z = self.z_positions.contains(j);
                (z && j2.contains(j)) || (!z && j1.contains(j))
            })
            .collect()
    }

    pub fn label(self, f: usize) -> String {
        (0..f).map(|j| format!("{}{j}", if self.z_positions.contains(j) { 'z' } else { 'y' })).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Shelling {
    pub order: Vec<String>,
    /// the shelling condition of the ordering
    pub shellable: bool,
    /// each new facet meets the earlier ones in exactly the faces dropping a marked vertex
    pub marked_faces: bool,
}

impl Shelling {
    pub fn holds(&self) -> bool {
        self.shellable && self.marked_faces
    }
}

/// Facets ordered by the number of marked positions, then lexicographically.
pub fn shelling_order(f: usize, j1: IndexSet, j2: IndexSet, d: i64) -> Result<Vec<Facet>> {
    if !j1.is_disjoint(j2) {
        return Err(Error::Overlap(j1.to_string(), j2.to_string()));
    }
    if d < 2 {
        return Err(Error::OutOfRange { what: "d", value: d });
    }
    let mut facets: Vec<Facet> = IndexSet::all(f)
        .map(|z_positions| Facet { z_positions })
        .filter(|x| (x.marked(f, j1, j2).len() as i64) < d)
        .collect();
    facets.sort_by_key(|x| (x.marked(f, j1, j2).len(), x.label(f)));
    Ok(facets)
}

/// Checks the shelling condition for a facet order given as vertex bitmasks:
/// each facet meets the union of the earlier ones in a pure complex of codimension one.
pub fn is_shelling(order: &[u64]) -> bool {
    order.iter().enumerate().skip(1).all(|(k, &fk)| {
        let size = fk.count_ones();
        let meets: Vec<u64> = order[..k].iter().map(|&fi| fi & fk).collect();
        meets.iter().all(|&m| meets.iter().any(|&big| big & m == m && big.count_ones() + 1 == size))
    })
}

/// The maximal faces of `<earlier facets> ∩ <facet k>`.
fn intersection_facets(order: &[u64], k: usize) -> Vec<u64> {
    let meets: Vec<u64> = order[..k].iter().map(|&fi| fi & order[k]).collect();
    let mut out: Vec<u64> =
        meets.iter().copied().filter(|&m| !meets.iter().any(|&big| big != m && big & m == m)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn shellability_check(f: usize, j1: IndexSet, j2: IndexSet, d: i64) -> Result<Shelling> {
    let facets = shelling_order(f, j1, j2, d)?;
    let masks: Vec<u64> = facets.iter().map(|x| x.vertices(f)).collect();
    let marked_faces = (1..facets.len()).all(|k| {
        let fk = masks[k];
        let mut expected: Vec<u64> = facets[k]
            .marked(f, j1, j2)
            .iter()
            .map(|j| fk & !(1u64 << j | 1 << (f + j)))
            .collect();
        expected.sort_unstable();
        intersection_facets(&masks, k) == expected
    });
    Ok(Shelling {
        order: facets.iter().map(|x| x.label(f)).collect(),
        shellable: is_shelling(&masks),
        marked_faces,
    })
}
