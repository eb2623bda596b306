//! Search for unimodular lattice maps identifying two fans.

use crate::error::{Error, Result};
use crate::fan::{Cone, LatticeFan};
use crate::lattice::Mat3;
use std::collections::HashSet;

/// A unimodular matrix carrying one fan onto another, with the induced
/// bijection on ray indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIsomorphism {
    pub matrix: Mat3,
    /// `ray_map[i]` is the index in the target fan of the image of ray `i`.
    pub ray_map: Vec<usize>,
}

impl FanIsomorphism {
    pub fn inverse(&self) -> FanIsomorphism {
        let mut inv = vec![0; self.ray_map.len()];
        for (i, &j) in self.ray_map.iter().enumerate() {
            inv[j] = i;
        }
        FanIsomorphism { matrix: self.matrix.inverse().expect("unimodular"), ray_map: inv }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FanIsomorphism) -> FanIsomorphism {
        FanIsomorphism {
            matrix: other.matrix * self.matrix,
            ray_map: self.ray_map.iter().map(|&j| other.ray_map[j]).collect(),
        }
    }
}

/// Checks whether `m` maps the rays of `a` bijectively onto those of `b`
/// and maximal cones onto maximal cones.
pub fn verify_matrix(a: &LatticeFan, b: &LatticeFan, m: &Mat3) -> Option<FanIsomorphism> {
    if !m.is_unimodular() || a.rays().len() != b.rays().len() || a.maximal_cones().len() != b.maximal_cones().len() {
        return None;
    }
    let ray_map: Vec<usize> = a
        .rays()
        .iter()
        .map(|v| b.ray_index_of(&m.apply(v)))
        .collect::<Option<_>>()?;
    let targets: HashSet<&Cone> = b.maximal_cones().iter().collect();
    let all_cones_map = a.maximal_cones().iter().all(|c| {
        let image = Cone::new(c.rays().iter().map(|&r| ray_map[r]).collect());
        targets.contains(&image)
    });
    all_cones_map.then_some(FanIsomorphism { matrix: *m, ray_map })
}

const ORDERINGS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn check_inputs(a: &LatticeFan, b: &LatticeFan) -> Result<()> {
    if !a.is_complete() || !b.is_complete() {
        return Err(Error::NonCompleteInput);
    }
    if !a.is_smooth() || !b.is_smooth() {
        return Err(Error::NonSmoothInput("fan isomorphism input".into()));
    }
    Ok(())
}

/// Candidate matrices in search order: the identity, then every matrix
/// sending the first maximal cone of `a` onto an ordered maximal cone of `b`.
fn candidates<'a>(a: &'a LatticeFan, b: &'a LatticeFan) -> impl Iterator<Item = Mat3> + 'a {
    let anchor = a.maximal_cones().first().map(|c| a.generator_matrix(c));
    let anchor_inv = anchor.and_then(|m| m.inverse());
    std::iter::once(Mat3::IDENTITY).chain(b.maximal_cones().iter().flat_map(move |c| {
        ORDERINGS.iter().filter_map(move |o| {
            let r = c.rays();
            let img = Mat3::from_columns([b.ray(r[o[0]]), b.ray(r[o[1]]), b.ray(r[o[2]])]);
            anchor_inv.map(|inv| img * inv)
        })
    }))
}

/// First isomorphism found by the anchored search, or `None`.
pub fn fan_isomorphism(a: &LatticeFan, b: &LatticeFan) -> Result<Option<FanIsomorphism>> {
    check_inputs(a, b)?;
    if a.rays().len() != b.rays().len() || a.maximal_cones().len() != b.maximal_cones().len() {
        return Ok(None);
    }
    Ok(candidates(a, b).find_map(|m| verify_matrix(a, b, &m)))
}

/// Every isomorphism `a → b`, without repeats, in search order.
pub fn fan_isomorphisms(a: &LatticeFan, b: &LatticeFan) -> Result<Vec<FanIsomorphism>> {
    check_inputs(a, b)?;
    let mut seen = HashSet::new();
    Ok(candidates(a, b)
        .filter_map(|m| verify_matrix(a, b, &m))
        .filter(|iso| seen.insert(iso.matrix))
        .collect())
}
