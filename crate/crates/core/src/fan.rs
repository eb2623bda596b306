//! Simplicial fans in ℤ³, star subdivision, and the two permutohedral
//! blowup sequences.
//!
//! Rays carry multi-index labels (`v1`, `v12`, `v123`, `u135`, ...). A ray
//! introduced by subdividing the cone spanned by `v_i, ..., v_j` is labeled
//! `v_{i...j}`. Cones are stored as sorted ray-index sets; only maximal
//! cones are kept and faces are tested by inclusion.

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Mat3};
use std::collections::BTreeMap;
use std::fmt;

/// Which toric variety a fan was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseModel {
    /// P³, rays `v1..v4`.
    P3,
    /// (P¹)³, rays `u1..u6`.
    Cube,
}

impl BaseModel {
    pub fn prefix(self) -> char {
        match self {
            BaseModel::P3 => 'v',
            BaseModel::Cube => 'u',
        }
    }
}

/// Multi-index ray label such as `v12` or `u246`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayLabel {
    pub prefix: char,
    pub indices: Vec<u8>,
}

impl RayLabel {
    pub fn new(prefix: char, indices: &[u8]) -> Self {
        let mut indices = indices.to_vec();
        indices.sort_unstable();
        RayLabel { prefix, indices }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut chars = s.chars();
        let prefix = chars.next()?;
        let indices: Option<Vec<u8>> = chars.map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        let indices = indices?;
        (!indices.is_empty()).then(|| RayLabel::new(prefix, &indices))
    }
}

impl fmt::Display for RayLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefix)?;
        for i in &self.indices {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A simplicial cone, as the sorted set of its generating ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_ray(&self, r: usize) -> bool {
        self.0.binary_search(&r).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains_ray(*r))
    }
}

/// One star subdivision in a fan's construction history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupStep {
    pub center: Cone,
    pub new_ray: usize,
}

/// A simplicial fan in ℤ³ with labeled rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFan {
    rays: Vec<LatticeVector>,
    labels: Vec<RayLabel>,
    maximal: Vec<Cone>,
    base: BaseModel,
    history: Vec<BlowupStep>,
}

/// Generic directions used to certify completeness: each must lie in the
/// interior of exactly one maximal cone.
const SAMPLE_POINTS: [LatticeVector; 6] = [
    LatticeVector::new(3, 5, -7),
    LatticeVector::new(-11, 2, 17),
    LatticeVector::new(13, -19, 5),
    LatticeVector::new(-23, -29, -31),
    LatticeVector::new(37, 41, 43),
    LatticeVector::new(7, -53, 59),
];

impl LatticeFan {
    /// Builds a fan from rays and maximal cones given by ray labels.
    pub fn from_parts(base: BaseModel, rays: Vec<(RayLabel, LatticeVector)>, maximal: &[[&str; 3]]) -> Result<Self> {
        let (labels, rays): (Vec<_>, Vec<_>) = rays.into_iter().unzip();
        let mut fan = LatticeFan { rays, labels, maximal: Vec::new(), base, history: Vec::new() };
        let mut cones = Vec::with_capacity(maximal.len());
        for c in maximal {
            cones.push(fan.cone(c)?);
        }
        cones.sort();
        cones.dedup();
        fan.maximal = cones;
        Ok(fan)
    }

    pub fn base(&self) -> BaseModel {
        self.base
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> LatticeVector {
        self.rays[i]
    }

    pub fn labels(&self) -> &[RayLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &RayLabel {
        &self.labels[i]
    }

    pub fn history(&self) -> &[BlowupStep] {
        &self.history
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    pub fn ray_index(&self, label: &str) -> Option<usize> {
        let l = RayLabel::parse(label)?;
        self.labels.iter().position(|x| *x == l)
    }

    pub fn ray_index_of(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// Cone spanned by the named rays (not checked for membership).
    pub fn cone(&self, labels: &[&str]) -> Result<Cone> {
        labels
            .iter()
            .map(|l| self.ray_index(l).ok_or_else(|| Error::UnknownRay(l.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Cone::new)
    }

    pub fn cone_name(&self, c: &Cone) -> String {
        let names: Vec<String> = c.rays().iter().map(|&r| self.labels[r].to_string()).collect();
        format!("<{}>", names.join(","))
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        c.dim() > 0 && c.rays().iter().all(|&r| r < self.rays.len()) && self.maximal.iter().any(|m| c.is_face_of(m))
    }

    fn faces_of_dim(&self, dim: usize) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        for m in &self.maximal {
            let r = m.rays();
            match dim {
                1 => out.extend(r.iter().map(|&a| Cone::new(vec![a]))),
                2 => {
                    for i in 0..r.len() {
                        for j in i + 1..r.len() {
                            out.push(Cone::new(vec![r[i], r[j]]));
                        }
                    }
                }
                3 => out.push(m.clone()),
                _ => {}
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The 2-dimensional cones, sorted.
    pub fn walls(&self) -> Vec<Cone> {
        self.faces_of_dim(2)
    }

    /// (rays, 2-cones, maximal cones).
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.faces_of_dim(1).len(), self.walls().len(), self.maximal.len())
    }

    pub fn generator_matrix(&self, c: &Cone) -> Mat3 {
        assert_eq!(c.dim(), 3);
        let r = c.rays();
        Mat3::from_columns([self.rays[r[0]], self.rays[r[1]], self.rays[r[2]]])
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal.iter().all(|c| c.dim() == 3 && self.generator_matrix(c).det().abs() == 1)
    }

    /// Maximal cones containing the given cone.
    pub fn star(&self, c: &Cone) -> Vec<&Cone> {
        self.maximal.iter().filter(|m| c.is_face_of(m)).collect()
    }

    /// Certifies that the maximal cones tile ℝ³.
    ///
    /// Every 2-face must border exactly two maximal cones lying on opposite
    /// sides of its plane, which makes the union a closed oriented
    /// pseudomanifold over the sphere; a generic direction covered exactly
    /// once then forces covering degree one, hence a complete fan with
    /// disjoint interiors.
    pub fn is_complete(&self) -> bool {
        if self.maximal.is_empty() || self.maximal.iter().any(|c| c.dim() != 3 || self.generator_matrix(c).det() == 0) {
            return false;
        }
        for w in self.walls() {
            let star = self.star(&w);
            if star.len() != 2 {
                return false;
            }
            let [a, b] = [w.rays()[0], w.rays()[1]];
            let side = |m: &Cone| {
                let x = *m.rays().iter().find(|r| !w.contains_ray(**r)).unwrap();
                Mat3::from_columns([self.rays[a], self.rays[b], self.rays[x]]).det().signum()
            };
            let (s0, s1) = (side(star[0]), side(star[1]));
            if s0 == 0 || s0 == s1 {
                return false;
            }
        }
        let mut certified = false;
        for p in SAMPLE_POINTS {
            let mut interior = 0;
            let mut boundary = false;
            for m in &self.maximal {
                let g = self.generator_matrix(m);
                let det = g.det();
                let lam = g.adjugate().apply(&p);
                let signs: Vec<i64> = lam.0.iter().map(|x| (x * det.signum()).signum()).collect();
                if signs.iter().all(|&s| s > 0) {
                    interior += 1;
                } else if signs.iter().all(|&s| s >= 0) {
                    boundary = true;
                }
            }
            if boundary {
                continue;
            }
            if interior != 1 {
                return false;
            }
            certified = true;
        }
        certified
    }

    /// The two maximal cones on either side of a wall, as
    /// `(wall rays [a, b], opposite rays [c, d])`.
    pub fn wall_neighbors(&self, wall: &Cone) -> Result<([usize; 2], [usize; 2])> {
        let star = self.star(wall);
        if wall.dim() != 2 || star.len() != 2 {
            return Err(Error::NotAWall(self.cone_name(wall)));
        }
        let opp = |m: &Cone| *m.rays().iter().find(|r| !wall.contains_ray(**r)).unwrap();
        Ok(([wall.rays()[0], wall.rays()[1]], [opp(star[0]), opp(star[1])]))
    }

    /// Intersection numbers `D_ρ · V(wall)` for every ray ρ, read off the
    /// wall relation `v_c + v_d + α v_a + β v_b = 0` of a smooth wall.
    pub fn wall_relation(&self, wall: &Cone) -> Result<Vec<i64>> {
        let ([a, b], [c, d]) = self.wall_neighbors(wall)?;
        let basis = Mat3::from_columns([self.rays[a], self.rays[b], self.rays[c]]);
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::NonSmoothInput(format!("cone at wall {}", self.cone_name(wall))))?;
        let x = inv.apply(&(self.rays[c] + self.rays[d]));
        if x.0[2] != 0 {
            return Err(Error::NonSmoothInput(format!("wall {}", self.cone_name(wall))));
        }
        let mut pairing = vec![0; self.rays.len()];
        pairing[c] += 1;
        pairing[d] += 1;
        pairing[a] -= x.0[0];
        pairing[b] -= x.0[1];
        debug_assert_eq!(
            pairing.iter().zip(&self.rays).map(|(k, v)| v.scale(*k)).sum::<LatticeVector>(),
            LatticeVector::ZERO
        );
        Ok(pairing)
    }

    /// Star subdivision at `center`: the toric blowup of its orbit closure.
    pub fn star_subdivide(&self, center: &Cone) -> Result<LatticeFan> {
        if !(2..=3).contains(&center.dim()) {
            return Err(Error::BadCenterDimension(center.dim()));
        }
        if !self.contains_cone(center) {
            return Err(Error::CenterNotInFan(format!("{:?}", center.rays())));
        }
        if !self.is_smooth() {
            return Err(Error::NonSmoothInput("star subdivision input".into()));
        }
        let new_vec: LatticeVector = center.rays().iter().map(|&r| self.rays[r]).sum();
        let mut indices: Vec<u8> = center.rays().iter().flat_map(|&r| self.labels[r].indices.clone()).collect();
        indices.sort_unstable();
        let new_label = RayLabel { prefix: self.labels[center.rays()[0]].prefix, indices };
        if !new_vec.is_primitive() {
            return Err(Error::NonPrimitiveRay(new_label.to_string()));
        }
        if self.ray_index_of(&new_vec).is_some() {
            return Err(Error::NonSmoothInput(format!("ray {new_vec} already present")));
        }
        let w = self.rays.len();
        let mut maximal = Vec::with_capacity(self.maximal.len() + 2);
        for m in &self.maximal {
            if center.is_face_of(m) {
                for &c in center.rays() {
                    let mut rays: Vec<usize> = m.rays().iter().copied().filter(|&r| r != c).collect();
                    rays.push(w);
                    maximal.push(Cone::new(rays));
                }
            } else {
                maximal.push(m.clone());
            }
        }
        maximal.sort();
        let mut rays = self.rays.clone();
        rays.push(new_vec);
        let mut labels = self.labels.clone();
        labels.push(new_label);
        let mut history = self.history.clone();
        history.push(BlowupStep { center: center.clone(), new_ray: w });
        Ok(LatticeFan { rays, labels, maximal, base: self.base, history })
    }
}

/// An iterated toric blowup: a base fan and the centers to subdivide, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSequence {
    pub base: BaseModel,
    pub centers: Vec<Vec<String>>,
}

impl BlowupSequence {
    pub fn new(base: BaseModel, centers: &[&[&str]]) -> Self {
        BlowupSequence {
            base,
            centers: centers.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect(),
        }
    }

    /// Applies every subdivision, asserting smoothness and completeness
    /// after each step.
    pub fn apply(&self) -> Result<LatticeFan> {
        let mut fan = match self.base {
            BaseModel::P3 => build_p3_fan(),
            BaseModel::Cube => build_cube_fan(),
        };
        for center in &self.centers {
            let names: Vec<&str> = center.iter().map(String::as_str).collect();
            let cone = fan.cone(&names)?;
            fan = fan.star_subdivide(&cone)?;
            if !fan.is_smooth() {
                return Err(Error::NonSmoothInput(format!("after subdividing {}", names.join(","))));
            }
            if !fan.is_complete() {
                return Err(Error::NonCompleteInput);
            }
        }
        Ok(fan)
    }
}

pub const P3_POINT_CENTERS: [[&str; 3]; 4] =
    [["v1", "v2", "v3"], ["v1", "v2", "v4"], ["v1", "v3", "v4"], ["v2", "v3", "v4"]];
pub const P3_LINE_CENTERS: [[&str; 2]; 6] =
    [["v1", "v2"], ["v1", "v3"], ["v1", "v4"], ["v2", "v3"], ["v2", "v4"], ["v3", "v4"]];
pub const CUBE_POINT_CENTERS: [[&str; 3]; 2] = [["u1", "u3", "u5"], ["u2", "u4", "u6"]];
pub const CUBE_LINE_CENTERS: [[&str; 2]; 6] =
    [["u1", "u3"], ["u1", "u5"], ["u3", "u5"], ["u2", "u4"], ["u2", "u6"], ["u4", "u6"]];

/// The blowup sequence of `base` at its first `points` torus-fixed points
/// and, optionally, the six invariant lines through them.
pub fn toric_blowup_sequence(base: BaseModel, points: usize, lines: bool) -> BlowupSequence {
    let (pts, lns): (Vec<&[&str]>, Vec<&[&str]>) = match base {
        BaseModel::P3 => (
            P3_POINT_CENTERS.iter().map(|c| c.as_slice()).collect(),
            P3_LINE_CENTERS.iter().map(|c| c.as_slice()).collect(),
        ),
        BaseModel::Cube => (
            CUBE_POINT_CENTERS.iter().map(|c| c.as_slice()).collect(),
            CUBE_LINE_CENTERS.iter().map(|c| c.as_slice()).collect(),
        ),
    };
    let mut centers: Vec<&[&str]> = pts.into_iter().take(points).collect();
    if lines {
        centers.extend(lns);
    }
    BlowupSequence::new(base, &centers)
}

pub fn build_p3_fan() -> LatticeFan {
    let rays = vec![
        (RayLabel::new('v', &[1]), LatticeVector::new(-1, -1, -1)),
        (RayLabel::new('v', &[2]), LatticeVector::new(1, 0, 0)),
        (RayLabel::new('v', &[3]), LatticeVector::new(0, 1, 0)),
        (RayLabel::new('v', &[4]), LatticeVector::new(0, 0, 1)),
    ];
    LatticeFan::from_parts(BaseModel::P3, rays, &P3_POINT_CENTERS).expect("P3 fan labels")
}

/// The fan of (P¹)³: the eight coordinate octants.
pub fn build_cube_fan() -> LatticeFan {
    let rays = vec![
        (RayLabel::new('u', &[1]), LatticeVector::new(1, 0, 0)),
        (RayLabel::new('u', &[2]), LatticeVector::new(-1, 0, 0)),
        (RayLabel::new('u', &[3]), LatticeVector::new(0, 1, 0)),
        (RayLabel::new('u', &[4]), LatticeVector::new(0, -1, 0)),
        (RayLabel::new('u', &[5]), LatticeVector::new(0, 0, 1)),
        (RayLabel::new('u', &[6]), LatticeVector::new(0, 0, -1)),
    ];
    let mut octants: Vec<[&str; 3]> = Vec::new();
    for x in ["u1", "u2"] {
        for y in ["u3", "u4"] {
            for z in ["u5", "u6"] {
                octants.push([x, y, z]);
            }
        }
    }
    LatticeFan::from_parts(BaseModel::Cube, rays, &octants).expect("cube fan labels")
}

pub fn build_permutohedral_from_p3() -> LatticeFan {
    toric_blowup_sequence(BaseModel::P3, 4, true)
        .apply()
        .expect("permutohedral blowup of P3")
}

pub fn build_permutohedral_from_cube() -> LatticeFan {
    toric_blowup_sequence(BaseModel::Cube, 2, true)
        .apply()
        .expect("permutohedral blowup of the cube")
}

/// Ray label → coordinates, for reports.
pub fn ray_table(fan: &LatticeFan) -> BTreeMap<String, LatticeVector> {
    fan.labels().iter().zip(fan.rays()).map(|(l, v)| (l.to_string(), *v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_fan_shape() {
        let fan = build_p3_fan();
        assert_eq!(fan.f_vector(), (4, 6, 4));
        assert!(fan.is_smooth());
        assert!(fan.is_complete());
        assert_eq!(fan.ray(fan.ray_index("v1").unwrap()), LatticeVector::new(-1, -1, -1));
    }

    #[test]
    fn cube_fan_shape() {
        let fan = build_cube_fan();
        assert_eq!(fan.f_vector(), (6, 12, 8));
        assert!(fan.is_smooth() && fan.is_complete());
        assert_eq!(fan.ray(fan.ray_index("u2").unwrap()), LatticeVector::new(-1, 0, 0));
    }

    #[test]
    fn point_blowup_of_p3() {
        let fan = build_p3_fan();
        let c = fan.cone(&["v1", "v2", "v3"]).unwrap();
        let up = fan.star_subdivide(&c).unwrap();
        assert_eq!(up.f_vector().0, 5);
        assert_eq!(up.maximal_cones().len(), 6);
        assert_eq!(up.ray(up.ray_index("v123").unwrap()), LatticeVector::new(0, 0, -1));
        assert!(up.is_smooth() && up.is_complete());
    }

    #[test]
    fn center_must_be_in_fan() {
        let fan = build_cube_fan();
        let antipodal = fan.cone(&["u1", "u2"]).unwrap();
        assert!(matches!(fan.star_subdivide(&antipodal), Err(Error::CenterNotInFan(_))));
        let ray = Cone::new(vec![0]);
        assert!(matches!(fan.star_subdivide(&ray), Err(Error::BadCenterDimension(1))));
    }

    #[test]
    fn incomplete_fan_is_detected() {
        let mut fan = build_cube_fan();
        fan.maximal.pop();
        assert!(!fan.is_complete());
        // overlapping cones: a duplicate octant with a different orientation
        let mut fan = build_p3_fan();
        let extra = fan.cone(&["v2", "v3", "v4"]).unwrap();
        fan.maximal.push(extra);
        assert!(!fan.is_complete());
    }

    #[test]
    fn new_rays_are_center_sums() {
        for fan in [build_permutohedral_from_p3(), build_permutohedral_from_cube()] {
            for step in fan.history() {
                let sum: LatticeVector = step.center.rays().iter().map(|&r| fan.ray(r)).sum();
                assert_eq!(fan.ray(step.new_ray), sum);
                assert!(sum.is_primitive());
            }
        }
    }

    #[test]
    fn wall_relations_vanish() {
        let fan = build_permutohedral_from_p3();
        for w in fan.walls() {
            let rel = fan.wall_relation(&w).unwrap();
            let s: LatticeVector = rel.iter().zip(fan.rays()).map(|(k, v)| v.scale(*k)).sum();
            assert_eq!(s, LatticeVector::ZERO);
            assert!(rel.iter().filter(|&&x| x != 0).count() <= 4);
        }
    }
}
