//! Toric symmetries of the permutohedral models and the basis change between
//! the two blowup descriptions.
//!
//! Each map exists twice: as a closed-form coefficient rule (the production
//! path) and as a pushforward transported along a lattice matrix through the
//! wall curves of the fans (the oracle). Tests compare them entry by entry.

use crate::error::{Error, Result};
use crate::intersection::IntersectionTable;
use crate::isomorphism::{fan_isomorphism, verify_matrix, FanIsomorphism};
use crate::lattice::Mat3;
use crate::linalg::IntMatrix;
use crate::model::{require_model, CurveClass, Model, Side};

/// A lattice map between two model fans with the induced action on curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSymmetry {
    pub matrix: Mat3,
    /// Source ray index → target ray index.
    pub ray_permutation: Vec<usize>,
    /// Column `j` is the image of the `j`-th source curve basis class.
    pub pushforward: IntMatrix,
    pub source: Model,
    pub target: Model,
}

impl ToricSymmetry {
    /// Builds the symmetry of `matrix` from the fan of `source` to the fan of `target`.
    pub fn from_matrix(matrix: Mat3, source: Model, target: Model) -> Result<Self> {
        let s = IntersectionTable::cached(source)?;
        let t = IntersectionTable::cached(target)?;
        let iso = verify_matrix(s.fan(), t.fan(), &matrix)
            .ok_or_else(|| Error::RayPermutationFailure(format!("{matrix} from {source} to {target}")))?;
        Self::from_tables(&iso, &s, &t)
    }

    pub fn from_iso(iso: &FanIsomorphism, source: Model, target: Model) -> Result<Self> {
        let s = IntersectionTable::cached(source)?;
        let t = IntersectionTable::cached(target)?;
        Self::from_tables(iso, &s, &t)
    }

    fn from_tables(iso: &FanIsomorphism, s: &IntersectionTable, t: &IntersectionTable) -> Result<Self> {
        let pushforward = transport(iso, s, t)?;
        Ok(ToricSymmetry {
            matrix: iso.matrix,
            ray_permutation: iso.ray_map.clone(),
            pushforward,
            source: s.model(),
            target: t.model(),
        })
    }

    pub fn apply(&self, beta: &CurveClass) -> Result<CurveClass> {
        require_model(beta.model(), beta.model() == self.source, "this symmetry")?;
        CurveClass::new(self.target, self.pushforward.mul_vec(beta.coeffs()))
    }
}

/// Pushforward on curve classes along a fan isomorphism: each basis curve
/// is carried as its ray pairing vector, relabelled by the ray map, and
/// re-expressed in the target basis. Formally adjoined points map to the
/// formal points of the target in order.
pub fn symmetry_from_fan_iso(iso: &FanIsomorphism, source: Model, target: Model) -> Result<IntMatrix> {
    let s = IntersectionTable::cached(source)?;
    let t = IntersectionTable::cached(target)?;
    transport(iso, &s, &t)
}

fn transport(iso: &FanIsomorphism, s: &IntersectionTable, t: &IntersectionTable) -> Result<IntMatrix> {
    let (src, dst) = (s.model(), t.model());
    let fail = || Error::RayPermutationFailure(format!("isomorphism does not match {src} → {dst}"));
    if iso.ray_map.len() != s.fan().rays().len() || s.fan().rays().len() != t.fan().rays().len() {
        return Err(fail());
    }
    if verify_matrix(s.fan(), t.fan(), &iso.matrix).as_ref() != Some(iso) {
        return Err(fail());
    }
    if src.formal_points() != dst.formal_points() {
        return Err(Error::BasisModelMismatch(format!("{src} and {dst} have different extra points")));
    }
    let mut cols = Vec::with_capacity(src.rank());
    for j in 0..src.rank() {
        let basis = CurveClass::basis(src, j);
        let formal = (src.toric_points()..src.points).find(|&i| src.point_slot(i) == j);
        let image = match formal {
            Some(i) => CurveClass::basis(dst, dst.point_slot(i - src.toric_points() + dst.toric_points())),
            None => {
                let pairing = s.curve_ray_pairing(&basis)?;
                let mut moved = vec![0; pairing.len()];
                for (r, &x) in pairing.iter().enumerate() {
                    moved[iso.ray_map[r]] = x;
                }
                t.curve_from_ray_pairing(&moved)
            }
        };
        cols.push(image.coeffs().to_vec());
    }
    Ok(IntMatrix::from_columns(&cols))
}

/// The matrix of a closed-form map on curve classes, column by column.
pub fn closed_form_matrix(map: impl Fn(&CurveClass) -> Result<CurveClass>, source: Model) -> Result<IntMatrix> {
    let cols = (0..source.rank())
        .map(|j| map(&CurveClass::basis(source, j)).map(|c| c.coeffs().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(&cols))
}

/// `v ↦ −v`, the toric Cremona involution on the P3 side.
pub fn cremona_matrix() -> Mat3 {
    Mat3::IDENTITY.scale(-1)
}

/// The cube-side involution with rows `(−1,0,0), (−1,1,0), (−1,0,1)`.
pub fn cube_cremona_lattice_matrix() -> Mat3 {
    Mat3::from_rows([[-1, 0, 0], [-1, 1, 0], [-1, 0, 1]])
}

pub fn cube_cremona_symmetry() -> Result<ToricSymmetry> {
    ToricSymmetry::from_matrix(cube_cremona_lattice_matrix(), Model::perm_cube(), Model::perm_cube())
}

pub fn cremona_symmetry() -> Result<ToricSymmetry> {
    ToricSymmetry::from_matrix(cremona_matrix(), Model::perm_p3(), Model::perm_p3())
}

/// The isomorphism found by searching from the P3-side fan to the cube-side fan.
pub fn model_isomorphism() -> Result<ToricSymmetry> {
    let s = IntersectionTable::cached(Model::perm_p3())?;
    let t = IntersectionTable::cached(Model::perm_cube())?;
    let iso = fan_isomorphism(s.fan(), t.fan())?
        .ok_or_else(|| Error::RayPermutationFailure("permutohedral fans are not isomorphic".into()))?;
    ToricSymmetry::from_tables(&iso, &s, &t)
}

fn line_b(beta: &CurveClass) -> Vec<i64> {
    let b = beta.line_multiplicities();
    if b.is_empty() {
        vec![0; 6]
    } else {
        b
    }
}

fn finish(beta: &CurveClass, degrees: &[i64], a: Vec<i64>, b: Vec<i64>) -> Result<CurveClass> {
    let m = beta.model();
    let b = if m.lines { b } else { Vec::new() };
    CurveClass::from_parts(m, degrees, &a, &b)
}

/// Whether the P3 line `l` (index into `12,13,14,23,24,34`) passes through
/// the torus-fixed point `p` (index into `123,124,134,234`).
fn p3_line_through(l: usize, p: usize) -> bool {
    let line = Side::P3.line_labels()[l];
    let point = Side::P3.point_labels()[p];
    line.chars().all(|c| point.contains(c))
}

/// The Cremona involution on the P3 side.
///
/// With `a` on `p123, p124, p134, p234` and `b` on lines `12, …, 34`:
/// `d' = 3d − 2(a1+…+a4) − Σb`, `a_α' = d − Σ_{β≠α} a_β − Σ_{ℓ∌p_α} b_ℓ`,
/// and `b_ℓ' = b_ℓ^c` for the complementary line. Extra points are fixed.
pub fn cremona_p3(beta: &CurveClass) -> Result<CurveClass> {
    let m = beta.model();
    require_model(m, m.side == Side::P3 && m.points >= 4, "the P3 Cremona map")?;
    let d = beta.degrees()[0];
    let a = beta.multiplicities();
    let b = line_b(beta);
    let sa: i64 = a[..4].iter().sum();
    let sb: i64 = b.iter().sum();
    let mut a2 = a.clone();
    for p in 0..4 {
        let off: i64 = (0..6).filter(|&l| !p3_line_through(l, p)).map(|l| b[l]).sum();
        a2[p] = d - (sa - a[p]) - off;
    }
    let b2: Vec<i64> = (0..6).map(|l| b[5 - l]).collect();
    finish(beta, &[3 * d - 2 * sa - sb], a2, b2)
}

/// The cube-side Cremona involution, with degrees `(d1, d2, d3)` on
/// `h12, h13, h23`, `a` on `p135, p246` and `b` on lines `13,15,35,24,26,46`.
pub fn cremona_cube(beta: &CurveClass) -> Result<CurveClass> {
    let m = beta.model();
    require_model(m, m.side == Side::Cube && m.points >= 2, "the cube Cremona map")?;
    let d = beta.degrees();
    let a = beta.multiplicities();
    let b = line_b(beta);
    let degrees = [
        d[0] + d[2] - a[0] - a[1] - b[1] - b[4],
        d[1] + d[2] - a[0] - a[1] - b[0] - b[3],
        d[2],
    ];
    let mut a2 = a.clone();
    a2[0] = d[2] - a[1] - b[3] - b[4];
    a2[1] = d[2] - a[0] - b[0] - b[1];
    let b2 = vec![b[4], b[3], b[2], b[1], b[0], b[5]];
    finish(beta, &degrees, a2, b2)
}

/// How the cube involution permutes the six blown-up lines, read off the
/// ray permutation of its lattice matrix (line indices `13,15,35,24,26,46`).
pub fn cube_fiber_orbit() -> Result<Vec<usize>> {
    let z = cube_cremona_symmetry()?;
    let fan = IntersectionTable::cached(Model::perm_cube())?.fan().clone();
    let rays: Vec<usize> = Side::Cube
        .line_labels()
        .iter()
        .map(|l| fan.ray_index(&format!("u{l}")).ok_or_else(|| Error::UnknownRay(format!("u{l}"))))
        .collect::<Result<_>>()?;
    rays.iter()
        .map(|&r| {
            let img = z.ray_permutation[r];
            rays.iter()
                .position(|&x| x == img)
                .ok_or_else(|| Error::RayPermutationFailure(format!("line ray {} leaves the line rays", fan.label(r))))
        })
        .collect()
}

/// Basis change from the P3-side blowup to the cube-side blowup.
///
/// Extra points beyond the four toric ones become cube points `5, 6, …`.
pub fn basis_change(beta: &CurveClass) -> Result<CurveClass> {
    let m = beta.model();
    require_model(m, m.side == Side::P3 && m.points >= 4, "the P3-to-cube basis change")?;
    let target = Model::new(Side::Cube, m.points - 2, m.lines);
    let d = beta.degrees()[0];
    let a = beta.multiplicities();
    let b = line_b(beta);
    // b on 12,13,14,23,24,34
    let degrees = [
        d - a[1] - a[2] - b[2],
        d - a[0] - a[2] - b[1],
        d - a[0] - a[1] - b[0],
    ];
    let mut a2 = vec![a[3], d - a[0] - a[1] - a[2] - b[0] - b[1] - b[2]];
    a2.extend_from_slice(&a[4..]);
    // cube lines 13,15,35,24,26,46
    let b2 = if m.lines { vec![b[3], b[4], b[5], b[2], b[1], b[0]] } else { Vec::new() };
    CurveClass::from_parts(target, &degrees, &a2, &b2)
}
