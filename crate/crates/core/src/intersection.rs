//! Intersection theory on the smooth toric models.
//!
//! Every number here comes from wall relations. A curve class is carried
//! internally as its vector of intersection numbers with the ray divisors
//! (an element of the kernel of `ℤ^rays → ℤ³`), and a divisor as an integer
//! combination of ray divisors. The bases are produced by following the
//! blowup sequence:
//!
//! * the hyperplane classes are total transforms of base ray divisors;
//! * exceptional divisors are the new ray divisors;
//! * `h` (resp. `h12, h13, h23`) is an invariant line of the base;
//! * `e` is an invariant line of the new `P²` when a point is blown up;
//! * `f` is an invariant fiber of the new ruled surface when a line is blown up;
//!
//! and every curve class is carried through later blowups by its pullback,
//! which extends the pairing vector by zero on the new ray.

use crate::error::{Error, Result};
use crate::fan::{toric_blowup_sequence, Cone, LatticeFan};
use crate::linalg::IntMatrix;
use crate::model::{CurveClass, DivisorClass, Model, Side};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Precomputed pairing data for one model.
#[derive(Clone, Debug)]
pub struct IntersectionTable {
    model: Model,
    fan: LatticeFan,
    /// Toric divisor basis elements as ray combinations, in basis-layout order.
    divisor_rays: Vec<Vec<i64>>,
    /// Toric curve basis elements as ray pairing vectors, in basis-layout order.
    curve_rays: Vec<Vec<i64>>,
    /// Layout slot of each toric basis element.
    toric_slots: Vec<usize>,
    /// Divisor basis × curve basis intersection matrix.
    pairing: IntMatrix,
    toric_pairing: IntMatrix,
    walls: Vec<Cone>,
    wall_pairings: Vec<Vec<i64>>,
}

/// Intersection numbers of a divisor with every invariant curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefCertificate {
    /// `(wall name, D · V(wall))` for every wall, in wall order.
    pub pairings: Vec<(String, i64)>,
    pub violators: Vec<String>,
}

impl NefCertificate {
    pub fn is_nef(&self) -> bool {
        self.violators.is_empty()
    }
}

impl IntersectionTable {
    pub fn new(model: Model) -> Result<Self> {
        model.validate()?;
        let seq = toric_blowup_sequence(model.side.base(), model.toric_points(), model.lines);
        let mut fan = match model.side {
            Side::P3 => crate::fan::build_p3_fan(),
            Side::Cube => crate::fan::build_cube_fan(),
        };
        let unit = |n: usize, i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        let (mut divisors, mut curves) = match model.side {
            Side::P3 => {
                let line = fan.wall_relation(&fan.cone(&["v1", "v2"])?)?;
                (vec![unit(4, 0)], vec![line])
            }
            Side::Cube => {
                let h = |a: &str, b: &str| fan.wall_relation(&fan.cone(&[a, b])?);
                (
                    vec![unit(6, 0), unit(6, 2), unit(6, 4)],
                    vec![h("u1", "u3")?, h("u1", "u5")?, h("u3", "u5")?],
                )
            }
        };
        for center in &seq.centers {
            let names: Vec<&str> = center.iter().map(String::as_str).collect();
            let sigma = fan.cone(&names)?;
            let next = fan.star_subdivide(&sigma)?;
            let w = next.rays().len() - 1;
            for d in divisors.iter_mut() {
                let pulled: i64 = sigma.rays().iter().map(|&r| d[r]).sum();
                d.push(pulled);
            }
            for c in curves.iter_mut() {
                c.push(0);
            }
            divisors.push(unit(w + 1, w));
            let new_curve = if sigma.dim() == 3 {
                next.wall_relation(&Cone::new(vec![w, sigma.rays()[0]]))?
            } else {
                let m = fan.star(&sigma)[0];
                let c = *m.rays().iter().find(|r| !sigma.contains_ray(**r)).unwrap();
                next.wall_relation(&Cone::new(vec![w, c]))?
            };
            curves.push(new_curve);
            fan = next;
        }
        if !fan.is_smooth() || !fan.is_complete() {
            return Err(Error::NonSmoothInput(format!("model {model}")));
        }

        let deg = model.degree_rank();
        let tp = model.toric_points();
        let toric_slots: Vec<usize> = (0..divisors.len())
            .map(|t| if t < deg + tp { t } else { t + model.formal_points() })
            .collect();
        let n = divisors.len();
        let mut toric_pairing = IntMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                toric_pairing[(j, k)] = dot(&divisors[j], &curves[k]);
            }
        }
        let rank = model.rank();
        let mut pairing = IntMatrix::zeros(rank, rank);
        for j in 0..n {
            for k in 0..n {
                pairing[(toric_slots[j], toric_slots[k])] = toric_pairing[(j, k)];
            }
        }
        for i in tp..model.points {
            let s = model.point_slot(i);
            pairing[(s, s)] = -1;
        }
        let walls = fan.walls();
        let wall_pairings = walls.iter().map(|w| fan.wall_relation(w)).collect::<Result<Vec<_>>>()?;
        Ok(IntersectionTable {
            model,
            fan,
            divisor_rays: divisors,
            curve_rays: curves,
            toric_slots,
            pairing,
            toric_pairing,
            walls,
            wall_pairings,
        })
    }

    /// Shared table for `model`, built on first use.
    pub fn cached(model: Model) -> Result<Arc<IntersectionTable>> {
        static CACHE: OnceLock<Mutex<HashMap<Model, Arc<IntersectionTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&model) {
            return Ok(t.clone());
        }
        let t = Arc::new(IntersectionTable::new(model)?);
        cache.lock().unwrap().insert(model, t.clone());
        Ok(t)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn fan(&self) -> &LatticeFan {
        &self.fan
    }

    /// Divisor basis × curve basis intersection matrix.
    pub fn pairing_matrix(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn walls(&self) -> &[Cone] {
        &self.walls
    }

    fn check_fan(&self, fan: &LatticeFan) -> Result<()> {
        if fan.rays() == self.fan.rays() && fan.labels() == self.fan.labels() {
            Ok(())
        } else {
            Err(Error::BasisModelMismatch(format!("fan does not belong to {}", self.model)))
        }
    }

    fn check_model(&self, m: Model) -> Result<()> {
        if m == self.model {
            Ok(())
        } else {
            Err(Error::BasisModelMismatch(format!("{m} vs {}", self.model)))
        }
    }

    fn embed_divisor(&self, toric: &[i64]) -> DivisorClass {
        let mut c = vec![0; self.model.rank()];
        for (t, &x) in toric.iter().enumerate() {
            c[self.toric_slots[t]] = x;
        }
        DivisorClass::new(self.model, c).expect("rank matches")
    }

    fn embed_curve(&self, toric: &[i64]) -> CurveClass {
        let mut c = vec![0; self.model.rank()];
        for (t, &x) in toric.iter().enumerate() {
            c[self.toric_slots[t]] = x;
        }
        CurveClass::new(self.model, c).expect("rank matches")
    }

    /// A divisor given as a combination of ray divisors, in the basis.
    pub fn divisor_from_rays(&self, combo: &[i64]) -> DivisorClass {
        assert_eq!(combo.len(), self.fan.rays().len());
        // Pair against the curve basis and undo the pairing matrix.
        let r: Vec<i64> = self.curve_rays.iter().map(|c| dot(combo, c)).collect();
        let x = self
            .toric_pairing
            .transpose()
            .solve(&r)
            .expect("unimodular divisor/curve pairing");
        self.embed_divisor(&x)
    }

    /// The class of the ray divisor `D_ρ` in the basis.
    pub fn ray_divisor(&self, ray: usize) -> DivisorClass {
        let mut combo = vec![0; self.fan.rays().len()];
        combo[ray] = 1;
        self.divisor_from_rays(&combo)
    }

    pub fn ray_divisor_by_label(&self, label: &str) -> Result<DivisorClass> {
        let r = self.fan.ray_index(label).ok_or_else(|| Error::UnknownRay(label.into()))?;
        Ok(self.ray_divisor(r))
    }

    /// A curve given by its ray pairing vector, in the basis.
    pub fn curve_from_ray_pairing(&self, pairing: &[i64]) -> CurveClass {
        assert_eq!(pairing.len(), self.fan.rays().len());
        let s: Vec<i64> = self.divisor_rays.iter().map(|d| dot(d, pairing)).collect();
        let c = self.toric_pairing.solve(&s).expect("unimodular divisor/curve pairing");
        self.embed_curve(&c)
    }

    /// Ray pairing vector of the toric part of a curve class (formal
    /// exceptional coefficients are ignored).
    pub fn curve_ray_pairing(&self, beta: &CurveClass) -> Result<Vec<i64>> {
        self.check_model(beta.model())?;
        let mut v = vec![0; self.fan.rays().len()];
        for (t, c) in self.curve_rays.iter().enumerate() {
            let k = beta.coeffs()[self.toric_slots[t]];
            for (x, y) in v.iter_mut().zip(c) {
                *x += k * y;
            }
        }
        Ok(v)
    }

    pub fn wall_curve(&self, wall: &Cone) -> Result<CurveClass> {
        let i = self
            .walls
            .iter()
            .position(|w| w == wall)
            .ok_or_else(|| Error::NotAWall(self.fan.cone_name(wall)))?;
        Ok(self.curve_from_ray_pairing(&self.wall_pairings[i]))
    }

    pub fn wall_curve_by_labels(&self, a: &str, b: &str) -> Result<CurveClass> {
        self.wall_curve(&self.fan.cone(&[a, b])?)
    }

    pub fn intersect(&self, d: &DivisorClass, c: &CurveClass) -> Result<i64> {
        self.check_model(d.model())?;
        self.check_model(c.model())?;
        Ok(self.pairing.bilinear(d.coeffs(), c.coeffs()))
    }

    /// `K = −Σ_ρ D_ρ`, plus `2E` for every formally adjoined point.
    pub fn canonical_class(&self) -> DivisorClass {
        let combo = vec![-1; self.fan.rays().len()];
        let mut k = self.divisor_from_rays(&combo);
        let mut coeffs = k.coeffs().to_vec();
        for i in self.model.toric_points()..self.model.points {
            coeffs[self.model.point_slot(i)] = 2;
        }
        k = DivisorClass::new(self.model, coeffs).expect("rank matches");
        k
    }

    /// `−K · β`.
    pub fn anticanonical_degree(&self, beta: &CurveClass) -> Result<i64> {
        Ok(-self.intersect(&self.canonical_class(), beta)?)
    }

    /// Pairs `d` with every invariant curve.
    pub fn nef_certificate(&self, d: &DivisorClass) -> Result<NefCertificate> {
        self.check_model(d.model())?;
        let mut pairings = Vec::with_capacity(self.walls.len());
        let mut violators = Vec::new();
        for w in &self.walls {
            let name = self.fan.cone_name(w);
            let v = self.intersect(d, &self.wall_curve(w)?)?;
            if v < 0 {
                violators.push(name.clone());
            }
            pairings.push((name, v));
        }
        Ok(NefCertificate { pairings, violators })
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divisor class of the orbit closure of `ray` on `fan`, in the basis of `model`.
pub fn ray_divisor_class(fan: &LatticeFan, ray: usize, model: Model) -> Result<DivisorClass> {
    let table = IntersectionTable::new(model)?;
    table.check_fan(fan)?;
    Ok(table.ray_divisor(ray))
}

pub fn wall_curve_class(fan: &LatticeFan, wall: &Cone, model: Model) -> Result<CurveClass> {
    let table = IntersectionTable::new(model)?;
    table.check_fan(fan)?;
    table.wall_curve(wall)
}

pub fn intersect(d: &DivisorClass, c: &CurveClass) -> Result<i64> {
    if d.model() != c.model() {
        return Err(Error::BasisModelMismatch(format!("{} vs {}", d.model(), c.model())));
    }
    IntersectionTable::cached(d.model())?.intersect(d, c)
}

pub fn canonical_class(model: Model) -> Result<DivisorClass> {
    Ok(IntersectionTable::cached(model)?.canonical_class())
}

/// `(nef?, violating walls)` over the torus-invariant curves of `fan`.
pub fn is_nef_on_invariant_curves(d: &DivisorClass, fan: &LatticeFan) -> Result<(bool, Vec<String>)> {
    let table = IntersectionTable::new(d.model())?;
    table.check_fan(fan)?;
    let cert = table.nef_certificate(d)?;
    Ok((cert.is_nef(), cert.violators))
}

/// `2H − (E123+E124+E134+E234) − F_pq − F_p'q'` on the permutohedral P3 model.
pub fn quadric_divisor(pq: &str) -> Result<DivisorClass> {
    let all = ["12", "13", "14", "23", "24", "34"];
    let idx = all
        .iter()
        .position(|x| *x == pq)
        .ok_or_else(|| Error::BasisModelMismatch(format!("no line `{pq}`")))?;
    let comp = all[5 - idx];
    let (f1, f2) = (format!("F{pq}"), format!("F{comp}"));
    DivisorClass::from_terms(
        Model::perm_p3(),
        &[("H", 2), ("E123", -1), ("E124", -1), ("E134", -1), ("E234", -1), (&f1, -1), (&f2, -1)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_p3_fan, build_permutohedral_from_p3};

    fn perm() -> IntersectionTable {
        IntersectionTable::new(Model::perm_p3()).unwrap()
    }

    #[test]
    fn pairing_is_unimodular_for_every_model() {
        for side in [Side::P3, Side::Cube] {
            for k in 0..=6 {
                for lines in [false, true] {
                    let m = Model::new(side, k, lines);
                    if m.validate().is_err() {
                        continue;
                    }
                    let t = IntersectionTable::new(m).unwrap();
                    assert_eq!(t.pairing_matrix().det().abs(), 1, "{m}");
                }
            }
        }
    }

    #[test]
    fn basis_pairings_emerge_from_walls() {
        let t = perm();
        let p = t.pairing_matrix();
        assert_eq!(p[(0, 0)], 1);
        for i in 1..11 {
            assert_eq!(p[(i, i)], -1, "diagonal {i}");
            assert_eq!(p[(0, i)], 0);
        }
        let cube = IntersectionTable::new(Model::perm_cube()).unwrap();
        let q = cube.pairing_matrix();
        // H_i · h_jk = 1 exactly when i is the factor missing from jk.
        assert_eq!((q[(0, 2)], q[(1, 1)], q[(2, 0)]), (1, 1, 1));
        assert_eq!((q[(0, 0)], q[(0, 1)], q[(1, 0)]), (0, 0, 0));
    }

    #[test]
    fn ray_divisors_on_p3_side() {
        let t = perm();
        assert_eq!(t.ray_divisor_by_label("v123").unwrap(), DivisorClass::from_terms(Model::perm_p3(), &[("E123", 1)]).unwrap());
        let d1 = t.ray_divisor_by_label("v1").unwrap();
        let expect = DivisorClass::from_terms(
            Model::perm_p3(),
            &[("H", 1), ("E123", -1), ("E124", -1), ("E134", -1), ("F12", -1), ("F13", -1), ("F14", -1)],
        )
        .unwrap();
        assert_eq!(d1, expect);
    }

    #[test]
    fn ray_divisors_on_cube_side() {
        let t = IntersectionTable::new(Model::perm_cube()).unwrap();
        let m = Model::perm_cube();
        let check = |ray: &str, terms: &[(&str, i64)]| {
            assert_eq!(t.ray_divisor_by_label(ray).unwrap(), DivisorClass::from_terms(m, terms).unwrap(), "{ray}");
        };
        check("u1", &[("H1", 1), ("E135", -1), ("F13", -1), ("F15", -1)]);
        check("u2", &[("H1", 1), ("E246", -1), ("F24", -1), ("F26", -1)]);
        check("u3", &[("H2", 1), ("E135", -1), ("F13", -1), ("F35", -1)]);
        check("u4", &[("H2", 1), ("E246", -1), ("F24", -1), ("F46", -1)]);
        check("u5", &[("H3", 1), ("E135", -1), ("F15", -1), ("F35", -1)]);
        check("u6", &[("H3", 1), ("E246", -1), ("F26", -1), ("F46", -1)]);
        check("u246", &[("E246", 1)]);
        check("u35", &[("F35", 1)]);
    }

    #[test]
    fn linear_relations_hold_in_the_basis() {
        for m in [Model::perm_p3(), Model::perm_cube(), Model::p3(2), Model::cube(1)] {
            let t = IntersectionTable::new(m).unwrap();
            for axis in 0..3 {
                let combo: Vec<i64> = t.fan().rays().iter().map(|v| v.0[axis]).collect();
                assert!(t.divisor_from_rays(&combo).is_zero(), "{m} axis {axis}");
            }
        }
    }

    #[test]
    fn wall_curves() {
        let t = perm();
        let m = Model::perm_p3();
        // the invariant line of E234 through two blown-up points
        assert_eq!(
            t.wall_curve_by_labels("v234", "v2").unwrap(),
            CurveClass::from_terms(m, &[("e234", 1), ("f23", -1), ("f24", -1)]).unwrap()
        );
        // fibers of F23 over its two fixed points
        let f23 = CurveClass::from_terms(m, &[("f23", 1)]).unwrap();
        assert_eq!(t.wall_curve_by_labels("v23", "v234").unwrap(), f23);
        assert_eq!(t.wall_curve_by_labels("v23", "v123").unwrap(), f23);
        // every invariant line of P3 has class h
        let p3 = IntersectionTable::new(Model::p3(0)).unwrap();
        for w in p3.walls() {
            assert_eq!(p3.wall_curve(w).unwrap(), CurveClass::from_terms(Model::p3(0), &[("h", 1)]).unwrap());
        }
        assert!(matches!(t.wall_curve(&Cone::new(vec![0, 1, 2])), Err(Error::NotAWall(_))));
    }

    #[test]
    fn basic_intersections() {
        let t = perm();
        let m = Model::perm_p3();
        let h = DivisorClass::from_terms(m, &[("H", 1)]).unwrap();
        let line = CurveClass::from_terms(m, &[("h", 1)]).unwrap();
        let e = CurveClass::from_terms(m, &[("e124", 1)]).unwrap();
        assert_eq!(t.intersect(&h, &line).unwrap(), 1);
        assert_eq!(t.intersect(&h, &e).unwrap(), 0);
        let f = DivisorClass::from_terms(m, &[("F14", 1)]).unwrap();
        let fc = CurveClass::from_terms(m, &[("f14", 1)]).unwrap();
        assert_eq!(t.intersect(&f, &fc).unwrap(), -1);
        let wrong = CurveClass::basis(Model::p3(4), 0);
        assert!(t.intersect(&h, &wrong).is_err());
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(
            canonical_class(Model::p3(0)).unwrap(),
            DivisorClass::from_terms(Model::p3(0), &[("H", -4)]).unwrap()
        );
        for k in 0..=7 {
            let t = IntersectionTable::new(Model::p3(k)).unwrap();
            let mut expect = vec![-4];
            expect.extend(std::iter::repeat_n(2, k));
            assert_eq!(t.canonical_class().coeffs(), expect.as_slice(), "P3({k})");
            let t = IntersectionTable::new(Model::cube(k)).unwrap();
            let mut expect = vec![-2, -2, -2];
            expect.extend(std::iter::repeat_n(2, k));
            assert_eq!(t.canonical_class().coeffs(), expect.as_slice(), "CUBE({k})");
        }
        let t = perm();
        let mut expect = vec![-4, 2, 2, 2, 2];
        expect.extend([1; 6]);
        assert_eq!(t.canonical_class().coeffs(), expect.as_slice());
    }

    #[test]
    fn nef_checks() {
        let fan = build_permutohedral_from_p3();
        let (ok, bad) = is_nef_on_invariant_curves(&quadric_divisor("12").unwrap(), &fan).unwrap();
        assert!(ok && bad.is_empty());
        let minus_h = DivisorClass::from_terms(Model::perm_p3(), &[("H", -1)]).unwrap();
        let (ok, bad) = is_nef_on_invariant_curves(&minus_h, &fan).unwrap();
        assert!(!ok && !bad.is_empty());
        let (ok, _) = is_nef_on_invariant_curves(&DivisorClass::zero(Model::perm_p3()), &fan).unwrap();
        assert!(ok);
        assert!(is_nef_on_invariant_curves(&minus_h, &build_p3_fan()).is_err());
    }

    #[test]
    fn free_functions_check_the_fan() {
        let fan = build_permutohedral_from_p3();
        let r = fan.ray_index("v134").unwrap();
        assert_eq!(
            ray_divisor_class(&fan, r, Model::perm_p3()).unwrap(),
            DivisorClass::from_terms(Model::perm_p3(), &[("E134", 1)]).unwrap()
        );
        assert!(ray_divisor_class(&fan, r, Model::perm_cube()).is_err());
    }
}
