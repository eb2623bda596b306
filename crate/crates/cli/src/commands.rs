use crate::report::Report;
use serde_json::{json, Map, Value};
use toric_gw::fan::{build_cube_fan, build_p3_fan, build_permutohedral_from_cube, build_permutohedral_from_p3};
use toric_gw::gw::{anticanonical_degree, p3_to_cube, cube_point_involution, Mapped};
use toric_gw::intersection::{quadric_divisor, IntersectionTable};
use toric_gw::isomorphism::fan_isomorphism;
use toric_gw::sampling::ClassSampler;
use toric_gw::symmetry::{
    closed_form_matrix, cremona_cube, cremona_p3, cube_fiber_orbit, basis_change, model_isomorphism, cube_cremona_symmetry,
};
use toric_gw::{
    format_class, BaseTable, CurveClass, DivisorClass, GwQuery, IntMatrix, LatticeFan, Mat3, Model, Outcome,
    Result,
};

type ClassMap = fn(&CurveClass) -> Result<CurveClass>;

fn fan_report(r: &mut Report, fan: &LatticeFan) {
    let rays: Map<String, Value> = fan
        .labels()
        .iter()
        .zip(fan.rays())
        .map(|(l, v)| (l.to_string(), json!(v.coords())))
        .collect();
    let cones: Vec<String> = fan.maximal_cones().iter().map(|c| fan.cone_name(c)).collect();
    let (n_rays, n_walls, n_max) = fan.f_vector();
    r.set("rays", rays);
    r.set("maximal_cones", cones);
    r.set("f_vector", json!({"rays": n_rays, "walls": n_walls, "maximal_cones": n_max}));
    let bad: Vec<String> = fan
        .maximal_cones()
        .iter()
        .filter(|c| fan.generator_matrix(c).det().abs() != 1)
        .map(|c| fan.cone_name(c))
        .collect();
    r.set("non_unimodular_cones", bad);
    r.check("smooth", fan.is_smooth());
    r.check("complete", fan.is_complete());
}

pub fn build(name: &str) -> Report {
    let fan = match name {
        "p3" => build_p3_fan(),
        "cube" => build_cube_fan(),
        "perm-p3" => build_permutohedral_from_p3(),
        _ => build_permutohedral_from_cube(),
    };
    let mut r = Report::new(&format!("build {name}"));
    fan_report(&mut r, &fan);
    r.finish()
}

fn matrix_json(m: &Mat3) -> Value {
    json!(m.rows())
}

/// Per-basis-class comparison of two pushforward matrices.
fn compare_columns(source: Model, target: Model, got: &IntMatrix, want: &IntMatrix) -> (bool, Vec<Value>) {
    let names = source.curve_names();
    let mut all = true;
    let rows = names
        .iter()
        .enumerate()
        .map(|(j, n)| {
            let g = CurveClass::new(target, got.column(j)).expect("rank");
            let w = CurveClass::new(target, want.column(j)).expect("rank");
            all &= g == w;
            json!({"class": n, "transported": g.to_string(), "closed_form": w.to_string(), "match": g == w})
        })
        .collect();
    (all, rows)
}

pub fn verify_iso() -> Result<Report> {
    let mut r = Report::new("verify iso");
    let a = build_permutohedral_from_p3();
    let b = build_permutohedral_from_cube();
    let iso = fan_isomorphism(&a, &b)?;
    let Some(iso) = iso else {
        r.check("isomorphism_found", false);
        return Ok(r.finish());
    };
    r.check("isomorphism_found", true);
    r.set("matrix", matrix_json(&iso.matrix));
    r.set("det", iso.matrix.det());
    r.check("unimodular", iso.matrix.is_unimodular());
    let map: Map<String, Value> = iso
        .ray_map
        .iter()
        .enumerate()
        .map(|(i, &j)| (a.label(i).to_string(), Value::from(b.label(j).to_string())))
        .collect();
    r.set("ray_map", map);
    let back = fan_isomorphism(&b, &a)?;
    r.check("inverse_verifies", back.is_some() && toric_gw::isomorphism::verify_matrix(&b, &a, &iso.inverse().matrix).is_some());
    let iso = model_isomorphism()?;
    let closed = closed_form_matrix(basis_change, Model::perm_p3())?;
    let (ok, rows) = compare_columns(Model::perm_p3(), Model::perm_cube(), &iso.pushforward, &closed);
    r.set("pushforward", rows);
    r.check("pushforward_matches_table", ok);
    Ok(r.finish())
}

pub fn verify_cube_cremona() -> Result<Report> {
    let mut r = Report::new("verify cube-cremona");
    let z = cube_cremona_symmetry()?;
    r.set("matrix", matrix_json(&z.matrix));
    r.set("det", z.matrix.det());
    r.check("unimodular", z.matrix.is_unimodular());
    r.check("squares_to_identity", z.matrix * z.matrix == Mat3::IDENTITY);
    let fan = IntersectionTable::cached(Model::perm_cube())?.fan().clone();
    let perm: Map<String, Value> = z
        .ray_permutation
        .iter()
        .enumerate()
        .map(|(i, &j)| (fan.label(i).to_string(), Value::from(fan.label(j).to_string())))
        .collect();
    r.set("ray_permutation", perm);
    r.check("stabilizes_rays", true);
    let closed = closed_form_matrix(cremona_cube, Model::perm_cube())?;
    let (ok, rows) = compare_columns(Model::perm_cube(), Model::perm_cube(), &z.pushforward, &closed);
    r.set("pushforward", rows);
    r.check("pushforward_matches_closed_form", ok);
    let orbit = cube_fiber_orbit()?;
    let labels = Model::perm_cube().side.line_labels();
    let orbit_map: Map<String, Value> =
        orbit.iter().enumerate().map(|(i, &j)| (format!("f{}", labels[i]), Value::from(format!("f{}", labels[j])))).collect();
    r.set("line_permutation", orbit_map);
    r.check("line_orbits", orbit == [4, 3, 2, 1, 0, 5]);
    Ok(r.finish())
}

pub fn verify_basis_change(seed: u64, trials: usize) -> Result<Report> {
    let mut r = Report::new("verify basis-change");
    r.set("basis_dictionary", "h12 = H1.H2, h13 = H1.H3, h23 = H2.H3; a cube class with degrees (d1,d2,d3) is d1 h12 + d2 h13 + d3 h23");
    let p = Model::perm_p3();
    let images: Map<String, Value> = p
        .curve_names()
        .iter()
        .enumerate()
        .map(|(j, n)| Ok((n.clone(), Value::from(basis_change(&CurveClass::basis(p, j))?.to_string()))))
        .collect::<Result<_>>()?;
    r.set("table", images);
    let det = closed_form_matrix(basis_change, p)?.det();
    r.set("det", det);
    r.check("invertible_over_z", det.abs() == 1);
    let mut s = ClassSampler::new(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let b = s.class(Model::p3(6));
        if p3_to_cube(&b)?.class != basis_change(&b)? {
            failures += 1;
        }
    }
    r.set("trials", trials);
    r.set("cross_map_vs_basis_change_failures", failures);
    r.check("cross_map_is_the_basis_change_without_lines", failures == 0);
    Ok(r.finish())
}

pub fn verify_nef() -> Result<Report> {
    let mut r = Report::new("verify nef");
    let t = IntersectionTable::cached(Model::perm_p3())?;
    let mut all = true;
    let mut certs = Map::new();
    for pq in ["12", "13", "14"] {
        let d = quadric_divisor(pq)?;
        let cert = t.nef_certificate(&d)?;
        all &= cert.is_nef() && cert.pairings.len() == 36;
        let pairings: Map<String, Value> = cert.pairings.iter().map(|(w, v)| (w.clone(), Value::from(*v))).collect();
        certs.insert(
            format!("D{pq}"),
            json!({"divisor": d.to_string(), "walls": cert.pairings.len(), "violators": cert.violators, "pairings": pairings}),
        );
    }
    r.set("certificates", certs);
    r.check("all_nef", all);
    let p = Model::perm_p3();
    let mut diag = Map::new();
    let mut diag_ok = true;
    for (j, (dn, cn)) in p.divisor_names().iter().zip(p.curve_names()).enumerate().skip(1) {
        let v = t.intersect(&DivisorClass::basis(p, j), &CurveClass::basis(p, j))?;
        diag_ok &= v == -1;
        diag.insert(format!("{dn}.{cn}"), Value::from(v));
    }
    r.set("exceptional_pairings", diag);
    r.check("exceptional_pairings_are_minus_one", diag_ok);
    Ok(r.finish())
}

pub fn verify_involutions(seed: u64, trials: usize) -> Result<Report> {
    let mut r = Report::new("verify involutions");
    r.set("seed", seed);
    r.set("trials", trials);
    let mut s = ClassSampler::new(seed);
    let mut counts = Map::new();
    let mut ok = true;
    let cases: [(&str, Model, ClassMap); 3] = [
        ("cremona-p3", Model::perm_p3(), cremona_p3),
        ("cremona-cube", Model::perm_cube(), cremona_cube),
        ("cube-point-involution", Model::cube(4), |b| Ok(cube_point_involution(b)?.class)),
    ];
    for (name, m, f) in cases {
        let mut fail = 0;
        for _ in 0..trials {
            let b = s.class(m);
            if f(&f(&b)?)? != b {
                fail += 1;
            }
        }
        ok &= fail == 0;
        counts.insert(name.into(), json!({"model": m.to_string(), "failures": fail}));
    }
    r.set("maps", counts);
    r.check("involutions", ok);
    Ok(r.finish())
}

pub fn verify_vdim_transport(seed: u64, trials: usize) -> Result<Report> {
    let mut r = Report::new("verify vdim-transport");
    r.set("seed", seed);
    r.set("trials", trials);
    let mut s = ClassSampler::new(seed);
    let mut counts = Map::new();
    let mut ok = true;
    let mut fail = 0;
    for _ in 0..trials {
        let b = s.vdim_zero_class(Model::p3(6))?;
        let img = p3_to_cube(&b)?.class;
        if img.degrees().iter().sum::<i64>() != img.multiplicities().iter().sum::<i64>() {
            fail += 1;
        }
    }
    ok &= fail == 0;
    counts.insert("p3-to-cube".into(), json!({"model": Model::p3(6).to_string(), "failures": fail}));
    let cases: [(&str, Model, ClassMap); 4] = [
        ("cremona-p3", Model::perm_p3(), cremona_p3),
        ("cremona-p3", Model::p3(6), cremona_p3),
        ("cremona-cube", Model::perm_cube(), cremona_cube),
        ("cube-point-involution", Model::cube(4), |b| Ok(cube_point_involution(b)?.class)),
    ];
    for (name, m, f) in cases {
        let mut fail = 0;
        for _ in 0..trials {
            let b = s.vdim_zero_class(m)?;
            if anticanonical_degree(&f(&b)?)? != 0 {
                fail += 1;
            }
        }
        ok &= fail == 0;
        counts.insert(format!("{name} on {m}"), json!({"model": m.to_string(), "failures": fail}));
    }
    r.set("maps", counts);
    r.check("vdim_zero_preserved", ok);
    Ok(r.finish())
}

pub fn transform(rule: &str, beta: &CurveClass) -> Result<Report> {
    let mut r = Report::new(&format!("transform {rule}"));
    r.set("input", format_class(beta));
    let plain = |c: CurveClass| Mapped { class: c, warnings: Vec::new() };
    let out = match rule {
        "cremona-p3" => plain(cremona_p3(beta)?),
        "cremona-cube" => plain(cremona_cube(beta)?),
        "basis-change" => plain(basis_change(beta)?),
        "p3-to-cube" => p3_to_cube(beta)?,
        _ => cube_point_involution(beta)?,
    };
    r.set("output", format_class(&out.class));
    r.set("output_terms", out.class.to_string());
    r.set("warnings", out.warnings);
    Ok(r.finish())
}

pub fn reduce(query: &GwQuery, table: &BaseTable) -> Result<Report> {
    let mut r = Report::new("reduce");
    r.set("genus", query.genus);
    r.set("points", query.points);
    r.set("class", format_class(&query.beta));
    let trace = toric_gw::gw::reduce(query, table)?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "rule": s.rule.to_string(),
                "input": format_class(&s.input),
                "output": format_class(&s.output),
                "formal": !s.warnings.is_empty(),
                "warnings": s.warnings,
            })
        })
        .collect();
    r.set("steps", steps);
    r.check("replays", trace.replays());
    match &trace.outcome {
        Outcome::Value { value, entry } => {
            r.set("outcome", "value");
            r.set("value", *value);
            r.set("table_entry", json!({"key": entry.key(), "provenance": entry.provenance}));
        }
        Outcome::Unresolved(c) => {
            r.set("outcome", "unresolved");
            r.set("normal_form", format_class(c));
            r.passed = false;
        }
    }
    Ok(r.finish())
}
