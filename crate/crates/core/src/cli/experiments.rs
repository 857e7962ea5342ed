use std::fmt::Write;

use super::config::{Experiment, ExperimentConfig, OutflowBc};
use super::output::{sci, tag, Artifacts, Csv};
use super::slab::{
    elements_per_third, outside_load, reference_2d, solve_slab_1d, solve_slab_2d, uniform_grid,
    Solve1D, Solve2D, StepProfile,
};
use crate::fem::{elemental_average_3d, gauss_point_source, Hexahedron};
use crate::mesh::Mesh2D;
use crate::polyring::rational_from_f64;
use crate::postprocess::{
    element_row, eoc, error_metrics, exact_1d, masked_peak_error, oscillation_index, restrict_2d,
    ErrorReport, Exact1D,
};
use crate::stability::{
    analyze_1d, build_stencil_1d, build_system_2d, combination_2d, eliminate_2d, peak_error_analytic,
    tf_1d_high_pe, Scheme,
};
use crate::Error;

/// Runs the configured experiment and returns its output files.
pub fn run(cfg: &ExperimentConfig) -> Result<Artifacts, Error> {
    let mut art = Artifacts::default();
    let mut manifest = cfg.manifest();
    match cfg.experiment {
        Experiment::Analyze1d => analyze1d(cfg, &mut art)?,
        Experiment::Analyze2d => analyze2d(cfg, &mut art)?,
        Experiment::Solve1d => {
            let recs = run_solve1d(cfg)?;
            write_solve1d(cfg, &recs, &mut art, &mut manifest)?;
        }
        Experiment::Solve2d => {
            let recs = run_sweep2d(cfg)?;
            write_sweep2d(cfg, &recs, &mut art, &mut manifest, true)?;
        }
        Experiment::PeSweep => {
            let recs = run_sweep2d(cfg)?;
            write_sweep2d(cfg, &recs, &mut art, &mut manifest, false)?;
        }
        Experiment::Converge => {
            let recs = run_converge(cfg)?;
            write_converge(cfg, &recs, &mut art, &mut manifest)?;
        }
        Experiment::Avg3dCheck => avg3d(cfg, &mut art)?,
    }
    art.files.insert(0, ("manifest.txt".into(), manifest));
    Ok(art)
}

fn stability_1d_text(schemes: &[Scheme], pes: &[f64]) -> Result<(String, Vec<String>), Error> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for &scheme in schemes {
        let st = build_stencil_1d(scheme);
        for &pe in pes {
            let r = rational_from_f64(pe).ok_or_else(|| Error::Config(format!("pe = {pe}")))?;
            let (tf, rep) = analyze_1d(&st, &r)?;
            let label = format!("{}_pe{}", scheme.name(), tag(pe));
            let _ = writeln!(text, "A/B [{label}] = {}", tf.display());
            text.push_str(&rep.to_text(&format!("1D {scheme} at Pe = {pe}")));
            let _ = writeln!(text, "  analytic peak error: {:.12e} %", peak_error_analytic(scheme, pe)?);
            text.push('\n');
            rows.extend(rep.csv_rows(&label));
        }
        let (tf, rep) = tf_1d_high_pe(scheme)?;
        let label = format!("{}_highpe", scheme.name());
        let _ = writeln!(text, "A/B [{label}] = {}", tf.display());
        text.push_str(&rep.to_text(&format!("1D {scheme}, leading order for large Pe")));
        text.push('\n');
        rows.extend(rep.csv_rows(&label));
    }
    Ok((text, rows))
}

fn analyze1d(cfg: &ExperimentConfig, art: &mut Artifacts) -> Result<(), Error> {
    let (text, rows) = stability_1d_text(&cfg.schemes, &cfg.pe)?;
    let mut csv = Csv::new(&["label", "kind", "re", "im", "multiplicity"]);
    for r in rows {
        csv.raw_row(&r);
    }
    art.add("report.csv", csv.into_string());
    art.add("stability.txt", text);
    Ok(())
}

fn analyze2d(cfg: &ExperimentConfig, art: &mut Artifacts) -> Result<(), Error> {
    let sys = build_system_2d();
    let mut text = String::new();
    let mut csv = Csv::new(&["label", "kind", "re", "im", "multiplicity"]);
    for &scheme in &cfg.schemes {
        let e = eliminate_2d(&sys, scheme)?;
        let _ = writeln!(text, "2D {scheme}, leading order for large Pe");
        let _ = writeln!(text, "  A_y/B_x simplified = {}", e.tf.display());
        let _ = writeln!(text, "  factored form = ({})*dz * ({}) * ({}) / (({}) * ({}))",
            e.scale,
            e.zn_numerator.display_in("Zn"),
            e.f1.display_in("Zm"),
            e.zn_denominator.display_in("Zn"),
            e.f2.display_in("Zm"));
        let _ = writeln!(text, "  f1(Zm) = {}", e.f1.display_in("Zm"));
        let _ = writeln!(text, "  f2(Zm) = {}", e.f2.display_in("Zm"));
        let _ = writeln!(text, "  factored form equals unsimplified: {}", e.factored_form().same_function(&e.unsimplified));
        let _ = writeln!(text, "  direct elimination agrees: {}", e.direct.same_function(&e.tf));
        if scheme == Scheme::Galerkin {
            let _ = writeln!(text, "  hand combination agrees: {}", combination_2d(&sys)?.same_function(&e.tf));
        }
        text.push_str(&e.report.to_text("  Zn poles and zeros"));
        text.push('\n');
        let label = scheme.name();
        for r in e.report.csv_rows(&format!("{label}_zn")) {
            csv.raw_row(&r);
        }
        for (name, p, kind) in [("f1", &e.f1, "zero"), ("f2", &e.f2, "pole")] {
            for r in crate::polyring::roots_with_multiplicity(p)? {
                csv.row(&[format!("{label}_{name}"), kind.into(), sci(r.value.re), sci(r.value.im), r.multiplicity.to_string()]);
            }
        }
    }
    art.add("report.csv", csv.into_string());
    art.add("stability.txt", text);
    Ok(())
}

/// Elements along z for a working mesh at the given Peclet number.
pub fn working_n_z(cfg: &ExperimentConfig, pe: f64) -> usize {
    cfg.n_z.unwrap_or_else(|| 3 * elements_per_third(pe, cfg.decay_tol, cfg.min_third))
}

/// One 1D solve compared with the exact solution.
#[derive(Clone, Debug)]
pub struct Solve1dRecord {
    pub scheme: Scheme,
    pub pe: f64,
    pub dz: f64,
    pub solve: Solve1D,
    pub exact: Exact1D,
    /// Peak error outside the loaded elements, percent of `b_ax`.
    pub peak_percent: f64,
    pub analytic_percent: f64,
    pub errors: ErrorReport,
    /// Largest nodal error of `A_y` relative to the largest exact value.
    pub a_rel_error: f64,
    pub oscillations: usize,
}

pub fn run_solve1d(cfg: &ExperimentConfig) -> Result<Vec<Solve1dRecord>, Error> {
    let mat = cfg.material();
    let mut out = Vec::new();
    for (&pe, &dz) in cfg.pe.iter().zip(&cfg.dz) {
        let n = working_n_z(cfg, pe);
        let z = uniform_grid(n, n as f64 * dz);
        let profile = StepProfile::on_fraction(&z, cfg.source_from, cfg.source_to, cfg.b_ax)?;
        for &scheme in &cfg.schemes {
            let solve = solve_slab_1d(n, dz, &profile, &mat, scheme.into(), cfg.outflow)?;
            let exact = exact_1d(&z, &solve.samples, mat.k(), cfg.outflow == OutflowBc::Dirichlet)?;
            let mask = outside_load(&solve.samples);
            let peak_percent = masked_peak_error(&solve.b, &exact.b_avg, &mask, cfg.b_ax)?;
            let errors = error_metrics(&solve.b, &exact.b_avg, &vec![dz; n], cfg.b_ax)?;
            let a_max = exact.a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let a_err = solve.solution.x.iter().zip(&exact.a).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            let oscillations = oscillation_index(&solve.b)?;
            out.push(Solve1dRecord {
                scheme,
                pe,
                dz,
                analytic_percent: peak_error_analytic(scheme, pe)?,
                a_rel_error: if a_max > 0.0 { a_err / a_max } else { a_err },
                solve,
                exact,
                peak_percent,
                errors,
                oscillations,
            });
        }
    }
    Ok(out)
}

fn write_solve1d(
    cfg: &ExperimentConfig,
    recs: &[Solve1dRecord],
    art: &mut Artifacts,
    manifest: &mut String,
) -> Result<(), Error> {
    let mut csv = Csv::new(&[
        "scheme", "pe", "dz", "n_elems", "peak_error_percent", "analytic_percent", "l2_error",
        "abs_error", "a_rel_error", "oscillation_index", "residual",
    ]);
    for r in recs {
        let n = r.solve.mesh.n_elems;
        csv.row(&[
            r.scheme.name().into(), sci(r.pe), sci(r.dz), n.to_string(), sci(r.peak_percent),
            sci(r.analytic_percent), sci(r.errors.l2_error), sci(r.errors.abs_error),
            sci(r.a_rel_error), r.oscillations.to_string(), sci(r.solve.solution.residual),
        ]);
        if r.scheme == cfg.schemes[0] {
            let _ = writeln!(manifest, "n_elems[{}] = {n}", tag(r.pe));
        }
        let mut f = Csv::new(&["element", "z", "b_x", "b_ref"]);
        for e in 0..n {
            f.row(&[e.to_string(), sci(r.solve.mesh.element_center(e)), sci(r.solve.b[e]), sci(r.exact.b_avg[e])]);
        }
        art.add(format!("field_b_{}_pe{}.csv", r.scheme.name(), tag(r.pe)), f.into_string());
        let mut f = Csv::new(&["node", "z", "a_y", "a_ref"]);
        for (i, (a, e)) in r.solve.solution.x.iter().zip(&r.exact.a).enumerate() {
            f.row(&[i.to_string(), sci(r.solve.mesh.z[i]), sci(*a), sci(*e)]);
        }
        art.add(format!("field_a_{}_pe{}.csv", r.scheme.name(), tag(r.pe)), f.into_string());
    }
    art.add("report.csv", csv.into_string());
    art.add("stability.txt", stability_1d_text(&cfg.schemes, &cfg.pe)?.0);
    Ok(())
}

/// One 2D solve compared with the fine-mesh reference.
#[derive(Clone, Debug)]
pub struct Sweep2dRecord {
    pub scheme: Scheme,
    pub pe: f64,
    pub dz: f64,
    pub solve: Solve2D,
    /// Reference restricted to the working mesh, per element.
    pub reference: Vec<f64>,
    pub reference_elements: usize,
    pub peak_percent: f64,
    pub analytic_ga: f64,
    pub analytic_sa: f64,
    pub errors: ErrorReport,
    /// Element row along the centre of the slab.
    pub centre_row: usize,
    pub oscillations: usize,
}

impl Sweep2dRecord {
    pub fn centre_line(&self) -> Vec<f64> {
        element_row(&self.solve.mesh, &self.solve.b, self.centre_row)
    }
}

pub fn run_sweep2d(cfg: &ExperimentConfig) -> Result<Vec<Sweep2dRecord>, Error> {
    let mat = cfg.material();
    let mut out = Vec::new();
    for (&pe, &dz) in cfg.pe.iter().zip(&cfg.dz) {
        let n = working_n_z(cfg, pe);
        let z = uniform_grid(n, n as f64 * dz);
        let y = uniform_grid(cfg.n_y, cfg.depth);
        let profile = StepProfile::on_fraction(&z, cfg.source_from, cfg.source_to, cfg.b_ax)?;
        let reference = reference_2d(&z, cfg.n_y, cfg.depth, &profile, &mat, cfg.outflow, &cfg.reference)?;
        let mesh = Mesh2D::from_coordinates(z.clone(), y)?;
        let restricted = restrict_2d(&reference.mesh, &reference.b, &mesh)?;
        let mask_z = outside_load(&profile.samples(&z));
        let mask: Vec<bool> = mesh.elements().map(|e| mask_z[e.iz]).collect();
        let areas: Vec<f64> = mesh.elements().map(|e| e.area()).collect();
        for &scheme in &cfg.schemes {
            let solve = solve_slab_2d(mesh.clone(), &profile, &mat, scheme.into(), cfg.outflow)?;
            let peak_percent = masked_peak_error(&solve.b, &restricted, &mask, cfg.b_ax)?;
            let errors = error_metrics(&solve.b, &restricted, &areas, cfg.b_ax)?;
            let centre_row = cfg.n_y / 2;
            let oscillations = oscillation_index(&element_row(&mesh, &solve.b, centre_row))?;
            out.push(Sweep2dRecord {
                scheme,
                pe,
                dz,
                solve,
                reference: restricted.clone(),
                reference_elements: reference.mesh.n_elems(),
                peak_percent,
                analytic_ga: peak_error_analytic(Scheme::Galerkin, pe)?,
                analytic_sa: peak_error_analytic(Scheme::SourceStabilized, pe)?,
                errors,
                centre_row,
                oscillations,
            });
        }
    }
    Ok(out)
}

fn write_sweep2d(
    cfg: &ExperimentConfig,
    recs: &[Sweep2dRecord],
    art: &mut Artifacts,
    manifest: &mut String,
    full_fields: bool,
) -> Result<(), Error> {
    let mut csv = Csv::new(&[
        "scheme", "pe", "dz", "n_z", "n_y", "peak_error_percent", "analytic_ga_percent",
        "analytic_sa_percent", "ratio_to_ga", "l2_error", "abs_error", "oscillation_index",
        "reference_elements", "residual",
    ]);
    for r in recs {
        let m = &r.solve.mesh;
        csv.row(&[
            r.scheme.name().into(), sci(r.pe), sci(r.dz), m.n_z().to_string(), m.n_y().to_string(),
            sci(r.peak_percent), sci(r.analytic_ga), sci(r.analytic_sa), sci(r.peak_percent / r.analytic_ga),
            sci(r.errors.l2_error), sci(r.errors.abs_error), r.oscillations.to_string(),
            r.reference_elements.to_string(), sci(r.solve.solution.residual),
        ]);
        if r.scheme == cfg.schemes[0] {
            let _ = writeln!(manifest, "n_z[{}] = {}", tag(r.pe), m.n_z());
            let _ = writeln!(manifest, "reference_elements[{}] = {}", tag(r.pe), r.reference_elements);
        }
        let mut f = Csv::new(&["element", "z", "y", "b_x", "b_ref"]);
        if full_fields {
            for e in m.elements() {
                let id = m.elem_id(e.iz, e.iy);
                let (zc, yc) = e.center();
                f.row(&[id.to_string(), sci(zc), sci(yc), sci(r.solve.b[id]), sci(r.reference[id])]);
            }
            art.add(format!("field_b_{}_pe{}.csv", r.scheme.name(), tag(r.pe)), f.into_string());
            let mut f = Csv::new(&["node", "z", "y", "phi"]);
            for (i, p) in r.solve.phi.iter().enumerate() {
                let (zc, yc) = m.node_coords(i);
                f.row(&[i.to_string(), sci(zc), sci(yc), sci(*p)]);
            }
            art.add(format!("field_phi_{}_pe{}.csv", r.scheme.name(), tag(r.pe)), f.into_string());
        } else {
            for iz in 0..m.n_z() {
                let id = m.elem_id(iz, r.centre_row);
                let e = m.element(iz, r.centre_row);
                let (zc, yc) = e.center();
                f.row(&[id.to_string(), sci(zc), sci(yc), sci(r.solve.b[id]), sci(r.reference[id])]);
            }
            art.add(format!("field_line_{}_pe{}.csv", r.scheme.name(), tag(r.pe)), f.into_string());
        }
    }
    art.add("report.csv", csv.into_string());
    art.add("stability.txt", stability_1d_text(&cfg.schemes, &cfg.pe)?.0);
    Ok(())
}

/// One rung of the refinement ladder for one scheme.
#[derive(Clone, Debug)]
pub struct ConvergeRecord {
    pub scheme: Scheme,
    pub n_z: usize,
    pub n_y: usize,
    pub pe: f64,
    pub dz: f64,
    pub errors: ErrorReport,
    /// Order from the absolute errors against the previous rung.
    pub eoc_abs: Option<f64>,
    pub residual: f64,
    pub centre_line: Vec<(f64, f64, f64)>,
}

impl ConvergeRecord {
    pub fn elements(&self) -> usize {
        self.n_z * self.n_y
    }
}

pub fn run_converge(cfg: &ExperimentConfig) -> Result<Vec<ConvergeRecord>, Error> {
    let mat = cfg.material();
    let (n0, _) = cfg.ladder[0];
    let length = n0 as f64 * cfg.dz[0];
    // The ramp is fixed on the coarsest grid so every rung solves the same problem.
    let coarse_z = uniform_grid(n0, length);
    let profile = StepProfile::on_fraction(&coarse_z, cfg.source_from, cfg.source_to, cfg.b_ax)?;
    let &(nf, nyf) = cfg.ladder.last().expect("ladder has rungs");
    let reference = reference_2d(&uniform_grid(nf, length), nyf, cfg.depth, &profile, &mat, cfg.outflow, &cfg.reference)?;
    let mut out: Vec<ConvergeRecord> = Vec::new();
    for &scheme in &cfg.schemes {
        let mut prev: Option<(f64, f64)> = None;
        for &(n_z, n_y) in &cfg.ladder {
            let dz = length / n_z as f64;
            let mesh = Mesh2D::from_coordinates(uniform_grid(n_z, length), uniform_grid(n_y, cfg.depth))?;
            let restricted = restrict_2d(&reference.mesh, &reference.b, &mesh)?;
            let areas: Vec<f64> = mesh.elements().map(|e| e.area()).collect();
            let solve = solve_slab_2d(mesh, &profile, &mat, scheme.into(), cfg.outflow)?;
            let mut errors = error_metrics(&solve.b, &restricted, &areas, cfg.b_ax)?;
            let mut eoc_abs = None;
            if let Some((l2, ab)) = prev {
                let h_prev = 2.0 * dz;
                errors.eoc = Some(eoc(l2, errors.l2_error, h_prev, dz));
                eoc_abs = Some(eoc(ab, errors.abs_error, h_prev, dz));
            }
            prev = Some((errors.l2_error, errors.abs_error));
            let row = n_y / 2;
            let centre_line = (0..n_z)
                .map(|iz| {
                    let e = solve.mesh.element(iz, row);
                    let id = solve.mesh.elem_id(iz, row);
                    (e.center().0, solve.b[id], restricted[id])
                })
                .collect();
            out.push(ConvergeRecord {
                scheme,
                n_z,
                n_y,
                pe: mat.peclet(dz),
                dz,
                errors,
                eoc_abs,
                residual: solve.solution.residual,
                centre_line,
            });
        }
    }
    Ok(out)
}

fn write_converge(
    cfg: &ExperimentConfig,
    recs: &[ConvergeRecord],
    art: &mut Artifacts,
    manifest: &mut String,
) -> Result<(), Error> {
    let mut csv = Csv::new(&[
        "scheme", "elements", "n_z", "n_y", "pe", "dz", "l2_error", "eoc_l2", "abs_error", "eoc_abs",
        "residual",
    ]);
    let opt = |v: Option<f64>| v.map_or(String::new(), sci);
    for r in recs {
        csv.row(&[
            r.scheme.name().into(), r.elements().to_string(), r.n_z.to_string(), r.n_y.to_string(),
            sci(r.pe), sci(r.dz), sci(r.errors.l2_error), opt(r.errors.eoc), sci(r.errors.abs_error),
            opt(r.eoc_abs), sci(r.residual),
        ]);
        let mut f = Csv::new(&["element", "z", "b_x", "b_ref"]);
        for (i, (z, b, br)) in r.centre_line.iter().enumerate() {
            f.row(&[i.to_string(), sci(*z), sci(*b), sci(*br)]);
        }
        art.add(format!("field_line_{}_{}.csv", r.scheme.name(), r.elements()), f.into_string());
    }
    let pes: Vec<f64> = recs.iter().filter(|r| r.scheme == recs[0].scheme).map(|r| r.pe).collect();
    let _ = writeln!(manifest, "rung_pe = {}", pes.iter().map(|p| sci(*p)).collect::<Vec<_>>().join(","));
    art.add("report.csv", csv.into_string());
    art.add("stability.txt", stability_1d_text(&cfg.schemes, &pes)?.0);
    Ok(())
}

/// Worst deviation of the per-element average and of the Gauss-point field
/// from a uniform field on a brick.
#[derive(Clone, Debug, PartialEq)]
pub struct Avg3dRecord {
    pub average: [Option<f64>; 3],
    pub average_error: f64,
    pub gauss_error: f64,
}

pub fn run_avg3d(cfg: &ExperimentConfig) -> Result<Avg3dRecord, Error> {
    let hex = Hexahedron { size: cfg.hex_size };
    let b = cfg.b_uniform;
    let edges = hex.project_uniform(b);
    let average = elemental_average_3d(&edges, &hex.edge_dirs())?;
    let average_error = (0..3)
        .map(|c| average[c].map_or(f64::INFINITY, |v| (v - b[c]).abs()))
        .fold(0.0, f64::max);
    let mut gauss_error = 0.0f64;
    for r in hex.gauss_points() {
        let g = gauss_point_source(&edges, &hex.edge_shape(r))?;
        for c in 0..3 {
            gauss_error = gauss_error.max((g[c] - b[c]).abs());
        }
    }
    Ok(Avg3dRecord { average, average_error, gauss_error })
}

fn avg3d(cfg: &ExperimentConfig, art: &mut Artifacts) -> Result<(), Error> {
    let rec = run_avg3d(cfg)?;
    let mut csv = Csv::new(&["check", "component", "value", "expected", "abs_error"]);
    for c in 0..3 {
        let v = rec.average[c].unwrap_or(f64::NAN);
        csv.row(&["elemental_average".into(), ["x", "y", "z"][c].into(), sci(v), sci(cfg.b_uniform[c]), sci((v - cfg.b_uniform[c]).abs())]);
    }
    let hex = Hexahedron { size: cfg.hex_size };
    let edges = hex.project_uniform(cfg.b_uniform);
    for (i, r) in hex.gauss_points().into_iter().enumerate() {
        let g = gauss_point_source(&edges, &hex.edge_shape(r))?;
        for c in 0..3 {
            csv.row(&[format!("gauss_point_{i}"), ["x", "y", "z"][c].into(), sci(g[c]), sci(cfg.b_uniform[c]), sci((g[c] - cfg.b_uniform[c]).abs())]);
        }
    }
    art.add("report.csv", csv.into_string());
    Ok(())
}
