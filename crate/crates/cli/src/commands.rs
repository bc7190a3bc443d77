use std::path::PathBuf;

use susyscat_core::oracle::full_verification;
use susyscat_core::phase::phase_shift;
use susyscat_core::resonance::{fit_breit_wigner, singularity_sweep};
use susyscat_core::smatrix::{self, CrossSectionKind};
use susyscat_core::xspace;

use crate::config::RunConfig;
use crate::output::{write_json_value, Table};
use crate::AppError;

/// `curves`: one table of all cross sections on the momentum grid.
pub fn cmd_curves(cfg: &RunConfig) -> Result<(), AppError> {
    let p = cfg.params()?;
    let grid = cfg.kgrid()?;
    let cs = smatrix::cross_sections(&grid, &p)?;

    let mut table = Table::new();
    table.push("k", cs.k.clone());
    for kind in CrossSectionKind::ALL {
        table.push(kind.column_name(), cs.values(kind).to_vec());
    }
    let path = cfg.out_path("curves");
    table.write(&path, cfg.format)?;
    println!("wrote {} ({} rows)", path.display(), table.rows());
    Ok(())
}

/// `phases`: unwrapped phase shifts, one table per requested d.
pub fn cmd_phases(cfg: &RunConfig) -> Result<(), AppError> {
    let grid = cfg.kgrid()?;
    let multi = cfg.d_list.len() > 1;
    for &d in &cfg.d_list {
        let p = cfg.params_for(d)?;
        let fam = smatrix::SMatrixFamily::compute(&grid, &p)?;
        let delta0 = phase_shift(&fam.curve_s0())?;
        let delta_r = phase_shift(&fam.curve_resonance())?;
        let delta_bw = phase_shift(&fam.curve_breit_wigner())?;
        let delta_h = phase_shift(&fam.curve_hermitian())?;

        let mut table = Table::new();
        table.push("k", fam.k.clone());
        table.push("delta0", delta0.values);
        table.push("deltaR", delta_r.values);
        table.push("deltaBW", delta_bw.values);
        table.push("delta_h", delta_h.values);

        let base = cfg.out_path("phases");
        let path = if multi { suffixed(&base, d) } else { base };
        table.write(&path, cfg.format)?;
        println!("wrote {} ({} rows)", path.display(), table.rows());
    }
    Ok(())
}

fn suffixed(base: &std::path::Path, d: f64) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "phases".into());
    let ext = base
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    base.with_file_name(format!("{stem}_d{d}.{ext}"))
}

/// `potential`: x, the background potential, and the complex partner
/// potential and superpotential. The singular columns are NaN at x = 0.
pub fn cmd_potential(cfg: &RunConfig) -> Result<(), AppError> {
    let p = cfg.params()?;
    if cfg.n_x < 2 {
        return Err(AppError::Params(format!("n_x = {} too small", cfg.n_x)));
    }
    let n = cfg.n_x;
    let hx = cfg.x_max / (n - 1) as f64;

    let mut xs = Vec::with_capacity(n);
    let mut v0c = Vec::with_capacity(n);
    let mut re_v = Vec::with_capacity(n);
    let mut im_v = Vec::with_capacity(n);
    let mut re_w = Vec::with_capacity(n);
    let mut im_w = Vec::with_capacity(n);
    for i in 0..n {
        let x = hx * i as f64;
        let v = xspace::potential_v(x, &p)?;
        xs.push(x);
        re_v.push(v.re);
        im_v.push(v.im);
        if x == 0.0 {
            v0c.push(f64::NAN);
            re_w.push(f64::NAN);
            im_w.push(f64::NAN);
        } else {
            let w = xspace::superpotential_w(x, &p)?;
            v0c.push(xspace::v0(x, &p)?);
            re_w.push(w.re);
            im_w.push(w.im);
        }
    }

    // recorded for reference: the absorptive part has a finite integral
    let mut trapezoid = 0.0;
    for i in 1..n {
        trapezoid += 0.5 * (im_v[i] + im_v[i - 1]) * hx;
    }

    let mut table = Table::new();
    table.push("x", xs);
    table.push("v0", v0c);
    table.push("re_v", re_v);
    table.push("im_v", im_v);
    table.push("re_w", re_w);
    table.push("im_w", im_w);
    let path = cfg.out_path("potential");
    table.write(&path, cfg.format)?;
    println!("wrote {} ({} rows)", path.display(), table.rows());
    println!(
        "im_v trapezoid integral over [0, {}]: {:.12e}",
        cfg.x_max, trapezoid
    );
    Ok(())
}

/// `verify`: the full gate. Prints the JSON report; exit 0 iff all items
/// pass.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(), AppError> {
    let p = cfg.params()?;
    let (bg, partner) = cfg.integrator_specs();
    let report = full_verification(&p, &bg, &partner)?;
    write_json_value(&report, None)?;
    if let Some(out) = &cfg.out {
        write_json_value(&report, Some(out))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(AppError::Verification)
    }
}

/// `sweep`: proximity sweep over explicitly requested d values.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<(), AppError> {
    if !cfg.d_explicit {
        return Err(AppError::Params(
            "sweep needs an explicit d list (repeat --d or set d in the config file)".into(),
        ));
    }
    let p_base = cfg.params_for(cfg.d_list[0])?;
    let grid = cfg.kgrid()?;
    let rows = singularity_sweep(&cfg.d_list, &p_base, &grid)?;

    let mut table = Table::new();
    table.push("d", rows.iter().map(|r| r.d).collect());
    table.push("k_peak", rows.iter().map(|r| r.k_peak).collect());
    table.push("sigma_peak", rows.iter().map(|r| r.sigma_peak).collect());
    table.push(
        "width",
        rows.iter().map(|r| r.width.unwrap_or(f64::NAN)).collect(),
    );
    table.push("sH_abs_at_b", rows.iter().map(|r| r.s_h_abs_at_b).collect());
    table.push(
        "phase_slope_at_b",
        rows.iter().map(|r| r.phase_slope_at_b).collect(),
    );
    let path = cfg.out_path("sweep");
    table.write(&path, cfg.format)?;
    println!("wrote {} ({} rows)", path.display(), table.rows());
    Ok(())
}

/// `fit`: resonance fit of one cross-section curve, as JSON on stdout.
pub fn cmd_fit(cfg: &RunConfig, curve_name: &str) -> Result<(), AppError> {
    let kind = CrossSectionKind::parse(curve_name).ok_or_else(|| {
        AppError::Params(format!(
            "unknown curve '{curve_name}'; valid: {}",
            CrossSectionKind::ALL
                .iter()
                .map(|k| k.column_name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })?;
    let p = cfg.params()?;
    let grid = cfg.kgrid()?;
    let cs = smatrix::cross_sections(&grid, &p)?;
    let fit = fit_breit_wigner(&cs.curve(kind))?;

    let mut value = serde_json::to_value(fit).map_err(|e| AppError::Io(e.to_string()))?;
    if let serde_json::Value::Object(map) = &mut value {
        let mut full = serde_json::Map::new();
        full.insert("curve".into(), curve_name.into());
        full.append(map);
        value = serde_json::Value::Object(full);
    }
    write_json_value(&value, None)?;
    if let Some(out) = &cfg.out {
        write_json_value(&value, Some(out))?;
    }
    Ok(())
}
