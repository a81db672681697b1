use std::path::Path;

use clap::ValueEnum;
use mlsep::ml::{ml_neg_axis, MlAccuracy};
use mlsep::reproduce::{self, SweepFits};
use mlsep::zeros::{threshold_alpha0, AsymptoteFit, Beta, NewtonOptions, ZeroRecord};

use crate::output::{num, write_text, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Figure {
    /// Example solution E_{1.5,1}(-t^1.5) and the zero solution on [0, 3]
    Meet,
    /// Z_alpha(alpha) over (1, 2] with both asymptote fits
    AlphaZeros,
    /// E_{alpha,2}(-z^alpha) on either side of the threshold alpha0
    Beta2Threshold,
    /// Z_2(alpha) over [alpha0, 2] with both asymptote fits
    Beta2Zeros,
    /// E_{alpha,1}(-z^alpha) for alpha in {1.05, 1.35, 1.65, 1.95}
    Beta1Functions,
    /// Z_1(alpha) over (1, 2] with both asymptote fits
    Beta1Zeros,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Meet => "meet",
            Figure::AlphaZeros => "alpha_zeros",
            Figure::Beta2Threshold => "beta2_threshold",
            Figure::Beta2Zeros => "beta2_zeros",
            Figure::Beta1Functions => "beta1_functions",
            Figure::Beta1Zeros => "beta1_zeros",
        }
    }
}

fn numeric<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Numeric(e.to_string())
}

fn gp_header(name: &str) -> String {
    format!(
        "set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo size 900,600\nset output '{name}.png'\n"
    )
}

pub fn run(fig: Figure, dir: &Path) -> Result<(), CliError> {
    let name = fig.name();
    let (table, script) = match fig {
        Figure::Meet => meet()?,
        Figure::AlphaZeros => zeros_figure(name, Beta::Alpha, "Z_alpha(alpha)")?,
        Figure::Beta1Zeros => zeros_figure(name, Beta::Fixed(1.0), "Z_1(alpha)")?,
        Figure::Beta2Threshold => beta2_threshold()?,
        Figure::Beta2Zeros => beta2_zeros()?,
        Figure::Beta1Functions => beta1_functions()?,
    };
    let csv = dir.join(format!("{name}.csv"));
    table.write(&csv)?;
    write_text(&dir.join(format!("{name}.gp")), &format!("{}{script}", gp_header(name)))?;
    println!("wrote {}", csv.display());
    Ok(())
}

fn meet() -> Result<(Table, String), CliError> {
    let acc = MlAccuracy::default();
    let mut t = Table::new(&["t", "y1", "y2"]);
    for i in 0..=600 {
        let x = i as f64 * 0.005;
        let y2 = ml_neg_axis(1.5, 1.0, x, &acc).map_err(numeric)?;
        t.push_nums(&[x, 0.0, y2]);
    }
    let gp =
        "set xlabel 't'\nset xzeroaxis\nplot 'meet.csv' using 1:2 with lines, '' using 1:3 with lines\n".to_string();
    Ok((t, gp))
}

/// One row per record: alpha, z_min, then each fit evaluated at alpha.
fn push_records(t: &mut Table, records: &[ZeroRecord], fits: &[&AsymptoteFit]) {
    for r in records {
        let mut row = vec![num(r.alpha), num(r.z_min)];
        row.extend(fits.iter().map(|f| num(f.eval(r.alpha))));
        t.push(row);
    }
}

fn zeros_figure(name: &str, beta: Beta, label: &str) -> Result<(Table, String), CliError> {
    let SweepFits { records, to_1, to_2 } =
        reproduce::sweep_and_fit(beta, &NewtonOptions::default()).map_err(numeric)?;
    for f in [&to_1, &to_2] {
        eprintln!("{} fit on {:?}: {:?}", f.regime.name(), f.fit_window, f.coefficients);
    }
    let mut t = Table::new(&["alpha", "z_min", "fit_alpha_to_1", "fit_alpha_to_2"]);
    push_records(&mut t, &records, &[&to_1, &to_2]);
    let gp = format!(
        "set multiplot layout 1,2\nset xlabel 'alpha'\nset ylabel '{label}'\n\
         set xrange [1:1.2]\nplot '{name}.csv' using 1:2 with lines, '' using 1:3 with lines dashtype 3\n\
         set xrange [1.2:2]\nplot '{name}.csv' using 1:2 with lines, '' using 1:4 with lines dashtype 3\n\
         unset multiplot\n"
    );
    Ok((t, gp))
}

fn beta2_threshold() -> Result<(Table, String), CliError> {
    let acc = MlAccuracy::default();
    let alpha0 = threshold_alpha0(1e-9, &acc).map_err(numeric)?;
    let (below, above) = (alpha0 - 1e-9, alpha0 + 1e-9);
    let n = 400;
    let mut t = Table::new(&[
        "z_wide",
        "e_alpha_1p599",
        "e_alpha_1p6",
        "z_zoom",
        "e_below_alpha0",
        "e_above_alpha0",
    ]);
    for i in 0..=n {
        // log-spaced on [4, 150], linear on [5.2106, 5.21075]
        let zw = 4.0 * (150.0_f64 / 4.0).powf(i as f64 / n as f64);
        let zz = 5.2106 + 0.00015 * i as f64 / n as f64;
        let v = [
            ml_neg_axis(1.599, 2.0, zw, &acc),
            ml_neg_axis(1.6, 2.0, zw, &acc),
            ml_neg_axis(below, 2.0, zz, &acc),
            ml_neg_axis(above, 2.0, zz, &acc),
        ];
        let v = v.into_iter().collect::<Result<Vec<_>, _>>().map_err(numeric)?;
        t.push_nums(&[zw, v[0], v[1], zz, v[2], v[3]]);
    }
    let gp = format!(
        "# alpha0 = {alpha0:.12}\nset multiplot layout 1,2\nset xzeroaxis\n\
         set logscale x\nplot 'beta2_threshold.csv' using 1:2 with lines dashtype 2, '' using 1:3 with lines\n\
         unset logscale x\nplot 'beta2_threshold.csv' using 4:5 with lines dashtype 2, '' using 4:6 with lines\n\
         unset multiplot\n"
    );
    Ok((t, gp))
}

fn beta2_zeros() -> Result<(Table, String), CliError> {
    let f = reproduce::beta2_fits(&NewtonOptions::default()).map_err(numeric)?;
    eprintln!("alpha0 = {}, Z_2(alpha0) = {}", f.alpha0, f.z_at_alpha0);
    for fit in [&f.to_2, &f.to_alpha0] {
        eprintln!(
            "{} fit on {:?}: {:?}",
            fit.regime.name(),
            fit.fit_window,
            fit.coefficients
        );
    }
    // the threshold itself leads the table: the tangential zero
    let mut t = Table::new(&["alpha", "z_min", "fit_alpha_to_2", "fit_alpha_to_alpha0"]);
    t.push_nums(&[f.alpha0, f.z_at_alpha0, f.to_2.eval(f.alpha0), f.z_at_alpha0]);
    push_records(&mut t, &f.records, &[&f.to_2, &f.to_alpha0]);
    let gp = "set xlabel 'alpha'\nset ylabel 'Z_2(alpha)'\n\
              plot 'beta2_zeros.csv' using 1:2 with lines, '' using 1:3 with lines dashtype 3, '' using 1:4 with lines dashtype 2\n"
        .to_string();
    Ok((t, gp))
}

fn beta1_functions() -> Result<(Table, String), CliError> {
    let acc = MlAccuracy::default();
    let alphas = [1.05, 1.35, 1.65, 1.95];
    let mut t = Table::new(&["z", "e_alpha_1p05", "e_alpha_1p35", "e_alpha_1p65", "e_alpha_1p95"]);
    for i in 0..=800 {
        let z = i as f64 * 0.01;
        let mut row = vec![z];
        for a in alphas {
            row.push(ml_neg_axis(a, 1.0, z, &acc).map_err(numeric)?);
        }
        t.push_nums(&row);
    }
    let gp = "set xlabel 'z'\nset xzeroaxis\n\
              plot for [i=2:5] 'beta1_functions.csv' using 1:i with lines\n"
        .to_string();
    Ok((t, gp))
}
