//! Line-based `key = value` experiment configuration.
//!
//! Grammar: UTF-8 lines, one `key = value` pair per line, `#` starts a
//! comment, blank lines ignored. Keys are drawn from a fixed set per model;
//! unknown keys are rejected with their line number. A key given twice
//! keeps the last value, which is what makes `--override key=value` a plain
//! append.
//!
//! Keys (defaults in parentheses):
//!
//! - common: `model` (required, `A` | `B`), `eps` (1), `lam1` (0),
//!   `lam2` (0), `theta1` (pi/2), `zeta1` (0), `theta2` (pi/2), `zeta2` (0),
//!   `t_start` (0), `t_end` (A: 40, B: 4 pi), `n` (A: 2001, B: 801),
//!   `csv` (none), `plot` (none), `scan_axis` (none),
//!   `scan_values` (comma-separated, required with `scan_axis`)
//! - model A: `alpha_eff` (0.01), `gamma_eff` (0.05), `mu` (0.01), `nu` (0.2)
//! - model B: `g` (0.1), `prep` (`coherent` | `number`, default `coherent`),
//!   `z_abs` (1), `phase` (0), `nboson` (1), `branch` (`excited` | `ground`,
//!   default `excited`)

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::model_b::{CorrelatedBranch, EnvPrep, MAX_NUMBER_STATE};

use super::{EnvA, EnvB, EnvSpec, ExperimentConfig, Model, ScanAxis, ScanSpec, StateSpec, TimeGrid};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` does not apply to model {model}")]
    WrongModel { line: usize, key: String, model: char },
    #[error("line {line}: invalid value for `{key}`: {message}")]
    BadValue { line: usize, key: String, message: String },
    #[error("missing required key `model`")]
    MissingModel,
    #[error("invalid `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
}

const COMMON_KEYS: &[&str] = &[
    "model", "eps", "lam1", "lam2", "theta1", "zeta1", "theta2", "zeta2", "t_start", "t_end",
    "n", "csv", "plot", "scan_axis", "scan_values",
];
const A_KEYS: &[&str] = &["alpha_eff", "gamma_eff", "mu", "nu"];
const B_KEYS: &[&str] = &["g", "prep", "z_abs", "phase", "nboson", "branch"];

struct Raw {
    // key -> (line, value); later lines overwrite earlier ones
    entries: HashMap<String, (usize, String)>,
}

impl Raw {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }
}

fn scan_lines(text: &str) -> Result<Raw, ConfigError> {
    let mut entries = HashMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let stripped = stripped.trim();
        if stripped.is_empty() {
            continue;
        }
        let Some((key, value)) = stripped.split_once('=') else {
            return Err(ConfigError::Syntax { line, text: stripped.to_string() });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax { line, text: stripped.to_string() });
        }
        if !COMMON_KEYS.contains(&key.as_str())
            && !A_KEYS.contains(&key.as_str())
            && !B_KEYS.contains(&key.as_str())
        {
            return Err(ConfigError::UnknownKey { line, key });
        }
        entries.insert(key, (line, value));
    }
    Ok(Raw { entries })
}

fn parse_f64(key: &str, line: usize, value: &str) -> Result<f64, ConfigError> {
    value.parse::<f64>().map_err(|e| ConfigError::BadValue {
        line,
        key: key.to_string(),
        message: e.to_string(),
    })
}

fn take_f64(raw: &mut Raw, key: &str, default: f64) -> Result<f64, ConfigError> {
    match raw.take(key) {
        Some((line, value)) => parse_f64(key, line, &value),
        None => Ok(default),
    }
}

/// Parses and fully validates a configuration document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut raw = scan_lines(text)?;

    let model = match raw.take("model") {
        Some((line, value)) => match value.as_str() {
            "A" | "a" => 'A',
            "B" | "b" => 'B',
            other => {
                return Err(ConfigError::BadValue {
                    line,
                    key: "model".into(),
                    message: format!("expected A or B, got `{other}`"),
                })
            }
        },
        None => return Err(ConfigError::MissingModel),
    };

    // Keys belonging to the other model are rejected, not ignored.
    let foreign: &[&str] = if model == 'A' { B_KEYS } else { A_KEYS };
    for key in foreign {
        if let Some((line, _)) = raw.take(key) {
            return Err(ConfigError::WrongModel { line, key: key.to_string(), model });
        }
    }

    let env = if model == 'A' {
        EnvSpec::A(EnvA {
            alpha_eff: take_f64(&mut raw, "alpha_eff", 0.01)?,
            gamma_eff: take_f64(&mut raw, "gamma_eff", 0.05)?,
            mu: take_f64(&mut raw, "mu", 0.01)?,
            nu: take_f64(&mut raw, "nu", 0.2)?,
        })
    } else {
        let g = take_f64(&mut raw, "g", 0.1)?;
        let z_abs = take_f64(&mut raw, "z_abs", 1.0)?;
        let phase = take_f64(&mut raw, "phase", 0.0)?;
        let nboson = match raw.take("nboson") {
            Some((line, value)) => value.parse::<u32>().map_err(|e| ConfigError::BadValue {
                line,
                key: "nboson".into(),
                message: e.to_string(),
            })?,
            None => 1,
        };
        let prep = match raw.take("prep") {
            Some((line, value)) => match value.as_str() {
                "coherent" => EnvPrep::Coherent { z_abs, phase },
                "number" => EnvPrep::Number { n: nboson },
                other => {
                    return Err(ConfigError::BadValue {
                        line,
                        key: "prep".into(),
                        message: format!("expected coherent or number, got `{other}`"),
                    })
                }
            },
            None => EnvPrep::Coherent { z_abs, phase },
        };
        let branch = match raw.take("branch") {
            Some((line, value)) => match value.as_str() {
                "excited" => CorrelatedBranch::Excited,
                "ground" => CorrelatedBranch::Ground,
                other => {
                    return Err(ConfigError::BadValue {
                        line,
                        key: "branch".into(),
                        message: format!("expected excited or ground, got `{other}`"),
                    })
                }
            },
            None => CorrelatedBranch::Excited,
        };
        EnvSpec::B(EnvB { g, prep, branch })
    };

    let eps = take_f64(&mut raw, "eps", 1.0)?;
    let state1 = StateSpec {
        lam: take_f64(&mut raw, "lam1", 0.0)?,
        theta: take_f64(&mut raw, "theta1", FRAC_PI_2)?,
        zeta: take_f64(&mut raw, "zeta1", 0.0)?,
    };
    let state2 = StateSpec {
        lam: take_f64(&mut raw, "lam2", 0.0)?,
        theta: take_f64(&mut raw, "theta2", FRAC_PI_2)?,
        zeta: take_f64(&mut raw, "zeta2", 0.0)?,
    };

    let default_t_end = if model == 'A' { 40.0 } else { 4.0 * PI };
    let default_n = if model == 'A' { 2001 } else { 801 };
    let grid = TimeGrid {
        t_start: take_f64(&mut raw, "t_start", 0.0)?,
        t_end: take_f64(&mut raw, "t_end", default_t_end)?,
        n: match raw.take("n") {
            Some((line, value)) => value.parse::<usize>().map_err(|e| ConfigError::BadValue {
                line,
                key: "n".into(),
                message: e.to_string(),
            })?,
            None => default_n,
        },
    };

    let scan = match raw.take("scan_axis") {
        Some((line, value)) => {
            let axis = match value.as_str() {
                "lam" => ScanAxis::Lam,
                "z_abs" => ScanAxis::ZAbs,
                "phase" => ScanAxis::Phase,
                "theta" => ScanAxis::Theta,
                "zeta" => ScanAxis::Zeta,
                "n" => ScanAxis::BosonN,
                other => {
                    return Err(ConfigError::BadValue {
                        line,
                        key: "scan_axis".into(),
                        message: format!("unknown axis `{other}`"),
                    })
                }
            };
            let Some((vline, vtext)) = raw.take("scan_values") else {
                return Err(ConfigError::BadValue {
                    line,
                    key: "scan_values".into(),
                    message: "required when scan_axis is set".into(),
                });
            };
            let mut values = Vec::new();
            for piece in vtext.split(',') {
                values.push(parse_f64("scan_values", vline, piece.trim())?);
            }
            Some(ScanSpec { axis, values })
        }
        None => {
            if let Some((line, _)) = raw.take("scan_values") {
                return Err(ConfigError::BadValue {
                    line,
                    key: "scan_values".into(),
                    message: "scan_axis is not set".into(),
                });
            }
            None
        }
    };

    let csv_path = raw.take("csv").map(|(_, v)| v);
    let plot_path = raw.take("plot").map(|(_, v)| v);

    debug_assert!(raw.entries.is_empty(), "unconsumed keys: {:?}", raw.entries.keys());

    let cfg = ExperimentConfig { env, eps, state1, state2, grid, scan, csv_path, plot_path };
    validate_config(&cfg)?;
    Ok(cfg)
}

fn validate_config(cfg: &ExperimentConfig) -> Result<(), ConfigError> {
    let bad = |field: &'static str, message: String| ConfigError::Invalid { field, message };

    for (field, v) in [("lam1", cfg.state1.lam), ("lam2", cfg.state2.lam)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(bad(field, format!("lam out of [0,1]: {v}")));
        }
    }
    for (field, v) in [
        ("theta1", cfg.state1.theta),
        ("zeta1", cfg.state1.zeta),
        ("theta2", cfg.state2.theta),
        ("zeta2", cfg.state2.zeta),
        ("eps", cfg.eps),
    ] {
        if !v.is_finite() {
            return Err(bad(field, "must be finite".into()));
        }
    }
    for (field, v) in [("theta1", cfg.state1.theta), ("theta2", cfg.state2.theta)] {
        if !(0.0..=PI).contains(&v) {
            return Err(bad(field, format!("theta out of [0,pi]: {v}")));
        }
        // The amplitude parameterization needs both b's non-zero.
        if v == 0.0 || v == PI {
            return Err(bad(field, "theta on a pole makes one amplitude zero".into()));
        }
    }

    if !(cfg.grid.t_start.is_finite() && cfg.grid.t_end.is_finite()) {
        return Err(bad("t_start/t_end", "must be finite".into()));
    }
    if cfg.grid.t_start < 0.0 {
        return Err(bad("t_start", format!("must be >= 0: {}", cfg.grid.t_start)));
    }
    if cfg.grid.t_end <= cfg.grid.t_start {
        return Err(bad("t_end", "must exceed t_start".into()));
    }
    if cfg.grid.n < 2 {
        return Err(bad("n", format!("need at least 2 grid points, got {}", cfg.grid.n)));
    }

    match &cfg.env {
        EnvSpec::A(a) => {
            if !(a.alpha_eff.is_finite() && a.alpha_eff >= 0.0) {
                return Err(bad("alpha_eff", format!("must be >= 0: {}", a.alpha_eff)));
            }
            if !(a.gamma_eff.is_finite() && a.gamma_eff >= 0.0) {
                return Err(bad("gamma_eff", format!("must be >= 0: {}", a.gamma_eff)));
            }
            if !(a.mu.is_finite() && a.mu > 0.0) {
                return Err(bad("mu", format!("must be > 0 (super-ohmic): {}", a.mu)));
            }
            if !(a.nu.is_finite() && a.nu > 0.0) {
                return Err(bad("nu", format!("must be > 0: {}", a.nu)));
            }
        }
        EnvSpec::B(b) => {
            if !(b.g.is_finite() && b.g >= 0.0) {
                return Err(bad("g", format!("must be >= 0: {}", b.g)));
            }
            match b.prep {
                EnvPrep::Coherent { z_abs, phase } => {
                    if !(z_abs.is_finite() && z_abs >= 0.0) {
                        return Err(bad("z_abs", format!("must be >= 0: {z_abs}")));
                    }
                    if !phase.is_finite() {
                        return Err(bad("phase", "must be finite".into()));
                    }
                }
                EnvPrep::Number { n } => {
                    if n > MAX_NUMBER_STATE {
                        return Err(bad(
                            "nboson",
                            format!("exceeds the cap {MAX_NUMBER_STATE}: {n}"),
                        ));
                    }
                }
            }
        }
    }

    if let Some(scan) = &cfg.scan {
        if scan.values.is_empty() {
            return Err(bad("scan_values", "need at least one value".into()));
        }
        if !scan.values.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad("scan_values", "values must be strictly increasing".into()));
        }
        let model = cfg.model();
        match scan.axis {
            ScanAxis::ZAbs | ScanAxis::Phase => {
                let coherent = matches!(
                    cfg.env,
                    EnvSpec::B(EnvB { prep: EnvPrep::Coherent { .. }, .. })
                );
                if !coherent {
                    return Err(bad(
                        "scan_axis",
                        format!(
                            "axis `{}` needs model B with a coherent preparation",
                            scan.axis.key()
                        ),
                    ));
                }
                if scan.axis == ScanAxis::ZAbs && scan.values[0] < 0.0 {
                    return Err(bad("scan_values", "z_abs values must be >= 0".into()));
                }
            }
            ScanAxis::BosonN => {
                if model != Model::B {
                    return Err(bad("scan_axis", "axis `n` needs model B".into()));
                }
                for &v in &scan.values {
                    if v < 0.0 || v.fract() != 0.0 || v > MAX_NUMBER_STATE as f64 {
                        return Err(bad(
                            "scan_values",
                            format!("axis `n` needs integers in 0..={MAX_NUMBER_STATE}: {v}"),
                        ));
                    }
                }
            }
            ScanAxis::Lam => {
                if scan.values[0] < 0.0 || *scan.values.last().unwrap() > 1.0 {
                    return Err(bad("scan_values", "lam values must lie in [0,1]".into()));
                }
            }
            ScanAxis::Theta | ScanAxis::Zeta => {
                // The scan contract pins state 1 to the equal-amplitude
                // preparation for angle scans.
                let equal = (cfg.state1.theta - FRAC_PI_2).abs() < 1e-12
                    && cfg.state1.zeta.abs() < 1e-12;
                if !equal {
                    return Err(bad(
                        "scan_axis",
                        "theta/zeta scans require state 1 at theta1 = pi/2, zeta1 = 0".into(),
                    ));
                }
                if scan.axis == ScanAxis::Theta
                    && (scan.values[0] <= 0.0 || *scan.values.last().unwrap() >= PI)
                {
                    return Err(bad(
                        "scan_values",
                        "theta values must lie strictly inside (0, pi)".into(),
                    ));
                }
            }
        }
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_model_b_doc_gets_defaults() {
        let cfg = parse_config("model = B\ng = 0.1\nlam2 = 1\n").unwrap();
        assert_eq!(cfg.model(), Model::B);
        assert_eq!(cfg.grid.n, 801);
        assert!((cfg.grid.t_end - 4.0 * PI).abs() < 1e-15);
        assert_eq!(cfg.eps, 1.0);
        assert_eq!(cfg.state1.lam, 0.0);
        assert_eq!(cfg.state2.lam, 1.0);
        let EnvSpec::B(env) = cfg.env else { panic!() };
        assert_eq!(env.prep, EnvPrep::Coherent { z_abs: 1.0, phase: 0.0 });
        assert_eq!(env.branch, CorrelatedBranch::Excited);
        // Equal amplitudes by default.
        let (bp, bm) = cfg.state1.amplitudes();
        assert!((bp.norm_sqr() - 0.5).abs() < 1e-15);
        assert!((bm.norm_sqr() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn model_a_defaults_match_reference_set() {
        let cfg = parse_config("model = A\n").unwrap();
        let EnvSpec::A(env) = cfg.env else { panic!() };
        assert_eq!(
            (env.alpha_eff, env.gamma_eff, env.mu, env.nu),
            (0.01, 0.05, 0.01, 0.2)
        );
        assert_eq!(cfg.grid.n, 2001);
        assert_eq!(cfg.grid.t_end, 40.0);
    }

    #[test]
    fn lam_out_of_range_is_named() {
        let err = parse_config("model = B\nlam2 = 1.5\n").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("lam out of [0,1]"), "got: {text}");
    }

    #[test]
    fn unknown_keys_and_syntax_errors_carry_line_numbers() {
        let err = parse_config("model = B\nwhatever = 3\n").unwrap_err();
        assert!(matches!(err, ConfigError::UnknownKey { line: 2, .. }));

        let err = parse_config("model = B\nnonsense line\n").unwrap_err();
        assert!(matches!(err, ConfigError::Syntax { line: 2, .. }));
    }

    #[test]
    fn foreign_model_keys_are_rejected() {
        let err = parse_config("model = A\ng = 0.1\n").unwrap_err();
        assert!(matches!(err, ConfigError::WrongModel { model: 'A', .. }));
    }

    #[test]
    fn comments_blanks_and_duplicates() {
        let cfg = parse_config(
            "# reproduction run\nmodel = B\n\nlam2 = 0.25 # first guess\nlam2 = 0.75\n",
        )
        .unwrap();
        assert_eq!(cfg.state2.lam, 0.75);
    }

    #[test]
    fn scan_validation() {
        let cfg =
            parse_config("model = B\nscan_axis = lam\nscan_values = 0.25, 0.5, 0.75, 1\n")
                .unwrap();
        assert_eq!(cfg.scan.unwrap().values.len(), 4);

        let err = parse_config("model = B\nscan_axis = lam\nscan_values = 0.5, 0.25\n")
            .unwrap_err();
        assert!(err.to_string().contains("strictly increasing"));

        let err = parse_config("model = A\nscan_axis = z_abs\nscan_values = 1, 2\n")
            .unwrap_err();
        assert!(matches!(err, ConfigError::WrongModel { .. } | ConfigError::Invalid { .. }));

        let err = parse_config(
            "model = B\nprep = number\nscan_axis = n\nscan_values = 1.5, 2\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("integers"));

        let err = parse_config(
            "model = B\ntheta1 = 1.0\nscan_axis = theta\nscan_values = 0.5, 1.0\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("state 1"));
    }

    #[test]
    fn branch_key_parses() {
        let cfg = parse_config("model = B\nbranch = ground\n").unwrap();
        let EnvSpec::B(env) = cfg.env else { panic!() };
        assert_eq!(env.branch, CorrelatedBranch::Ground);
        assert!(parse_config("model = B\nbranch = sideways\n").is_err());
    }
}
