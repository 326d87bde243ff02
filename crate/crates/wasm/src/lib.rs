//! Browser bindings for the dephasing distance laboratory.
//!
//! Three operations are exposed, each taking the same line-based
//! `key = value` configuration text the CLI consumes and returning either a
//! standalone SVG document or CSV text. The static page in `www/` wires
//! them to form controls.

use wasm_bindgen::prelude::*;

use qdlab_core::lab::{
    emit_csv, emit_plot, emit_scan_csv, parse_config, run_scan, run_timeseries, PlotInput,
};

fn series_svg_impl(config_text: &str) -> Result<String, String> {
    let cfg = parse_config(config_text).map_err(|e| e.to_string())?;
    let series = run_timeseries(&cfg).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    emit_plot(PlotInput::Series(&series), &mut buf).map_err(|e| e.to_string())?;
    String::from_utf8(buf).map_err(|e| e.to_string())
}

fn scan_svg_impl(config_text: &str) -> Result<String, String> {
    let cfg = parse_config(config_text).map_err(|e| e.to_string())?;
    if cfg.scan.is_none() {
        return Err("config has no scan_axis".to_string());
    }
    let result = run_scan(&cfg).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    emit_plot(PlotInput::Scan(&result), &mut buf).map_err(|e| e.to_string())?;
    String::from_utf8(buf).map_err(|e| e.to_string())
}

fn run_csv_impl(config_text: &str) -> Result<String, String> {
    let cfg = parse_config(config_text).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    if cfg.scan.is_some() {
        let result = run_scan(&cfg).map_err(|e| e.to_string())?;
        emit_scan_csv(&result, &mut buf).map_err(|e| e.to_string())?;
    } else {
        let series = run_timeseries(&cfg).map_err(|e| e.to_string())?;
        emit_csv(&series, &mut buf).map_err(|e| e.to_string())?;
    }
    String::from_utf8(buf).map_err(|e| e.to_string())
}

/// Runs a time sweep and renders the five distance curves as SVG.
#[wasm_bindgen]
pub fn timeseries_svg(config_text: &str) -> Result<String, JsValue> {
    series_svg_impl(config_text).map_err(|e| JsValue::from_str(&e))
}

/// Runs the configured parameter scan and renders the per-measure
/// `MAX[D(t) - D(0)]` curves as SVG.
#[wasm_bindgen]
pub fn scan_svg(config_text: &str) -> Result<String, JsValue> {
    scan_svg_impl(config_text).map_err(|e| JsValue::from_str(&e))
}

/// Runs a time sweep (or scan, when the config has one) and returns the CSV.
#[wasm_bindgen]
pub fn run_csv(config_text: &str) -> Result<String, JsValue> {
    run_csv_impl(config_text).map_err(|e| JsValue::from_str(&e))
}
