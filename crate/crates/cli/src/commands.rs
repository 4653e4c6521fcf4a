//! The six commands. Each returns an [`Outcome`]; numerical errors are
//! reported with the mask/window identifiers they came from.

use serde::Serialize;
use serde_json::{json, Value};

use qha::conv::{conv_fun_fun, loc_op};
use qha::gabor::{berezin, berezin_conv, fg_sup_profile, stft, STFT4_MAX_POINTS};
use qha::io::{cell, opt_cell, phase_fn_json, Csv};
use qha::quantize::{quantization_compactness_check, QuantizationCase};
use qha::suite::{identity_suite, trend_suite, Criterion};
use qha::tauber::{iso_check, run_tauber, stable_within, TauberCase, Verdict};
use qha::{atom, make_grid, mask, schatten, uniform_radii, MaskKind, PhaseFn, C64};

use crate::config::ExperimentConfig;
use crate::report::Outcome;

type Run = Result<Outcome, String>;

fn verdict(v: Verdict) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|x| x.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("report values serialize")
}

pub fn verify(cfg: &ExperimentConfig, full: bool) -> Run {
    let mut crits: Vec<Criterion> = identity_suite(&cfg.ns, cfg.seed, &cfg.tolerances);
    if full {
        crits.extend(trend_suite(&cfg.tolerances));
    }
    let mut table = Csv::new(&[
        "criterion",
        "title",
        "check",
        "value",
        "bound",
        "relation",
        "pass",
    ]);
    let mut summary = Vec::new();
    for c in &crits {
        summary.push(format!(
            "criterion {:>2} {}: {}",
            c.id,
            if c.pass() { "PASS" } else { "FAIL" },
            c.title
        ));
        for k in &c.checks {
            if !k.pass {
                summary.push(format!(
                    "    failed: {} ({:e} vs {:e})",
                    k.name, k.value, k.bound
                ));
            }
            let rel = value(&k.relation).as_str().unwrap_or_default().to_string();
            table.row(&[
                c.id.to_string(),
                c.title.clone(),
                k.name.clone(),
                cell(k.value),
                cell(k.bound),
                rel,
                k.pass.to_string(),
            ]);
        }
    }
    let pass = crits.iter().all(|c| c.pass());
    let results = json!({
        "criteria": crits.iter().map(|c| json!({"id": c.id, "title": c.title, "pass": c.pass(), "checks": value(&c.checks)})).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        results,
        table,
        pass,
        summary,
    })
}

pub fn tauber(cfg: &ExperimentConfig) -> Run {
    let mut reports = Vec::new();
    let mut table = Csv::new(&["mask", "window", "n", "condition", "value", "verdict"]);
    let mut summary = Vec::new();
    for mk in cfg.mask_kinds()? {
        for w in cfg.window_kinds()? {
            let case = TauberCase {
                mask: mk.clone(),
                window: w.clone(),
                a: cfg.a,
                ns: cfg.ns.clone(),
                seed: cfg.seed,
                eps: cfg.eps,
                r_freq: cfg.r_freq,
            };
            let r = run_tauber(&case).map_err(|e| format!("mask {mk}, window {w}: {e}"))?;
            let v = &r.verdicts;
            summary.push(format!(
                "{mk} / {w}: compact {}, decay {}, fg {}",
                verdict(v.compact),
                verdict(v.decay),
                verdict(v.fg)
            ));
            for c in &r.cells {
                let residual = c.residual.zip(c.residual_scale).map(|(r, s)| r / s);
                let rows: [(&str, String, String); 5] = [
                    ("wiener_min", cell(c.wiener_min), String::new()),
                    ("transfer_residual", opt_cell(residual), String::new()),
                    (
                        "compact_fraction",
                        cell(c.compact.fraction_above),
                        verdict(v.compact),
                    ),
                    ("decay_ratio", cell(c.decay_ratio), verdict(v.decay)),
                    ("fg_ratio", opt_cell(c.fg_ratio), verdict(v.fg)),
                ];
                for (name, val, ver) in rows {
                    table.row(&[
                        mk.to_string(),
                        w.to_string(),
                        c.n.to_string(),
                        name.to_string(),
                        val,
                        ver,
                    ]);
                }
            }
            reports.push(r);
        }
    }
    Ok(Outcome {
        results: json!({"reports": value(&reports)}),
        table,
        pass: true,
        summary,
    })
}

pub fn quantize(cfg: &ExperimentConfig) -> Run {
    let window = cfg
        .window_kinds()?
        .into_iter()
        .next()
        .ok_or("no window given")?;
    let mut reports = Vec::new();
    let mut table = Csv::new(&["operator", "n", "quantity", "label", "value"]);
    let mut summary = Vec::new();
    for op in cfg.operator_specs()? {
        let case = QuantizationCase {
            operator: op.clone(),
            window: window.clone(),
            masks: cfg.mask_kinds()?,
            signals: cfg.signal_kinds()?,
            ns: cfg.ns.clone(),
            eps: cfg.eps,
        };
        let r = quantization_compactness_check(&case)
            .map_err(|e| format!("operator {op}, window {window}: {e}"))?;
        let mut norms = Vec::new();
        for &n in &cfg.ns {
            let g = make_grid(n).map_err(|e| e.to_string())?;
            let s = op
                .build::<f64>(g)
                .and_then(|s| schatten(&s))
                .map_err(|e| format!("operator {op}: {e}"))?;
            norms.push(json!({"n": n, "op_norm": s.op()}));
            table.row(&[
                op.to_string(),
                n.to_string(),
                "op_norm".into(),
                String::new(),
                cell(s.op()),
            ]);
        }
        for c in &r.cells {
            let n = c.n.to_string();
            table.row(&[
                op.to_string(),
                n.clone(),
                "husimi_ratio".into(),
                window.to_string(),
                cell(c.husimi_ratio),
            ]);
            table.row(&[
                op.to_string(),
                n.clone(),
                "wiener_mask_fraction".into(),
                "gaussian_env".into(),
                cell(c.wiener_mask.fraction_above),
            ]);
            for (s, v) in r.signals.iter().zip(&c.signal_ratios) {
                table.row(&[
                    op.to_string(),
                    n.clone(),
                    "signal_ratio".into(),
                    s.clone(),
                    cell(*v),
                ]);
            }
            for (m, v) in r.masks.iter().zip(&c.masks) {
                table.row(&[
                    op.to_string(),
                    n.clone(),
                    "mask_fraction".into(),
                    m.clone(),
                    cell(v.fraction_above),
                ]);
            }
        }
        let v = &r.verdicts;
        summary.push(format!(
            "{op}: husimi {}, wiener mask {}, signals {}, masks {}, consistent {}",
            verdict(v.husimi),
            verdict(v.wiener_mask),
            verdict(v.signals),
            verdict(v.masks),
            v.consistent
        ));
        reports.push(json!({"report": value(&r), "op_norms": norms}));
    }
    Ok(Outcome {
        results: json!({"reports": reports}),
        table,
        pass: true,
        summary,
    })
}

pub fn iso(cfg: &ExperimentConfig) -> Run {
    let mut rows = Vec::new();
    let mut table = Csv::new(&[
        "mask",
        "window",
        "n",
        "sigma_min",
        "sigma_max",
        "invertible",
    ]);
    let mut summary = Vec::new();
    for mk in cfg.mask_kinds()? {
        for w in cfg.window_kinds()? {
            let mut checks = Vec::new();
            for &n in &cfg.ns {
                let g = make_grid(n).map_err(|e| e.to_string())?;
                let c = mask::<f64>(g, &mk)
                    .and_then(|f| iso_check(&f, &atom(g, &w)?))
                    .map_err(|e| format!("mask {mk}, window {w}: {e}"))?;
                table.row(&[
                    mk.to_string(),
                    w.to_string(),
                    n.to_string(),
                    cell(c.sigma_min),
                    cell(c.sigma_max),
                    c.invertible.to_string(),
                ]);
                checks.push(c);
            }
            let mins: Vec<f64> = checks.iter().map(|c| c.sigma_min).collect();
            let stable = stable_within(&mins, cfg.tolerances.iso_band);
            let mins_text: Vec<String> = mins.iter().map(|v| format!("{v:.4}")).collect();
            summary.push(format!(
                "{mk} / {w}: sigma_min {} stable {stable}",
                mins_text.join(" ")
            ));
            rows.push(json!({"mask": mk.to_string(), "window": w.to_string(), "cells": value(&checks), "stable": stable}));
        }
    }
    Ok(Outcome {
        results: json!({"reports": rows}),
        table,
        pass: true,
        summary,
    })
}

pub fn fg(cfg: &ExperimentConfig) -> Run {
    let a = C64::new(cfg.a[0], cfg.a[1]);
    let mut rows = Vec::new();
    let mut table = Csv::new(&["mask", "n", "rho", "g"]);
    let mut summary = Vec::new();
    for mk in cfg.mask_kinds()? {
        for &n in &cfg.ns {
            if n > STFT4_MAX_POINTS {
                summary.push(format!(
                    "{mk} n={n}: skipped (four-dimensional tables stop at n = {STFT4_MAX_POINTS})"
                ));
                rows.push(json!({"mask": mk.to_string(), "n": n, "skipped": "size guard"}));
                continue;
            }
            let g = make_grid(n).map_err(|e| e.to_string())?;
            let radii = uniform_radii(g.rho_max(), 11);
            let p = mask::<f64>(g, &mk)
                .and_then(|f| {
                    fg_sup_profile(&f, a, &mask(g, &MaskKind::GaussianEnv)?, cfg.r_freq, &radii)
                })
                .map_err(|e| format!("mask {mk}: {e}"))?;
            for (r, v) in p.radii.iter().zip(&p.values) {
                table.row(&[mk.to_string(), n.to_string(), cell(*r), cell(*v)]);
            }
            summary.push(format!(
                "{mk} n={n}: G(0) {:.4e}, G(rho_max) {:.4e}",
                p.first(),
                p.last()
            ));
            rows.push(json!({"mask": mk.to_string(), "n": n, "profile": value(&p)}));
        }
    }
    Ok(Outcome {
        results: json!({"reports": rows}),
        table,
        pass: true,
        summary,
    })
}

pub fn berezin_cmd(cfg: &ExperimentConfig) -> Run {
    let mut rows = Vec::new();
    let mut table = Csv::new(&[
        "mask",
        "window",
        "n",
        "m",
        "k",
        "direct_re",
        "direct_im",
        "conv_re",
        "conv_im",
    ]);
    let mut summary = Vec::new();
    for mk in cfg.mask_kinds()? {
        for w in cfg.window_kinds()? {
            for &n in &cfg.ns {
                let g = make_grid(n).map_err(|e| e.to_string())?;
                let ctx = |e: qha::Error| format!("mask {mk}, window {w}: {e}");
                let f: PhaseFn<f64> = mask(g, &mk).map_err(ctx)?;
                let phi = atom::<f64>(g, &w).map_err(ctx)?;
                let t = loc_op(&f, &phi, &phi).map_err(ctx)?;
                let direct = berezin(&t, &phi).map_err(ctx)?;
                let conv = berezin_conv(&t, &phi).map_err(ctx)?;
                let kernel = stft(&phi, &phi)
                    .map_err(ctx)?
                    .to_phase_fn()
                    .map(|v| C64::new(v.norm_sqr(), 0.0));
                let smoothed = conv_fun_fun(&f, &kernel).map_err(ctx)?;
                let dev_paths = direct.max_abs_diff(&conv);
                let dev_kernel = direct.max_abs_diff(&smoothed);
                let half = (n / 2) as i64;
                let pts = (-half..half).flat_map(|m| (-half..half).map(move |k| (m, k)));
                for ((m, k), (d, c)) in pts.zip(
                    direct
                        .centered_values()
                        .into_iter()
                        .zip(conv.centered_values()),
                ) {
                    table.row(&[
                        mk.to_string(),
                        w.to_string(),
                        n.to_string(),
                        m.to_string(),
                        k.to_string(),
                        cell(d.re),
                        cell(d.im),
                        cell(c.re),
                        cell(c.im),
                    ]);
                }
                summary.push(format!("{mk} / {w} n={n}: path deviation {dev_paths:.3e}, f*|V|^2 deviation {dev_kernel:.3e}"));
                rows.push(json!({
                    "mask": mk.to_string(),
                    "window": w.to_string(),
                    "n": n,
                    "max_deviation_paths": dev_paths,
                    "max_deviation_kernel": dev_kernel,
                    "direct": phase_fn_json(&direct),
                    "convolution": phase_fn_json(&conv),
                }));
            }
        }
    }
    Ok(Outcome {
        results: json!({"reports": rows}),
        table,
        pass: true,
        summary,
    })
}
