//! Tabulated wavefunctions of variational eigenstates.

use std::io::Write;

use spiked_core::basis::eval_basis_all;
use spiked_core::{
    outer_boundary, potential, solve, Channel, ExpandedState, OscillatorParams, SolveRequest,
};

use crate::CliError;

pub const DEFAULT_POINTS: usize = 1000;

/// Columns sampled on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveTable {
    pub x: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl WaveTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["x".to_string()];
        header.extend(self.columns.iter().map(|(name, _)| name.clone()));
        w.write_record(&header)?;
        for (i, x) in self.x.iter().enumerate() {
            let mut record = vec![x.to_string()];
            record.extend(self.columns.iter().map(|(_, v)| v[i].to_string()));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        let mut map = serde_json::Map::new();
        map.insert("x".into(), serde_json::to_value(&self.x)?);
        for (name, values) in &self.columns {
            map.insert(name.clone(), serde_json::to_value(values)?);
        }
        serde_json::to_writer_pretty(&mut out, &map)?;
        writeln!(out)?;
        Ok(())
    }
}

/// Variational eigenstate sampled on `(0, x_max]`.
pub struct SampledState {
    pub energy: f64,
    pub x_max: f64,
    pub state: ExpandedState,
}

pub fn sampled_state(
    params: &OscillatorParams,
    dim: usize,
    state: usize,
) -> Result<SampledState, CliError> {
    let result = solve(&SolveRequest::new(*params, dim, state).with_vectors())?;
    let g = params.basis(0.0)?;
    let expanded = ExpandedState::from_spectrum(&result.spectrum, state, g)?;
    Ok(SampledState {
        energy: result.energy,
        x_max: outer_boundary(params, result.energy)?,
        state: expanded,
    })
}

/// `points` uniform abscissae `x_max·i/points`, `i = 1..=points`.
pub fn uniform_grid(x_max: f64, points: usize) -> Vec<f64> {
    (1..=points)
        .map(|i| x_max * i as f64 / points as f64)
        .collect()
}

fn evaluate(state: &ExpandedState, grid: &[f64]) -> Result<Vec<f64>, CliError> {
    grid.iter()
        .map(|&x| {
            let psi = eval_basis_all(&state.g, state.coefficients.len(), x)?;
            Ok(state
                .coefficients
                .iter()
                .zip(&psi)
                .map(|(a, p)| a * p)
                .sum())
        })
        .collect()
}

/// Potential `V(x)` and eigenstate `state` of the `dim`-term expansion.
pub fn wavefunction(
    params: &OscillatorParams,
    dim: usize,
    state: usize,
    points: usize,
) -> Result<WaveTable, CliError> {
    let s = sampled_state(params, dim, state)?;
    let x = uniform_grid(s.x_max, points);
    let v = x
        .iter()
        .map(|&xi| potential(params, xi))
        .collect::<Result<Vec<_>, _>>()?;
    let psi = evaluate(&s.state, &x)?;
    Ok(WaveTable {
        x,
        columns: vec![("V".into(), v), (format!("psi{state}"), psi)],
    })
}

/// The `n = 2, ℓ = 1` states of `x² + 10/x^{2.1}` for `N = 2..10` at `D = 30`,
/// with the bare potential, on one grid.
pub fn figure(points: usize) -> Result<WaveTable, CliError> {
    let mut states = Vec::new();
    for dim in 2..=10u32 {
        let p = OscillatorParams::new(0.0, 1.0, 10.0, 2.1, Channel::Dimensional { dim, ell: 1 })?;
        states.push((dim, sampled_state(&p, 30, 2)?));
    }
    let x_max = states.iter().map(|(_, s)| s.x_max).fold(0.0, f64::max);
    let x = uniform_grid(x_max, points);
    let bare = OscillatorParams::new(0.0, 1.0, 10.0, 2.1, Channel::Radial)?;
    let v = x
        .iter()
        .map(|&xi| potential(&bare, xi))
        .collect::<Result<Vec<_>, _>>()?;
    let mut columns = vec![("V".to_string(), v)];
    for (dim, s) in &states {
        columns.push((format!("N{dim}"), evaluate(&s.state, &x)?));
    }
    Ok(WaveTable { x, columns })
}

/// Nodes between sign runs whose peak exceeds `rel_floor` times the largest
/// `|ψ|`; low-amplitude ringing from a truncated expansion is ignored.
pub fn count_nodes(values: &[f64], rel_floor: f64) -> usize {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = rel_floor * peak;
    let mut signs = Vec::new();
    let mut run_sign = 0.0;
    let mut run_peak = 0.0f64;
    for &v in values.iter().filter(|v| **v != 0.0) {
        if v.signum() != run_sign {
            if run_peak > floor {
                signs.push(run_sign);
            }
            run_sign = v.signum();
            run_peak = 0.0;
        }
        run_peak = run_peak.max(v.abs());
    }
    if run_peak > floor {
        signs.push(run_sign);
    }
    signs.dedup();
    signs.len().saturating_sub(1)
}
