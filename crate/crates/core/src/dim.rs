//! Dimension estimates for Gauss–Cantor sets given by a digit alphabet and
//! a list of forbidden words, via collocation of the s-weighted transfer
//! operator on the subshift's Markov coding. The leading eigenvalue gives
//! the pressure P(s); the dimension is the root of P.
//!
//! Everything here is floating-point and the results carry an empirical
//! uncertainty (difference between two discretization orders); outputs are
//! labeled heuristic throughout.

use crate::digits::{word_from_str, Alphabet, Digit, Word};
use crate::interval::{RInterval, Rat};
use num::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DimError {
    #[error("bad subshift file line {line}: {reason}")]
    BadLine { line: usize, reason: String },
    #[error("subshift is empty after pruning")]
    EmptySubshift,
    #[error("state space too large: {0} states of depth {1}")]
    StateExplosion(usize, usize),
    #[error("pressure does not change sign on [0,1]")]
    NoBracket,
    #[error("discretization order must be at least 2, got {0}")]
    SmallOrder(usize),
}

/// Markov coding of a subshift of finite type: states are the admissible
/// words of length `depth`, and an edge (state, digit, state) prepends the
/// digit to the future.
#[derive(Clone, Debug)]
pub struct SubshiftSpec {
    pub alphabet: Alphabet,
    pub forbidden: Vec<Word>,
    pub depth: usize,
    pub states: Vec<Word>,
    /// (from-state, emitted digit, to-state) with the to-state describing
    /// the extended future.
    pub edges: Vec<(usize, usize, Digit)>,
}

const MAX_STATES: usize = 200_000;

fn contains_factor(w: &[Digit], f: &[Digit]) -> bool {
    f.len() <= w.len() && w.windows(f.len()).any(|win| win == f)
}

/// Builds the pruned Markov coding with state depth max(1, longest
/// forbidden word − 1). An over-constrained spec yields an empty state
/// list, not an error.
pub fn build_subshift(alphabet: &Alphabet, forbidden: &[Word]) -> Result<SubshiftSpec, DimError> {
    let depth = forbidden.iter().map(|f| f.len()).max().unwrap_or(2).saturating_sub(1).max(1);
    let k = alphabet.len();
    let count = k.checked_pow(depth as u32).filter(|&c| c <= MAX_STATES);
    let count = count.ok_or(DimError::StateExplosion(k.pow(depth.min(12) as u32), depth))?;

    let digits = alphabet.digits().to_vec();
    let mut states: Vec<Word> = Vec::new();
    for idx in 0..count {
        let mut w = Vec::with_capacity(depth);
        let mut rest = idx;
        for _ in 0..depth {
            w.push(digits[rest % k]);
            rest /= k;
        }
        if forbidden.iter().all(|f| !contains_factor(&w, f)) {
            states.push(w);
        }
    }
    states.sort();

    let mut keep = vec![true; states.len()];
    let edge_list = |keep: &[bool], states: &[Word]| -> Vec<(usize, usize, Digit)> {
        let find = |w: &[Digit]| states.binary_search_by(|s| s.as_slice().cmp(w)).ok();
        let mut edges = Vec::new();
        for (u, su) in states.iter().enumerate() {
            if !keep[u] {
                continue;
            }
            for &d in &digits {
                let mut window = Vec::with_capacity(depth + 1);
                window.push(d);
                window.extend_from_slice(su);
                if forbidden.iter().any(|f| contains_factor(&window, f)) {
                    continue;
                }
                if let Some(v) = find(&window[..depth]) {
                    if keep[v] {
                        edges.push((u, v, d));
                    }
                }
            }
        }
        edges
    };

    // Prune to the recurrent part: drop states missing outgoing or incoming
    // edges until stable.
    loop {
        let edges = edge_list(&keep, &states);
        let mut has_out = vec![false; states.len()];
        let mut has_in = vec![false; states.len()];
        for &(u, v, _) in &edges {
            has_out[u] = true;
            has_in[v] = true;
        }
        let mut changed = false;
        for i in 0..states.len() {
            if keep[i] && (!has_out[i] || !has_in[i]) {
                keep[i] = false;
                changed = true;
            }
        }
        if !changed {
            let kept: Vec<usize> = (0..states.len()).filter(|&i| keep[i]).collect();
            let remap: Vec<Option<usize>> = {
                let mut r = vec![None; states.len()];
                for (new, &old) in kept.iter().enumerate() {
                    r[old] = Some(new);
                }
                r
            };
            let states_out: Vec<Word> = kept.iter().map(|&i| states[i].clone()).collect();
            let edges_out = edges
                .iter()
                .map(|&(u, v, d)| (remap[u].unwrap(), remap[v].unwrap(), d))
                .collect();
            return Ok(SubshiftSpec {
                alphabet: alphabet.clone(),
                forbidden: forbidden.to_vec(),
                depth,
                states: states_out,
                edges: edges_out,
            });
        }
    }
}

/// Parses a subshift file: `alphabet 123` and `forbid w1 w2 …` lines, `#`
/// comments.
pub fn parse_subshift(text: &str) -> Result<(Alphabet, Vec<Word>), DimError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut forbidden: Vec<Word> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| DimError::BadLine { line: i + 1, reason: reason.to_string() };
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("alphabet") => {
                let word = parts.next().ok_or_else(|| bad("missing digits"))?;
                let digits = word_from_str(word).ok_or_else(|| bad("bad digits"))?;
                alphabet = Some(Alphabet::new(digits).map_err(|_| bad("bad alphabet"))?);
            }
            Some("forbid") => {
                for w in parts {
                    forbidden.push(word_from_str(w).ok_or_else(|| bad("bad word"))?);
                }
            }
            _ => return Err(bad("unknown directive")),
        }
    }
    let alphabet = alphabet.ok_or_else(|| DimError::BadLine {
        line: 0,
        reason: "missing alphabet".to_string(),
    })?;
    Ok((alphabet, forbidden))
}

/// Cylinder interval of the finite word w: the values [0; w, ρ] for ρ ≥ 1.
fn cylinder(w: &[Digit]) -> (f64, f64) {
    let (mut p0, mut q0, mut p1, mut q1) = (1.0f64, 0.0f64, 0.0f64, 1.0f64);
    for &d in w {
        let (p2, q2) = (d as f64 * p1 + p0, d as f64 * q1 + q0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    let a = p1 / q1;
    let b = (p1 + p0) / (q1 + q0);
    (a.min(b), a.max(b))
}

struct Collocation {
    /// Node positions per state, flattened: state u owns nodes
    /// [u·n, (u+1)·n).
    nodes: Vec<f64>,
    /// Barycentric weights shared by all states (Chebyshev extrema).
    bary: Vec<f64>,
    /// Per-state interval for mapping.
    n: usize,
}

fn collocation(spec: &SubshiftSpec, order: usize) -> Collocation {
    let n = order + 1;
    let cheb: Vec<f64> = (0..n)
        .map(|k| (std::f64::consts::PI * k as f64 / order as f64).cos())
        .collect();
    let mut bary = vec![0.0; n];
    for (k, b) in bary.iter_mut().enumerate() {
        let mut w = if k % 2 == 0 { 1.0 } else { -1.0 };
        if k == 0 || k == order {
            w *= 0.5;
        }
        *b = w;
    }
    let mut nodes = Vec::with_capacity(spec.states.len() * n);
    for s in &spec.states {
        let (lo, hi) = cylinder(s);
        for &t in &cheb {
            nodes.push(0.5 * (lo + hi) + 0.5 * (hi - lo) * t);
        }
    }
    Collocation { nodes, bary, n }
}

/// Row of barycentric interpolation coefficients for evaluating a state's
/// polynomial at y.
fn interp_row(col: &Collocation, state: usize, y: f64, out: &mut [f64]) {
    let base = state * col.n;
    let mut denom = 0.0;
    for k in 0..col.n {
        let dx = y - col.nodes[base + k];
        if dx.abs() < 1e-300 {
            out.iter_mut().for_each(|o| *o = 0.0);
            out[k] = 1.0;
            return;
        }
        out[k] = col.bary[k] / dx;
        denom += out[k];
    }
    for o in out.iter_mut() {
        *o /= denom;
    }
}

/// Dense discretization of the s-weighted transfer operator.
fn transfer_matrix(spec: &SubshiftSpec, col: &Collocation, s: f64) -> Vec<f64> {
    let n = col.n;
    let dim = spec.states.len() * n;
    let mut m = vec![0.0; dim * dim];
    let mut row = vec![0.0; n];
    for &(u, v, d) in &spec.edges {
        for j in 0..n {
            let x = col.nodes[u * n + j];
            let y = 1.0 / (d as f64 + x);
            let weight = y.powf(2.0 * s);
            interp_row(col, v, y, &mut row);
            let r = (u * n + j) * dim;
            for k in 0..n {
                m[r + v * n + k] += weight * row[k];
            }
        }
    }
    m
}

fn leading_eigenvalue(m: &[f64], dim: usize) -> f64 {
    let mut v = vec![1.0f64; dim];
    let mut lam = 0.0;
    for _ in 0..100_000 {
        let mut w = vec![0.0; dim];
        for i in 0..dim {
            let row = &m[i * dim..(i + 1) * dim];
            w[i] = row.iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        let num: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        let den: f64 = v.iter().map(|a| a * a).sum();
        let next = num / den;
        let scale = w.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        v = w.iter().map(|a| a / scale).collect();
        if (next - lam).abs() <= 1e-14 * next.abs().max(1.0) {
            return next;
        }
        lam = next;
    }
    lam
}

fn rat_from_f64(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite float")
}

fn pressure_value(spec: &SubshiftSpec, s: f64, order: usize) -> f64 {
    let col = collocation(spec, order);
    let dim = spec.states.len() * col.n;
    let m = transfer_matrix(spec, &col, s);
    leading_eigenvalue(&m, dim).ln()
}

/// Heuristic enclosure of the pressure P(s) at the given collocation order;
/// `None` for an empty subshift (P ≡ −∞). The width reflects the change
/// from the previous order, not a rigorous bound.
pub fn pressure(spec: &SubshiftSpec, s: f64, order: usize) -> Result<Option<RInterval>, DimError> {
    if order < 2 {
        return Err(DimError::SmallOrder(order));
    }
    if spec.states.is_empty() {
        return Ok(None);
    }
    let fine = pressure_value(spec, s, order);
    let coarse = pressure_value(spec, s, (order - 1).max(2));
    let pad = (fine - coarse).abs() + 1e-13;
    Ok(Some(RInterval::new(
        rat_from_f64(fine - pad),
        rat_from_f64(fine + pad),
    )))
}

/// A dimension estimate with its empirical uncertainty. Always heuristic:
/// no rigorous error bound is claimed.
#[derive(Clone, Debug)]
pub struct DimEstimate {
    pub value: f64,
    pub uncertainty: f64,
    pub order: usize,
    pub heuristic: bool,
}

fn root_at_order(spec: &SubshiftSpec, order: usize, tol: f64) -> Result<f64, DimError> {
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let p_lo = pressure_value(spec, lo, order);
    let p_hi = pressure_value(spec, hi, order);
    if !(p_lo > 0.0 && p_hi < 0.0) {
        return Err(DimError::NoBracket);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pressure_value(spec, mid, order) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of the pressure by bisection at the given order; the uncertainty is
/// the difference against the half-order estimate.
pub fn dimension(spec: &SubshiftSpec, order: usize, tol: f64) -> Result<DimEstimate, DimError> {
    if order < 2 {
        return Err(DimError::SmallOrder(order));
    }
    if spec.states.is_empty() {
        return Err(DimError::EmptySubshift);
    }
    let fine = root_at_order(spec, order, tol)?;
    let coarse = root_at_order(spec, (order / 2).max(2), tol)?;
    Ok(DimEstimate {
        value: fine,
        uncertainty: (fine - coarse).abs().max(tol),
        order,
        heuristic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(digits: &[Digit]) -> Alphabet {
        Alphabet::new(digits.to_vec()).unwrap()
    }

    #[test]
    fn full_shift_coding() {
        let s = build_subshift(&alpha(&[1, 2]), &[]).unwrap();
        assert_eq!(s.depth, 1);
        assert_eq!(s.states.len(), 2);
        assert_eq!(s.edges.len(), 4);
    }

    #[test]
    fn no_13_31_coding() {
        let s = build_subshift(&alpha(&[1, 2, 3]), &[vec![1, 3], vec![3, 1]]).unwrap();
        assert_eq!(s.depth, 1);
        assert_eq!(s.states.len(), 3);
        assert_eq!(s.edges.len(), 7);
    }

    #[test]
    fn forbidden_triples_coding() {
        let s = build_subshift(&alpha(&[1, 2]), &[vec![1, 2, 1], vec![2, 1, 2]]).unwrap();
        assert_eq!(s.depth, 2);
        assert_eq!(s.states.len(), 4);
        // Full length-2 graph has 8 edges; the windows 121 and 212 remove
        // one each.
        assert_eq!(s.edges.len(), 6);
    }

    #[test]
    fn over_constrained_spec_is_empty_not_a_crash() {
        let s = build_subshift(&alpha(&[1, 2]), &[vec![1], vec![2, 2]]).unwrap();
        assert!(s.states.is_empty());
        assert!(pressure(&s, 0.5, 8).unwrap().is_none());
        assert!(matches!(dimension(&s, 8, 1e-9), Err(DimError::EmptySubshift)));
    }

    #[test]
    fn pressure_at_zero_is_log_branch_count() {
        for (digits, expect) in [(vec![1u8, 2], 2.0f64), (vec![1, 2, 3], 3.0)] {
            let s = build_subshift(&alpha(&digits), &[]).unwrap();
            let p = pressure(&s, 0.0, 8).unwrap().unwrap();
            let mid = p.to_f64();
            assert!((mid - expect.ln()).abs() < 1e-10, "{digits:?}: {mid}");
        }
    }

    #[test]
    fn dimension_matches_reference_constant() {
        let s = build_subshift(&alpha(&[1, 2]), &[]).unwrap();
        let est = dimension(&s, 20, 1e-13).unwrap();
        assert!(
            (est.value - 0.5312805062772051).abs() < 5e-12,
            "got {:.16}",
            est.value
        );
        assert!(est.heuristic);
    }

    #[test]
    fn pressure_self_consistent_at_root() {
        let s = build_subshift(&alpha(&[1, 2]), &[]).unwrap();
        let p = pressure_value(&s, 0.5312805062772051, 12);
        assert!(p.abs() < 1e-8, "pressure at root: {p}");
    }

    #[test]
    fn subshift_file_round_trip() {
        let (a, f) = parse_subshift("# demo\nalphabet 123\nforbid 13 31\nforbid 222\n").unwrap();
        assert_eq!(a.digits(), &[1, 2, 3]);
        assert_eq!(f, vec![vec![1, 3], vec![3, 1], vec![2, 2, 2]]);
        assert!(parse_subshift("forbid 13\n").is_err());
        assert!(parse_subshift("alphabet 1x\n").is_err());
        assert!(parse_subshift("whatever\n").is_err());
    }
}
