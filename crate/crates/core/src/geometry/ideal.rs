//! Box-union ideals: `∪_g ∏_i [-g_i, g_i]` over a finite generator set in the
//! closed positive orthant.

use crate::error::{check_lambda, Error, Result};
use serde::Serialize;
use std::cmp::Ordering;

/// Membership tolerance for [`BoxIdeal::contains`].
pub const CONTAINS_TOL: f64 = 1e-12;

/// Generator cap after normalisation.
pub fn generator_cap(dim: usize) -> usize {
    if dim <= 3 {
        256
    } else {
        64
    }
}

/// An ideal represented by an antichain of generators.
///
/// The empty generator list is the empty set; a single all-zero generator is
/// the origin-only body.
#[derive(Clone, Debug, Serialize)]
pub struct BoxIdeal {
    dim: usize,
    generators: Vec<Vec<f64>>,
    /// Lebesgue volume discarded by generator-cap pruning (inner approximation).
    #[serde(skip)]
    pruned_volume: f64,
}

impl PartialEq for BoxIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl BoxIdeal {
    pub fn new(dim: usize, generators: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGenerator("dimension must be positive".into()));
        }
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if g.iter().any(|&c| !(c >= 0.0) || !c.is_finite()) {
                return Err(Error::InvalidGenerator(format!(
                    "coordinates must be finite and >= 0, got {g:?}"
                )));
            }
        }
        let mut ideal = Self {
            dim,
            generators: normalize_antichain(generators),
            pruned_volume: 0.0,
        };
        ideal.enforce_cap();
        Ok(ideal)
    }

    /// The symmetric box `∏ [-g_i, g_i]`.
    pub fn from_box(g: Vec<f64>) -> Result<Self> {
        Self::new(g.len(), vec![g])
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            generators: Vec::new(),
            pruned_volume: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn pruned_volume(&self) -> f64 {
        self.pruned_volume
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_origin_only(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].iter().all(|&c| c == 0.0)
    }

    /// Every box has a zero side, so the set is Lebesgue-null.
    pub fn is_null(&self) -> bool {
        self.generators.iter().all(|g| g.contains(&0.0))
    }

    /// Coordinatewise dilation by `t >= 0`.
    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::OutOfRange { name: "t", value: t });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&c| c * t).collect())
            .collect();
        let mut out = Self::new(self.dim, gens)?;
        out.pruned_volume = self.pruned_volume * t.powi(self.dim as i32);
        Ok(out)
    }

    /// `x ∈ A` iff some generator dominates `|x|` coordinatewise.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim
            && self
                .generators
                .iter()
                .any(|g| g.iter().zip(x).all(|(&gi, &xi)| xi.abs() <= gi + CONTAINS_TOL))
    }

    /// Largest coordinate per axis (half side of the bounding box).
    pub fn extent(&self) -> Vec<f64> {
        let mut e = vec![0.0; self.dim];
        for g in &self.generators {
            for (ei, &gi) in e.iter_mut().zip(g) {
                *ei = f64::max(*ei, gi);
            }
        }
        e
    }

    /// Lebesgue volume of the union.
    pub fn lebesgue_volume(&self) -> f64 {
        union_measure(&self.generators, &|_, lo, hi| 2.0 * (hi - lo))
    }

    /// Greedy pruning down to [`generator_cap`]: the generator with the
    /// smallest box volume is dropped first and its exclusive volume (the part
    /// not covered by the remaining boxes) is added to `pruned_volume`.
    fn enforce_cap(&mut self) {
        let cap = generator_cap(self.dim);
        while self.generators.len() > cap {
            let (idx, _) = self
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| (i, g.iter().product::<f64>()))
                .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
                .unwrap();
            let g = self.generators.remove(idx);
            let clipped: Vec<Vec<f64>> = self
                .generators
                .iter()
                .map(|h| h.iter().zip(&g).map(|(&a, &b)| a.min(b)).collect())
                .collect();
            let covered = union_measure(&normalize_antichain(clipped), &|_, lo, hi| 2.0 * (hi - lo));
            let own: f64 = g.iter().map(|&c| 2.0 * c).product();
            self.pruned_volume += (own - covered).max(0.0);
        }
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Removes duplicates and dominated generators; output sorted lexicographically.
pub fn normalize_antichain(mut gens: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    gens.sort_by(|a, b| lex_cmp(a, b));
    gens.dedup();
    let dominated = |g: &Vec<f64>, h: &Vec<f64>| g != h && g.iter().zip(h).all(|(a, b)| a <= b);
    let keep: Vec<bool> = gens.iter().map(|g| !gens.iter().any(|h| dominated(g, h))).collect();
    gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

fn check_dims(a: &BoxIdeal, b: &BoxIdeal) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(())
}

/// `λA + (1-λ)B`: the Minkowski sum of two symmetric boxes is the box of the
/// summed generators and the sum distributes over unions, so pairwise
/// combination of generators is exact.
pub fn minkowski_combine_ideals(a: &BoxIdeal, b: &BoxIdeal, lambda: f64) -> Result<BoxIdeal> {
    check_dims(a, b)?;
    check_lambda(lambda)?;
    pairwise(a, b, |x, y| lambda * x + (1.0 - lambda) * y)
}

/// `A ⊙^I_λ B`: union of coordinatewise geometric-mean boxes.
///
/// The union over all point pairs is attained on generator pairs because
/// `(s, t) ↦ s^λ t^{1-λ}` is non-decreasing in each argument.
pub fn geometric_mean_ideal(a: &BoxIdeal, b: &BoxIdeal, lambda: f64) -> Result<BoxIdeal> {
    check_dims(a, b)?;
    check_lambda(lambda)?;
    pairwise(a, b, |x, y| x.powf(lambda) * y.powf(1.0 - lambda))
}

fn pairwise(a: &BoxIdeal, b: &BoxIdeal, f: impl Fn(f64, f64) -> f64) -> Result<BoxIdeal> {
    let mut gens = Vec::with_capacity(a.generators.len() * b.generators.len());
    for g in &a.generators {
        for h in &b.generators {
            gens.push(g.iter().zip(h).map(|(&x, &y)| f(x, y)).collect());
        }
    }
    let mut out = BoxIdeal::new(a.dim, gens)?;
    out.pruned_volume += a.pruned_volume.max(b.pruned_volume);
    Ok(out)
}

/// The section `A ∩ {x_1 = t}` as an ideal of dimension `n - 1`.
pub fn slice_ideal(a: &BoxIdeal, t: f64) -> Result<BoxIdeal> {
    if a.dim < 2 {
        return Err(Error::OutOfRange {
            name: "dim",
            value: a.dim as f64,
        });
    }
    if !(t >= 0.0) {
        return Err(Error::OutOfRange { name: "t", value: t });
    }
    let gens: Vec<Vec<f64>> = a
        .generators
        .iter()
        .filter(|g| g[0] >= t)
        .map(|g| g[1..].to_vec())
        .collect();
    if gens.is_empty() {
        return Ok(BoxIdeal::empty(a.dim - 1));
    }
    BoxIdeal::new(a.dim - 1, gens)
}

/// One disjoint cell of the sweep decomposition: the product over axes of the
/// symmetric shells `{lo_i < |x_i| <= hi_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShellCell {
    pub shells: Vec<(f64, f64)>,
}

/// Measure of `∪_g ∏[-g_i, g_i]` for a product measure, where
/// `shell(axis, lo, hi)` returns the measure of `{lo < |x| <= hi}` on that axis.
///
/// The union is swept along the first axis: between consecutive distinct
/// first coordinates the section is constant, so the set splits into disjoint
/// shell × section pieces. The result depends only on the generator set, not
/// on its order.
pub fn union_measure(gens: &[Vec<f64>], shell: &dyn Fn(usize, f64, f64) -> f64) -> f64 {
    let refs: Vec<&[f64]> = gens.iter().map(|g| g.as_slice()).collect();
    sweep(&refs, 0, shell)
}

fn sweep(gens: &[&[f64]], axis: usize, shell: &dyn Fn(usize, f64, f64) -> f64) -> f64 {
    if gens.is_empty() {
        return 0.0;
    }
    if gens[0].len() == 1 {
        let top = gens.iter().map(|g| g[0]).fold(0.0, f64::max);
        return shell(axis, 0.0, top);
    }
    let mut levels: Vec<f64> = gens.iter().map(|g| g[0]).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut total = 0.0;
    let mut prev = 0.0;
    for &c in &levels {
        if c > prev {
            let rest: Vec<&[f64]> = gens.iter().filter(|g| g[0] >= c).map(|g| &g[1..]).collect();
            let rest = prune_refs(rest);
            let w = shell(axis, prev, c);
            if w != 0.0 {
                total += w * sweep(&rest, axis + 1, shell);
            }
        }
        prev = c;
    }
    total
}

/// Drops dominated rows and sorts, so that recursion results do not depend on
/// input order.
fn prune_refs(mut rows: Vec<&[f64]>) -> Vec<&[f64]> {
    rows.sort_by(|a, b| lex_cmp(a, b));
    rows.dedup();
    let keep: Vec<bool> = rows
        .iter()
        .map(|g| {
            !rows
                .iter()
                .any(|h| g != h && g.iter().zip(h.iter()).all(|(a, b)| a <= b))
        })
        .collect();
    rows.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

/// The disjoint cells behind [`union_measure`].
pub fn decompose_disjoint(a: &BoxIdeal) -> Vec<ShellCell> {
    let refs: Vec<&[f64]> = a.generators.iter().map(|g| g.as_slice()).collect();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(a.dim);
    cells(&refs, &mut prefix, &mut out);
    out
}

fn cells(gens: &[&[f64]], prefix: &mut Vec<(f64, f64)>, out: &mut Vec<ShellCell>) {
    if gens.is_empty() {
        return;
    }
    if gens[0].len() == 1 {
        let top = gens.iter().map(|g| g[0]).fold(0.0, f64::max);
        if top > 0.0 {
            let mut shells = prefix.clone();
            shells.push((0.0, top));
            out.push(ShellCell { shells });
        }
        return;
    }
    let mut levels: Vec<f64> = gens.iter().map(|g| g[0]).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut prev = 0.0;
    for &c in &levels {
        if c > prev {
            let rest: Vec<&[f64]> = gens.iter().filter(|g| g[0] >= c).map(|g| &g[1..]).collect();
            prefix.push((prev, c));
            cells(&prune_refs(rest), prefix, out);
            prefix.pop();
        }
        prev = c;
    }
}
