//! Total-degree homotopy tracking for the squared-up systems in this module.
//!
//! Projective variable groups are cut down to affine charts by random linear
//! patches drawn from the system seed, so the tracked system is square:
//! equations plus one patch row per projective group.  The start system puts
//! `z_v^{d_i} - 1` on one free variable per equation and reuses the same patch
//! rows, which makes every start solution a product of roots of unity followed
//! by one linear solve per group.  Paths follow `gamma*t*G + (1-t)*F` from
//! `t = 1` to `t = 0` with a Runge-Kutta predictor and a Newton corrector.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::field::{ComplexF, Scalar};
use crate::poly::{Poly, Ring};

use super::{PolySystem, VarGroup};

/// Predictor used between Newton corrections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predictor {
    Euler,
    RungeKutta4,
}

#[derive(Clone, Debug)]
pub struct TrackOptions {
    pub predictor: Predictor,
    pub init_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Corrector tolerance away from the end of the path.
    pub newton_tol: f64,
    /// Tighter corrector tolerance once `t < 0.01`.
    pub end_newton_tol: f64,
    /// Endpoint polish target on the patched target system.
    pub polish_tol: f64,
    /// Residual below which an endpoint counts as converged.
    pub residual_tol: f64,
    /// Jacobian condition number above which an endpoint is flagged singular.
    pub cond_threshold: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            predictor: Predictor::RungeKutta4,
            init_step: 0.1,
            min_step: 1e-14,
            max_step: 0.1,
            newton_tol: 1e-7,
            end_newton_tol: 1e-9,
            polish_tol: 1e-12,
            residual_tol: 1e-8,
            cond_threshold: 1e12,
        }
    }
}

/// One homotopy path endpoint, reported in the patched affine chart.
#[derive(Clone, Debug)]
pub struct TrackedSolution {
    pub point: Vec<Complex64>,
    /// Max-norm of the patched target system at the endpoint.
    pub residual: f64,
    /// Step size in force when the path ended.
    pub step_size: f64,
    pub converged: bool,
    /// Endpoint Jacobian condition exceeds the threshold.
    pub singular: bool,
    pub path_index: usize,
}

/// Sparse flat form of a polynomial: summands `c * prod z_v^e`.
struct CompiledPoly {
    terms: Vec<(Complex64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    fn from_poly(p: &Poly<ComplexF>) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let powers: Vec<(usize, u32)> =
                    e.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(v, &x)| (v, x)).collect();
                (c.0, powers)
            })
            .collect();
        CompiledPoly { terms }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, powers) in &self.terms {
            let mut term = *c;
            for &(v, e) in powers {
                term *= z[v].powu(e);
            }
            acc += term;
        }
        acc
    }
}

fn compile_with_jacobian(polys: &[Poly<ComplexF>], nvars: usize) -> (Vec<CompiledPoly>, Vec<Vec<CompiledPoly>>) {
    let compiled = polys.iter().map(CompiledPoly::from_poly).collect();
    let jac = polys
        .iter()
        .map(|p| (0..nvars).map(|v| CompiledPoly::from_poly(&p.partial(v))).collect())
        .collect();
    (compiled, jac)
}

fn max_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Pseudoinverse solve via SVD, for singular or non-square Jacobians.
fn pinv_solve(j: &DMatrix<Complex64>, r: &DVector<Complex64>) -> Option<DVector<Complex64>> {
    let svd = j.clone().svd(true, true);
    svd.solve(r, 1e-13).ok()
}

struct Homotopy {
    nvars: usize,
    neq: usize,
    target: Vec<CompiledPoly>,
    target_jac: Vec<Vec<CompiledPoly>>,
    start: Vec<CompiledPoly>,
    start_jac: Vec<Vec<CompiledPoly>>,
    /// Coefficient rows of the affine patches, one per projective group.
    patches: Vec<Vec<Complex64>>,
    gamma: Complex64,
    degrees: Vec<u32>,
    /// Variable carrying `z^{d_i} - 1` in the start system, per equation.
    powered: Vec<usize>,
    /// Last variable of each projective group, solved from its patch.
    reserved: Vec<usize>,
}

impl Homotopy {
    fn new(sys: &PolySystem) -> Self {
        let nvars = sys.nvars();
        let projective: Vec<&VarGroup> = sys.groups.iter().filter(|g| g.is_projective()).collect();
        assert_eq!(
            sys.equations.len() + projective.len(),
            nvars,
            "system must be square after patching"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(sys.seed ^ 0x8f3a_29b1_c4d7_55e6);
        let gamma = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let mut patches = Vec::new();
        let mut reserved = Vec::new();
        for g in &projective {
            let mut row = vec![Complex64::new(0.0, 0.0); nvars];
            for v in g.start()..g.start() + g.len() {
                row[v] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            patches.push(row);
            reserved.push(g.start() + g.len() - 1);
        }
        let powered: Vec<usize> = (0..nvars).filter(|v| !reserved.contains(v)).collect();
        let degrees: Vec<u32> = sys
            .equations
            .iter()
            .map(|eq| eq.terms().map(|(e, _)| e.0.iter().sum()).max().unwrap_or(1).max(1))
            .collect();
        let start_polys: Vec<Poly<ComplexF>> = degrees
            .iter()
            .zip(&powered)
            .map(|(&d, &v)| {
                let z = Poly::<ComplexF>::variable(nvars, Ring::Primal, v);
                z.pow(d).sub(&Poly::constant(nvars, Ring::Primal, ComplexF::one())).unwrap()
            })
            .collect();
        let (target, target_jac) = compile_with_jacobian(&sys.equations, nvars);
        let (start, start_jac) = compile_with_jacobian(&start_polys, nvars);
        Homotopy {
            nvars,
            neq: sys.equations.len(),
            target,
            target_jac,
            start,
            start_jac,
            patches,
            gamma,
            degrees,
            powered,
            reserved,
        }
    }

    fn total_paths(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize).product()
    }

    /// Start point of path `index`: mixed-radix roots of unity on the powered
    /// variables, then each reserved variable from its patch row.
    fn start_point(&self, index: usize) -> Vec<Complex64> {
        let mut z = vec![Complex64::new(0.0, 0.0); self.nvars];
        let mut m = index;
        for (i, &v) in self.powered.iter().enumerate() {
            let d = self.degrees[i] as usize;
            let digit = m % d;
            m /= d;
            z[v] = Complex64::from_polar(1.0, std::f64::consts::TAU * digit as f64 / d as f64);
        }
        for (p, &rv) in self.patches.iter().zip(&self.reserved) {
            let mut acc = Complex64::new(1.0, 0.0);
            for (v, &c) in p.iter().enumerate() {
                if v != rv {
                    acc -= c * z[v];
                }
            }
            z[rv] = acc / p[rv];
        }
        z
    }

    fn h(&self, z: &[Complex64], t: f64) -> DVector<Complex64> {
        let mut out = DVector::zeros(self.nvars);
        let gt = self.gamma * t;
        let s = Complex64::new(1.0 - t, 0.0);
        for i in 0..self.neq {
            out[i] = gt * self.start[i].eval(z) + s * self.target[i].eval(z);
        }
        for (k, p) in self.patches.iter().enumerate() {
            let mut acc = -Complex64::new(1.0, 0.0);
            for (v, &c) in p.iter().enumerate() {
                acc += c * z[v];
            }
            out[self.neq + k] = acc;
        }
        out
    }

    fn hz(&self, z: &[Complex64], t: f64) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.nvars, self.nvars);
        let gt = self.gamma * t;
        let s = Complex64::new(1.0 - t, 0.0);
        for i in 0..self.neq {
            for v in 0..self.nvars {
                out[(i, v)] = gt * self.start_jac[i][v].eval(z) + s * self.target_jac[i][v].eval(z);
            }
        }
        for (k, p) in self.patches.iter().enumerate() {
            for (v, &c) in p.iter().enumerate() {
                out[(self.neq + k, v)] = c;
            }
        }
        out
    }

    /// `dz/dt = -Hz^{-1} Ht`, with `Ht = gamma*G - F` on equation rows.
    fn velocity(&self, z: &[Complex64], t: f64) -> Option<DVector<Complex64>> {
        let mut ht = DVector::zeros(self.nvars);
        for i in 0..self.neq {
            ht[i] = self.gamma * self.start[i].eval(z) - self.target[i].eval(z);
        }
        let neg = -ht;
        self.hz(z, t).lu().solve(&neg)
    }

    /// Patched target system (the `t = 0` slice).
    fn target_full(&self, z: &[Complex64]) -> DVector<Complex64> {
        self.h(z, 0.0)
    }

    fn target_jac_full(&self, z: &[Complex64]) -> DMatrix<Complex64> {
        self.hz(z, 0.0)
    }
}

fn add_scaled(z: &[Complex64], v: &DVector<Complex64>, s: Complex64) -> Vec<Complex64> {
    z.iter().zip(v.iter()).map(|(a, b)| a + s * b).collect()
}

/// Newton correction toward `H(., t) = 0`; returns the corrected point and the
/// number of iterations used, or `None` if the tolerance was not reached.
fn correct(h: &Homotopy, z: &[Complex64], t: f64, tol: f64) -> Option<(Vec<Complex64>, usize)> {
    let mut z = z.to_vec();
    for it in 0..=4 {
        let r = h.h(&z, t);
        if max_norm(&r) < tol {
            return Some((z, it));
        }
        if it == 4 {
            break;
        }
        let neg = -r;
        let dz = h.hz(&z, t).lu().solve(&neg)?;
        for (zi, di) in z.iter_mut().zip(dz.iter()) {
            *zi += di;
        }
    }
    None
}

fn track_path(h: &Homotopy, opts: &TrackOptions, index: usize) -> TrackedSolution {
    let mut z = h.start_point(index);
    let mut t = 1.0f64;
    let mut step = opts.init_step;
    let mut easy = 0u32;
    let mut failed = false;
    while t > 0.0 {
        let hstep = step.min(t);
        let dt = Complex64::new(-hstep, 0.0);
        let predicted = match opts.predictor {
            Predictor::Euler => h.velocity(&z, t).map(|k1| add_scaled(&z, &k1, dt)),
            Predictor::RungeKutta4 => (|| {
                let k1 = h.velocity(&z, t)?;
                let half = dt * 0.5;
                let k2 = h.velocity(&add_scaled(&z, &k1, half), t - hstep / 2.0)?;
                let k3 = h.velocity(&add_scaled(&z, &k2, half), t - hstep / 2.0)?;
                let k4 = h.velocity(&add_scaled(&z, &k3, dt), t - hstep)?;
                let two = Complex64::new(2.0, 0.0);
                let combo = k1 + k2 * two + k3 * two + k4;
                Some(add_scaled(&z, &combo, dt / 6.0))
            })(),
        };
        let t2 = t - hstep;
        let tol = if t2 < 0.01 { opts.end_newton_tol } else { opts.newton_tol };
        let corrected = predicted.and_then(|p| correct(h, &p, t2, tol));
        match corrected {
            Some((znew, iters)) => {
                z = znew;
                t = t2;
                if iters <= 2 {
                    easy += 1;
                    if easy >= 5 {
                        step = (step * 2.0).min(opts.max_step);
                        easy = 0;
                    }
                } else {
                    easy = 0;
                }
            }
            None => {
                step *= 0.5;
                easy = 0;
                if step < opts.min_step {
                    failed = true;
                    break;
                }
            }
        }
    }

    // endpoint polish on the patched target system
    let mut best = z.clone();
    let mut best_res = max_norm(&h.target_full(&best));
    if !failed {
        let mut cur = z;
        for _ in 0..30 {
            if best_res < opts.polish_tol {
                break;
            }
            let r = h.target_full(&cur);
            let neg = -r;
            let j = h.target_jac_full(&cur);
            let dz = match j.clone().lu().solve(&neg) {
                Some(d) => d,
                None => match pinv_solve(&j, &neg) {
                    Some(d) => d,
                    None => break,
                },
            };
            for (zi, di) in cur.iter_mut().zip(dz.iter()) {
                *zi += di;
            }
            let res = max_norm(&h.target_full(&cur));
            if res < best_res {
                best = cur.clone();
                best_res = res;
            } else {
                break;
            }
        }
    }

    let jac = h.target_jac_full(&best);
    let sv = jac.svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let singular = smin <= 0.0 || smax / smin > opts.cond_threshold;
    TrackedSolution {
        point: best,
        residual: best_res,
        step_size: step,
        converged: !failed && best_res < opts.residual_tol,
        singular,
        path_index: index,
    }
}

/// Track every total-degree start path of a squared system.  Results are
/// deterministic for a fixed system seed and come back ordered by path index.
pub fn track_system(sys: &PolySystem, opts: &TrackOptions) -> Vec<TrackedSolution> {
    let h = Homotopy::new(sys);
    let total = h.total_paths();
    let mut out: Vec<TrackedSolution> =
        (0..total).into_par_iter().map(|i| track_path(&h, opts, i)).collect();
    out.sort_by_key(|s| s.path_index);
    out
}

/// Max-norm of the original unsquared, unpatched equations at a point.  This
/// separates true solutions from endpoints that only satisfy the random
/// squared combinations.
pub fn unsquared_residual(sys: &PolySystem, point: &[Complex64]) -> f64 {
    assert_eq!(point.len(), sys.nvars(), "point length mismatch");
    sys.unsquared
        .iter()
        .map(|p| CompiledPoly::from_poly(p).eval(point).norm())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug)]
pub struct RefineResult {
    pub point: Vec<Complex64>,
    /// Max-norm of the unsquared system at the final point.
    pub residual: f64,
    pub converged: bool,
    /// Residual stopped improving (or the iterate blew up) above tolerance.
    pub diverged: bool,
    pub iterations: usize,
}

/// Gauss-Newton refinement against the original unsquared, unpatched
/// equations, using a pseudoinverse step so rank-deficient Jacobians (scaling
/// directions of projective groups, positive-dimensional components) are fine.
pub fn refine(sys: &PolySystem, start: &[Complex64], max_iters: usize, tol: f64) -> RefineResult {
    assert_eq!(start.len(), sys.nvars(), "start point length mismatch");
    let nvars = sys.nvars();
    let (polys, jac) = compile_with_jacobian(&sys.unsquared, nvars);
    let eval = |z: &[Complex64]| DVector::from_iterator(polys.len(), polys.iter().map(|p| p.eval(z)));
    let jac_at = |z: &[Complex64]| {
        DMatrix::from_fn(polys.len(), nvars, |r, c| jac[r][c].eval(z))
    };
    let initial_scale = 1.0 + start.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z = start.to_vec();
    let mut best = z.clone();
    let mut best_res = max_norm(&eval(&z));
    let mut stall = 0usize;
    let mut iterations = 0usize;
    let mut blowup = false;
    for it in 0..max_iters {
        iterations = it;
        if best_res < tol {
            break;
        }
        let r = eval(&z);
        let neg = -r;
        let Some(dz) = pinv_solve(&jac_at(&z), &neg) else {
            break;
        };
        for (zi, di) in z.iter_mut().zip(dz.iter()) {
            *zi += di;
        }
        if z.iter().map(|w| w.norm()).fold(0.0, f64::max) > 1e8 * initial_scale {
            blowup = true;
            break;
        }
        let res = max_norm(&eval(&z));
        if res < best_res * 0.999 {
            best = z.clone();
            best_res = res;
            stall = 0;
        } else {
            stall += 1;
            if stall >= 10 {
                break;
            }
        }
    }
    let converged = best_res < tol;
    RefineResult {
        point: best,
        residual: best_res,
        converged,
        diverged: !converged && (blowup || stall >= 10),
        iterations,
    }
}

const PERMS3: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Scale a coefficient triple by its first entry of (near-)maximal modulus.
fn scale_triple(t: [Complex64; 3]) -> [Complex64; 3] {
    let maxmod = t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if maxmod == 0.0 {
        return t;
    }
    let pivot = *t.iter().find(|z| z.norm() >= maxmod * (1.0 - 1e-6)).unwrap();
    [t[0] / pivot, t[1] / pivot, t[2] / pivot]
}

fn class_key(params: &[Complex64; 6]) -> Vec<(i64, i64)> {
    params.iter().map(|z| ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)).collect()
}

/// Canonical representative of a parameter pair under the symmetries that fix
/// the family: simultaneous coordinate permutation of both triples, swapping
/// the two linear forms, and rescaling each form.  Ties are broken by the
/// lexicographically smallest entry list after rounding at `1e-9`.
pub fn canonical_param_class(params: &[Complex64; 6]) -> [Complex64; 6] {
    let mut best: Option<([Complex64; 6], Vec<(i64, i64)>)> = None;
    for perm in PERMS3 {
        for swap in [false, true] {
            let (t1, t2) = if swap {
                (&params[3..6], &params[0..3])
            } else {
                (&params[0..3], &params[3..6])
            };
            let a = scale_triple([t1[perm[0]], t1[perm[1]], t1[perm[2]]]);
            let b = scale_triple([t2[perm[0]], t2[perm[1]], t2[perm[2]]]);
            let cand = [a[0], a[1], a[2], b[0], b[1], b[2]];
            let key = class_key(&cand);
            if best.as_ref().is_none_or(|(_, bk)| key < *bk) {
                best = Some((cand, key));
            }
        }
    }
    best.unwrap().0
}

/// Group parameter vectors into symmetry classes: canonicalize, then merge
/// representatives that agree entrywise within `tol`.
pub fn classify_params(all: &[[Complex64; 6]], tol: f64) -> Vec<([Complex64; 6], usize)> {
    let mut classes: Vec<([Complex64; 6], usize)> = Vec::new();
    for p in all {
        let c = canonical_param_class(p);
        match classes
            .iter_mut()
            .find(|(rep, _)| rep.iter().zip(&c).all(|(a, b)| (a - b).norm() < tol))
        {
            Some(e) => e.1 += 1,
            None => classes.push((c, 1)),
        }
    }
    classes
}
