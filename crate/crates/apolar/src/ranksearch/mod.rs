//! Rank-constrained catalecticant systems for ternary sextics with four fixed
//! linear factors.
//!
//! The family under study is `f = x*y*z*(x+y+z)*(a*x+b*y+c*z)*(d*x+e*y+f*z)`
//! with six unknown parameters `a..f`.  The middle catalecticant `Cat(f, 3)` is
//! a 10x10 matrix whose entries are bilinear in `(a,b,c)` and `(d,e,f)`; asking
//! for rank at most 7 is encoded by a 10x3 matrix `B` of rank 3 with
//! `Cat(f,3) * B = 0`.  Fixing a 3x3 identity block inside `B` kills the
//! `GL(3)` column stabilizer, which leaves 21 affine unknowns and the 30 cubic
//! equations `(Cat * B)_{rc} = 0`.
//!
//! This module builds that system exactly, produces feasible starting points
//! from the classified forms in [`crate::catalog`], squares the equations down
//! to match the variable count with seeded random combinations, and exposes a
//! reduced 10-variable slice suitable for desk-scale homotopy runs.  The
//! numerical path tracker lives in [`tracker`] and file emission in [`bertini`].

pub mod bertini;
pub mod tracker;

pub use tracker::{canonical_param_class, classify_params};

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::ann_component;
use crate::arrangements::index_subsets;
use crate::error::{Error, Result};
use crate::field::{ComplexF, CycElem, Rat, Scalar};
use crate::linalg::Mat;
use crate::poly::{monomials_desc, Exponent, Poly, Ring};

/// Names of the six linear-form parameters, in variable order.
pub const PARAM_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Names of the 21 free entries of `B`, row-major over the non-identity rows.
/// `I` is skipped (Bertini reserves it for the imaginary unit); `V` stands in.
pub const B_NAMES: [&str; 21] = [
    "A", "B", "C", "D", "E", "F", "G", "H", "V", "J", "K", "L", "M", "N", "O", "P", "Q", "R",
    "S", "T", "U",
];

/// The middle catalecticant of the parametrized sextic, held symbolically:
/// each of the 100 entries is a polynomial in the six parameters `a..f`,
/// bilinear in `(a,b,c)` and `(d,e,f)`.
pub struct SymbolicCat {
    monomials: Vec<Exponent>,
    entries: Vec<Vec<Poly<Rat>>>,
}

impl SymbolicCat {
    /// Expand `x*y*z*(x+y+z)*(a*x+b*y+c*z)*(d*x+e*y+f*z)` over `Q` in nine
    /// variables `(x,y,z,a..f)`, split each coefficient of `x^gamma` into a
    /// parameter polynomial, and assemble the differentiation matrix with the
    /// usual falling-factorial multipliers.
    pub fn build() -> Self {
        let pr = Ring::Primal;
        let v = |i: usize| Poly::<Rat>::variable(9, pr, i);
        let lin = |p: [usize; 3]| {
            let mut acc = Poly::<Rat>::zero(9, pr);
            for (pi, xi) in p.iter().zip(0..3) {
                acc = acc.add(&v(*pi).mul(&v(xi)).unwrap()).unwrap();
            }
            acc
        };
        let mut f = v(0).mul(&v(1)).unwrap().mul(&v(2)).unwrap();
        f = f.mul(&v(0).add(&v(1)).unwrap().add(&v(2)).unwrap()).unwrap();
        f = f.mul(&lin([3, 4, 5])).unwrap();
        f = f.mul(&lin([6, 7, 8])).unwrap();

        let mut coeffs: BTreeMap<Exponent, Poly<Rat>> = BTreeMap::new();
        for (e, c) in f.terms() {
            let gamma = Exponent(e.0[0..3].to_vec());
            let delta = Exponent(e.0[3..9].to_vec());
            let term = Poly::monomial(6, pr, delta, c.clone());
            match coeffs.entry(gamma) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().add(&term).unwrap();
                    o.insert(s);
                }
                std::collections::btree_map::Entry::Vacant(va) => {
                    va.insert(term);
                }
            }
        }

        let monomials = monomials_desc(3, 3);
        debug_assert_eq!(monomials.len(), 10);
        let zero6 = Poly::<Rat>::zero(6, pr);
        let mut entries = vec![vec![zero6; 10]; 10];
        for (i, beta) in monomials.iter().enumerate() {
            for (j, alpha) in monomials.iter().enumerate() {
                let g: Vec<u32> = alpha.0.iter().zip(&beta.0).map(|(a, b)| a + b).collect();
                let Some(cp) = coeffs.get(&Exponent(g.clone())) else {
                    continue;
                };
                let mut mult: i64 = 1;
                for (gi, ai) in g.iter().zip(&alpha.0) {
                    for s in 0..*ai {
                        mult *= (*gi - s) as i64;
                    }
                }
                entries[i][j] = cp.scalar_mul(&Rat::from_int(mult));
            }
        }
        SymbolicCat { monomials, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Degree-3 monomials indexing both rows and columns, descending order.
    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn entry(&self, r: usize, c: usize) -> &Poly<Rat> {
        &self.entries[r][c]
    }

    /// Evaluate every entry at concrete parameter values.
    pub fn specialize<K: Scalar>(&self, params: &[K; 6]) -> Mat<K> {
        let mut m = Mat::zeros(10, 10);
        for r in 0..10 {
            for c in 0..10 {
                if self.entries[r][c].is_zero() {
                    continue;
                }
                let p = self.entries[r][c].map_coeffs(K::from_rat);
                m.set(r, c, p.eval(params));
            }
        }
        m
    }
}

/// `sigma_8 / sigma_1` of the specialized catalecticant; below roughly `1e-6`
/// the numerical rank is at most 7, which is the search target.
pub fn rank_defect_ratio(cat: &SymbolicCat, params: &[Complex64; 6]) -> f64 {
    let k: [ComplexF; 6] = params.map(ComplexF);
    let m = cat.specialize(&k).to_complex();
    let svd = m.svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv[7] / sv[0]
}

/// Variable block of a polynomial system: projective groups get a random
/// affine patch during tracking, affine groups do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarGroup {
    Projective { start: usize, len: usize },
    Affine { start: usize, len: usize },
}

impl VarGroup {
    pub fn start(&self) -> usize {
        match *self {
            VarGroup::Projective { start, .. } | VarGroup::Affine { start, .. } => start,
        }
    }

    pub fn len(&self) -> usize {
        match *self {
            VarGroup::Projective { len, .. } | VarGroup::Affine { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, VarGroup::Projective { .. })
    }
}

/// A square-up of polynomial equations ready for homotopy tracking.
///
/// `equations` are the seeded random combinations actually tracked (as many as
/// there are variables minus projective scalings); `unsquared` keeps the
/// original equations for endpoint refinement and solution filtering.
pub struct PolySystem {
    pub variables: Vec<String>,
    pub groups: Vec<VarGroup>,
    pub equations: Vec<Poly<ComplexF>>,
    pub unsquared: Vec<Poly<ComplexF>>,
    pub seed: u64,
    /// Rows of `B` pinned to the identity block, when the system came from the
    /// rank-constrained family.
    pub minor_rows: Option<[usize; 3]>,
    /// Parameter values that were substituted away in a reduced system; they
    /// are prepended again when solutions are reported.
    pub fixed_prefix: Option<Vec<Complex64>>,
}

impl PolySystem {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Total degree of each tracked equation.
    pub fn degrees(&self) -> Vec<u32> {
        self.equations
            .iter()
            .map(|eq| eq.terms().map(|(e, _)| e.0.iter().sum::<u32>()).max().unwrap_or(0))
            .collect()
    }

    /// Product of tracked-equation degrees: the number of start paths of a
    /// total-degree homotopy.
    pub fn bezout_paths(&self) -> usize {
        self.degrees().iter().map(|&d| d as usize).product()
    }

    /// The six family parameters represented by a solution point, when this
    /// system has a rank-system shape: the first six coordinates of the full
    /// system, or the fixed prefix plus the first three coordinates of a
    /// reduced system.
    pub fn param_values(&self, point: &[Complex64]) -> Option<[Complex64; 6]> {
        if let Some(prefix) = &self.fixed_prefix {
            if prefix.len() == 3 && point.len() >= 3 {
                return Some([prefix[0], prefix[1], prefix[2], point[0], point[1], point[2]]);
            }
            return None;
        }
        if self.minor_rows.is_some() && self.nvars() == 27 && point.len() == 27 {
            return Some(std::array::from_fn(|i| point[i]));
        }
        None
    }
}

/// Entry of the structured matrix `B` for a given identity minor.
enum BEntry {
    Zero,
    One,
    Var(usize),
}

/// Rows not pinned by the minor, in increasing order.
fn free_rows(minor: &[usize; 3]) -> Vec<usize> {
    (0..10).filter(|r| !minor.contains(r)).collect()
}

/// `B[r][c]` in the full 27-variable ordering: identity block on the minor
/// rows, variables `6 + 3*rank(r) + c` elsewhere.
fn b_entry(minor: &[usize; 3], r: usize, c: usize) -> BEntry {
    if let Some(pos) = minor.iter().position(|&m| m == r) {
        if pos == c {
            BEntry::One
        } else {
            BEntry::Zero
        }
    } else {
        let rank = (0..r).filter(|i| !minor.contains(i)).count();
        BEntry::Var(6 + 3 * rank + c)
    }
}

/// Where each of the six parameters goes when an entry polynomial is moved
/// into a system's variable space: either a variable index or a fixed value.
enum ParamImage<K: Scalar> {
    Var(usize),
    Const(K),
}

fn embed_entry<K: Scalar>(entry: &Poly<Rat>, images: &[ParamImage<K>; 6], nvars: usize) -> Poly<K> {
    let mut out = Poly::zero(nvars, Ring::Primal);
    for (e, c) in entry.terms() {
        let mut coeff = K::from_rat(c);
        let mut exps = vec![0u32; nvars];
        for (i, img) in images.iter().enumerate() {
            match img {
                ParamImage::Var(v) => exps[*v] += e.0[i],
                ParamImage::Const(k) => {
                    for _ in 0..e.0[i] {
                        coeff = coeff.mul(k);
                    }
                }
            }
        }
        if coeff.is_zero() {
            continue;
        }
        out = out.add(&Poly::monomial(nvars, Ring::Primal, Exponent(exps), coeff)).unwrap();
    }
    out
}

/// Seeded random complex combinations squaring `unsquared` down to `target`
/// equations.  Every tracked equation sees every original one, so a common
/// zero of the combinations that also satisfies `unsquared` is genuine.
fn square_up(unsquared: &[Poly<ComplexF>], target: usize, seed: u64) -> Vec<Poly<ComplexF>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = unsquared[0].nvars();
    (0..target)
        .map(|_| {
            let mut eq = Poly::zero(nv, Ring::Primal);
            for src in unsquared {
                let lam = ComplexF::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                eq = eq.add(&src.scalar_mul(&lam)).unwrap();
            }
            eq
        })
        .collect()
}

/// The full 27-variable system with the default identity minor on the first
/// three rows of `B`.
pub fn build_rank_system(seed: u64) -> PolySystem {
    build_rank_system_with_minor(seed, [0, 1, 2])
}

/// The full system with a caller-chosen identity minor: variables
/// `a..f` (two projective triples) followed by the 21 free entries of `B`
/// (affine), and the 30 cubics `(Cat * B)_{rc}` squared down to 25.
pub fn build_rank_system_with_minor(seed: u64, minor: [usize; 3]) -> PolySystem {
    assert!(minor[0] < minor[1] && minor[1] < minor[2] && minor[2] < 10, "minor rows must be increasing and below 10");
    let cat = SymbolicCat::build();
    let pr = Ring::Primal;
    let nv = 27;
    let images: [ParamImage<Rat>; 6] = [
        ParamImage::Var(0),
        ParamImage::Var(1),
        ParamImage::Var(2),
        ParamImage::Var(3),
        ParamImage::Var(4),
        ParamImage::Var(5),
    ];
    let mut unsquared = Vec::with_capacity(30);
    for r in 0..10 {
        for c in 0..3 {
            let mut eq = Poly::<Rat>::zero(nv, pr);
            for k in 0..10 {
                if cat.entries[r][k].is_zero() {
                    continue;
                }
                match b_entry(&minor, k, c) {
                    BEntry::Zero => {}
                    BEntry::One => {
                        eq = eq.add(&embed_entry(&cat.entries[r][k], &images, nv)).unwrap();
                    }
                    BEntry::Var(v) => {
                        let base = embed_entry(&cat.entries[r][k], &images, nv);
                        eq = eq.add(&base.mul(&Poly::variable(nv, pr, v)).unwrap()).unwrap();
                    }
                }
            }
            unsquared.push(eq.map_coeffs(ComplexF::from_rat));
        }
    }
    let equations = square_up(&unsquared, 25, seed);
    let mut variables: Vec<String> = PARAM_NAMES.iter().map(|s| s.to_string()).collect();
    variables.extend(B_NAMES.iter().map(|s| s.to_string()));
    PolySystem {
        variables,
        groups: vec![
            VarGroup::Projective { start: 0, len: 3 },
            VarGroup::Projective { start: 3, len: 3 },
            VarGroup::Affine { start: 6, len: 21 },
        ],
        equations,
        unsquared,
        seed,
        minor_rows: Some(minor),
        fixed_prefix: None,
    }
}

/// The desk-scale slice: fix `(a,b,c)` numerically, keep a single kernel
/// column `b = (1,0,0,v_3..v_9)`, and solve the ten bilinear equations
/// `(Cat * b)_r = 0` in the ten unknowns `(d,e,f,v_3..v_9)`.  Nine squared
/// equations plus one projective patch give `2^9 = 512` start paths.
pub fn build_reduced_system(seed: u64, fixed: [Complex64; 3]) -> PolySystem {
    let cat = SymbolicCat::build();
    let pr = Ring::Primal;
    let nv = 10;
    let images: [ParamImage<ComplexF>; 6] = [
        ParamImage::Const(ComplexF(fixed[0])),
        ParamImage::Const(ComplexF(fixed[1])),
        ParamImage::Const(ComplexF(fixed[2])),
        ParamImage::Var(0),
        ParamImage::Var(1),
        ParamImage::Var(2),
    ];
    let mut unsquared = Vec::with_capacity(10);
    for r in 0..10 {
        let mut eq = Poly::<ComplexF>::zero(nv, pr);
        for k in 0..10 {
            if cat.entries[r][k].is_zero() {
                continue;
            }
            let base = embed_entry(&cat.entries[r][k], &images, nv);
            if k == 0 {
                eq = eq.add(&base).unwrap();
            } else if k >= 3 {
                eq = eq.add(&base.mul(&Poly::variable(nv, pr, k)).unwrap()).unwrap();
            }
        }
        unsquared.push(eq);
    }
    let equations = square_up(&unsquared, 9, seed);
    let mut variables: Vec<String> = ["d", "e", "f"].iter().map(|s| s.to_string()).collect();
    for fr in 0..7 {
        variables.push(B_NAMES[3 * fr].to_string());
    }
    PolySystem {
        variables,
        groups: vec![VarGroup::Projective { start: 0, len: 3 }, VarGroup::Affine { start: 3, len: 7 }],
        equations,
        unsquared,
        seed,
        minor_rows: Some([0, 1, 2]),
        fixed_prefix: Some(fixed.to_vec()),
    }
}

/// An exact rank-3 matrix `B` with `Cat(f,3) * B = 0` and an identity block on
/// `minor_rows`, built from the degree-3 annihilator of `f`.
pub struct FeasibleB<K: Scalar> {
    pub minor_rows: [usize; 3],
    pub b: Mat<K>,
}

/// Choose the lexicographically first row triple on which the kernel of
/// `Cat(f,3)` projects onto all of `K^3`, then combine kernel vectors into
/// columns carrying the identity on those rows.
pub fn feasible_b<K: Scalar>(f: &Poly<K>) -> Result<FeasibleB<K>> {
    if f.nvars() != 3 || f.require_homogeneous()? != 6 {
        return Err(Error::Precondition("ternary sextic expected".into()));
    }
    let g = ann_component(f, 3)?;
    let k = g.basis.len();
    if k < 3 {
        return Err(Error::Precondition(format!(
            "degree-3 annihilator has dimension {k}, need at least 3"
        )));
    }
    let cols = monomials_desc(3, 3);
    let mut n = Mat::zeros(10, k);
    for (j, p) in g.basis.iter().enumerate() {
        for (i, m) in cols.iter().enumerate() {
            n.set(i, j, p.coeff(m));
        }
    }
    for sub in index_subsets(10, 3) {
        let mut m = Mat::zeros(3, k);
        for (r, &row) in sub.iter().enumerate() {
            for j in 0..k {
                m.set(r, j, n.get(row, j).clone());
            }
        }
        if m.rank() < 3 {
            continue;
        }
        let mut b = Mat::zeros(10, 3);
        for c in 0..3 {
            let e: Vec<K> = (0..3).map(|r| if r == c { K::one() } else { K::zero() }).collect();
            let x = m.solve(&e)?;
            for i in 0..10 {
                let mut acc = K::zero();
                for (j, xj) in x.iter().enumerate() {
                    acc = acc.add(&n.get(i, j).mul(xj));
                }
                b.set(i, c, acc);
            }
        }
        return Ok(FeasibleB { minor_rows: [sub[0], sub[1], sub[2]], b });
    }
    Err(Error::Internal("kernel projects onto no row triple".into()))
}

/// Exact feasible data for one of the six classified sextics, plus its
/// embedding as a start point of the matching full rank system.
pub struct FeasiblePoint {
    pub params: [CycElem; 6],
    pub minor_rows: [usize; 3],
    pub b: Mat<CycElem>,
    /// 27 coordinates in the order of [`build_rank_system_with_minor`] called
    /// with the same `minor_rows`.
    pub coords: Vec<Complex64>,
}

pub fn feasible_point(index: usize) -> Result<FeasiblePoint> {
    let [p, q] = crate::catalog::factor_params(index);
    let params: [CycElem; 6] =
        [p[0].clone(), p[1].clone(), p[2].clone(), q[0].clone(), q[1].clone(), q[2].clone()];
    let f = crate::catalog::form(index);
    let fb = feasible_b(&f)?;
    let mut coords: Vec<Complex64> = params.iter().map(Scalar::embed).collect();
    for r in free_rows(&fb.minor_rows) {
        for c in 0..3 {
            coords.push(fb.b.get(r, c).embed());
        }
    }
    Ok(FeasiblePoint { params, minor_rows: fb.minor_rows, b: fb.b, coords })
}
