//! Catalecticant matrices, graded pieces of annihilator ideals, Hilbert
//! functions, and complete-intersection detection.
//!
//! For a degree-`d` form `f` in `S`, the annihilator `Ann(f) = {Φ in R :
//! Φ∘f = 0}` is computed degree by degree as the kernel of the catalecticant
//! map `Cat_f(t): R_t -> S_(d-t)`, `Φ ↦ Φ∘f`.  The quotient `R/Ann(f)` is an
//! Artinian Gorenstein algebra; its Hilbert function is the rank profile of
//! the catalecticants and is symmetric about `d/2`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{kernel_vectors, rank_of, Mat};
use crate::poly::{apolar_act, monomial_count, monomials_desc, Exponent, Poly, Ring};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// The matrix of `Cat_f(t)` together with its row and column labels.
///
/// Rows are indexed by the degree-`(d-t)` monomials of `S`, columns by the
/// degree-`t` monomials of `R`, both in descending graded-lex order.  The
/// entry at `(x^β, X^α)` is the coefficient of `x^β` in `X^α ∘ f`, so the
/// kernel of the matrix is exactly `Ann(f)_t`.
#[derive(Clone, Debug)]
pub struct CatMatrix<K: Scalar> {
    pub mat: Mat<K>,
    pub row_monomials: Vec<Exponent>,
    pub col_monomials: Vec<Exponent>,
    pub form_degree: u32,
    pub operator_degree: u32,
}

/// A basis of one graded piece of an annihilator ideal.
#[derive(Clone, Debug)]
pub struct GradedBasis<K: Scalar> {
    pub degree: u32,
    pub basis: Vec<Poly<K>>,
}

impl<K: Scalar> GradedBasis<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Hilbert function and minimal-generator profile of an apolar algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertData {
    /// The degree of the underlying form (the socle sits there).
    pub socle_degree: u32,
    /// `h_k = dim (R/Ann(f))_k` for `k = 0..=socle_degree`.
    pub h_vector: Vec<usize>,
    /// Nonzero minimal-generator counts of `Ann(f)` by degree, complete
    /// through `socle_degree + 1` (the ideal has no generators beyond that:
    /// it contains every operator of degree `socle_degree + 1`).
    pub min_generators: BTreeMap<u32, usize>,
    /// Whether `Ann(f)` needs exactly one generator per variable.
    pub complete_intersection: bool,
}

impl HilbertData {
    /// Generator degrees with multiplicity, ascending.
    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (&deg, &count) in &self.min_generators {
            out.extend(std::iter::repeat(deg).take(count));
        }
        out
    }

    pub fn total_generators(&self) -> usize {
        self.min_generators.values().sum()
    }
}

fn index_map(monos: &[Exponent]) -> HashMap<Exponent, usize> {
    monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

fn poly_from_vec<K: Scalar>(nvars: usize, monos: &[Exponent], v: &[K]) -> Poly<K> {
    let mut p = Poly::zero(nvars, Ring::Dual);
    for (e, c) in monos.iter().zip(v) {
        p = p
            .add(&Poly::monomial(nvars, Ring::Dual, e.clone(), c.clone()))
            .expect("same ring");
    }
    p
}

/// The catalecticant matrix of `f` in operator degree `t`.
pub fn catalecticant<K: Scalar>(f: &Poly<K>, t: u32) -> Result<CatMatrix<K>> {
    if f.ring() != Ring::Primal {
        return Err(Error::RingMismatch { expected: "primal", got: f.ring().name() });
    }
    let d = f.require_homogeneous()?;
    if t > d {
        return Err(Error::DegreeOutOfRange { degree: t, max: d });
    }
    let nv = f.nvars();
    let rows = monomials_desc(nv, d - t);
    let cols = monomials_desc(nv, t);
    let mut mat = Mat::zeros(rows.len(), cols.len());
    for (i, beta) in rows.iter().enumerate() {
        for (j, alpha) in cols.iter().enumerate() {
            // coefficient of x^beta in X^alpha ∘ f is
            // f_(alpha+beta) * prod_i (alpha_i+beta_i)! / beta_i!
            let b: Vec<u32> = alpha.0.iter().zip(&beta.0).map(|(a, c)| a + c).collect();
            let fc = f.coeff(&Exponent(b.clone()));
            if fc.is_zero() {
                continue;
            }
            let mut mult: i64 = 1;
            for (bi, ai) in b.iter().zip(&alpha.0) {
                for s in 0..*ai {
                    mult *= (*bi - s) as i64;
                }
            }
            mat.set(i, j, fc.mul(&K::from_int(mult)));
        }
    }
    Ok(CatMatrix {
        mat,
        row_monomials: rows,
        col_monomials: cols,
        form_degree: d,
        operator_degree: t,
    })
}

impl<K: Scalar> CatMatrix<K> {
    pub fn rank(&self) -> usize {
        rank_of(&self.mat)
    }
}

/// Basis of `Ann(f)_t`, the kernel of `Cat_f(t)`.
///
/// Exact coefficient fields get the canonical reduced-echelon kernel basis;
/// the floating field thresholds singular values at `SV_REL_TOL` relative to
/// the largest.
pub fn ann_component<K: Scalar>(f: &Poly<K>, t: u32) -> Result<GradedBasis<K>> {
    let cm = catalecticant(f, t)?;
    let basis = kernel_vectors(&cm.mat)
        .into_iter()
        .map(|v| poly_from_vec(f.nvars(), &cm.col_monomials, &v))
        .collect();
    Ok(GradedBasis { degree: t, basis })
}

/// Kernel vectors of `Cat_f(t)` in the descending monomial coordinate system;
/// degree `d+1` returns the full standard basis (everything annihilates).
fn ann_vectors<K: Scalar>(f: &Poly<K>, t: u32) -> Result<Vec<Vec<K>>> {
    let d = f.require_homogeneous()?;
    if t == d + 1 {
        let n = monomial_count(f.nvars(), t);
        let mut out = vec![vec![K::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = K::one();
        }
        return Ok(out);
    }
    Ok(kernel_vectors(&catalecticant(f, t)?.mat))
}

/// Hilbert function of the apolar algebra of `f`, with the minimal-generator
/// counts `μ_k = dim Ann(f)_k - dim (R_1 · Ann(f)_(k-1))` for `k` up to
/// `deg(f) + 1`.
pub fn hilbert<K: Scalar>(f: &Poly<K>) -> Result<HilbertData> {
    if f.ring() != Ring::Primal {
        return Err(Error::RingMismatch { expected: "primal", got: f.ring().name() });
    }
    let d = f.require_homogeneous()?;
    let nv = f.nvars();

    let mut h_vector = Vec::with_capacity(d as usize + 1);
    let mut ann: Vec<Vec<Vec<K>>> = Vec::with_capacity(d as usize + 2);
    for t in 0..=d {
        let cm = catalecticant(f, t)?;
        let kernel = kernel_vectors(&cm.mat);
        h_vector.push(cm.col_monomials.len() - kernel.len());
        ann.push(kernel);
    }
    ann.push(ann_vectors(f, d + 1)?);

    if h_vector[0] != 1 {
        return Err(Error::Internal("apolar algebra must be unital".into()));
    }
    for k in 0..=d as usize {
        if h_vector[k] != h_vector[d as usize - k] {
            return Err(Error::Internal(format!(
                "Gorenstein symmetry violated: h_{k} != h_{}",
                d as usize - k
            )));
        }
    }

    let mut min_generators = BTreeMap::new();
    for k in 1..=(d + 1) {
        let ann_k = &ann[k as usize];
        if ann_k.is_empty() {
            continue;
        }
        let prev = &ann[k as usize - 1];
        let monos_prev = monomials_desc(nv, k - 1);
        let monos_k = monomials_desc(nv, k);
        let idx = index_map(&monos_k);
        let mut rows = Vec::new();
        for v in prev {
            for var in 0..nv {
                let mut row = vec![K::zero(); monos_k.len()];
                for (e, c) in monos_prev.iter().zip(v) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut shifted = e.clone();
                    shifted.0[var] += 1;
                    row[idx[&shifted]] = c.clone();
                }
                rows.push(row);
            }
        }
        let grown = if rows.is_empty() { 0 } else { rank_of(&Mat::from_rows(rows)) };
        let mu = ann_k.len() - grown;
        if mu > 0 {
            min_generators.insert(k, mu);
        }
    }

    let complete_intersection = min_generators.values().sum::<usize>() == nv;
    Ok(HilbertData { socle_degree: d, h_vector, min_generators, complete_intersection })
}

/// Complete-intersection test for `Ann(f)`.
///
/// An Artinian ideal in `n+1` variables is a complete intersection exactly
/// when its minimal generator count is `n+1`; returns that verdict together
/// with the generator degrees (ascending, with multiplicity).
pub fn is_complete_intersection<K: Scalar>(f: &Poly<K>) -> Result<(bool, Vec<u32>)> {
    let hd = hilbert(f)?;
    Ok((hd.complete_intersection, hd.generator_degrees()))
}

fn support<K: Scalar>(f: &Poly<K>) -> Vec<usize> {
    let nv = f.nvars();
    (0..nv)
        .filter(|&i| f.terms().any(|(e, _)| e.0[i] > 0))
        .collect()
}

/// Restrict a polynomial supported on `block` to a ring with `block.len()`
/// variables, keeping variable order.
fn compress<K: Scalar>(f: &Poly<K>, block: &[usize]) -> Poly<K> {
    let mut out = Poly::zero(block.len(), f.ring());
    for (e, c) in f.terms() {
        let ne = Exponent(block.iter().map(|&i| e.0[i]).collect());
        out = out
            .add(&Poly::monomial(block.len(), f.ring(), ne, c.clone()))
            .expect("same ring");
    }
    out
}

/// Degree-`k` spanning vectors (in the full ring's descending monomial
/// coordinates) of the ideal generated by the annihilator of a form supported
/// on `block`, i.e. all products (block-local annihilator element) times
/// (monomial in the complementary variables).
fn block_ideal_vectors<K: Scalar>(
    f: &Poly<K>,
    block: &[usize],
    k: u32,
    nv: usize,
    idx: &HashMap<Exponent, usize>,
) -> Result<Vec<Vec<K>>> {
    let local = compress(f, block);
    let d_local = local.require_homogeneous()?;
    let comp: Vec<usize> = (0..nv).filter(|i| !block.contains(i)).collect();
    let ncols = idx.len();
    let mut rows = Vec::new();
    for j in 0..=k {
        // Ann_j is a kernel through degree d_local, and every operator of
        // higher degree annihilates; enumerate those as monomial singletons.
        let basis_pairs: Vec<(Vec<Exponent>, Vec<K>)> = if j <= d_local {
            let local_monos = monomials_desc(block.len(), j);
            ann_vectors(&local, j)?
                .into_iter()
                .map(|v| (local_monos.clone(), v))
                .collect()
        } else {
            monomials_desc(block.len(), j)
                .into_iter()
                .map(|e| (vec![e], vec![K::one()]))
                .collect()
        };
        for m in monomials_desc(comp.len(), k - j) {
            for (monos, v) in &basis_pairs {
                let mut row = vec![K::zero(); ncols];
                for (e_local, c) in monos.iter().zip(v) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut full = vec![0u32; nv];
                    for (slot, &var) in block.iter().enumerate() {
                        full[var] = e_local.0[slot];
                    }
                    for (slot, &var) in comp.iter().enumerate() {
                        full[var] += m.0[slot];
                    }
                    row[idx[&Exponent(full)]] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// Check that the annihilator of a product of forms in disjoint variable
/// blocks splits: in every degree `k ≤ deg(fg)`, `Ann(fg)_k` must equal the
/// degree-`k` piece of the ideal generated by the two block-local
/// annihilators.  Verifies equality as subspaces (dimension plus containment).
pub fn tensor_split_check<K: Scalar>(f: &Poly<K>, g: &Poly<K>) -> Result<bool> {
    f.require_homogeneous()?;
    g.require_homogeneous()?;
    let block_f = support(f);
    let block_g = support(g);
    if block_f.iter().any(|i| block_g.contains(i)) {
        return Err(Error::Precondition("variable blocks overlap".into()));
    }
    let nv = f.nvars();
    // the first block is f's support; everything else (g's variables and any
    // unused ones) forms the second block
    let block2: Vec<usize> = (0..nv).filter(|i| !block_f.contains(i)).collect();
    let fg = f.mul(g)?;
    let d = fg.require_homogeneous()?;
    for k in 0..=d {
        let monos_k = monomials_desc(nv, k);
        let idx = index_map(&monos_k);
        let lhs = ann_vectors(&fg, k)?;
        let mut rhs = block_ideal_vectors(f, &block_f, k, nv, &idx)?;
        rhs.extend(block_ideal_vectors(g, &block2, k, nv, &idx)?);
        let lhs_dim = lhs.len();
        let rhs_rank = if rhs.is_empty() { 0 } else { rank_of(&Mat::from_rows(rhs.clone())) };
        if rhs_rank != lhs_dim {
            return Ok(false);
        }
        if rhs_rank == 0 {
            continue;
        }
        let mut stacked = rhs;
        stacked.extend(lhs);
        if rank_of(&Mat::from_rows(stacked)) != lhs_dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All order-`k` partial derivatives of `f` (one per degree-`k` multi-index,
/// zero results dropped), in descending graded-lex order of the multi-index.
pub fn jacobian_ideal<K: Scalar>(f: &Poly<K>, k: u32) -> Result<Vec<Poly<K>>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if k > d {
        return Err(Error::DegreeOutOfRange { degree: k, max: d });
    }
    let mut out = Vec::new();
    for alpha in monomials_desc(f.nvars(), k) {
        let mut p = f.clone();
        for (var, &times) in alpha.0.iter().enumerate() {
            for _ in 0..times {
                p = p.partial(var);
            }
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Colon-ideal membership: given forms `g, h` and an operator `D` of degree
/// `k` with `D∘(gh) = 0` and `D∘h ≠ 0`, decide whether `g·(D∘h)` lies in the
/// ideal generated by the order-`(k-1)` partials of `h`, by exact linear
/// algebra on the degree-matched generator multiples.
pub fn colon_membership_check<K: Scalar>(
    g: &Poly<K>,
    h: &Poly<K>,
    operator: &Poly<K>,
    k: u32,
) -> Result<bool> {
    if operator.require_homogeneous()? != k {
        return Err(Error::Precondition(format!(
            "operator degree must equal {k}"
        )));
    }
    let dh = apolar_act(operator, h)?;
    if dh.is_zero() {
        return Err(Error::Precondition("operator must not annihilate h".into()));
    }
    if !apolar_act(operator, &g.mul(h)?)?.is_zero() {
        return Err(Error::Precondition("operator must annihilate g*h".into()));
    }
    let target = g.mul(&dh)?;
    if target.is_zero() {
        return Ok(true);
    }
    let deg_g = g.require_homogeneous()?;
    h.require_homogeneous()?;
    if deg_g == 0 {
        return Ok(false);
    }
    let gens = jacobian_ideal(h, k - 1)?;
    let target_degree = target.require_homogeneous()?;
    let nv = g.nvars();
    let monos = monomials_desc(nv, target_degree);
    let idx = index_map(&monos);
    let to_vec = |p: &Poly<K>| {
        let mut row = vec![K::zero(); monos.len()];
        for (e, c) in p.terms() {
            row[idx[e]] = c.clone();
        }
        row
    };
    let mut rows = Vec::new();
    for gen in &gens {
        for m in monomials_desc(nv, deg_g - 1) {
            let mult = gen.mul(&Poly::monomial(nv, Ring::Primal, m, K::one()))?;
            rows.push(to_vec(&mult));
        }
    }
    if rows.is_empty() {
        return Ok(false);
    }
    let span_rank = rank_of(&Mat::from_rows(rows.clone()));
    rows.push(to_vec(&target));
    Ok(rank_of(&Mat::from_rows(rows)) == span_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::poly::parse_poly;

    fn pp(src: &str) -> Poly<Rat> {
        parse_poly(src, Ring::Primal, 3).unwrap()
    }

    fn dp(src: &str) -> Poly<Rat> {
        parse_poly(src, Ring::Dual, 3).unwrap()
    }

    fn f5() -> Poly<Rat> {
        pp("xyz(x+y+z)(x+y)(y+z)")
    }

    #[test]
    fn cat_of_xy() {
        let f: Poly<Rat> = parse_poly("x0*x1", Ring::Primal, 2).unwrap();
        let cm = catalecticant(&f, 1).unwrap();
        assert_eq!(cm.mat.nrows(), 2);
        assert_eq!(cm.mat.ncols(), 2);
        assert_eq!(*cm.mat.get(0, 0), Rat::zero());
        assert_eq!(*cm.mat.get(0, 1), Rat::one());
        assert_eq!(*cm.mat.get(1, 0), Rat::one());
        assert_eq!(*cm.mat.get(1, 1), Rat::zero());
    }

    #[test]
    fn cat_of_three_planes() {
        let f = pp("xyz");
        let cm = catalecticant(&f, 2).unwrap();
        assert_eq!(cm.rank(), 3);
        let ann = ann_component(&f, 2).unwrap();
        assert_eq!(ann.dim(), 3);
        for phi in &ann.basis {
            assert!(apolar_act(phi, &f).unwrap().is_zero());
        }
        // squares of the variables span the kernel
        let squares = [dp("X^2"), dp("Y^2"), dp("Z^2")];
        assert_eq!(ann.basis.as_slice(), squares.as_slice());
        assert!(ann_component(&f, 1).unwrap().basis.is_empty());
        assert!(catalecticant(&f, 4).is_err());
    }

    #[test]
    fn ann_of_f5_in_degree_two() {
        let ann = ann_component(&f5(), 2).unwrap();
        assert_eq!(ann.dim(), 1);
        assert_eq!(ann.basis[0], dp("X^2-X*Y+Y^2-Y*Z+Z^2"));
    }

    #[test]
    fn hilbert_of_pure_power() {
        let hd = hilbert(&pp("x^3")).unwrap();
        assert_eq!(hd.h_vector, vec![1, 1, 1, 1]);
        assert_eq!(hd.generator_degrees(), vec![1, 1, 4]);
        assert!(hd.complete_intersection);
    }

    #[test]
    fn hilbert_of_f5() {
        let hd = hilbert(&f5()).unwrap();
        assert_eq!(hd.h_vector, vec![1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(hd.min_generators, BTreeMap::from([(2, 1), (3, 1), (4, 1)]));
        assert!(hd.complete_intersection);
        assert_eq!(is_complete_intersection(&f5()).unwrap(), (true, vec![2, 3, 4]));
    }

    #[test]
    fn three_planes_complete_intersection() {
        let (ci, degs) = is_complete_intersection(&pp("xyz")).unwrap();
        assert!(ci);
        assert_eq!(degs, vec![2, 2, 2]);
    }

    #[test]
    fn hilbert_serialization_shape() {
        let hd = hilbert(&f5()).unwrap();
        let json = serde_json::to_string(&hd).unwrap();
        assert!(json.contains("\"socle_degree\":6"));
        assert!(json.contains("\"h_vector\":[1,3,5,6,5,3,1]"));
        assert!(json.contains("\"min_generators\":{\"2\":1,\"3\":1,\"4\":1}"));
        assert!(json.contains("\"complete_intersection\":true"));
        let back: HilbertData = serde_json::from_str(&json).unwrap();
        assert_eq!(back, hd);
    }

    #[test]
    fn rank_transpose_duality() {
        for f in [f5(), pp("x^2y^2z^2"), pp("(x+y)^3(x+z)^2 z")] {
            let d = f.homogeneous_degree().unwrap();
            for t in 0..=d {
                assert_eq!(
                    catalecticant(&f, t).unwrap().rank(),
                    catalecticant(&f, d - t).unwrap().rank()
                );
            }
        }
    }

    #[test]
    fn kernel_rank_split() {
        let f = f5();
        for t in 0..=6u32 {
            let cm = catalecticant(&f, t).unwrap();
            let ann = ann_component(&f, t).unwrap();
            assert_eq!(cm.rank() + ann.dim(), cm.col_monomials.len());
            for phi in &ann.basis {
                assert!(apolar_act(phi, &f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn tensor_split_examples() {
        let two = |s: &str| parse_poly::<Rat>(s, Ring::Primal, 2).unwrap();
        assert!(tensor_split_check(&two("x^2"), &two("y^2")).unwrap());
        assert!(tensor_split_check(&two("x^2"), &two("y^3")).unwrap());
        assert!(tensor_split_check(&pp("xy(x+y)"), &pp("z^2")).unwrap());
        assert!(tensor_split_check(&pp("x+y"), &pp("x+z")).is_err());
    }

    #[test]
    fn tensor_split_convolution() {
        // the h-vector of a split product is the convolution of the factors'
        let f = pp("xy(x+y)");
        let g = pp("z^2");
        let hf = hilbert(&compress(&f, &[0, 1])).unwrap().h_vector;
        let hg = hilbert(&compress(&g, &[2])).unwrap().h_vector;
        let hfg = hilbert(&f.mul(&g).unwrap()).unwrap().h_vector;
        let mut conv = vec![0usize; hf.len() + hg.len() - 1];
        for (i, a) in hf.iter().enumerate() {
            for (j, b) in hg.iter().enumerate() {
                conv[i + j] += a * b;
            }
        }
        assert_eq!(hfg, conv);
        assert_eq!(hfg, vec![1, 3, 5, 5, 3, 1]);
    }

    #[test]
    fn tensor_split_random_pairs() {
        fn next(state: &mut u64) -> u64 {
            *state ^= *state << 13;
            *state ^= *state >> 7;
            *state ^= *state << 17;
            *state
        }
        fn random_form(state: &mut u64, vars: &[usize], deg: u32) -> Poly<Rat> {
            loop {
                let mut p = Poly::<Rat>::zero(4, Ring::Primal);
                for _ in 0..3 {
                    let mut e = vec![0u32; 4];
                    for _ in 0..deg {
                        e[vars[(next(state) % vars.len() as u64) as usize]] += 1;
                    }
                    let c = Rat::from_int((next(state) % 5) as i64 + 1);
                    p = p.add(&Poly::monomial(4, Ring::Primal, Exponent(e), c)).unwrap();
                }
                if !p.is_zero() {
                    return p;
                }
            }
        }
        let mut state = 0x2468_ace1u64;
        for _ in 0..50 {
            let df = (next(&mut state) % 4) as u32 + 1;
            let dg = (next(&mut state) % 4) as u32 + 1;
            let f = random_form(&mut state, &[0, 1], df);
            let g = random_form(&mut state, &[2, 3], dg);
            assert!(tensor_split_check(&f, &g).unwrap(), "failed for f={f}, g={g}");
        }
    }

    #[test]
    fn jacobian_generators() {
        let f = pp("xyz");
        let j1 = jacobian_ideal(&f, 1).unwrap();
        assert_eq!(j1, vec![pp("yz"), pp("xz"), pp("xy")]);
        assert_eq!(jacobian_ideal(&f, 0).unwrap(), vec![f.clone()]);
        assert!(jacobian_ideal(&f, 4).is_err());
        // zero partials are dropped
        assert_eq!(jacobian_ideal(&pp("x^2"), 1).unwrap().len(), 1);
    }

    #[test]
    fn colon_membership_for_braid_subproduct() {
        // h omits one hyperplane of the full braid product gh
        let h = pp("xyz(x-y)(x-z)");
        let g = pp("y-z");
        let gh = g.mul(&h).unwrap();
        let ann2 = ann_component(&gh, 2).unwrap();
        assert_eq!(ann2.dim(), 1);
        let d_op = &ann2.basis[0];
        assert!(colon_membership_check(&g, &h, d_op, 2).unwrap());
    }

    #[test]
    fn colon_membership_preconditions() {
        let h = pp("yz");
        let g = pp("x");
        // operator annihilating h itself is rejected
        assert!(colon_membership_check(&g, &h, &dp("X"), 1).is_err());
        // degree mismatch is rejected
        let h2 = pp("xyz(x-y)(x-z)");
        let g2 = pp("y-z");
        let d_op = ann_component(&g2.mul(&h2).unwrap(), 2).unwrap().basis[0].clone();
        assert!(colon_membership_check(&g2, &h2, &d_op, 3).is_err());
        // an operator that fails to annihilate g*h is rejected
        assert!(colon_membership_check(&g2, &h2, &dp("X^2"), 2).is_err());
    }
}
