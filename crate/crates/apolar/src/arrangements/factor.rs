//! Linear-factor extraction over the cyclotomic field.
//!
//! A homogeneous form splits into linear factors iff, after stripping
//! variable factors and arranging a nonzero `x0^d` coefficient (adding a
//! random invertible change of variables when needed), every restriction to
//! the `(x0, xj)` coordinate plane splits.  The restrictions are univariate
//! up to reversal, so their roots are found numerically (all four Galois
//! conjugates at once), recognized as exact field elements through a
//! Vandermonde solve plus continued fractions, and confirmed by exact
//! division.  Every reported factor is verified, so the factorization is
//! sound; unrecognizable roots surface as a non-split report.

use super::MultiArrangement;
use crate::error::{Error, Result};
use crate::field::{CycElem, Rat, Scalar};
use crate::linalg::Mat;
use crate::poly::{Exponent, Poly, Ring};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GALOIS_ORBIT: [u32; 4] = [1, 5, 7, 11];

/// Reinterpret a rational polynomial over the cyclotomic field.
pub fn cyclotomic_lift(f: &Poly<Rat>) -> Poly<CycElem> {
    f.map_coeffs(|c| CycElem::from_rat(c.clone()))
}

/// Dense univariate polynomial over the cyclotomic field, low-to-high.
#[derive(Clone, Debug, PartialEq)]
struct UniPoly {
    c: Vec<CycElem>,
}

impl UniPoly {
    fn new(mut c: Vec<CycElem>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        assert!(!self.is_zero(), "zero polynomial has no degree");
        self.c.len() - 1
    }

    fn lead(&self) -> &CycElem {
        self.c.last().expect("nonzero")
    }

    fn monic(&self) -> UniPoly {
        let inv = self.lead().inv().expect("leading coefficient is nonzero");
        UniPoly::new(self.c.iter().map(|x| x.mul(&inv)).collect())
    }

    fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x.mul(&CycElem::from_int(k as i64)))
                .collect(),
        )
    }

    fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dlead = div.lead().inv().expect("nonzero lead");
        let mut rem = self.c.clone();
        let dd = div.degree();
        if rem.len() <= dd {
            return (UniPoly::new(vec![]), UniPoly::new(rem));
        }
        let mut quot = vec![CycElem::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = rem[k].mul(&dlead);
            if q.is_zero() {
                continue;
            }
            quot[k - dd] = q.clone();
            for (i, dc) in div.c.iter().enumerate() {
                rem[k - dd + i] = rem[k - dd + i].sub(&q.mul(dc));
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Squarefree part (product of distinct irreducible factors), monic.
    fn squarefree(&self) -> UniPoly {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = UniPoly::gcd(self, &d);
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero(), "gcd must divide exactly");
        let _ = r;
        q.monic()
    }

    fn eval(&self, x: &CycElem) -> CycElem {
        let mut acc = CycElem::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    fn galois(&self, k: u32) -> UniPoly {
        UniPoly::new(self.c.iter().map(|x| x.galois(k).expect("valid orbit index")).collect())
    }

    fn embed(&self) -> Vec<Complex64> {
        self.c.iter().map(|x| x.embed()).collect()
    }
}

/// Simultaneous root iteration for a monic complex polynomial, low-to-high.
fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![];
    }
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (1..=n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(zs[i]) / denom;
            zs[i] -= step;
            worst = worst.max(step.norm());
        }
        if worst < 1e-13 {
            break;
        }
    }
    zs
}

/// Best small rational approximation by continued fractions.
fn rational_from_float(x: f64, max_den: i64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h_prev, mut k_prev) = (1i64, 0i64);
    let (mut h, mut k) = (x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    for _ in 0..48 {
        if (h as f64 / k as f64 - x).abs() < tol {
            return Some(Rat::from_pair(h, k));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let recip = 1.0 / frac;
        let a = recip.floor();
        if a > max_den as f64 {
            break;
        }
        frac = recip - a;
        let a = a as i64;
        let nh = a.checked_mul(h).and_then(|v| v.checked_add(h_prev))?;
        let nk = a.checked_mul(k).and_then(|v| v.checked_add(k_prev))?;
        (h_prev, k_prev) = (h, k);
        (h, k) = (nh, nk);
        if k > max_den {
            break;
        }
    }
    ((h as f64 / k as f64 - x).abs() < tol).then(|| Rat::from_pair(h, k))
}

/// All distinct roots of `p` lying in the cyclotomic field.  Numeric roots
/// of the four Galois conjugates are matched in every combination; a match
/// is kept only when the reconstructed exact element really is a root, so
/// the output never contains spurious entries (it may miss roots whose
/// coordinates exceed the recognition range, which callers report as a
/// non-split form).
fn exact_roots(p: &UniPoly) -> Vec<CycElem> {
    if p.is_zero() || p.degree() == 0 {
        return vec![];
    }
    let sf = p.squarefree();
    if sf.degree() == 0 {
        return vec![];
    }
    let orbit_roots: Vec<Vec<Complex64>> = GALOIS_ORBIT
        .iter()
        .map(|&k| durand_kerner(&sf.galois(k).monic().embed()))
        .collect();
    // power basis values of zeta at each conjugate embedding
    let zeta = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
    let v = DMatrix::<Complex64>::from_fn(4, 4, |r, i| zeta.powu(GALOIS_ORBIT[r] * i as u32));
    let vinv = v.try_inverse().expect("conjugate embeddings are independent");
    let mut found: Vec<CycElem> = Vec::new();
    for t1 in &orbit_roots[0] {
        for t5 in &orbit_roots[1] {
            for t7 in &orbit_roots[2] {
                for t11 in &orbit_roots[3] {
                    let rhs = nalgebra::DVector::from_vec(vec![*t1, *t5, *t7, *t11]);
                    let coords = &vinv * rhs;
                    if coords.iter().any(|c| c.im.abs() > 1e-6) {
                        continue;
                    }
                    let Some(rats) = coords
                        .iter()
                        .map(|c| rational_from_float(c.re, 1_000_000, 1e-8))
                        .collect::<Option<Vec<_>>>()
                    else {
                        continue;
                    };
                    let cand = CycElem::new([
                        rats[0].clone(),
                        rats[1].clone(),
                        rats[2].clone(),
                        rats[3].clone(),
                    ]);
                    if sf.eval(&cand).is_zero() && !found.contains(&cand) {
                        found.push(cand);
                    }
                }
            }
        }
    }
    found
}

fn variable_exponent(nvars: usize, var: usize, deg: u32) -> Exponent {
    let mut e = vec![0u32; nvars];
    e[var] = deg;
    Exponent(e)
}

/// Exact quotient of `f` by the variable `var`, or `None` if not divisible.
fn divide_by_variable(f: &Poly<CycElem>, var: usize) -> Option<Poly<CycElem>> {
    if f.is_zero() || f.terms().any(|(e, _)| e.0[var] == 0) {
        return None;
    }
    let mut q = Poly::zero(f.nvars(), f.ring());
    for (e, c) in f.terms() {
        let mut ne = e.clone();
        ne.0[var] -= 1;
        q = q.add(&Poly::monomial(f.nvars(), f.ring(), ne, c.clone())).expect("same ring");
    }
    Some(q)
}

/// Exact quotient of `g` by `x0 + sum_j c[j] x_j` (`c[0]` is ignored and
/// taken as 1), or `None` if the division leaves a remainder.
fn divide_by_monic_linear(g: &Poly<CycElem>, c: &[CycElem]) -> Option<Poly<CycElem>> {
    let nv = g.nvars();
    let parts = g.coeffs_in_var(0);
    let m = parts.len() - 1;
    if m == 0 {
        return None;
    }
    // root substitution x0 = r with r = -(c1 x1 + ... )
    let mut r_coeffs = vec![CycElem::zero(); nv];
    for j in 1..nv {
        r_coeffs[j] = c[j].neg();
    }
    let r = Poly::linear_form(Ring::Primal, &r_coeffs);
    let mut b = vec![Poly::zero(nv, g.ring()); m];
    b[m - 1] = parts[m].clone();
    for k in (0..m - 1).rev() {
        b[k] = parts[k + 1].add(&r.mul(&b[k + 1]).expect("same ring")).expect("same ring");
    }
    let rem = parts[0].add(&r.mul(&b[0]).expect("same ring")).expect("same ring");
    if !rem.is_zero() {
        return None;
    }
    let mut q = Poly::zero(nv, g.ring());
    for (k, bk) in b.iter().enumerate() {
        let shift = Poly::monomial(nv, g.ring(), variable_exponent(nv, 0, k as u32), CycElem::one());
        q = q.add(&bk.mul(&shift).expect("same ring")).expect("same ring");
    }
    Some(q)
}

/// Split `g` (nonzero `x0^d` coefficient) into monic linear factors
/// `x0 + ...`; `None` when some factor escapes the field or `g` is not a
/// product of linear forms.
fn split_monic(g: &Poly<CycElem>) -> Option<Vec<Vec<CycElem>>> {
    let nv = g.nvars();
    let dr = g.homogeneous_degree().expect("homogeneous input") as usize;
    let lead = g.coeff(&variable_exponent(nv, 0, dr as u32));
    debug_assert!(!lead.is_zero());
    let gm = g.scalar_mul(&lead.inv().ok()?);
    // coordinate candidates from the reversed (x0, xj)-restrictions
    let mut coordinate_choices: Vec<Vec<CycElem>> = Vec::new();
    for j in 1..nv {
        let mut rc = Vec::with_capacity(dr + 1);
        for m in 0..=dr {
            let mut e = vec![0u32; nv];
            e[0] = m as u32;
            e[j] = (dr - m) as u32;
            rc.push(gm.coeff(&Exponent(e)));
        }
        let choices: Vec<CycElem> = exact_roots(&UniPoly::new(rc)).iter().map(|r| r.neg()).collect();
        if choices.is_empty() {
            return None;
        }
        coordinate_choices.push(choices);
    }
    let mut candidates: Vec<Vec<CycElem>> = vec![vec![CycElem::one()]];
    for choices in &coordinate_choices {
        candidates = candidates
            .into_iter()
            .flat_map(|base| {
                choices.iter().map(move |c| {
                    let mut next = base.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
        if candidates.len() > 100_000 {
            return None;
        }
    }
    let mut rem = gm;
    let mut factors = Vec::with_capacity(dr);
    for cand in &candidates {
        while factors.len() < dr {
            match divide_by_monic_linear(&rem, cand) {
                Some(q) => {
                    rem = q;
                    factors.push(cand.clone());
                }
                None => break,
            }
        }
    }
    (factors.len() == dr).then_some(factors)
}

fn random_invertible(nv: usize, rng: &mut impl Rng) -> Mat<CycElem> {
    loop {
        let m = Mat::from_rows(
            (0..nv)
                .map(|_| (0..nv).map(|_| CycElem::from_int(rng.gen_range(-3..=3))).collect())
                .collect(),
        );
        if m.is_invertible() {
            return m;
        }
    }
}

/// Factor a homogeneous form into linear forms over the cyclotomic field,
/// returning the multi-arrangement (forms scaled to leading coefficient 1).
/// Forms that do not split are reported, never misfactored.
pub fn factor_product_of_linear(f: &Poly<CycElem>) -> Result<MultiArrangement<CycElem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.require_homogeneous()?;
    if d == 0 {
        return Err(Error::Precondition("constants have no hyperplanes".into()));
    }
    let nv = f.nvars();
    let mut raw: Vec<Vec<CycElem>> = Vec::new();
    let mut rem = f.clone();
    for v in 0..nv {
        while let Some(q) = divide_by_variable(&rem, v) {
            let mut coeffs = vec![CycElem::zero(); nv];
            coeffs[v] = CycElem::one();
            raw.push(coeffs);
            rem = q;
        }
    }
    if rem.homogeneous_degree() != Some(0) {
        let dr = rem.homogeneous_degree().expect("homogeneous");
        let mut rng = ChaCha8Rng::seed_from_u64(0x6c696e6561);
        let mut split = None;
        for attempt in 0..4 {
            let a = if attempt == 0 { Mat::identity(nv) } else { random_invertible(nv, &mut rng) };
            let g = rem.substitute_linear(&a)?;
            if g.coeff(&variable_exponent(nv, 0, dr)).is_zero() {
                continue;
            }
            if let Some(factors) = split_monic(&g) {
                let ainv = a.inverse()?;
                for c in factors {
                    // factor of g(x) = rem(Ax) pulls back along A^{-1}
                    let pulled: Vec<CycElem> = (0..nv)
                        .map(|j| {
                            (0..nv).fold(CycElem::zero(), |acc, i| {
                                acc.add(&c[i].mul(ainv.get(i, j)))
                            })
                        })
                        .collect();
                    raw.push(pulled);
                }
                split = Some(());
                break;
            }
        }
        if split.is_none() {
            return Err(Error::NonSplit(f.to_string()));
        }
    }
    let mut grouped: Vec<(Vec<CycElem>, u32)> = Vec::new();
    for coeffs in raw {
        let lead = coeffs.iter().find(|c| !c.is_zero()).expect("factor is nonzero");
        let inv = lead.inv()?;
        let norm: Vec<CycElem> = coeffs.iter().map(|c| c.mul(&inv)).collect();
        match grouped.iter_mut().find(|(g, _)| *g == norm) {
            Some((_, m)) => *m += 1,
            None => grouped.push((norm, 1)),
        }
    }
    MultiArrangement::new(
        nv,
        grouped
            .into_iter()
            .map(|(coeffs, m)| (Poly::linear_form(Ring::Primal, &coeffs), m))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poly::parse_poly;

    fn factor_text(src: &str) -> Result<MultiArrangement<CycElem>> {
        factor_product_of_linear(&cyclotomic_lift(&parse_poly(src, Ring::Primal, 3).unwrap()))
    }

    #[test]
    fn difference_of_squares() {
        let arr = factor_text("x^2-y^2").unwrap();
        assert_eq!(arr.num_hyperplanes(), 2);
        assert!(arr.is_simple());
        let product = arr.defining_poly();
        assert_eq!(product, cyclotomic_lift(&parse_poly("x^2-y^2", Ring::Primal, 3).unwrap()));
    }

    #[test]
    fn classified_sextic_recovers_six_factors() {
        let f1 = catalog::form(1);
        let arr = factor_product_of_linear(&f1).unwrap();
        assert_eq!(arr.num_hyperplanes(), 6);
        assert!(arr.is_simple());
        // all published factors are monic in x, so the product is exact
        assert_eq!(arr.defining_poly(), f1);
    }

    #[test]
    fn repeated_and_variable_factors() {
        let arr = factor_text("x^3yz(x+y+z)").unwrap();
        let mults: Vec<u32> = arr.hyperplanes().iter().map(|(_, m)| *m).collect();
        assert_eq!(arr.total_multiplicity(), 6);
        assert_eq!(mults, vec![3, 1, 1, 1]);

        let arr = factor_text("y^2z(y+z)").unwrap();
        assert_eq!(arr.total_multiplicity(), 4);
        assert_eq!(arr.num_hyperplanes(), 3);
    }

    #[test]
    fn zero_leading_coefficient_retries() {
        let arr = factor_text("(y+z)(x+y)").unwrap();
        assert_eq!(arr.num_hyperplanes(), 2);
        let product = arr.defining_poly();
        let expect = cyclotomic_lift(&parse_poly("(y+z)(x+y)", Ring::Primal, 3).unwrap());
        // pulled-back factors are rescaled, so compare up to the leading scalar
        let ratio = leading_ratio(&product, &expect);
        assert_eq!(product.scalar_mul(&ratio), expect);
    }

    fn leading_ratio(a: &Poly<CycElem>, b: &Poly<CycElem>) -> CycElem {
        let (ea, ca) = a.leading().unwrap();
        b.coeff(ea).mul(&ca.inv().unwrap())
    }

    #[test]
    fn irreducible_quadric_is_reported() {
        assert!(matches!(factor_text("x^2+y^2+z^2"), Err(Error::NonSplit(_))));
        assert!(matches!(factor_text("x^2z + y^3"), Err(Error::NonSplit(_))));
    }

    #[test]
    fn braid_product_splits() {
        let arr = factor_product_of_linear(&cyclotomic_lift(&catalog::braid_product())).unwrap();
        assert_eq!(arr.num_hyperplanes(), 6);
        assert!(!arr.is_generic());
        assert!(arr.is_irreducible());
    }

    #[test]
    fn random_products_round_trip() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..10 {
            let k = 2 + (next() % 3) as usize;
            let mut f = Poly::one(3, Ring::Primal);
            for _ in 0..k {
                let coeffs: Vec<CycElem> = (0..3)
                    .map(|_| CycElem::from_int((next() % 7) as i64 - 3))
                    .collect();
                if coeffs.iter().all(|c| c.is_zero()) {
                    continue;
                }
                f = f.mul(&Poly::linear_form(Ring::Primal, &coeffs)).unwrap();
            }
            if f.homogeneous_degree() == Some(0) {
                continue;
            }
            let arr = factor_product_of_linear(&f).unwrap();
            let product = arr.defining_poly();
            let ratio = leading_ratio(&product, &f);
            assert_eq!(product.scalar_mul(&ratio), f, "trial {trial} mismatch");
        }
    }

    #[test]
    fn cyclotomic_coordinates_are_recognized() {
        // roots at the sixth root of unity and its conjugate
        let omega = CycElem::sixth_root_unity();
        let l1 = Poly::linear_form(Ring::Primal, &[CycElem::one(), omega.clone(), CycElem::zero()]);
        let l2 = Poly::linear_form(Ring::Primal, &[CycElem::one(), omega.conj(), CycElem::from_int(2)]);
        let f = l1.mul(&l2).unwrap();
        let arr = factor_product_of_linear(&f).unwrap();
        assert_eq!(arr.num_hyperplanes(), 2);
        assert_eq!(arr.defining_poly(), f);
    }
}
