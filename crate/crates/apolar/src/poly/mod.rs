//! Sparse multivariate polynomials, differentiation, and the apolar action.
//!
//! Two graded rings share one representation: the primal ring `S = K[x_0..x_n]`
//! holds the forms being studied, the dual ring `R = K[X_0..X_n]` holds the
//! differential operators acting on them.  The ring is a tag checked at
//! operation boundaries; `apolar_act` demands a dual operator and a primal
//! target, which catches argument mixups at almost no cost.
//!
//! Term order is graded lexicographic with `x_0 > x_1 > ...`; iteration is
//! ascending, printing and matrix index conventions are descending.

mod parse;

pub use parse::{parse_const, parse_poly, ParseField};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use std::collections::BTreeMap;
use std::fmt;

/// Monomial exponent vector.  Ordered by total degree, then lexicographically,
/// so the maximum of a set of same-degree exponents is the lex-largest.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zeros(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// All degree-`d` exponents in `nvars` variables, in descending graded-lex
/// order.  This is the row/column index convention for catalecticant and
/// evaluation matrices.
pub fn monomials_desc(nvars: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(slot: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if slot + 1 == cur.len() {
            cur[slot] = remaining;
            out.push(Exponent(cur.clone()));
            return;
        }
        for e in (0..=remaining).rev() {
            cur[slot] = e;
            rec(slot + 1, remaining - e, cur, out);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Exponent(vec![]));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Number of degree-`d` monomials in `nvars` variables, `C(nvars-1+d, d)`.
pub fn monomial_count(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..(nvars as u128 - 1) {
        num *= d as u128 + 1 + i;
        den *= i + 1;
    }
    (num / den) as usize
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ring {
    /// `S = K[x_0..x_n]`, the forms acted upon.
    Primal,
    /// `R = K[X_0..X_n]`, the differential operators.
    Dual,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Primal => "primal",
            Ring::Dual => "dual",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<K: Scalar> {
    nvars: usize,
    ring: Ring,
    terms: BTreeMap<Exponent, K>,
}

impl<K: Scalar> Poly<K> {
    pub fn zero(nvars: usize, ring: Ring) -> Self {
        Poly { nvars, ring, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, ring: Ring, c: K) -> Self {
        let mut p = Self::zero(nvars, ring);
        if !c.is_zero() {
            p.terms.insert(Exponent::zeros(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, ring: Ring) -> Self {
        Self::constant(nvars, ring, K::one())
    }

    pub fn variable(nvars: usize, ring: Ring, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0u32; nvars];
        e[index] = 1;
        Self::monomial(nvars, ring, Exponent(e), K::one())
    }

    pub fn monomial(nvars: usize, ring: Ring, e: Exponent, c: K) -> Self {
        assert_eq!(e.len(), nvars, "exponent length mismatch");
        let mut p = Self::zero(nvars, ring);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Linear form from a coefficient vector.
    pub fn linear_form(ring: Ring, coeffs: &[K]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars, ring);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; nvars];
                e[i] = 1;
                p.terms.insert(Exponent(e), c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Ascending graded-lex iteration.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Exponent, &K)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// `Some(d)` when every term has total degree `d` (the zero polynomial is
    /// homogeneous of every degree; it reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Exponent::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn require_homogeneous(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.homogeneous_degree().ok_or(Error::NotHomogeneous)
    }

    pub fn is_linear_form(&self) -> bool {
        !self.is_zero() && self.homogeneous_degree() == Some(1)
    }

    /// Coefficient vector of a linear form.
    pub fn linear_coeffs(&self) -> Result<Vec<K>> {
        if !self.is_linear_form() {
            return Err(Error::Precondition("expected a nonzero linear form".into()));
        }
        let mut v = vec![K::zero(); self.nvars];
        for (e, c) in &self.terms {
            let i = e.0.iter().position(|&x| x == 1).unwrap();
            v[i] = c.clone();
        }
        Ok(v)
    }

    fn check_compat(&self, rhs: &Self) -> Result<()> {
        if self.nvars != rhs.nvars {
            return Err(Error::DimensionMismatch { left: self.nvars, right: rhs.nvars });
        }
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch { expected: self.ring.name(), got: rhs.ring.name() });
        }
        Ok(())
    }

    fn insert_add(&mut self, e: Exponent, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.ring);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = Self::zero(self.nvars, self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(e1.add(e2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &K) -> Self {
        let mut out = Self::zero(self.nvars, self.ring);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.insert_add(e.clone(), v.mul(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.nvars, self.ring);
        for _ in 0..n {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Formal partial derivative in variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars, self.ring);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[var] = k - 1;
            out.insert_add(ne, c.mul(&K::from_int(k as i64)));
        }
        out
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute polynomials for a subset of the variables; the result keeps
    /// the same variable count.
    pub fn substitute(&self, images: &[(usize, Poly<K>)]) -> Result<Self> {
        for (_, img) in images {
            self.check_compat(img)?;
        }
        let mut out = Self::zero(self.nvars, self.ring);
        let max_pow: BTreeMap<usize, u32> = images
            .iter()
            .map(|(v, _)| (*v, self.terms.keys().map(|e| e.0[*v]).max().unwrap_or(0)))
            .collect();
        let mut powers: BTreeMap<usize, Vec<Poly<K>>> = BTreeMap::new();
        for (v, img) in images {
            let mut ps = vec![Self::one(self.nvars, self.ring)];
            for k in 1..=max_pow[v] {
                ps.push(ps[(k - 1) as usize].mul(img)?);
            }
            powers.insert(*v, ps);
        }
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let mut factor = Self::constant(self.nvars, self.ring, c.clone());
            for (v, ps) in &powers {
                let k = rest.0[*v];
                rest.0[*v] = 0;
                if k > 0 {
                    factor = factor.mul(&ps[k as usize])?;
                }
            }
            let term = factor.mul(&Self::monomial(self.nvars, self.ring, rest, K::one()))?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Linear change of variables `x_i <- sum_j M[i][j] x_j`; `M` must be
    /// invertible so the degree (and splitting behavior) is preserved.
    pub fn substitute_linear(&self, m: &Mat<K>) -> Result<Self> {
        if m.nrows() != self.nvars || m.ncols() != self.nvars {
            return Err(Error::DimensionMismatch { left: m.nrows(), right: self.nvars });
        }
        if !m.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<(usize, Poly<K>)> = (0..self.nvars)
            .map(|i| (i, Poly::linear_form(self.ring, m.row(i))))
            .collect();
        self.substitute(&images)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`; the
    /// returned slice has the `var` exponent zeroed out of each coefficient.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<Poly<K>> {
        let top = self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0);
        let mut out = vec![Self::zero(self.nvars, self.ring); (top + 1) as usize];
        for (e, c) in &self.terms {
            let k = e.0[var];
            let mut ne = e.clone();
            ne.0[var] = 0;
            out[k as usize].insert_add(ne, c.clone());
        }
        out
    }

    /// Map coefficients into another field.
    pub fn map_coeffs<K2: Scalar>(&self, mut f: impl FnMut(&K) -> K2) -> Poly<K2> {
        let mut out = Poly::zero(self.nvars, self.ring);
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// Render with explicit variable names (one per variable).
    pub fn to_text(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "name count mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = c.display_parts();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push('-');
            } else {
                s.push('+');
            }
            let mono = format_monomial(e, names);
            if mono.is_empty() {
                s.push_str(&body);
            } else if body == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&body);
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn format_monomial(e: &Exponent, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.0.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

/// Default variable names: `x,y,z` / `X,Y,Z` for up to three variables, indexed
/// names beyond that.
pub fn default_names(ring: Ring, nvars: usize) -> Vec<String> {
    let letters = match ring {
        Ring::Primal => ["x", "y", "z"],
        Ring::Dual => ["X", "Y", "Z"],
    };
    if nvars <= 3 {
        letters[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        let base = match ring {
            Ring::Primal => "x",
            Ring::Dual => "X",
        };
        (0..nvars).map(|i| format!("{base}{i}")).collect()
    }
}

impl<K: Scalar> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&default_names(self.ring, self.nvars)))
    }
}

/// The apolar action `Phi(d/dx_0, ..., d/dx_n) f`.
///
/// On monomials, `X^a` acting on `x^b` gives the falling-factorial multiple
/// `prod_i b_i!/(b_i - a_i)! * x^(b-a)` when `b >= a` componentwise, else zero.
pub fn apolar_act<K: Scalar>(phi: &Poly<K>, f: &Poly<K>) -> Result<Poly<K>> {
    if phi.nvars != f.nvars {
        return Err(Error::DimensionMismatch { left: phi.nvars, right: f.nvars });
    }
    if phi.ring != Ring::Dual {
        return Err(Error::RingMismatch { expected: "dual", got: phi.ring.name() });
    }
    if f.ring != Ring::Primal {
        return Err(Error::RingMismatch { expected: "primal", got: f.ring.name() });
    }
    let mut out = Poly::zero(f.nvars, Ring::Primal);
    for (a, ca) in &phi.terms {
        for (b, cb) in &f.terms {
            if !a.divides(b) {
                continue;
            }
            let mut mult: i64 = 1;
            for i in 0..a.len() {
                let (ai, bi) = (a.0[i] as i64, b.0[i] as i64);
                for t in 0..ai {
                    mult *= bi - t;
                }
            }
            out.insert_add(b.sub(a), ca.mul(cb).mul(&K::from_int(mult)));
        }
    }
    Ok(out)
}

/// Gradient pairing `grad(F) . grad(l)` for a dual form `F` and a primal linear
/// form `l`: the coefficients of `l` contract the partials of `F`, dropping the
/// degree of `F` by one.
pub fn gradient_dot<K: Scalar>(f_dual: &Poly<K>, ell: &Poly<K>) -> Result<Poly<K>> {
    if f_dual.nvars != ell.nvars {
        return Err(Error::DimensionMismatch { left: f_dual.nvars, right: ell.nvars });
    }
    if f_dual.ring != Ring::Dual {
        return Err(Error::RingMismatch { expected: "dual", got: f_dual.ring.name() });
    }
    let deg = f_dual.require_homogeneous()?;
    if deg == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, max: 0 });
    }
    let coeffs = ell.linear_coeffs()?;
    let mut out = Poly::zero(f_dual.nvars, Ring::Dual);
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = out.add(&f_dual.partial(i).scalar_mul(c))?;
    }
    Ok(out)
}
