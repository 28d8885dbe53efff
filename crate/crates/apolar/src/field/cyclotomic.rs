//! The cyclotomic field `Q(z)` where `z = exp(i*pi/6)` is a primitive 12th root
//! of unity with minimal polynomial `z^4 - z^2 + 1`.
//!
//! Elements are stored as `a0 + a1*z + a2*z^2 + a3*z^3` with rational
//! coordinates; that degree-<4 representative is canonical, so equality is
//! componentwise.  The field contains every constant needed by the sextic
//! catalog: the cube root of unity `exp(2*pi*i/3) = z^2 - 1`, the sixth root
//! `exp(i*pi/3) = z^2`, `i = z^3`, `sqrt(3) = 2z - z^3`, and
//! `(1/sqrt(3))exp(i*pi/6) = (z^2 + 1)/3`.

use crate::error::{Error, Result};
use crate::field::{Rat, Scalar};
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycElem {
    /// Coordinates `[a0, a1, a2, a3]` in the power basis `1, z, z^2, z^3`.
    c: [Rat; 4],
}

impl CycElem {
    pub fn new(c: [Rat; 4]) -> Self {
        CycElem { c }
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.c
    }

    /// The generator `z = exp(i*pi/6)`.
    pub fn primitive_root() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    /// `i = z^3`.
    pub fn imaginary_unit() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// Primitive cube root of unity `exp(2*pi*i/3) = z^2 - 1`.
    pub fn cube_root_unity() -> Self {
        Self::from_ints(-1, 0, 1, 0)
    }

    /// Primitive sixth root of unity `exp(i*pi/3) = z^2`.
    pub fn sixth_root_unity() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    /// `(1/sqrt(3)) * exp(i*pi/6) = (z^2 + 1)/3`.
    pub fn eta() -> Self {
        CycElem::new([Rat::from_pair(1, 3), Rat::zero(), Rat::from_pair(1, 3), Rat::zero()])
    }

    /// `sqrt(3) = 2z - z^3`.
    pub fn sqrt3() -> Self {
        Self::from_ints(0, 2, 0, -1)
    }

    pub fn from_ints(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        CycElem::new([
            Rat::from_int(a0),
            Rat::from_int(a1),
            Rat::from_int(a2),
            Rat::from_int(a3),
        ])
    }

    /// Complex conjugation, the automorphism `z -> z^(-1) = z - z^3`.
    pub fn conj(&self) -> Self {
        let [a0, a1, a2, a3] = &self.c;
        CycElem::new([
            a0.add(a2),
            a1.clone(),
            a2.neg(),
            a1.neg().sub(a3),
        ])
    }

    /// Galois automorphism `z -> z^k`; `k` must be coprime to 12
    /// (`k` in 1, 5, 7, 11).
    pub fn galois(&self, k: u32) -> Result<Self> {
        if ![1, 5, 7, 11].contains(&k) {
            return Err(Error::Invalid(format!("galois exponent {k} not coprime to 12")));
        }
        // image of z^j is z^(jk), reduced
        let mut out = CycElem::from_rat(self.c[0].clone());
        let mut zk = zeta_power(k);
        for j in 1..4 {
            out = out.add(&zk.scale(&self.c[j]));
            zk = zk.mul(&zeta_power(k));
        }
        Ok(out)
    }

    pub fn from_rat(r: Rat) -> Self {
        CycElem::new([r, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    /// The rational coordinate when the element lies in `Q`, else `None`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycElem::new([
            self.c[0].mul(r),
            self.c[1].mul(r),
            self.c[2].mul(r),
            self.c[3].mul(r),
        ])
    }

    fn nonzero_component_count(&self) -> usize {
        self.c.iter().filter(|v| !v.is_zero()).count()
    }
}

/// `z^k` reduced to the power basis.
fn zeta_power(k: u32) -> CycElem {
    let mut out = CycElem::one();
    let z = CycElem::primitive_root();
    for _ in 0..(k % 12) {
        out = out.mul(&z);
    }
    out
}

/// Multiplication of power-basis representatives followed by reduction with
/// `z^4 = z^2 - 1` (hence `z^5 = z^3 - z`, `z^6 = -1`).
fn reduce_mul(a: &[Rat; 4], b: &[Rat; 4]) -> [Rat; 4] {
    let mut raw = [
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
    ];
    for i in 0..4 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if b[j].is_zero() {
                continue;
            }
            raw[i + j] = raw[i + j].add(&a[i].mul(&b[j]));
        }
    }
    let r6 = raw[6].clone();
    raw[0] = raw[0].sub(&r6);
    let r5 = raw[5].clone();
    raw[3] = raw[3].add(&r5);
    raw[1] = raw[1].sub(&r5);
    let r4 = raw[4].clone();
    raw[2] = raw[2].add(&r4);
    raw[0] = raw[0].sub(&r4);
    [raw[0].clone(), raw[1].clone(), raw[2].clone(), raw[3].clone()]
}

/// Extended Euclidean inverse in `Q[t]/(t^4 - t^2 + 1)`.
///
/// Polynomials are coefficient vectors in ascending degree.  The modulus is
/// irreducible over `Q`, so the gcd with any nonzero representative is a unit.
fn euclid_inverse(a: &[Rat; 4]) -> [Rat; 4] {
    type P = Vec<Rat>;
    fn deg(p: &P) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }
    fn trim(mut p: P) -> P {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }
    fn sub_scaled(p: &P, q: &P, c: &Rat, shift: usize) -> P {
        // p - c * t^shift * q
        let mut out = p.clone();
        if out.len() < q.len() + shift {
            out.resize(q.len() + shift, Rat::zero());
        }
        for (i, qc) in q.iter().enumerate() {
            out[i + shift] = out[i + shift].sub(&c.mul(qc));
        }
        trim(out)
    }
    fn divmod(num: &P, den: &P) -> (P, P) {
        let dd = deg(den).expect("division by zero polynomial");
        let lead_inv = den[dd].inv().expect("nonzero lead");
        let mut rem = num.clone();
        let mut quo = vec![Rat::zero(); num.len()];
        while let Some(dr) = deg(&rem) {
            if dr < dd {
                break;
            }
            let c = rem[dr].mul(&lead_inv);
            quo[dr - dd] = quo[dr - dd].add(&c);
            rem = sub_scaled(&rem, den, &c, dr - dd);
        }
        (trim(quo), rem)
    }
    fn mul(p: &P, q: &P) -> P {
        if p.is_empty() || q.is_empty() {
            return vec![];
        }
        let mut out = vec![Rat::zero(); p.len() + q.len() - 1];
        for (i, pc) in p.iter().enumerate() {
            for (j, qc) in q.iter().enumerate() {
                out[i + j] = out[i + j].add(&pc.mul(qc));
            }
        }
        trim(out)
    }
    fn sub(p: &P, q: &P) -> P {
        let n = p.len().max(q.len());
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            let a = p.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = q.get(i).cloned().unwrap_or_else(Rat::zero);
            out[i] = a.sub(&b);
        }
        trim(out)
    }

    let modulus: P = vec![
        Rat::one(),
        Rat::zero(),
        Rat::from_int(-1),
        Rat::zero(),
        Rat::one(),
    ];
    let elem: P = trim(a.to_vec());

    // Invariant: r0 = s0*modulus + t0*elem and likewise for r1.
    let (mut r0, mut r1) = (modulus, elem);
    let (mut t0, mut t1): (P, P) = (vec![], vec![Rat::one()]);
    while deg(&r1).is_some() {
        let (q, rem) = divmod(&r0, &r1);
        let tn = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = tn;
    }
    let unit_inv = r0[deg(&r0).expect("gcd nonzero")].inv().expect("unit");
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
    for (i, c) in t0.iter().enumerate() {
        out[i] = c.mul(&unit_inv);
    }
    out
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..4).rev() {
            let c = &self.c[k];
            if c.is_zero() {
                continue;
            }
            let (neg, body) = c.display_parts();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z12".to_string(),
                _ => format!("z12^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Scalar for CycElem {
    const EXACT: bool = true;

    fn zero() -> Self {
        CycElem::from_rat(Rat::zero())
    }

    fn one() -> Self {
        CycElem::from_rat(Rat::one())
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        CycElem::new([
            self.c[0].add(&rhs.c[0]),
            self.c[1].add(&rhs.c[1]),
            self.c[2].add(&rhs.c[2]),
            self.c[3].add(&rhs.c[3]),
        ])
    }

    fn sub(&self, rhs: &Self) -> Self {
        CycElem::new([
            self.c[0].sub(&rhs.c[0]),
            self.c[1].sub(&rhs.c[1]),
            self.c[2].sub(&rhs.c[2]),
            self.c[3].sub(&rhs.c[3]),
        ])
    }

    fn mul(&self, rhs: &Self) -> Self {
        CycElem::new(reduce_mul(&self.c, &rhs.c))
    }

    fn neg(&self) -> Self {
        CycElem::new([
            self.c[0].neg(),
            self.c[1].neg(),
            self.c[2].neg(),
            self.c[3].neg(),
        ])
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CycElem::new(euclid_inverse(&self.c)))
    }

    fn from_int(n: i64) -> Self {
        CycElem::from_rat(Rat::from_int(n))
    }

    fn from_rat(r: &Rat) -> Self {
        CycElem::from_rat(r.clone())
    }

    fn embed(&self) -> Complex64 {
        // z = exp(i*pi/6) = (sqrt(3) + i)/2
        let z = Complex64::new(3f64.sqrt() / 2.0, 0.5);
        let mut acc = Complex64::new(self.c[0].to_f64(), 0.0);
        let mut zk = z;
        for j in 1..4 {
            acc += zk * self.c[j].to_f64();
            zk *= z;
        }
        acc
    }

    fn from_complex(_: Complex64) -> Option<Self> {
        None
    }

    fn display_parts(&self) -> (bool, String) {
        match self.nonzero_component_count() {
            0 => (false, "0".to_string()),
            1 => {
                let k = (0..4).find(|&k| !self.c[k].is_zero()).unwrap();
                let (neg, body) = self.c[k].display_parts();
                let s = match k {
                    0 => body,
                    1 if body == "1" => "z12".to_string(),
                    1 => format!("{body}*z12"),
                    _ if body == "1" => format!("z12^{k}"),
                    _ => format!("{body}*z12^{k}"),
                };
                (neg, s)
            }
            _ => (false, format!("({self})")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CycElem {
        CycElem::primitive_root()
    }

    #[test]
    fn minimal_polynomial_vanishes() {
        // z^4 - z^2 + 1 = 0
        let z4 = z().mul(&z()).mul(&z()).mul(&z());
        let z2 = z().mul(&z());
        assert!(z4.sub(&z2).add(&CycElem::one()).is_zero());
    }

    #[test]
    fn twelfth_root_of_unity() {
        let mut p = CycElem::one();
        for _ in 0..12 {
            p = p.mul(&z());
        }
        assert_eq!(p, CycElem::one());
    }

    #[test]
    fn conjugation_is_inversion() {
        assert_eq!(z().conj(), z().inv().unwrap());
        assert_eq!(z().conj().conj(), z());
        // conj fixes rationals
        let r = CycElem::from_rat(Rat::from_pair(7, 3));
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn cube_root_relations() {
        let a = CycElem::cube_root_unity();
        assert_eq!(a.mul(&a).mul(&a), CycElem::one());
        assert_eq!(a.mul(&a.conj()), CycElem::one());
    }

    #[test]
    fn eta_norm_is_one_third() {
        let eta = CycElem::eta();
        assert_eq!(
            eta.mul(&eta.conj()),
            CycElem::from_rat(Rat::from_pair(1, 3))
        );
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = CycElem::sqrt3();
        assert_eq!(s.mul(&s), CycElem::from_int(3));
    }

    #[test]
    fn embedding_constants() {
        let i = CycElem::imaginary_unit().embed();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let a = CycElem::cube_root_unity().embed();
        assert!((a - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
        let eta = CycElem::eta().embed();
        assert!((eta - Complex64::new(0.5, 0.5 / 3f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn euclid_inverse_random_elements() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        for _ in 0..200 {
            let e = CycElem::from_ints(next(), next(), next(), next());
            if e.is_zero() {
                continue;
            }
            assert_eq!(e.mul(&e.inv().unwrap()), CycElem::one());
        }
    }

    #[test]
    fn galois_orbit_of_generator() {
        let z5 = z().galois(5).unwrap();
        let mut p = CycElem::one();
        for _ in 0..5 {
            p = p.mul(&z());
        }
        assert_eq!(z5, p);
        // z -> z^11 is conjugation
        assert_eq!(z().galois(11).unwrap(), z().conj());
        assert!(z().galois(2).is_err());
    }

    #[test]
    fn display_round_forms() {
        assert_eq!(CycElem::cube_root_unity().to_string(), "z12^2-1");
        assert_eq!(CycElem::eta().to_string(), "1/3*z12^2+1/3");
        assert_eq!(CycElem::imaginary_unit().to_string(), "z12^3");
        assert_eq!(CycElem::zero().to_string(), "0");
    }
}
