//! Waring decompositions: exact verification, point ideals, the apolarity
//! certificate, and catalecticant rank lower bounds.
//!
//! A Waring decomposition writes a degree-`d` form as `f = Σ cᵢ ℓᵢ^d` with
//! linear `ℓᵢ`.  Each `ℓᵢ = Σ aⱼxⱼ` is dual to the projective point
//! `[a₀:…:aₙ]`, and the apolarity lemma reduces the existence of such a
//! decomposition over a point set `X` to the ideal containment
//! `I_X ⊆ Ann(f)`, which this module checks degree by degree.

use crate::apolarity::{ann_component, hilbert, GradedBasis};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{kernel_vectors, Mat};
use crate::poly::{monomials_desc, parse_const, parse_poly, Exponent, ParseField, Poly, Ring};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A set of pairwise distinct projective points.
///
/// Representatives are stored as given (decomposition coefficients depend on
/// them); distinctness is decided on the normalized form with first nonzero
/// coordinate scaled to one.
#[derive(Clone, Debug)]
pub struct PointSet<K: Scalar> {
    points: Vec<Vec<K>>,
}

fn normalize_point<K: Scalar>(p: &[K]) -> Result<Vec<K>> {
    let lead = p
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::Precondition("projective point must be nonzero".into()))?;
    let inv = lead.inv()?;
    Ok(p.iter().map(|c| c.mul(&inv)).collect())
}

impl<K: Scalar> PointSet<K> {
    pub fn new(points: Vec<Vec<K>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("point set must be nonempty".into()));
        }
        let dim = points[0].len();
        let mut seen: Vec<Vec<K>> = Vec::new();
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.len() });
            }
            let norm = normalize_point(p)?;
            if seen.contains(&norm) {
                return Err(Error::Precondition("points must be pairwise distinct".into()));
            }
            seen.push(norm);
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_vars(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<K>] {
        &self.points
    }

    /// Representatives rescaled so the first nonzero coordinate is one.
    pub fn normalized(&self) -> Vec<Vec<K>> {
        self.points.iter().map(|p| normalize_point(p).expect("validated")).collect()
    }

    /// The linear forms dual to the points, with the stored representatives.
    pub fn dual_forms(&self) -> Vec<Poly<K>> {
        self.points
            .iter()
            .map(|p| Poly::linear_form(Ring::Primal, p))
            .collect()
    }
}

/// One summand of a decomposition: `sign * coeff * (dual form of point)^d`.
#[derive(Clone, Debug)]
pub struct CertTerm<K: Scalar> {
    pub point: Vec<K>,
    pub coeff: K,
    pub sign: i8,
}

impl<K: Scalar> CertTerm<K> {
    pub fn effective_coeff(&self) -> K {
        match self.sign {
            s if s < 0 => self.coeff.neg(),
            _ => self.coeff.clone(),
        }
    }
}

/// A claimed Waring decomposition of `form` into `terms.len()` powers.
#[derive(Clone, Debug)]
pub struct WaringCertificate<K: Scalar> {
    pub form: Poly<K>,
    pub degree: u32,
    pub terms: Vec<CertTerm<K>>,
}

/// Serialized certificate: coefficients and coordinates as field-syntax text.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub form: String,
    pub degree: u32,
    pub terms: Vec<CertTermDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertTermDoc {
    pub point: Vec<String>,
    pub coeff: String,
    pub sign: i8,
}

impl<K: ParseField> WaringCertificate<K> {
    pub fn from_doc(doc: &CertificateDoc) -> Result<Self> {
        let form = parse_poly(&doc.form, Ring::Primal, 0)?;
        let terms = doc
            .terms
            .iter()
            .map(|t| {
                Ok(CertTerm {
                    point: t.point.iter().map(|s| parse_const(s)).collect::<Result<_>>()?,
                    coeff: parse_const(&t.coeff)?,
                    sign: t.sign,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WaringCertificate { form, degree: doc.degree, terms })
    }
}

impl<K: Scalar> WaringCertificate<K> {
    pub fn to_doc(&self) -> CertificateDoc {
        CertificateDoc {
            form: self.form.to_string(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|t| CertTermDoc {
                    point: t.point.iter().map(|c| c.to_string()).collect(),
                    coeff: t.coeff.to_string(),
                    sign: t.sign,
                })
                .collect(),
        }
    }

    pub fn point_set(&self) -> Result<PointSet<K>> {
        PointSet::new(self.terms.iter().map(|t| t.point.clone()).collect())
    }
}

/// Expand `Σ sign·coeff·ℓ^d` and compare with the certified form exactly.
pub fn verify_decomposition<K: Scalar>(cert: &WaringCertificate<K>) -> Result<bool> {
    let d = cert.form.require_homogeneous()?;
    if d != cert.degree {
        return Err(Error::DegreeOutOfRange { degree: cert.degree, max: d });
    }
    let nv = cert.form.nvars();
    let mut sum = Poly::zero(nv, Ring::Primal);
    for term in &cert.terms {
        if term.point.len() != nv {
            return Err(Error::DimensionMismatch { left: nv, right: term.point.len() });
        }
        let ell = Poly::linear_form(Ring::Primal, &term.point);
        sum = sum.add(&ell.pow(d).scalar_mul(&term.effective_coeff()))?;
    }
    Ok(sum == cert.form)
}

/// Basis of the degree-`t` forms in `R` vanishing at every point of `X`:
/// the kernel of the evaluation matrix (rows = points, columns = degree-`t`
/// monomials).
pub fn point_ideal_component<K: Scalar>(x: &PointSet<K>, t: u32) -> GradedBasis<K> {
    let nv = x.ambient_vars();
    let monos = monomials_desc(nv, t);
    let mut mat = Mat::zeros(x.len(), monos.len());
    for (i, p) in x.points().iter().enumerate() {
        for (j, e) in monos.iter().enumerate() {
            let mut v = K::one();
            for (c, &k) in p.iter().zip(&e.0) {
                for _ in 0..k {
                    v = v.mul(c);
                }
            }
            mat.set(i, j, v);
        }
    }
    let basis = kernel_vectors(&mat)
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(nv, Ring::Dual);
            for (e, c) in monos.iter().zip(&v) {
                p = p
                    .add(&Poly::monomial(nv, Ring::Dual, e.clone(), c.clone()))
                    .expect("same ring");
            }
            p
        })
        .collect();
    GradedBasis { degree: t, basis }
}

/// Apolarity-lemma certificate: check `I_X ⊆ Ann(f)` degree by degree, then
/// solve `f = Σ cᵢ ℓᵢ^d` for the coefficients, using the point
/// representatives as stored.
///
/// Containment failure is an error naming the offending degree and a witness
/// operator; an inconsistent coefficient system (possible only if the
/// containment logic were bypassed) is also an error.
pub fn apolarity_certificate<K: Scalar>(f: &Poly<K>, x: &PointSet<K>) -> Result<Vec<K>> {
    let d = f.require_homogeneous()?;
    let nv = f.nvars();
    if x.ambient_vars() != nv {
        return Err(Error::DimensionMismatch { left: nv, right: x.ambient_vars() });
    }
    for t in 1..=d {
        let component = point_ideal_component(x, t);
        for op in &component.basis {
            if !crate::poly::apolar_act(op, f)?.is_zero() {
                return Err(Error::Invalid(format!(
                    "point ideal exceeds the annihilator in degree {t}: witness {op}"
                )));
            }
        }
    }
    let monos = monomials_desc(nv, d);
    let idx: HashMap<Exponent, usize> =
        monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let mut mat = Mat::zeros(monos.len(), x.len());
    for (j, ell) in x.dual_forms().iter().enumerate() {
        for (e, c) in ell.pow(d).terms() {
            mat.set(idx[e], j, c.clone());
        }
    }
    let mut rhs = vec![K::zero(); monos.len()];
    for (e, c) in f.terms() {
        rhs[idx[e]] = c.clone();
    }
    mat.solve(&rhs)
        .map_err(|_| Error::Invalid("no coefficients fit the decomposition".into()))
}

/// Largest Hilbert-function value of the apolar algebra: a lower bound for
/// both the Waring rank and the cactus rank of `f`.
pub fn rank_lower_bound<K: Scalar>(f: &Poly<K>) -> Result<usize> {
    let hd = hilbert(f)?;
    Ok(hd.h_vector.iter().copied().max().unwrap_or(0))
}

/// Convenience wrapper: the number of degree-`t` annihilators of `f` that the
/// point ideal is allowed to use, `dim Ann(f)_t - dim I_X(t)`, is nonnegative
/// when the certificate containment holds in degree `t`.
pub fn containment_slack<K: Scalar>(f: &Poly<K>, x: &PointSet<K>, t: u32) -> Result<i64> {
    let ann = ann_component(f, t)?;
    let pts = point_ideal_component(x, t);
    Ok(ann.dim() as i64 - pts.dim() as i64)
}
