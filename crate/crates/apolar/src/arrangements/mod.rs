//! Hyperplane multi-arrangements: the data model, genericity and
//! irreducibility predicates, the sextic normal form, star-configuration
//! generators, and the initial-degree / rank bound calculators.

mod factor;

pub use factor::{cyclotomic_lift, factor_product_of_linear};

use crate::error::{Error, Result};
use crate::field::{Rat, Scalar};
use crate::linalg::Mat;
use crate::poly::{parse_poly, ParseField, Poly, Ring};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// All k-element index subsets of `0..n` in lexicographic order.
pub(crate) fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=n.saturating_sub(need) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A set of pairwise non-proportional hyperplanes in `P^n` with positive
/// multiplicities.  `n = nvars - 1` is the projective ambient dimension.
#[derive(Clone, Debug)]
pub struct MultiArrangement<K: Scalar> {
    nvars: usize,
    hyperplanes: Vec<(Poly<K>, u32)>,
}

fn normalized_coeffs<K: Scalar>(form: &Poly<K>) -> Result<Vec<K>> {
    let v = form.linear_coeffs()?;
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero linear form");
    let inv = lead.inv()?;
    Ok(v.iter().map(|c| c.mul(&inv)).collect())
}

impl<K: Scalar> MultiArrangement<K> {
    pub fn new(nvars: usize, hyperplanes: Vec<(Poly<K>, u32)>) -> Result<Self> {
        if hyperplanes.is_empty() {
            return Err(Error::Precondition("arrangement needs at least one hyperplane".into()));
        }
        let mut seen: Vec<Vec<K>> = Vec::new();
        for (form, mult) in &hyperplanes {
            if form.nvars() != nvars {
                return Err(Error::DimensionMismatch { left: nvars, right: form.nvars() });
            }
            if form.ring() != Ring::Primal {
                return Err(Error::RingMismatch { expected: Ring::Primal.name(), got: form.ring().name() });
            }
            if *mult == 0 {
                return Err(Error::Precondition("multiplicities must be at least 1".into()));
            }
            let norm = normalized_coeffs(form)?;
            if seen.contains(&norm) {
                return Err(Error::Precondition("hyperplane forms must be pairwise non-proportional".into()));
            }
            seen.push(norm);
        }
        Ok(MultiArrangement { nvars, hyperplanes })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Projective ambient dimension `n`.
    pub fn projective_dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn hyperplanes(&self) -> &[(Poly<K>, u32)] {
        &self.hyperplanes
    }

    /// Number of distinct hyperplanes `|A|`.
    pub fn num_hyperplanes(&self) -> usize {
        self.hyperplanes.len()
    }

    /// Total multiplicity `|m|`, the degree of the defining polynomial.
    pub fn total_multiplicity(&self) -> u32 {
        self.hyperplanes.iter().map(|(_, m)| m).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.hyperplanes.iter().all(|(_, m)| *m == 1)
    }

    /// The product of the forms raised to their multiplicities.
    pub fn defining_poly(&self) -> Poly<K> {
        let mut acc = Poly::one(self.nvars, Ring::Primal);
        for (form, mult) in &self.hyperplanes {
            acc = acc.mul(&form.pow(*mult)).expect("same ring");
        }
        acc
    }

    /// Coefficient rows of the distinct forms.
    pub fn normals(&self) -> Vec<Vec<K>> {
        self.hyperplanes
            .iter()
            .map(|(f, _)| f.linear_coeffs().expect("validated linear form"))
            .collect()
    }

    fn subset_rank(&self, normals: &[Vec<K>], subset: &[usize]) -> usize {
        let rows: Vec<Vec<K>> = subset.iter().map(|&i| normals[i].clone()).collect();
        Mat::from_rows(rows).rank()
    }

    /// True iff the arrangement is simple and every `k`-subset of normals,
    /// `k <= n+1`, has rank `min(k, n+1)`.  Returns false for non-simple
    /// input instead of consulting the underlying simple arrangement.
    pub fn is_generic(&self) -> bool {
        if !self.is_simple() {
            return false;
        }
        let normals = self.normals();
        let t = normals.len();
        // singletons are nonzero and pairs non-proportional by construction
        for k in 3..=self.nvars.min(t) {
            for subset in index_subsets(t, k) {
                if self.subset_rank(&normals, &subset) != k.min(self.nvars) {
                    return false;
                }
            }
        }
        true
    }

    /// Matroid connectivity of the normal vectors: reducible iff some
    /// bipartition of the distinct hyperplanes has rank(S1) + rank(S2) equal
    /// to the rank of the whole set.
    pub fn is_irreducible(&self) -> bool {
        let normals = self.normals();
        let t = normals.len();
        if t == 1 {
            return true;
        }
        let full: Vec<usize> = (0..t).collect();
        let total = self.subset_rank(&normals, &full);
        // element 0 stays in the first block; masks range over the rest
        for mask in 0..(1u64 << (t - 1)) {
            let s1: Vec<usize> = std::iter::once(0)
                .chain((1..t).filter(|i| mask >> (i - 1) & 1 == 1))
                .collect();
            if s1.len() == t {
                continue;
            }
            let s2: Vec<usize> = (1..t).filter(|i| mask >> (i - 1) & 1 == 0).collect();
            if self.subset_rank(&normals, &s1) + self.subset_rank(&normals, &s2) == total {
                return false;
            }
        }
        true
    }

    /// Normal form for irreducible sextic multi-arrangements in `P^2`: finds
    /// the lexicographically first four factors with no three linearly
    /// dependent, and returns the change of variables `M` sending them to
    /// `x, y, z, x+y+z` together with the transformed defining polynomial
    /// (so the result has the shape `xyz(x+y+z) * l1 * l2` up to scalar).
    pub fn normalize_six(&self) -> Result<(Mat<K>, Poly<K>)> {
        if self.nvars != 3 || self.total_multiplicity() != 6 {
            return Err(Error::Precondition(
                "normal form requires total multiplicity 6 in the projective plane".into(),
            ));
        }
        if !self.is_irreducible() {
            return Err(Error::Reducible);
        }
        let normals = self.normals();
        let t = normals.len();
        let quad = index_subsets(t, 4)
            .into_iter()
            .find(|q| {
                index_subsets(4, 3)
                    .iter()
                    .all(|tr| self.subset_rank(&normals, &[q[tr[0]], q[tr[1]], q[tr[2]]]) == 3)
            })
            .ok_or_else(|| {
                Error::Internal("irreducible sextic without four factors in general position".into())
            })?;
        let p = Mat::from_rows(quad[..3].iter().map(|&i| normals[i].clone()).collect());
        let pinv = p.inverse()?;
        let a4 = &normals[quad[3]];
        // w = a4^T P^{-1}; no entry vanishes, else three chosen factors are dependent
        let mut m = Mat::zeros(3, 3);
        for j in 0..3 {
            let mut w = K::zero();
            for i in 0..3 {
                w = w.add(&a4[i].mul(pinv.get(i, j)));
            }
            let winv = w.inv().map_err(|_| {
                Error::Internal("degenerate scaling in the four-factor normal form".into())
            })?;
            for i in 0..3 {
                m.set(i, j, pinv.get(i, j).mul(&winv));
            }
        }
        let transformed = self.defining_poly().substitute_linear(&m)?;
        Ok((m, transformed))
    }

    /// Lower bounds implied by genericity; only claimed for simple generic
    /// arrangements with at least `n+1` hyperplanes.
    pub fn bounds(&self) -> Result<BoundReport> {
        let n = self.projective_dim();
        if !self.is_simple() {
            return Err(Error::BoundsInapplicable("arrangement is not simple".into()));
        }
        if self.num_hyperplanes() < n + 1 {
            return Err(Error::BoundsInapplicable(format!(
                "need at least {} hyperplanes in P^{n}",
                n + 1
            )));
        }
        if !self.is_generic() {
            return Err(Error::BoundsInapplicable("arrangement is not generic".into()));
        }
        let a = self.num_hyperplanes();
        Ok(BoundReport {
            alpha_lower: (a - n + 1).min(n + 1),
            ci_min_size: n * (n + 1),
            waring_lower: binomial(a, n).min(binomial(2 * n, n)),
        })
    }
}

/// Lower bounds attached to a simple generic arrangement: the initial degree
/// of the annihilator, the hyperplane count needed for a complete
/// intersection, and the Waring rank of the defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub alpha_lower: usize,
    pub ci_min_size: usize,
    pub waring_lower: usize,
}

/// Serialized arrangement: `n` is the projective dimension, forms are texts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementDoc {
    pub n: usize,
    pub hyperplanes: Vec<HyperplaneDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperplaneDoc {
    pub form: String,
    pub mult: u32,
}

impl<K: ParseField> MultiArrangement<K> {
    pub fn from_doc(doc: &ArrangementDoc) -> Result<Self> {
        let nvars = doc.n + 1;
        let hyperplanes = doc
            .hyperplanes
            .iter()
            .map(|h| {
                let form = parse_poly(&h.form, Ring::Primal, nvars)?;
                if form.nvars() != nvars {
                    return Err(Error::Invalid(format!(
                        "form {} uses more than {} variables",
                        h.form, nvars
                    )));
                }
                Ok((form, h.mult))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiArrangement::new(nvars, hyperplanes)
    }
}

impl<K: Scalar> MultiArrangement<K> {
    pub fn to_doc(&self) -> ArrangementDoc {
        ArrangementDoc {
            n: self.projective_dim(),
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|(f, m)| HyperplaneDoc { form: f.to_string(), mult: *m })
                .collect(),
        }
    }
}

/// Generators of the codimension-`c` star configuration on `forms`: all
/// products of `t - c + 1` distinct forms, `t` the number of forms, in
/// lexicographic subset order.
pub fn star_config_generators<K: Scalar>(forms: &[Poly<K>], codim: usize) -> Result<Vec<Poly<K>>> {
    if forms.is_empty() {
        return Err(Error::Precondition("star configuration needs at least one form".into()));
    }
    let nvars = forms[0].nvars();
    let mut seen: Vec<Vec<K>> = Vec::new();
    for f in forms {
        if f.nvars() != nvars {
            return Err(Error::DimensionMismatch { left: nvars, right: f.nvars() });
        }
        let norm = normalized_coeffs(f)?;
        if seen.contains(&norm) {
            return Err(Error::Precondition("forms must be pairwise non-proportional".into()));
        }
        seen.push(norm);
    }
    let t = forms.len();
    if codim == 0 || codim > nvars {
        return Err(Error::Precondition(format!(
            "codimension must lie in 1..={nvars}, got {codim}"
        )));
    }
    if codim > t {
        return Err(Error::Precondition(format!(
            "codimension {codim} exceeds the number of forms {t}"
        )));
    }
    let size = t - codim + 1;
    Ok(index_subsets(t, size)
        .into_iter()
        .map(|subset| {
            subset.iter().fold(Poly::one(nvars, Ring::Primal), |acc, &i| {
                acc.mul(&forms[i]).expect("same ring")
            })
        })
        .collect())
}

/// Rejection-sample a simple generic arrangement with small integer
/// coefficients.
pub fn sample_generic(n: usize, hyperplanes: usize, rng: &mut impl Rng) -> MultiArrangement<Rat> {
    assert!(hyperplanes >= 1 && n >= 1, "need a nonempty arrangement in positive dimension");
    for _ in 0..10_000 {
        let forms: Vec<(Poly<Rat>, u32)> = (0..hyperplanes)
            .map(|_| {
                let coeffs: Vec<Rat> =
                    (0..=n).map(|_| Rat::from_int(rng.gen_range(-4..=4))).collect();
                (Poly::linear_form(Ring::Primal, &coeffs), 1)
            })
            .collect();
        if forms.iter().any(|(f, _)| f.is_zero()) {
            continue;
        }
        if let Ok(arr) = MultiArrangement::new(n + 1, forms) {
            if arr.is_generic() {
                return arr;
            }
        }
    }
    panic!("generic sampling failed; coefficient pool too small for the requested size");
}
