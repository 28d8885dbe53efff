//! The six classified sextics `f1..f6` with their published annihilating
//! cubics and Waring decompositions, used as the regression corpus.
//!
//! Each form is `xyz(x+y+z)(ax+by+cz)(dx+ey+fz)` over the cyclotomic field,
//! with `α = exp(2πi/3)`, `ω = exp(πi/3)`, `η = exp(πi/6)/√3`, `β = 1+i`.

use crate::error::{Error, Result};
use crate::field::{CycElem, Rat, Scalar};
use crate::poly::{parse_poly, Poly, Ring};
use crate::waring::{CertTerm, WaringCertificate};

fn one() -> CycElem {
    CycElem::one()
}

fn zero() -> CycElem {
    CycElem::zero()
}

/// Coefficient triples of the fifth and sixth factors of `form(i)`.
pub fn factor_params(i: usize) -> [[CycElem; 3]; 2] {
    let alpha = CycElem::cube_root_unity();
    let omega = CycElem::sixth_root_unity();
    let eta = CycElem::eta();
    match i {
        1 => [[one(), alpha.clone(), alpha.conj()], [one(), alpha.conj(), alpha]],
        2 => [[one(), eta.clone(), omega.clone()], [one(), eta.conj(), omega.conj()]],
        3 => [[one(), omega.conj(), omega.clone()], [one(), eta.conj(), eta.clone()]],
        4 => [[one(), omega.clone(), omega.conj()], [one(), eta.clone(), eta.conj()]],
        5 => [[one(), one(), zero()], [zero(), one(), one()]],
        6 => [[one(), zero(), zero()], [one(), zero(), zero()]],
        _ => panic!("form index must be 1..=6, got {i}"),
    }
}

/// The sextic `f_i = xyz(x+y+z)(ax+by+cz)(dx+ey+fz)`, expanded.
pub fn form(i: usize) -> Poly<CycElem> {
    let [p, q] = factor_params(i);
    let x = Poly::variable(3, Ring::Primal, 0);
    let y = Poly::variable(3, Ring::Primal, 1);
    let z = Poly::variable(3, Ring::Primal, 2);
    let s = Poly::linear_form(Ring::Primal, &[one(), one(), one()]);
    let l5 = Poly::linear_form(Ring::Primal, &p);
    let l6 = Poly::linear_form(Ring::Primal, &q);
    [&y, &z, &s, &l5, &l6]
        .iter()
        .fold(x, |acc, g| acc.mul(g).expect("same ring"))
}

/// Resolve the names `f1`..`f6`.
pub fn form_by_name(name: &str) -> Result<Poly<CycElem>> {
    match name {
        "f1" => Ok(form(1)),
        "f2" => Ok(form(2)),
        "f3" => Ok(form(3)),
        "f4" => Ok(form(4)),
        "f5" => Ok(form(5)),
        "f6" => Ok(form(6)),
        _ => Err(Error::Invalid(format!("unknown form name {name:?}"))),
    }
}

fn eta_row(e: &str) -> Vec<String> {
    vec![
        format!(
            "-6*{e}*X*Y^2+6*{e}*Y^3+6*{e}*X*Z^2+3*{e}*Y*Z^2-6*{e}*Z^3\
             +X^3+2*X*Y^2-3*Y^3+2*X*Y*Z-4*X*Z^2-3*Y*Z^2+3*Z^3"
        ),
        format!("-3*{e}*X*Y^2+3*{e}*Y^3+X^2*Y-Y^3"),
        format!("3*{e}*X*Z^2-3*{e}*Z^3+X^2*Z-3*X*Z^2+2*Z^3"),
        format!("3*{e}*Y*Z^2+Y^2*Z-2*Y*Z^2"),
    ]
}

/// The published annihilator row for `f_i`: four cubics, except `f5` whose
/// row lists the three ideal generators of degrees 2, 3, 4.
pub fn known_annihilators(i: usize) -> Vec<Poly<CycElem>> {
    let eta = "((z12^2+1)/3)";
    let eta_bar = "(conj((z12^2+1)/3))";
    let rows: Vec<String> = match i {
        1 => ["X^3-Y^3", "X^3-Z^3", "X*Y^2+Y*Z^2+Z*X^2", "X^2*Y+Y^2*Z+Z^2*X"]
            .map(String::from)
            .to_vec(),
        2 => [
            "X^2*Z-X*Z^2",
            "3*Y^2*Z-3*Y*Z^2+Z^3",
            "X^3-3*X^2*Y+3*X*Y^2",
            "X^2*Y-3*X*Y^2+3*Y^3+2*X*Y*Z-X*Z^2-2*Y*Z^2+Z^3",
        ]
        .map(String::from)
        .to_vec(),
        3 => eta_row(eta),
        4 => eta_row(eta_bar),
        5 => ["X^2-X*Y+Y^2-Y*Z+Z^2", "Y^3-2*Y^2*Z+2*Y*Z^2", "Z^4"]
            .map(String::from)
            .to_vec(),
        6 => ["Z^3", "Y^2*Z-Y*Z^2", "Y^3", "X*Y^2-X*Y*Z+X*Z^2+2*Y*Z^2"]
            .map(String::from)
            .to_vec(),
        _ => panic!("form index must be 1..=6, got {i}"),
    };
    rows.iter()
        .map(|s| parse_poly(s, Ring::Dual, 3).expect("catalog entries parse"))
        .collect()
}

fn cert(i: usize, points: Vec<[CycElem; 3]>, coeffs: Vec<CycElem>, signs: [i8; 6]) -> WaringCertificate<CycElem> {
    let terms = points
        .into_iter()
        .zip(coeffs)
        .zip(signs)
        .map(|((point, coeff), sign)| CertTerm { point: point.to_vec(), coeff, sign })
        .collect();
    WaringCertificate { form: form(i), degree: 6, terms }
}

/// The published rank-6 Waring decomposition of `f_i`, or `None` for `f6`
/// (whose degree-six apolar scheme is not reduced, so only the cactus rank
/// is six).
pub fn waring_certificate(i: usize) -> Option<WaringCertificate<CycElem>> {
    match i {
        1 => {
            let a = CycElem::cube_root_unity();
            let ab = a.conj();
            let points = vec![
                [a.clone(), one(), one()],
                [ab.clone(), one(), one()],
                [one(), a.clone(), one()],
                [one(), ab.clone(), one()],
                [one(), one(), a.clone()],
                [one(), one(), ab],
            ];
            // (2α+1)/270
            let c = a.scale(&Rat::from_int(2)).add(&one()).scale(&Rat::from_pair(1, 270));
            Some(cert(1, points, vec![c; 6], [-1, 1, -1, 1, -1, 1]))
        }
        2 => {
            let e = CycElem::eta();
            let eb = e.conj();
            let points = vec![
                [one(), e.clone(), one()],
                [one(), eb.clone(), one()],
                [zero(), e.clone(), one()],
                [zero(), eb.clone(), one()],
                [one(), e.clone(), zero()],
                [one(), eb, zero()],
            ];
            // (2η−1)/10
            let c = e.scale(&Rat::from_int(2)).sub(&one()).scale(&Rat::from_pair(1, 10));
            Some(cert(2, points, vec![c; 6], [-1, 1, 1, -1, 1, -1]))
        }
        3 | 4 => {
            let w = if i == 3 {
                CycElem::sixth_root_unity()
            } else {
                CycElem::sixth_root_unity().conj()
            };
            let points = vec![
                [w.clone(), one(), w.clone()],
                [one(), one(), w.clone()],
                [w.clone(), one(), zero()],
                [one(), one(), zero()],
                [one(), zero(), w.clone()],
                [one(), zero(), one()],
            ];
            // (2ω−1)/90, conjugated for f4
            let c = w.scale(&Rat::from_int(2)).sub(&one()).scale(&Rat::from_pair(1, 90));
            Some(cert(i, points, vec![c; 6], [1, -1, -1, 1, 1, -1]))
        }
        5 => {
            let im = CycElem::imaginary_unit();
            let b = one().add(&im);
            let bb = b.conj();
            let two = CycElem::from_rat(Rat::from_int(2));
            let points = vec![
                [b.clone(), two.clone(), bb.clone()],
                [bb.clone(), two.clone(), b.clone()],
                [b.clone(), two.clone(), b.clone()],
                [bb.clone(), two, bb],
                [one(), zero(), im.clone()],
                [one(), zero(), im.neg()],
            ];
            let c1 = CycElem::from_rat(Rat::from_pair(1, 1920));
            let c2 = im.scale(&Rat::from_pair(1, 240));
            let coeffs = vec![c1.clone(), c1.clone(), c1.clone(), c1, c2.clone(), c2];
            Some(cert(5, points, coeffs, [1, 1, -1, -1, -1, 1]))
        }
        _ => None,
    }
}

/// Defining polynomial of the rank-3 braid arrangement in essential
/// coordinates; a linear change of variables carries it to a multiple of
/// `f5`.
pub fn braid_product() -> Poly<Rat> {
    parse_poly("xyz(x-y)(x-z)(y-z)", Ring::Primal, 3).expect("fixed text parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::{ann_component, hilbert, is_complete_intersection};
    use crate::linalg::Mat;
    use crate::poly::apolar_act;
    use crate::waring::{apolarity_certificate, verify_decomposition};

    #[test]
    fn hilbert_functions_of_all_six() {
        for i in 1..=6usize {
            let h = hilbert(&form(i)).unwrap();
            let expect: Vec<usize> = if i == 5 {
                vec![1, 3, 5, 6, 5, 3, 1]
            } else {
                vec![1, 3, 6, 6, 6, 3, 1]
            };
            assert_eq!(h.h_vector, expect, "h-vector of form {i}");
            assert_eq!(ann_component(&form(i), 3).unwrap().dim(), 4, "cubic annihilators of form {i}");
        }
    }

    #[test]
    fn published_rows_annihilate() {
        for i in 1..=6usize {
            let f = form(i);
            for op in known_annihilators(i) {
                assert!(
                    apolar_act(&op, &f).unwrap().is_zero(),
                    "row entry {op} fails on form {i}"
                );
            }
        }
    }

    #[test]
    fn published_decompositions_expand_exactly() {
        for i in 1..=5usize {
            let cert = waring_certificate(i).unwrap();
            assert!(verify_decomposition(&cert).unwrap(), "decomposition of form {i}");
        }
        assert!(waring_certificate(6).is_none());
    }

    #[test]
    fn certificate_solve_recovers_published_coefficients() {
        for i in 1..=5usize {
            let cert = waring_certificate(i).unwrap();
            let x = cert.point_set().unwrap();
            let solved = apolarity_certificate(&cert.form, &x).unwrap();
            let expect: Vec<CycElem> = cert.terms.iter().map(|t| t.effective_coeff()).collect();
            assert_eq!(solved, expect, "coefficients of form {i}");
        }
    }

    #[test]
    fn complete_intersection_verdicts() {
        let xyz: Poly<Rat> = parse_poly("xyz", Ring::Primal, 3).unwrap();
        assert_eq!(is_complete_intersection(&xyz).unwrap(), (true, vec![2, 2, 2]));
        assert_eq!(is_complete_intersection(&form(5)).unwrap(), (true, vec![2, 3, 4]));
        for i in [1usize, 2, 3, 4, 6] {
            assert!(!is_complete_intersection(&form(i)).unwrap().0, "form {i} is not a CI");
        }
    }

    #[test]
    fn f5_expands_to_eight_terms() {
        let expect: Poly<CycElem> = parse_poly(
            "x^3*y^2*z + x^3*y*z^2 + 2*x^2*y^3*z + 3*x^2*y^2*z^2 + x^2*y*z^3 \
             + x*y^4*z + 2*x*y^3*z^2 + x*y^2*z^3",
            Ring::Primal,
            3,
        )
        .unwrap();
        assert_eq!(form(5), expect);
        assert_eq!(form(5).num_terms(), 8);
    }

    #[test]
    fn braid_maps_to_f5() {
        // columns send x -> y, y -> -x-y-z, z -> -z acting on the right
        let m: Mat<Rat> = Mat::from_rows(vec![
            vec![Rat::from_int(0), Rat::from_int(-1), Rat::from_int(0)],
            vec![Rat::from_int(1), Rat::from_int(0), Rat::from_int(0)],
            vec![Rat::from_int(0), Rat::from_int(-1), Rat::from_int(-1)],
        ]);
        let f5: Poly<Rat> = parse_poly("xyz(x+y+z)(x+y)(y+z)", Ring::Primal, 3).unwrap();
        let image = braid_product().substitute_linear(&m).unwrap();
        assert_eq!(image, f5.scalar_mul(&Rat::from_int(-1)));
    }

    #[test]
    fn name_lookup() {
        assert_eq!(form_by_name("f5").unwrap(), form(5));
        assert!(form_by_name("f7").is_err());
    }
}
