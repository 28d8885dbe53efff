//! End-to-end checks of everything the crate claims, one test per claim.
//! Each test ends with a single pass line; failures panic with the offending
//! detail, so the test list doubles as a checklist.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use apolar::apolarity::{ann_component, hilbert, is_complete_intersection, tensor_split_check};
use apolar::arrangements::{sample_generic, star_config_generators};
use apolar::catalog;
use apolar::linalg::Mat;
use apolar::poly::{apolar_act, monomials_desc, parse_poly};
use apolar::ranksearch::bertini::{
    emit_bertini, parse_bertini, solutions_to_json, system_from_json, system_to_json,
};
use apolar::ranksearch::tracker::{refine, track_system, unsquared_residual, TrackOptions};
use apolar::ranksearch::{
    build_rank_system, build_rank_system_with_minor, build_reduced_system, feasible_point,
    rank_defect_ratio, PolySystem, SymbolicCat, VarGroup,
};
use apolar::waring::{apolarity_certificate, point_ideal_component, verify_decomposition};
use apolar::{ComplexF, CycElem, Exponent, Poly, Rat, Ring, Scalar};

#[test]
fn a01_catalog_annihilator_tables_are_exact() {
    for i in 1..=6 {
        let f = catalog::form(i);
        for (j, op) in catalog::known_annihilators(i).iter().enumerate() {
            let img = apolar_act(op, &f).unwrap();
            assert!(img.is_zero(), "a01 fail: f{i} entry {} leaves a remainder", j + 1);
        }
        let dim = ann_component(&f, 3).unwrap().dim();
        assert_eq!(dim, 4, "a01 fail: f{i} degree-3 annihilator has dimension {dim}");
    }
    println!("a01 catalog annihilator tables exact, all degree-3 components 4-dimensional: pass");
}

#[test]
fn a02_catalog_decompositions_expand_exactly() {
    for i in 1..=5 {
        let cert = catalog::waring_certificate(i).unwrap();
        assert!(
            verify_decomposition(&cert).unwrap(),
            "a02 fail: f{i} power decomposition does not expand to the form"
        );
    }
    println!("a02 catalog power decompositions expand exactly: pass");
}

#[test]
fn a03_certificate_points_support_the_decompositions() {
    for i in 1..=5 {
        let cert = catalog::waring_certificate(i).unwrap();
        let f = &cert.form;
        let x = cert.point_set().unwrap();
        for t in 1..=6 {
            for p in &point_ideal_component(&x, t).basis {
                let img = apolar_act(p, f).unwrap();
                assert!(
                    img.is_zero(),
                    "a03 fail: f{i} has a degree-{t} point-ideal element outside the annihilator"
                );
            }
        }
        let coeffs = apolarity_certificate(f, &x).unwrap();
        let expected: Vec<CycElem> = cert.terms.iter().map(|t| t.effective_coeff()).collect();
        assert_eq!(coeffs, expected, "a03 fail: f{i} recovered coefficients differ");
    }
    println!("a03 point ideals contained degreewise and coefficients recovered exactly: pass");
}

/// Independent route to the Hilbert function: the rank of the matrix whose
/// rows are the order-`t` partial derivatives of `f`, for every `t`.
fn derivative_space_dims<K: Scalar>(f: &Poly<K>) -> Vec<usize> {
    let d = f.homogeneous_degree().expect("homogeneous input");
    let nv = f.nvars();
    (0..=d)
        .map(|t| {
            let cols = monomials_desc(nv, d - t);
            let rows: Vec<Vec<K>> = monomials_desc(nv, t)
                .into_iter()
                .map(|e| {
                    let op = Poly::monomial(nv, Ring::Dual, e, K::one());
                    let img = apolar_act(&op, f).unwrap();
                    cols.iter().map(|m| img.coeff(m)).collect()
                })
                .collect();
            Mat::from_rows(rows).rank()
        })
        .collect()
}

#[test]
fn a04_hilbert_functions_match_derivative_space_ranks() {
    for i in 1..=6 {
        let f = catalog::form(i);
        let h = hilbert(&f).unwrap().h_vector;
        let oracle = derivative_space_dims(&f);
        assert_eq!(h, oracle, "a04 fail: f{i} h-vector disagrees with derivative ranks");
        let expected = if i == 5 { vec![1, 3, 5, 6, 5, 3, 1] } else { vec![1, 3, 6, 6, 6, 3, 1] };
        assert_eq!(h, expected, "a04 fail: f{i} profile");
    }
    println!("a04 hilbert functions match independent derivative-space ranks: pass");
}

#[test]
fn a05_complete_intersection_verdicts() {
    let xyz: Poly<Rat> = parse_poly("x*y*z", Ring::Primal, 0).unwrap();
    assert_eq!(
        is_complete_intersection(&xyz).unwrap(),
        (true, vec![2, 2, 2]),
        "a05 fail: coordinate product"
    );
    assert_eq!(
        is_complete_intersection(&catalog::form(5)).unwrap(),
        (true, vec![2, 3, 4]),
        "a05 fail: fifth catalog form"
    );
    for i in [1usize, 2, 3, 4, 6] {
        let (ci, _) = is_complete_intersection(&catalog::form(i)).unwrap();
        assert!(!ci, "a05 fail: f{i} wrongly reported as a complete intersection");
    }
    println!("a05 complete intersection verdicts (generators 2,2,2 and 2,3,4; five negatives): pass");
}

#[test]
fn a06_generic_arrangements_have_no_low_degree_annihilators() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut checked = 0usize;
    for n in [2usize, 3] {
        let sizes: &[usize] = if n == 2 { &[3, 4, 5, 6, 7, 8] } else { &[4, 5, 6, 7] };
        for &k in sizes {
            for _ in 0..5 {
                let arr = sample_generic(n, k, &mut rng);
                let f = arr.defining_poly();
                let bound = (k - n + 1).min(n + 1) as u32;
                for t in 1..bound {
                    let dim = ann_component(&f, t).unwrap().dim();
                    assert_eq!(
                        dim, 0,
                        "a06 fail: n={n}, {k} hyperplanes: degree-{t} annihilator has dimension {dim}"
                    );
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 50, "a06 fail: only {checked} samples checked");
    // tightness: the first catalog form attains the bound min(6-2+1, 3) = 3
    let f1 = catalog::form(1);
    assert_eq!(ann_component(&f1, 2).unwrap().dim(), 0, "a06 fail: f1 annihilator starts early");
    assert_eq!(ann_component(&f1, 3).unwrap().dim(), 4, "a06 fail: f1 initial degree is not 3");
    println!("a06 {checked} random generic arrangements vanish below the initial-degree bound, tight at f1: pass");
}

fn random_block_form(rng: &mut ChaCha8Rng, nv: usize, block: [usize; 2], d: u32) -> Poly<Rat> {
    loop {
        let mut acc = Poly::zero(nv, Ring::Primal);
        for j in 0..=d {
            let c = rng.gen_range(-5i64..=5);
            if c == 0 {
                continue;
            }
            let mut e = vec![0u32; nv];
            e[block[0]] = d - j;
            e[block[1]] = j;
            acc = acc.add(&Poly::monomial(nv, Ring::Primal, Exponent(e), Rat::from_int(c))).unwrap();
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

#[test]
fn a07_disjoint_block_products_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    for case in 0..50 {
        let df = rng.gen_range(1u32..=4);
        let dg = rng.gen_range(1u32..=4);
        let f = random_block_form(&mut rng, 4, [0, 1], df);
        let g = random_block_form(&mut rng, 4, [2, 3], dg);
        assert!(
            tensor_split_check(&f, &g).unwrap(),
            "a07 fail: case {case} annihilator does not split as an ideal sum"
        );
        // independent cross-check: the apolar algebra of the product is the
        // tensor product of the factors' algebras, so h-vectors convolve
        let hf = hilbert(&f).unwrap().h_vector;
        let hg = hilbert(&g).unwrap().h_vector;
        let hfg = hilbert(&f.mul(&g).unwrap()).unwrap().h_vector;
        let conv: Vec<usize> = (0..hfg.len())
            .map(|k| {
                (0..=k)
                    .map(|a| {
                        hf.get(a).copied().unwrap_or(0) * hg.get(k - a).copied().unwrap_or(0)
                    })
                    .sum()
            })
            .collect();
        assert_eq!(hfg, conv, "a07 fail: case {case} h-vector is not the convolution");
    }
    println!("a07 50 disjoint-block products split degreewise with convolved h-vectors: pass");
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

#[test]
fn a08_star_configurations_vanish_on_pairwise_intersections() {
    let lines = ["x", "y", "z", "x+y+z", "x+2*y+3*z", "x-y+2*z"];
    for t in [4usize, 5, 6] {
        let forms: Vec<Poly<Rat>> =
            lines[..t].iter().map(|s| parse_poly(s, Ring::Primal, 3).unwrap()).collect();
        let gens = star_config_generators(&forms, 2).unwrap();
        assert_eq!(gens.len(), binom(t, t - 1), "a08 fail: generator count for t={t}");
        for i in 0..t {
            for j in i + 1..t {
                let rows =
                    vec![forms[i].linear_coeffs().unwrap(), forms[j].linear_coeffs().unwrap()];
                let kern = Mat::from_rows(rows).kernel_basis();
                assert_eq!(kern.len(), 1, "a08 fail: lines {i},{j} do not meet in a point");
                for (gi, gen) in gens.iter().enumerate() {
                    assert!(
                        gen.eval(&kern[0]).is_zero(),
                        "a08 fail: t={t} generator {gi} nonzero at the intersection of lines {i},{j}"
                    );
                }
            }
        }
    }
    println!("a08 star generators (C(t,t-1) of them) vanish at every codimension-2 point: pass");
}

fn dense_system(seed: u64, degrees: &[u32]) -> PolySystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = degrees.len();
    let mut eqs = Vec::new();
    for &d in degrees {
        let mut acc = Poly::zero(nv, Ring::Primal);
        for dt in 0..=d {
            for e in monomials_desc(nv, dt) {
                let c = ComplexF::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                acc = acc.add(&Poly::monomial(nv, Ring::Primal, e, c)).unwrap();
            }
        }
        eqs.push(acc);
    }
    PolySystem {
        variables: (0..nv).map(|i| format!("w{i}")).collect(),
        groups: vec![VarGroup::Affine { start: 0, len: nv }],
        equations: eqs.clone(),
        unsquared: eqs,
        seed,
        minor_rows: None,
        fixed_prefix: None,
    }
}

#[test]
fn a09_dense_systems_hit_their_path_counts_deterministically() {
    for (seed, degs) in [(901u64, [2u32, 2]), (902, [2, 3]), (903, [3, 3])] {
        let sys = dense_system(seed, &degs);
        let opts = TrackOptions::default();
        let sols = track_system(&sys, &opts);
        let expected: usize = degs.iter().map(|&d| d as usize).product();
        assert_eq!(sols.len(), expected, "a09 fail: path count for degrees {degs:?}");
        for s in &sols {
            assert!(
                s.converged && s.residual < 1e-8,
                "a09 fail: degrees {degs:?} path {} ends with residual {:e}",
                s.path_index,
                s.residual
            );
        }
        let mut keys: Vec<Vec<(i64, i64)>> = sols
            .iter()
            .map(|s| {
                s.point
                    .iter()
                    .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
                    .collect()
            })
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), expected, "a09 fail: degrees {degs:?} endpoints collide");
        let report = solutions_to_json(&sys, &sols);
        let again = rayon::ThreadPoolBuilder::new()
            .num_threads(2)
            .build()
            .unwrap()
            .install(|| track_system(&sys, &opts));
        assert_eq!(
            report,
            solutions_to_json(&sys, &again),
            "a09 fail: degrees {degs:?} report changes across runs"
        );
    }
    println!("a09 dense systems reach full path counts with byte-identical reports: pass");
}

/// Distance between projective points: relative norm of the difference after
/// the best scalar alignment of `v` onto `u`.
fn proj_distance(u: &[Complex64], v: &[Complex64]) -> f64 {
    let dot: Complex64 = v.iter().zip(u).map(|(b, a)| a * b.conj()).sum();
    let nv: f64 = v.iter().map(|b| b.norm_sqr()).sum();
    let nu: f64 = u.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if nv == 0.0 || nu == 0.0 {
        return f64::INFINITY;
    }
    let lambda = dot / nv;
    u.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
        / nu
}

#[test]
fn a10_reduced_search_recovers_published_solutions() {
    // part one: a 512-path run with the first factor pinned finds the
    // published companion factor
    let alpha = CycElem::cube_root_unity().embed();
    let [p, _] = catalog::factor_params(1);
    let fixed = [p[0].embed(), p[1].embed(), p[2].embed()];
    let sys = build_reduced_system(0, fixed);
    let sols = track_system(&sys, &TrackOptions::default());
    assert_eq!(sols.len(), 512, "a10 fail: reduced system path count");
    let target = [Complex64::new(1.0, 0.0), alpha.conj(), alpha];
    let mut best = f64::INFINITY;
    for s in sols.iter().filter(|s| s.converged) {
        if unsquared_residual(&sys, &s.point) > 1e-6 {
            continue;
        }
        let triple = [s.point[0], s.point[1], s.point[2]];
        best = best.min(proj_distance(&target, &triple));
    }
    assert!(best < 1e-6, "a10 fail: closest endpoint to the published factor is {best:e} away");

    // part two: every published parameter pair is feasible, drops the
    // singular-value ratio, and refinement pulls a nudged point back
    let cat = SymbolicCat::build();
    for i in 1..=6 {
        let fp = feasible_point(i).unwrap();
        let params: [Complex64; 6] = std::array::from_fn(|k| fp.params[k].embed());
        let ratio = rank_defect_ratio(&cat, &params);
        assert!(ratio < 1e-6, "a10 fail: f{i} singular-value ratio {ratio:e}");

        let full = build_rank_system_with_minor(2024, fp.minor_rows);
        let base = unsquared_residual(&full, &fp.coords);
        assert!(base < 1e-9, "a10 fail: f{i} exact coordinates leave residual {base:e}");

        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
        let noisy: Vec<Complex64> = fp
            .coords
            .iter()
            .map(|z| z + Complex64::new(rng.gen_range(-1e-3..1e-3), rng.gen_range(-1e-3..1e-3)))
            .collect();
        let r = refine(&full, &noisy, 400, 1e-12);
        assert!(
            r.converged && r.residual < 1e-12,
            "a10 fail: f{i} refinement stops at {:e}",
            r.residual
        );
    }
    println!("a10 reduced search finds the published factor; all six published pairs feasible, ratio < 1e-6, refinable to 1e-12: pass");
}

#[test]
fn a11_emission_round_trips_through_both_formats() {
    let sys = build_rank_system(42);
    let text = emit_bertini(&sys);

    let hom: Vec<&str> = text.lines().filter(|l| l.starts_with("hom_variable_group")).collect();
    assert_eq!(hom.len(), 2, "a11 fail: projective group count");
    for l in &hom {
        let names = l.trim_start_matches("hom_variable_group").trim_end_matches(';').split(',');
        assert_eq!(names.count(), 3, "a11 fail: projective group size in {l:?}");
    }
    let affine: Vec<&str> = text.lines().filter(|l| l.starts_with("variable_group")).collect();
    assert_eq!(affine.len(), 1, "a11 fail: affine group count");
    let affine_names =
        affine[0].trim_start_matches("variable_group").trim_end_matches(';').split(',').count();
    assert_eq!(affine_names, 21, "a11 fail: affine variable count");
    let assignments =
        text.lines().filter(|l| l.starts_with("eq") && l.contains('=')).count();
    assert_eq!(assignments, 25, "a11 fail: equation assignment count");
    assert!(sys.degrees().iter().all(|&d| d == 3), "a11 fail: equations are not all cubic");

    let back = parse_bertini(&text).unwrap();
    assert_eq!(back.equations, sys.equations, "a11 fail: reparse changes the equations");

    let json = system_to_json(&sys);
    let back2 = system_from_json(&json).unwrap();
    assert_eq!(system_to_json(&back2), json, "a11 fail: JSON round trip drifts");
    println!("a11 emission (2 projective triples, 21 affine unknowns, 25 cubics) round-trips: pass");
}
