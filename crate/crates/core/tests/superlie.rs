//! osp(3|2) against its defining 5×5 supermatrix representation on
//! C^{3|2}: rows 0..3 even, 3..5 odd, preserving the form with
//! v_0·v_2 + v_1·v_1 on the even part and w_0∧w_1 on the odd part.

use std::collections::HashMap;

use lambda_qhr::superlie::{build_osp32, Element, LieError, Osp32, SuperLieAlgebra};
use lambda_qhr::reduction::{verify_liealg, EIGENSPACE_TABLE};
use num_rational::BigRational;
use num_traits::{One, Zero};

type Mat = [[BigRational; 5]; 5];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn zero() -> Mat {
    std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()))
}

fn mat(entries: &[(usize, usize, i64, i64)]) -> Mat {
    let mut m = zero();
    for &(i, j, n, d) in entries {
        m[i][j] = q(n, d);
    }
    m
}

fn odd_index(i: usize) -> bool {
    i >= 3
}

fn parity(m: &Mat) -> bool {
    for i in 0..5 {
        for j in 0..5 {
            if !m[i][j].is_zero() {
                return odd_index(i) != odd_index(j);
            }
        }
    }
    false
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut m = zero();
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                m[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    m
}

fn lin(a: &Mat, ca: &BigRational, b: &Mat, cb: &BigRational) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * ca + &b[i][j] * cb))
}

fn superbracket(a: &Mat, b: &Mat) -> Mat {
    let sign = if parity(a) && parity(b) { BigRational::one() } else { -BigRational::one() };
    lin(&mul(a, b), &BigRational::one(), &mul(b, a), &sign)
}

fn supertrace(m: &Mat) -> BigRational {
    (0..5).map(|i| if odd_index(i) { -m[i][i].clone() } else { m[i][i].clone() }).sum()
}

/// Chevalley generators; everything else is built from them.
fn realization() -> HashMap<&'static str, Mat> {
    let mut m = HashMap::new();
    m.insert("e1", mat(&[(2, 4, -1, 1), (3, 0, 1, 1)]));
    m.insert("e2", mat(&[(0, 1, -1, 1), (1, 2, 1, 1)]));
    m.insert("f1", mat(&[(0, 3, 1, 2), (4, 2, 1, 2)]));
    m.insert("f2", mat(&[(1, 0, 1, 2), (2, 1, -1, 2)]));
    let br = |m: &HashMap<&str, Mat>, a: &str, b: &str| superbracket(&m[a], &m[b]);
    let h1 = br(&m, "e1", "f1");
    let h2 = br(&m, "e2", "f2");
    m.insert("h1", h1);
    m.insert("h2", h2);
    let e12 = br(&m, "e1", "e2");
    m.insert("e12", e12);
    let e122 = br(&m, "e2", "e12");
    m.insert("e122", e122);
    let e1122 = br(&m, "e1", "e122");
    m.insert("e1122", e1122);
    let f12 = br(&m, "f1", "f2");
    m.insert("f12", f12);
    let f122 = br(&m, "f2", "f12");
    m.insert("f122", f122);
    let f1122 = br(&m, "f1", "f122");
    m.insert("f1122", f1122);
    m
}

fn to_matrix(g: &SuperLieAlgebra, reps: &HashMap<&str, Mat>, v: &Element) -> Mat {
    let mut out = zero();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out = lin(&out, &BigRational::one(), &reps[g.basis()[i].id], c);
        }
    }
    out
}

#[test]
fn realization_preserves_the_form() {
    let mut gram = zero();
    gram[0][2] = q(1, 1);
    gram[1][1] = q(1, 1);
    gram[2][0] = q(1, 1);
    gram[3][4] = q(1, 1);
    gram[4][3] = q(-1, 1);
    for (name, x) in realization() {
        let p = parity(&x);
        for i in 0..5 {
            for j in 0..5 {
                let mut s = BigRational::zero();
                for k in 0..5 {
                    s += &x[k][i] * &gram[k][j];
                    let sign = if p && odd_index(i) { -1 } else { 1 };
                    s += q(sign, 1) * &gram[i][k] * &x[k][j];
                }
                assert!(s.is_zero(), "{name} violates invariance at ({i}, {j})");
            }
        }
    }
}

#[test]
fn every_bracket_matches_the_matrices() {
    let g = build_osp32().unwrap();
    let reps = realization();
    let n = g.dim();
    for a in 0..n {
        for b in 0..n {
            let got = to_matrix(&g, &reps, g.basis_bracket(a, b));
            let want = superbracket(&reps[g.basis()[a].id], &reps[g.basis()[b].id]);
            assert_eq!(got, want, "[{}, {}]", g.basis()[a].id, g.basis()[b].id);
        }
    }
}

#[test]
fn form_is_minus_the_supertrace() {
    let g = build_osp32().unwrap();
    let reps = realization();
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            let st = -supertrace(&mul(&reps[g.basis()[a].id], &reps[g.basis()[b].id]));
            assert_eq!(*g.basis_form(a, b), st, "({}|{})", g.basis()[a].id, g.basis()[b].id);
        }
    }
}

#[test]
fn printed_form_values() {
    let g = build_osp32().unwrap();
    let f = |a: &str, b: &str| g.basis_form(g.index(a).unwrap(), g.index(b).unwrap()).clone();
    assert_eq!(f("e122", "f122"), q(1, 4));
    assert_eq!(f("f122", "e122"), q(-1, 4));
    assert_eq!(f("e1122", "f1122"), q(-1, 4));
    assert_eq!(f("h1", "h1"), q(0, 1));
    assert_eq!(f("h1", "h2"), q(1, 2));
    assert_eq!(f("h2", "h2"), q(-1, 2));
    assert!(g.structure_constants_text().contains("(e_{122}|f_{122}) = 1/4"));
}

#[test]
fn chevalley_brackets() {
    let g = build_osp32().unwrap();
    let u = |s: &str| g.unit(g.index(s).unwrap());
    assert_eq!(g.bracket(&u("e1"), &u("f1")), u("h1"));
    assert!(g.bracket(&u("e1"), &u("e1")).iter().all(Zero::is_zero));
    assert_eq!(g.bracket(&u("e12"), &u("e12")), u("e1122"));
}

#[test]
fn grading_by_x() {
    let osp = Osp32::new().unwrap();
    let g = &osp.g;
    let scaled = |s: &str, c: BigRational| -> Element { g.unit(g.index(s).unwrap()).into_iter().map(|x| x * &c).collect() };
    let ad = |s: &str| g.bracket(&osp.x, &g.unit(g.index(s).unwrap()));
    assert_eq!(ad("e122"), scaled("e122", q(3, 2)));
    assert!(ad("h2").iter().all(Zero::is_zero));
    assert_eq!(ad("f1"), scaled("f1", q(1, 2)));
    for (j2, names) in EIGENSPACE_TABLE {
        let mut got: Vec<String> = osp.grading.basis_in(j2).iter().map(|&i| g.basis()[i].latex.replace(['{', '}'], "")).collect();
        let mut want: Vec<String> = names.iter().map(|s| s.replace(['{', '}'], "")).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "2j = {j2}");
    }
}

#[test]
fn centralizer_of_f() {
    let osp = Osp32::new().unwrap();
    let g = &osp.g;
    let u = |s: &str| g.unit(g.index(s).unwrap());
    let e1_f12: Element = u("e1").iter().zip(u("f12")).map(|(a, b)| a - b).collect();
    for v in [&e1_f12, &u("f2"), &u("f1122"), &u("f122")] {
        assert!(g.bracket(&osp.f, v).iter().all(Zero::is_zero));
        assert!(osp.centralizer.contains(v));
    }
    assert!(g.bracket(&osp.f, &u("h1")).iter().any(|x| !x.is_zero()));
    assert_eq!(osp.centralizer.dim(), 4);
    assert_eq!(osp.centralizer.dims(), vec![(-3, 1), (-2, 2), (-1, 1)]);
}

#[test]
fn killing_form_ratio() {
    let g = build_osp32().unwrap();
    let u = |s: &str| g.unit(g.index(s).unwrap());
    assert_eq!(g.killing(&u("h1"), &u("h2")) / g.form(&u("h1"), &u("h2")), q(1, 1));
    assert_eq!(g.killing(&u("e2"), &u("f2")) / g.form(&u("e2"), &u("f2")), q(1, 1));
    assert!(g.killing(&u("h1"), &u("h1")).is_zero());
    assert_eq!(g.check_dual_coxeter().unwrap(), lambda_qhr::coeffring::Scalar::from_ratio(1, 2));
}

#[test]
fn killing_form_matches_matrix_supertrace() {
    let g = build_osp32().unwrap();
    let reps = realization();
    let basis: Vec<Mat> = g.basis().iter().map(|b| reps[b.id].clone()).collect();
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            let mut acc = BigRational::zero();
            for (c, xc) in basis.iter().enumerate() {
                let inner = superbracket(&basis[b], xc);
                let outer = superbracket(&basis[a], &inner);
                let coeffs = g.bracket(&g.unit(a), &g.bracket(&g.unit(b), &g.unit(c)));
                assert_eq!(to_matrix(&g, &reps, &coeffs), outer);
                let d = coeffs[c].clone();
                acc += if g.parity(c).is_odd() { -d } else { d };
            }
            assert_eq!(acc, g.killing(&g.unit(a), &g.unit(b)));
        }
    }
}

#[test]
fn integrity_report_passes() {
    let r = verify_liealg().unwrap();
    assert!(r.pass(), "{}", r.to_text());
    assert_eq!(r.entries.len(), 10);
}

#[test]
fn unknown_basis_name() {
    let g = build_osp32().unwrap();
    assert!(matches!(g.index("e3"), Err(LieError::UnknownBasis(_))));
}
