use manakov::monodromy::{
    ellipse_loop, generic_monodromy_from, limiting_lattice, limiting_monodromy, limiting_transport,
    LimitingBasis, IDENTITY,
};
use manakov::spectrum::joint_spectrum;
use manakov::{IrrepLabel, ModelParams};

fn inverse(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]]
}

#[test]
fn limiting_loop_standard_basis() {
    let m = limiting_monodromy(15, LimitingBasis::Standard, false).unwrap();
    assert_eq!(m.matrix, [[1, 0], [2, 1]]);
    assert!(m.residual < 0.1);
}

#[test]
fn limiting_loop_alternate_basis() {
    let m = limiting_monodromy(15, LimitingBasis::Alternate, false).unwrap();
    assert_eq!(m.matrix, [[3, 2], [-2, -1]]);
    assert_eq!((m.trace(), m.det()), (2, 1));
}

#[test]
fn reversed_loop_gives_inverse() {
    for basis in [LimitingBasis::Standard, LimitingBasis::Alternate] {
        let f = limiting_monodromy(15, basis, false).unwrap();
        let r = limiting_monodromy(15, basis, true).unwrap();
        assert_eq!(r.matrix, inverse(f.matrix));
    }
}

#[test]
fn contractible_loops_are_trivial() {
    let lattice = limiting_lattice(15).unwrap();
    for (c, r) in [([0.3, 0.4], 0.15), ([-0.3, -0.4], 0.2), ([0.0, 0.6], 0.2), ([0.5, 0.0], 0.2)] {
        let path = ellipse_loop(c, [r, r], 200, -std::f64::consts::FRAC_PI_2, true);
        let m = limiting_transport(&lattice, &path, LimitingBasis::Standard).unwrap();
        assert_eq!(m.matrix, IDENTITY, "loop at {c:?}");
    }
}

#[test]
fn deformed_loops_agree() {
    let lattice = limiting_lattice(15).unwrap();
    for radii in [[0.6, 0.3], [0.3, 0.6], [0.75, 0.75]] {
        let path = ellipse_loop([0.0, 0.0], radii, 400, -std::f64::consts::FRAC_PI_2, true);
        let m = limiting_transport(&lattice, &path, LimitingBasis::Standard).unwrap();
        assert_eq!(m.matrix, [[1, 0], [2, 1]], "{radii:?}");
    }
}

#[test]
fn generic_path_is_trivial_for_every_irrep() {
    let js = joint_spectrum(&ModelParams::new(4.0, 3.0, 15).unwrap(), 0).unwrap();
    for irrep in IrrepLabel::ALL {
        let m = generic_monodromy_from(&js, irrep).unwrap_or_else(|e| panic!("{irrep}: {e}"));
        assert_eq!(m.matrix, IDENTITY, "{irrep}");
    }
}

#[test]
fn generic_path_on_perturbed_parameters() {
    // region II is about two cells wide here, so a sublattice may be too
    // distorted near F; such cases must fail loudly, never return a bogus matrix
    let js = joint_spectrum(&ModelParams::new(3.9, 2.9, 15).unwrap(), 0).unwrap();
    let mut trivial = 0;
    for irrep in IrrepLabel::ALL {
        match generic_monodromy_from(&js, irrep) {
            Ok(m) => {
                assert_eq!(m.det(), 1, "{irrep}");
                trivial += m.is_identity() as usize;
            }
            Err(e) => assert!(matches!(e, manakov::Error::Transport { crossing: Some(_), .. }), "{irrep}: {e}"),
        }
    }
    assert!(trivial >= 6, "{trivial}");
}

#[test]
fn generic_guards() {
    let js = joint_spectrum(&ModelParams::new(2.0, 1.0, 10).unwrap(), 0).unwrap();
    let e = generic_monodromy_from(&js, IrrepLabel::ALL[0]).unwrap_err();
    assert!(e.is_validation() && e.to_string().contains("b=1"), "{e}");
    let js = joint_spectrum(&ModelParams::new(4.0, 3.0, 6).unwrap(), 0).unwrap();
    assert!(generic_monodromy_from(&js, IrrepLabel::ALL[0]).unwrap_err().is_validation());
}
