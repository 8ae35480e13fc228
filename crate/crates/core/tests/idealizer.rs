use std::path::PathBuf;

use geoideal::idealizer::{idealizer_piece, membership_oracle, oracle_subspace, IdealizerScene};
use geoideal::poly::{Monomial, Poly};
use geoideal::scene::parse_scene;
use geoideal::twist::{twist_multiply, TwistedElement};

fn scene(name: &str) -> IdealizerScene {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(name);
    parse_scene(&std::fs::read_to_string(p).unwrap()).unwrap().idealizer_scene().unwrap()
}

#[test]
fn pieces_are_closed_under_the_twisted_product() {
    for name in ["flagship.scene", "nonreduced-point.scene", "translation-p1.scene"] {
        let sc = scene(name);
        for n in 1..=3u32 {
            for m in 1..=(6 - n).min(3) {
                let (rn, rm, rnm) = (idealizer_piece(&sc, n), idealizer_piece(&sc, m), idealizer_piece(&sc, n + m));
                for a in rn.basis() {
                    for b in rm.basis() {
                        let ab = twist_multiply(
                            &TwistedElement::new(n, a.clone()).unwrap(),
                            &TwistedElement::new(m, b.clone()).unwrap(),
                            sc.sigma(),
                        );
                        assert!(rnm.contains(ab.poly()), "{name}: R_{n} R_{m}");
                    }
                }
            }
        }
    }
}

#[test]
fn right_ideal_sits_inside_idealizer() {
    for name in ["flagship.scene", "translation-p1.scene"] {
        let sc = scene(name);
        for n in 1..=4 {
            let r = idealizer_piece(&sc, n);
            for f in sc.ideal().degree_basis(n) {
                assert!(r.contains(&f), "{name}: I_{n}");
            }
        }
    }
}

#[test]
fn oracle_matches_colon_pieces() {
    for name in ["flagship.scene", "translation-p1.scene", "nonreduced-point.scene"] {
        let sc = scene(name);
        for n in 1..=3 {
            let r = idealizer_piece(&sc, n);
            assert_eq!(oracle_subspace(&sc, n, 6).basis(), r.basis(), "{name} n={n}");
            for b in r.basis() {
                assert!(membership_oracle(&TwistedElement::new(n, b.clone()).unwrap(), &sc, 6));
            }
            // Monomials outside R_n are rejected.
            for mono in Monomial::all_of_degree(sc.nvars(), n) {
                let f = Poly::monomial(mono, sc.field().one());
                let x = TwistedElement::new(n, f.clone()).unwrap();
                assert_eq!(membership_oracle(&x, &sc, 6), r.contains(&f), "{name}: {f}");
            }
        }
    }
}
