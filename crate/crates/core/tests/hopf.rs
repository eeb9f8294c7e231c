use qsvir_core::extended::{ext_multiply, letter};
use qsvir_core::hopf::solver::{sample_table, solve_exponents, Solved};
use qsvir_core::hopf::table::ExponentTable;
use qsvir_core::hopf::{check_axioms, check_homomorphism, ext_reduce};
use qsvir_core::{DeformationMode, ExtElement, ExtLetter, ExtWord, Family, FamilyId, IndexRange, RelationFamily};
use rand::SeedableRng;

const DEFORMED: [DeformationMode; 2] = [DeformationMode::Q, DeformationMode::PQ];

#[test]
fn grouplike_laws() {
    for mode in DEFORMED {
        let table = ExponentTable::paper(mode).0;
        for f in Family::GROUPLIKE {
            for k in -5..=5 {
                let r = check_axioms(ExtLetter::new(f, k), &table, mode).unwrap();
                assert!(r.holds(), "{mode} {r:?}");
                let prod = ext_multiply(&letter(f, k), &letter(f.inverse(), k));
                let one = ExtElement::basis(ExtWord::unit());
                assert_eq!(ext_reduce(&prod, &table, mode).unwrap(), one, "{mode} {}{k}", f.name());
            }
        }
    }
}

#[test]
fn deformed_letters_satisfy_the_axioms() {
    for mode in DEFORMED {
        let table = ExponentTable::paper(mode).0;
        for f in Family::DEFORMED {
            for k in -3..=3 {
                assert!(check_axioms(ExtLetter::new(f, k), &table, mode).unwrap().holds());
            }
        }
    }
}

#[test]
fn sampled_tables_hold_on_held_out_indices() {
    let holdout = IndexRange::new(5, 8);
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for mode in DEFORMED {
        for id in FamilyId::ALL {
            let sol = solve_exponents(id, mode, IndexRange::new(-1, 4)).unwrap();
            let Solved::Consistent(rref) = &sol.solved else {
                assert_eq!(id, FamilyId::FG, "{mode}");
                continue;
            };
            for _ in 0..2 {
                let table = sample_table(rref, mode, &mut rng).expect("integral member");
                for l in holdout.iter() {
                    for k in holdout.iter() {
                        let r = check_homomorphism(RelationFamily::new(id, mode), l, k, &table).unwrap();
                        assert!(r.holds, "{mode} {id}({l},{k})");
                    }
                }
            }
        }
    }
}

#[test]
fn fg_has_no_bilinear_solution() {
    for mode in DEFORMED {
        let sol = solve_exponents(FamilyId::FG, mode, IndexRange::new(-1, 4)).unwrap();
        assert!(matches!(sol.solved, Solved::Inconsistent(_)), "{mode}");
    }
}
