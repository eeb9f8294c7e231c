use qsvir_core::fock::{crosscheck, excursion, find_disagreement, representation_fidelity, SampleParams};
use qsvir_core::relations::{check_instance, BuiltinRelations, RelationSource};
use qsvir_core::{rat, DeformationMode, Element, FamilyId, IndexRange, LaurentPoly, Rational};

fn params(q: Rational, mode: DeformationMode, needed: u32) -> SampleParams {
    let p = if mode == DeformationMode::PQ { rat(5, 7) } else { rat(1, 1) };
    let margin = needed.max(8);
    SampleParams::new(q, p, margin + 4, margin).unwrap()
}

/// Realized sides of an admissible instance together with the symbolic verdict.
fn sides(src: &BuiltinRelations, id: FamilyId, l: i64, k: i64) -> Option<(Element, Element, bool)> {
    let inst = src.instance(id.as_str(), l, k).ok()?;
    let holds = check_instance(src, &inst).unwrap().residual.holds;
    Some((src.realize_element(&inst.lhs).unwrap(), src.realize_element(&inst.rhs).unwrap(), holds))
}

#[test]
fn symbolic_and_fock_verdicts_agree() {
    for q in [rat(3, 2), rat(5, 3)] {
        for mode in [DeformationMode::Classical, DeformationMode::Q, DeformationMode::PQ] {
            let src = BuiltinRelations::new(mode);
            for id in FamilyId::ALL {
                for (l, k) in IndexRange::new(-1, 3).iter().flat_map(|l| (-1..=3).map(move |k| (l, k))) {
                    let Some((lhs, rhs, holds)) = sides(&src, id, l, k) else { continue };
                    let p = params(q.clone(), mode, excursion(&lhs).max(excursion(&rhs)));
                    assert!(holds, "{mode} {id}({l},{k})");
                    assert!(crosscheck(&lhs, &rhs, &p, mode).unwrap(), "{mode} {id}({l},{k}) q={q}");
                }
            }
        }
    }
}

#[test]
fn corrupted_relations_fail_in_both_oracles() {
    let two = LaurentPoly::from_int(2);
    for mode in [DeformationMode::Q, DeformationMode::PQ] {
        let src = BuiltinRelations::new(mode);
        let mut checked = 0;
        for id in FamilyId::ALL {
            for (l, k) in [(0, 1), (2, -1), (1, 3)] {
                let Some((lhs, rhs, _)) = sides(&src, id, l, k) else { continue };
                let rhs_n = src.normalize(&rhs).unwrap();
                if rhs_n.is_zero() {
                    continue;
                }
                let bad = rhs.scale(&two);
                let symbolic = src.normalize(&lhs).unwrap().sub(&src.normalize(&bad).unwrap()).is_zero();
                let p = params(rat(3, 2), mode, excursion(&lhs).max(excursion(&bad)));
                let fock = crosscheck(&lhs, &bad, &p, mode).unwrap();
                assert!(!symbolic && !fock, "{mode} {id}({l},{k})");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn verdicts_survive_a_larger_truncation() {
    let mode = DeformationMode::PQ;
    let src = BuiltinRelations::new(mode);
    for id in FamilyId::ALL {
        for (l, k) in [(0, 2), (3, 1), (-1, 2)] {
            let Some((lhs, rhs, _)) = sides(&src, id, l, k) else { continue };
            let bad = rhs.add(&lhs.scale(&LaurentPoly::q_pow(1)));
            for (x, y) in [(&lhs, &rhs), (&lhs, &bad)] {
                let base = params(rat(5, 3), mode, excursion(x).max(excursion(y)));
                let mut wide = base.clone();
                wide.truncation += 4;
                let a = find_disagreement(x, y, &base, mode).unwrap().is_none();
                let b = find_disagreement(x, y, &wide, mode).unwrap().is_none();
                assert_eq!(a, b, "{id}({l},{k})");
            }
        }
    }
}

#[test]
fn rewrite_rules_hold_on_the_fock_space() {
    for mode in [DeformationMode::Classical, DeformationMode::Q, DeformationMode::PQ] {
        let rows = representation_fidelity(&params(rat(3, 2), mode, 8), mode).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.holds), "{mode}: {rows:?}");
    }
}
