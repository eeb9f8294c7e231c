use qsvir_core::relations::{all_family_names, classical_limit_check, BuiltinRelations};
use qsvir_core::{sweep, DeformationMode, FamilyId, IndexRange};

const GRID: IndexRange = IndexRange { lo: -1, hi: 6 };

#[test]
fn every_relation_holds_on_the_grid() {
    for mode in [DeformationMode::Classical, DeformationMode::Q, DeformationMode::PQ] {
        let report = sweep(&BuiltinRelations::new(mode), &all_family_names(), GRID, GRID);
        let s = report.summary;
        assert_eq!(s.fail, 0, "{mode}");
        assert_eq!(s.pass + s.skipped, 6 * 64, "{mode}");
        assert!(s.pass > s.skipped, "{mode}");
    }
}

#[test]
fn deformed_relations_reduce_to_the_classical_ones() {
    let report = classical_limit_check(&FamilyId::ALL, GRID, GRID);
    assert_eq!(report.summary.fail, 0);
    assert!(report.summary.pass > 0);
}
