use pathring_core::homology::{
    assemble_pn_homology, block_local_system, rpn_homology, st_rpn_homology, uct_f2, AbelianGroup,
    CoefficientSystem, Coefficients,
};

#[test]
fn integral_assembly_is_uct_compatible_levelwise() {
    for n in 1..=6u32 {
        let z = assemble_pn_homology(n, Coefficients::Integral, 8 * n as i64).unwrap();
        let f2 = assemble_pn_homology(n, Coefficients::F2, 8 * n as i64).unwrap();
        assert_eq!(uct_f2(&z).unwrap().to_dim_table(), f2.to_dim_table(), "n={n}");
        assert!(z.is_canonical());
    }
}

#[test]
fn twisted_blocks_for_even_n() {
    let z = assemble_pn_homology(2, Coefficients::Integral, 12).unwrap();
    assert_eq!(block_local_system(2, 2), CoefficientSystem::ZPullbackO);
    // level 2 occupies degrees 3..6 with the pulled-back orientation system
    let level2: Vec<String> = (3..=6).map(|d| z.cell(d, Some(2)).to_string()).collect();
    assert_eq!(level2, ["Z/2", "0", "Z/2", "0"]);
    let level1: Vec<String> = (1..=4).map(|d| z.cell(d, Some(1)).to_string()).collect();
    assert_eq!(level1, ["Z", "Z/4", "0", "Z"]);
}

#[test]
fn rpn_uct() {
    for n in 1..=7u32 {
        let f2 = rpn_homology(n, CoefficientSystem::F2).unwrap().dims();
        assert_eq!(uct_f2(&rpn_homology(n, CoefficientSystem::ZTrivial).unwrap()).unwrap().dims(), f2);
        assert_eq!(uct_f2(&rpn_homology(n, CoefficientSystem::ZTwistedO).unwrap()).unwrap().dims(), f2);
    }
}

#[test]
fn top_class_of_orientable_total_space() {
    // ST RP^n is orientable, so H_{2n-1}(ST RP^n; Z) = Z
    for n in 2..=7u32 {
        let t = st_rpn_homology(n, CoefficientSystem::ZTrivial).unwrap();
        assert_eq!(t.group(2 * n as i64 - 1), AbelianGroup::free(1));
        assert_eq!(t.group(0), AbelianGroup::free(1));
    }
}

#[test]
fn tables_serialize() {
    let t = st_rpn_homology(2, CoefficientSystem::ZTrivial).unwrap();
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["label"], "ST RP^2");
    assert_eq!(json["cells"][1]["degree"], 1);
    assert_eq!(json["cells"][1]["group"]["torsion"][0], 4);
    let f2 = serde_json::to_value(st_rpn_homology(2, CoefficientSystem::F2).unwrap()).unwrap();
    assert_eq!(f2["cells"][0]["dim"], 1);
}
