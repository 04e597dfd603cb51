use pathring_core::algebra::{AlgebraSignature, Polynomial, Word};
use pathring_core::homology::{assemble_pn_homology, Coefficients};
use pathring_core::rewrite::{
    compare, filtration_check, hilbert, irreducible_basis, repair_search, standard_system, surplus_words,
};

fn f2_table(n: u32, d: i64) -> pathring_core::table::BigradedDimTable {
    assemble_pn_homology(n, Coefficients::F2, d).unwrap().to_dim_table()
}

#[test]
fn odd_presentations_match_homology() {
    for n in [1, 3, 5, 7] {
        let rs = standard_system(n, 30).unwrap();
        let report = compare(&hilbert(&rs, 30).unwrap(), &f2_table(n, 30)).unwrap();
        assert!(report.is_empty(), "n={n}: {report:?}");
    }
}

#[test]
fn even_presentations_have_one_extra_word_per_cell() {
    for n in [2, 4, 6] {
        let rs = standard_system(n, 3 * n as i64).unwrap();
        let basis = irreducible_basis(&rs, 3 * n as i64).unwrap();
        let report = compare(&hilbert(&rs, 3 * n as i64).unwrap(), &f2_table(n, 3 * n as i64)).unwrap();
        assert!(!report.has_deficit());
        let surplus = surplus_words(&basis, &report);
        let hn = Word::power(pathring_core::algebra::Gen::H, n as usize);
        let first = &surplus.iter().find(|(c, _)| c.degree == 0).unwrap().1;
        assert_eq!(first, &vec![hn.concat(&"T".parse().unwrap())]);
        let at_n: Vec<String> = surplus
            .iter()
            .filter(|(c, _)| c.degree == n as i64)
            .flat_map(|(_, ws)| ws.iter().map(ToString::to_string))
            .collect();
        assert!(at_n.contains(&format!("H^{n}Y")), "{at_n:?}");
        let degrees: Vec<i64> = report.totals.iter().map(|t| t.degree).collect();
        assert_eq!(degrees[..2], [0, n as i64]);
    }
}

#[test]
fn repaired_systems_are_complete_and_filtered() {
    for n in [2, 4] {
        let sig = AlgebraSignature::new(n).unwrap();
        let report = repair_search(&sig, &f2_table(n, 20), 20).unwrap();
        assert_eq!(report.survivors.len(), 2);
        for s in &report.survivors {
            let sys = s.system.as_ref().unwrap();
            assert!(filtration_check(sys).passed());
            assert!(compare(&hilbert(sys, 20).unwrap(), &f2_table(n, 20)).unwrap().is_empty());
        }
    }
}

#[test]
fn normal_forms_in_level_one_for_n3() {
    let rs = standard_system(3, 12).unwrap();
    let p: Polynomial = "YH + SYS".parse().unwrap();
    // YH -> HY; SYS -> SSY -> 0
    assert_eq!(rs.normal_form(&p).unwrap(), "HY".parse().unwrap());
}
