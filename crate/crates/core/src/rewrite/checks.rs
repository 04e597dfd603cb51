use serde::Serialize;

use super::{standard_system, RewriteError, RewriteRule, RewriteSystem};
use crate::algebra::{AlgebraSignature, Gen, ParityClass, Polynomial};
use crate::report::CheckItem;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiltrationReport {
    pub rules_checked: usize,
    pub violations: Vec<RewriteRule>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every rule must satisfy `level(rhs word) <= level(lhs)`: rewriting never
/// raises the critical level.
pub fn filtration_check(rs: &RewriteSystem) -> FiltrationReport {
    let violations = rs
        .rules()
        .iter()
        .filter(|r| r.rhs.terms().any(|t| t.level() > r.lhs.level()))
        .cloned()
        .collect();
    FiltrationReport { rules_checked: rs.rules().len(), violations }
}

/// Reversal fixes the generators and reverses products, so each reversed
/// defining relation must again vanish in the quotient.
pub fn anti_automorphism_check(sig: &AlgebraSignature, rs: &RewriteSystem) -> Result<Vec<CheckItem>, RewriteError> {
    sig.defining_relations()
        .into_iter()
        .map(|rel| {
            let reversed = rel.as_polynomial().reversed();
            let nf = rs.normal_form(&reversed)?;
            Ok(CheckItem::new(
                format!("reverse({})", rel.name),
                nf.is_zero(),
                format!("NF({reversed}) = {nf}"),
            ))
        })
        .collect()
}

fn expect_normal_form(
    rs: &RewriteSystem,
    name: &str,
    input: &str,
    expected: &str,
) -> Result<CheckItem, RewriteError> {
    let input: Polynomial = input.parse()?;
    let expected: Polynomial = expected.parse()?;
    let nf = rs.normal_form(&input)?;
    let target = rs.normal_form(&expected)?;
    Ok(CheckItem::new(name, nf == target, format!("NF({input}) = {nf}, expected {expected}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeredityReport {
    pub source: u32,
    pub target: u32,
    pub items: Vec<CheckItem>,
}

impl HeredityReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

/// Identities used to transport relations along the inclusion of the
/// `n`-dimensional path space into the `(n+1)`-dimensional one, checked by
/// normal forms in the target algebra.
pub fn heredity_check(n: u32) -> Result<HeredityReport, RewriteError> {
    let source = AlgebraSignature::new(n)?;
    let target_n = n + 1;
    let target = standard_system(target_n, 3 * target_n as i64 + 8)?;
    let mut items = Vec::new();
    if source.parity() == ParityClass::Even {
        // image of TY is H^2 S Y H, image of YT is H Y H^2 S
        items.push(expect_normal_form(&target, "f(TY) = H^2SYH", "H^2SYH", "H^3SY + H^2Y")?);
        items.push(expect_normal_form(&target, "f(YT) = HYH^2S", "HYH^2S", "H^3SY")?);
    } else {
        // S -> T, U -> H carries SH + HS + U to TH + HT + H
        let relation: Polynomial = "SH + HS + 1".parse()?;
        let transported: Polynomial = relation
            .terms()
            .map(|w| if w.is_empty() { "H".parse().unwrap() } else { w.map_letters(|g| if g == Gen::S { Gen::T } else { g }) })
            .collect();
        let nf = target.normal_form(&transported)?;
        items.push(CheckItem::new(
            "transport SH+HS=U to TH+HT=H",
            nf.is_zero(),
            format!("NF({transported}) = {nf}"),
        ));
    }
    Ok(HeredityReport { source: n, target: target_n, items })
}

/// Consequences of the presentation that are stated separately: the `n = 1`
/// relations in the basis `Y = S + Sbar`, the unit commutator for odd `n`,
/// and the idempotent structure for even `n`.
pub fn derived_relation_checks(rs: &RewriteSystem) -> Result<Vec<CheckItem>, RewriteError> {
    let sig = rs.signature();
    let mut items = Vec::new();
    if sig.parity().is_odd() {
        items.push(expect_normal_form(rs, "HS + SH = 1", "HS + SH", "1")?);
        if sig.n() == 1 {
            items.push(expect_normal_form(rs, "Sbar^2 = 0 with Sbar = S + Y", "SS + SY + YS + YY", "0")?);
        }
    } else {
        items.push(expect_normal_form(rs, "THT = 0", "THT", "0")?);
        items.push(expect_normal_form(rs, "(1+T)H(1+T) = 0", "H + HT + TH + THT", "0")?);
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::standard_system;

    #[test]
    fn filtration_on_literal_rules() {
        for n in 1..=7 {
            let rs = standard_system(n, 20).unwrap();
            assert!(filtration_check(&rs).passed(), "n={n}");
        }
    }

    #[test]
    fn filtration_flags_level_raising_rule() {
        let rs = standard_system(3, 10).unwrap();
        let bad = rs
            .with_extra_rules(&[RewriteRule::new("H^3".parse().unwrap(), "S".parse().unwrap())])
            .unwrap();
        let report = filtration_check(&bad);
        assert!(!report.passed());
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn anti_automorphism_all_parities() {
        for n in 1..=7 {
            let rs = standard_system(n, 20).unwrap();
            for item in anti_automorphism_check(rs.signature(), &rs).unwrap() {
                assert!(item.passed, "n={n}: {item:?}");
            }
        }
    }

    #[test]
    fn reversed_correction_term_uses_commutation() {
        let rs = standard_system(5, 20).unwrap();
        // Y^2 H^4 must be moved back to H^4 Y^2 for the reversed relation to vanish
        let reversed: Polynomial = "SY + YS + Y^2H^4".parse().unwrap();
        assert!(rs.normal_form(&reversed).unwrap().is_zero());
    }

    #[test]
    fn heredity_identities() {
        let r2 = heredity_check(2).unwrap();
        assert_eq!(r2.target, 3);
        assert!(r2.passed(), "{r2:?}");
        let r4 = heredity_check(4).unwrap();
        assert!(r4.passed(), "{r4:?}");
        let r3 = heredity_check(3).unwrap();
        assert!(r3.passed(), "{r3:?}");
        assert!(heredity_check(0).is_err());
    }

    #[test]
    fn heredity_normal_forms_explicit() {
        let n3 = standard_system(3, 20).unwrap();
        let nf = n3.normal_form(&"H^2SYH".parse().unwrap()).unwrap();
        assert_eq!(nf, "H^3SY + H^2Y".parse().unwrap());
        let nf = n3.normal_form(&"HYH^2S".parse().unwrap()).unwrap();
        assert_eq!(nf, "H^3SY".parse().unwrap());
        // n = 5: the extra H^7 Y^2 term dies because H^6 = 0
        let n5 = standard_system(5, 20).unwrap();
        let nf = n5.normal_form(&"HYH^2S".parse().unwrap()).unwrap();
        assert_eq!(nf, "H^3SY".parse().unwrap());
    }

    #[test]
    fn derived_relations() {
        for n in 1..=6 {
            let rs = standard_system(n, 20).unwrap();
            for item in derived_relation_checks(&rs).unwrap() {
                assert!(item.passed, "n={n}: {item:?}");
            }
        }
    }
}
