//! Named groups used by the benchmarks.

use sublat_core::PermGroup;

/// PSL(2,13) on the 14 points of the projective line, generated by
/// `z -> z + 1` and `z -> -1/z`. Order 1092.
pub fn psl_2_13() -> PermGroup {
    PermGroup::from_cycle_strs(
        14,
        &[
            "(2,3,4,5,6,7,8,9,10,11,12,13,14)",
            "(1,2)(3,14)(4,8)(5,6)(9,13)(11,12)",
        ],
    )
    .unwrap()
}

/// SL(2,3) acting on the 8 non-zero vectors of GF(3)². Order 24.
pub fn sl_2_3() -> PermGroup {
    PermGroup::from_cycle_strs(8, &["(3,4,5)(6,8,7)", "(1,4,7)(2,8,5)"]).unwrap()
}

/// S_3 × S_3 on six points.
pub fn s3_x_s3() -> PermGroup {
    PermGroup::from_cycle_strs(6, &["(1,2,3)", "(1,2)", "(4,5,6)", "(4,5)"]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(psl_2_13().order().unwrap(), 1092);
        assert_eq!(sl_2_3().order().unwrap(), 24);
        assert_eq!(s3_x_s3().order().unwrap(), 36);
    }
}
