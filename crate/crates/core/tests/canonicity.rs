mod common;

use common::REALIZATIONS;
use tvcsp::ops::{apply_op, CanonicalOp};
use tvcsp::order::all_joint_configs;

#[test]
fn binary_ops_agree_with_two_realizations() {
    for op in CanonicalOp::ALL.into_iter().filter(|op| op.arity() == 2) {
        for k in 1..=3 {
            for joint in all_joint_configs(k, op.needs_zero()) {
                let symbolic = apply_op(op, &joint).unwrap();
                for (i, real) in REALIZATIONS.iter().enumerate() {
                    assert_eq!(real.apply(op, &joint), symbolic, "{op} realization {i} on {joint:?}");
                }
            }
        }
    }
}
