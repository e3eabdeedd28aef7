//! The built-in Q-families and their small simple modules.

use std::sync::Arc;

use crate::base::{poly_uv, QFamily, Word};
use crate::module::KlrModule;

/// One vertex, `Q_11 = 0`: the nil-Hecke case.
pub fn c1() -> Arc<QFamily> {
    Arc::new(QFamily::new(vec![1], vec![]).expect("valid family"))
}

/// Two vertices with `Q_12(u,v) = u - v`.
pub fn c2() -> Arc<QFamily> {
    Arc::new(QFamily::new(vec![1, 2], vec![((1, 2), poly_uv(&[(1, 1, 0), (-1, 0, 1)]))]).expect("valid family"))
}

/// Two vertices with `Q_12(u,v) = u + v`, not symmetric.
pub fn c3() -> Arc<QFamily> {
    Arc::new(QFamily::new(vec![1, 2], vec![((1, 2), poly_uv(&[(1, 1, 0), (1, 0, 1)]))]).expect("valid family"))
}

/// The one-dimensional module on `letters` with zero action.
pub fn simple_on(q: &Arc<QFamily>, letters: &[u32]) -> KlrModule {
    KlrModule::one_dimensional(q.clone(), Word::new(letters.to_vec())).expect("letters in the index set")
}
