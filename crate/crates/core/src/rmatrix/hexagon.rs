use serde::Serialize;

use super::{big_r_into, RMatrixError};
use crate::convolution::{associator, associator_inv, conv_maps, convolve};
use crate::linalg::{Matrix, Ring};
use crate::module::Rep;

/// Outcome of the two hexagon identities for a triple `(L, M, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexagonReport {
    /// `R_{L,M∘N} = (M∘R_{L,N})(R_{L,M}∘N)` up to associativity.
    pub left: bool,
    /// `R_{L∘M,N} = (R_{L,N}∘M)(L∘R_{M,N})` up to associativity.
    pub right: bool,
}

impl HexagonReport {
    pub fn passed(&self) -> bool {
        self.left && self.right
    }
}

pub fn check_hexagons<R: Ring>(l: &Rep<R>, m: &Rep<R>, n: &Rep<R>) -> Result<HexagonReport, RMatrixError> {
    let (hl, hm, hn) = (l.height(), m.height(), n.height());
    let id = |d: usize| Matrix::<R>::identity(d);

    let lm = convolve(l, m)?;
    let ml = convolve(m, l)?;
    let mn = convolve(m, n)?;
    let nm = convolve(n, m)?;
    let ln = convolve(l, n)?;
    let nl = convolve(n, l)?;

    // (L∘M)∘N → (M∘L)∘N → M∘(L∘N) → M∘(N∘L)  vs  (L∘M)∘N → L∘(M∘N) → (M∘N)∘L → M∘(N∘L)
    let m_ln = convolve(m, &ln)?;
    let m_nl = convolve(m, &nl)?;
    let l_mn = convolve(l, &mn)?;
    let mn_l = convolve(&mn, l)?;
    let r_lm = big_r_into(l, m, &ml)?;
    let r_ln = big_r_into(l, n, &nl)?;
    let r_l_mn = big_r_into(l, &mn, &mn_l)?;
    let path1 = conv_maps(hm, hl + hn, &id(m.dim()), &r_ln)
        .mul(&associator(m, l, n, &m_ln))
        .mul(&conv_maps(hl + hm, hn, &r_lm, &id(n.dim())));
    let path2 = associator(m, n, l, &m_nl).mul(&r_l_mn).mul(&associator(l, m, n, &l_mn));
    let left = path1 == path2;

    // (L∘M)∘N → L∘(M∘N) → L∘(N∘M) → (L∘N)∘M → (N∘L)∘M → N∘(L∘M)  vs  R_{L∘M,N}
    let ln_m = convolve(&ln, m)?;
    let n_lm = convolve(n, &lm)?;
    let r_mn = big_r_into(m, n, &nm)?;
    let r_lm_n = big_r_into(&lm, n, &n_lm)?;
    let path3 = associator(n, l, m, &n_lm)
        .mul(&conv_maps(hl + hn, hm, &r_ln, &id(m.dim())))
        .mul(&associator_inv(l, n, m, &ln_m))
        .mul(&conv_maps(hl, hm + hn, &id(l.dim()), &r_mn))
        .mul(&associator(l, m, n, &l_mn));
    let right = path3 == r_lm_n;

    Ok(HexagonReport { left, right })
}
