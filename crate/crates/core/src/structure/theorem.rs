use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::algebra::{head, radical_subspace, socle, socle_subspace};
use super::simple::{end_dimension, is_simple};
use crate::convolution::convolve;
use crate::linalg::{QMatrix, Subspace};
use crate::module::{is_isomorphic, submodule_of, KlrModule, ModuleError};
use crate::rmatrix::{renormalized_r, renormalized_r_rev, RMatrixError};

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Named results of a verification run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub claims: Vec<Claim>,
    pub metrics: BTreeMap<String, i64>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn claim(&mut self, id: &str, passed: bool) {
        self.claims.push(Claim { id: id.to_string(), passed, detail: None });
    }

    pub fn claim_with(&mut self, id: &str, passed: bool, detail: String) {
        self.claims.push(Claim { id: id.to_string(), passed, detail: Some(detail) });
    }

    pub fn metric(&mut self, name: &str, v: i64) {
        self.metrics.insert(name.to_string(), v);
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("the root of m is not symmetric")]
    NotSymmetric,
    #[error("m not simple")]
    MNotSimple,
    #[error("r_{{m,m}} not scalar")]
    RNotScalar,
    #[error("n not simple")]
    NNotSimple,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
}

fn image(f: &QMatrix) -> Subspace {
    Subspace::image(f)
}

/// Check every clause of the main theorem for `M∘N`, where `M` has a
/// symmetric root and `r_{M,M}` is a scalar, and `N` is simple.
pub fn verify_main_theorem(m: &KlrModule, n: &KlrModule) -> Result<StructureReport, TheoremError> {
    if !m.qfamily().is_symmetric(m.beta()) {
        return Err(TheoremError::NotSymmetric);
    }
    if m.dim() == 0 {
        return Err(TheoremError::MNotSimple);
    }
    let rmm = renormalized_r(m, m)?;
    if rmm.matrix.scalar_multiple_of_identity().is_none() {
        if !is_simple(m).is_simple() {
            return Err(TheoremError::MNotSimple);
        }
        return Err(TheoremError::RNotScalar);
    }
    if !is_simple(n).is_simple() {
        return Err(TheoremError::NNotSimple);
    }

    let mut rep = StructureReport::default();
    rep.claim("main_theorem.m_simple", is_simple(m).is_simple());

    let mn = convolve(m, n)?;
    let nm = convolve(n, m)?;
    rep.metric("dim_conv", mn.dim() as i64);

    let soc = socle_subspace(&mn);
    let rad = radical_subspace(&mn);
    let (soc_mod, _) = socle(&mn)?;
    let (head_mod, _) = head(&mn)?;
    rep.metric("socle_dim", soc.dim() as i64);
    rep.metric("head_dim", head_mod.dim() as i64);
    rep.metric("radical_dim", rad.dim() as i64);
    let mn_simple = is_simple(&mn).is_simple();
    rep.claim("main_theorem.head_simple", is_simple(&head_mod).is_simple());
    rep.claim("main_theorem.socle_simple", is_simple(&soc_mod).is_simple());

    // r_{N,M} : N∘M → M∘N
    let r_nm = renormalized_r_rev(n, m)?;
    rep.metric("t", r_nm.order as i64);
    let im_nm = image(&r_nm.matrix);
    rep.claim_with(
        "main_theorem.image_r_nm_is_socle",
        im_nm == soc,
        format!("dim Im r_{{N,M}} = {}, dim socle(M∘N) = {}", im_nm.dim(), soc.dim()),
    );

    // r_{M,N} : M∘N → N∘M
    let r_mn = renormalized_r(m, n)?;
    rep.metric("s", r_mn.order as i64);
    let im_mn = image(&r_mn.matrix);
    let soc_nm = socle_subspace(&nm);
    rep.claim_with(
        "main_theorem.image_r_mn_is_socle_of_nm",
        im_mn == soc_nm,
        format!("dim Im r_{{M,N}} = {}, dim socle(N∘M) = {}", im_mn.dim(), soc_nm.dim()),
    );
    let (im_mod, _) = submodule_of(&nm, &im_mn)?;
    rep.claim("main_theorem.image_r_mn_iso_head", is_isomorphic(&im_mod, &head_mod).is_some());

    let end = end_dimension(&mn);
    rep.metric("end_dim", end as i64);
    rep.claim("unique_end.end_dim_one", end == 1);

    let head_iso_socle = is_isomorphic(&head_mod, &soc_mod).is_some();
    rep.claim("corollary.head_iso_socle_implies_simple", !head_iso_socle || mn_simple);
    let commute = is_isomorphic(&mn, &nm).is_some();
    rep.claim("corollary.commute_iff_simple", commute == mn_simple);
    rep.metric("conv_simple", mn_simple as i64);
    rep.metric("head_iso_socle", head_iso_socle as i64);
    rep.metric("commute", commute as i64);
    Ok(rep)
}
