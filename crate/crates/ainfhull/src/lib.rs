//! Exact A-infinity minimal models of Ext algebras of finite-dimensional local
//! algebras over F_p, and reconstruction of the algebra from them through the
//! dual bar construction and its classical hull.

pub mod par;
pub mod linffp;
pub mod report;
pub mod graded;
pub mod algebras;
pub mod hochschild;
pub mod ainfty;
pub mod transfer;
pub mod barcobar;
pub mod reconstruct;
pub mod twomodels;
pub mod changegroup;
pub mod fuzz;
