pub mod dscoef;
pub mod exactmath;
pub mod fockweil;
pub mod hypergeo;
pub mod quadrature;
pub mod report;
pub mod suites;
pub mod repparams;
pub mod zetaeval;
