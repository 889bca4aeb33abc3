//! Quadrature rules, chart Laplace–Beltrami operators, volume elements, the ⋄-conjugated
//! inner products on the complex spheres and the contour identity behind them.

mod chart_function;
mod inner;
mod laplacian;
mod quadrature;
mod volume;

pub use chart_function::{AngularFactor, AngularTerm, Chart, ChartFunction, PointFn, PolarFn, RadialFn, Shape, Var};
pub use inner::{
    contour_identity_check, diamond_inner_product, diamond_inner_product_adaptive, diamond_prefactor, oscillator_radial_2d,
    sphere_inner_product, u_radial_weight, AdaptiveValue, ContourCheck,
};
pub use laplacian::{
    laplace_beltrami_apply, laplacian_relation, laplacian_relation_residual, metric_laplacian, observed_order, FdConfig, FdOrder,
    LaplacianPair, LaplacianRelation, USide,
};
pub use quadrature::{composite_gauss_legendre, gauss_legendre, QuadratureRule};
pub use volume::{
    gram_determinant, s_volume_density, sphere_volume, sphere_volume_from_u, u_volume_density, volume_weight, VolumePair, VolumeWeight,
};
