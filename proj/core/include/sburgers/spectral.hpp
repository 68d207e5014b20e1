#pragma once

#include "sburgers/field.hpp"

namespace sburgers {

/// Multiplies every mode by e^{-a|k|²}; the mean mode is unchanged. a must be
/// nonnegative (a = ν·t for the viscous semigroup). Input untouched.
Field heat_semigroup_apply(const Field& field, double a);

/// Exact spectral derivative along one axis (Nyquist modes dropped, as usual
/// for odd-order derivatives of real data).
Field derivative(const Field& field, int axis);

Field gradient(const Field& scalar_field);
Field divergence(const Field& vector_field);

/// d=2: scalar ∂x u_y − ∂y u_x.  d=3: the full curl vector.  d=1: DimensionError.
Field curl(const Field& vector_field);

/// (a·∇)b computed pseudo-spectrally; a is a vector field, b scalar or vector.
/// With dealias on, modes with any |k_j| > n/3 are zeroed on the inputs and
/// on the product.
Field advect(const Field& a, const Field& b, bool dealias = true);

/// sign · (v·∇)v computed pseudo-spectrally. With dealias on (default), modes
/// with any |k_j| > n/3 are zeroed before and after the pointwise product.
Field nonlinearity(const Field& v, double sign, bool dealias = true);

/// Zeroes modes with any |k_j| > n/3, in place.
void dealias_two_thirds(Field& field);

/// (Σ_x |f(x)|^p cellVolume)^{1/p} with pointwise Euclidean magnitude over
/// components; rectangle rule (spectrally accurate on the periodic grid).
double lp_norm(const Field& field, double p);

/// Applies (1+|k|²)^{order/2} spectrally, then lp_norm.
double sobolev_norm(const Field& field, int order, double p);

/// Max over grid points of the pointwise magnitude.
double linf_norm(const Field& field);

/// Sup over grid points of the Frobenius norm of the Jacobian ∂_j f_i.
double jacobian_linf(const Field& field);

/// L² norm via Parseval (period^{d/2} · spectral ℓ²); cross-check route.
double spectral_l2_norm(const Field& field);

/// Max |c_k − conj(c_{−k})| over modes; zero for real-valued data.
double conjugate_asymmetry(const Field& field);

/// Spectral restriction/extension of a field onto an n_new-per-axis grid on
/// the same torus (shared modes copied, Nyquist dropped).
Field resample(const Field& field, int n_new);

/// Least-squares scalar potential of an (approximately curl-free) vector
/// field: divide by ik per component and combine; zero-mean convention.
Field antigradient(const Field& vector_field);

}  // namespace sburgers
