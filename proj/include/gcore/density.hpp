#ifndef GCORE_DENSITY_HPP
#define GCORE_DENSITY_HPP

#include <cstdint>

#include "gcore/corestate.hpp"
#include "gcore/gaussian.hpp"

namespace gcore {

// Quadratic kernel (V, D) of the Gaussian part of a heterodyne query:
// V = X [I - (cov + I/2)^{-1}] and D = [disp^dag (cov + I/2)^{-1}]^T for the
// pulled-back state G^dag |alpha>, with X the block swap.
struct KernelMatrices {
  Mat v;  // 2m x 2m complex symmetric
  Vec d;  // length 2m
};

struct DensityDetail {
  double density = 0.0;
  double prefactor = 0.0;       // Gaussian prefactor of the query
  std::int64_t term_pairs = 0;  // s^2 support pairs in the combinatorial sum
};

/// Gaussian prefactor exp[-disp^dag (cov+I/2)^{-1} disp / 2] /
/// (pi^m sqrt(det(cov+I/2))) of the pulled-back state; strictly positive.
double gaussian_prefactor(const GaussianUnitary& g, const OutcomeVector& alpha);

KernelMatrices kernel_matrices(const GaussianUnitary& g,
                               const OutcomeVector& alpha);

/**
 * @brief Heterodyne output probability density of the circuit G acting on the
 * core state, with all modes measured at outcome alpha.
 *
 * Evaluates the prefactor once per outcome and sums loop hafnians of reduced
 * kernel matrices over all support pairs (p, q); the conjugate symmetry
 * term(q, p) = term(p, q)* halves the work. Densities are with respect to
 * dRe dIm per mode. Values in [-1e-9, 0) clamp to 0; anything lower raises
 * NumericalError. The input state must be normalized.
 */
double core_density(const GaussianUnitary& g, const CoreState& input,
                    const OutcomeVector& alpha);
DensityDetail core_density_detail(const GaussianUnitary& g,
                                  const CoreState& input,
                                  const OutcomeVector& alpha);

/// Fock-input fast path: a single loop-hafnian term with prefactor 1/n!.
/// Agrees with core_density on the single-term core state.
double fock_density(const GaussianUnitary& g, const FockIndex& n,
                    const OutcomeVector& alpha);

/**
 * @brief Marginal heterodyne density over a subset of measured modes.
 *
 * Measured modes are brought to the front by a symplectic permutation, the
 * unmeasured modes are integrated out in closed form, and the resulting
 * effective quadratic kernel feeds the same loop-hafnian sum as the full
 * density. outcome[i] is the outcome on measured_modes[i]. With all modes
 * measured this reduces exactly to core_density.
 */
double marginal_density(const GaussianUnitary& g, const CoreState& input,
                        const std::vector<int>& measured_modes,
                        const OutcomeVector& alpha);
DensityDetail marginal_density_detail(const GaussianUnitary& g,
                                      const CoreState& input,
                                      const std::vector<int>& measured_modes,
                                      const OutcomeVector& alpha);

}  // namespace gcore

#endif
