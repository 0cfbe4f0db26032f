#ifndef GCORE_ORACLE_HPP
#define GCORE_ORACLE_HPP

#include "gcore/circuit.hpp"

namespace gcore {
namespace oracle {

// Dense state over m modes truncated at `cutoff` photons per mode; the
// amplitude tensor is flattened with the last mode fastest. Intended for
// desk-scale verification only (modes <= 3).
struct TruncatedState {
  int modes = 0;
  int cutoff = 0;
  Vec amps;

  Eigen::Index dim_per_mode() const { return cutoff + 1; }
  double norm() const { return amps.norm(); }
  cplx amplitude(const FockIndex& occ) const;
};

/// Truncated operator of an elementary gate, obtained by exponentiating the
/// quadratic ladder-operator generator on the retained subspace; conventions
/// match the symplectic module exactly. Single-mode gates return a
/// (cutoff+1)^2 matrix, pair gates a (cutoff+1)^4 matrix over (mode_a, mode_b).
Mat gate_matrix(const ElementaryGate& g, int cutoff);

/**
 * @brief Brute-force circuit simulation in the truncated Fock space.
 *
 * Applies the circuit's gates in order; photon add/sub events act as
 * truncated ladder operators, so the result is unnormalized when events are
 * present (the norm carries the same bookkeeping the compiler reports).
 * Throws ValidationError when the input does not fit under the cutoff and
 * NumericalError when a subtraction chain annihilates the state.
 */
TruncatedState simulate(const Circuit& c, int cutoff);

struct OracleDensity {
  double value = 0.0;
  double truncation_bound = 0.0;  // coherent-tail weight missed by the cutoff
};

/// Heterodyne density |<alpha|psi>|^2 / pi^m of the normalized simulated
/// state, with a reported coherent-truncation bound. Throws NumericalError
/// when the bound exceeds 1e-8 (cutoff insufficient for this outcome).
OracleDensity density(const Circuit& c, const OutcomeVector& alpha,
                      int cutoff);

/// Tail weight sum_{n > cutoff} |a|^{2n} e^{-|a|^2} / n! of a coherent state.
double coherent_tail(double abs_alpha, int cutoff);

inline constexpr int kDefaultCutoff = 25;

}  // namespace oracle
}  // namespace gcore

#endif
