#ifndef GCORE_INTERLEAVED_HPP
#define GCORE_INTERLEAVED_HPP

#include "gcore/circuit.hpp"

namespace gcore {

// Gaussian layers G0..Gn alternating with n photon additions/subtractions;
// identity layers are inserted where events are adjacent or at the ends.
struct InterleavedCircuit {
  int modes = 0;
  std::vector<GaussianUnitary> layers;  // events.size() + 1 entries
  std::vector<LadderEvent> events;

  static InterleavedCircuit from_circuit(const Circuit& c);
};

// Canonical form of an interleaved circuit: one Gaussian unitary applied to
// a normalized core state. discarded_norm is the norm of the unnormalized
// operator product applied to vacuum.
struct CompiledCircuit {
  GaussianUnitary gaussian;
  CoreState core;
  double discarded_norm = 1.0;
};

/**
 * @brief Expresses a ladder operator pushed through the Gaussian prefix as an
 * affine combination of ladder operators at the input.
 *
 * For the composed prefix P = G^{(j)} ... G^{(0)} preceding the event, this
 * returns P^dag a_k P (subtraction) or P^dag a_k^dag P (addition), read off
 * the stored symplectic rows of the prefix: annihilation rows for
 * subtraction, creation rows for addition.
 */
AffineLadderOp commute_ladder_through(const GaussianUnitary& prefix, int mode,
                                      LadderEvent::Kind kind);

/**
 * @brief Compiles the interleaved circuit to (G, core).
 *
 * G is the composition of all Gaussian layers in circuit order; the core
 * state is built by applying the commuted affine ladder operators to vacuum
 * in event order and then normalizing, with the discarded norm recorded.
 * A subtraction chain that annihilates the state entirely is reported as a
 * distinct ValidationError. For pure-addition circuits the compiled core
 * degree equals the number of events exactly.
 */
CompiledCircuit compile(const InterleavedCircuit& c);
CompiledCircuit compile(const Circuit& c);

/// Replaces a circuit's ladder events by the equivalent compiled core input:
/// same Gaussian gate list with add/sub removed, core input from compile().
Circuit compiled_equivalent(const Circuit& c);

// Report of the reachability witness for the two-mode target
// (|20> + |01>)/sqrt(2) under two-addition interleaved circuits.
struct WitnessReport {
  int samples = 0;
  double max_fidelity = 0.0;   // over random compilations, must stay < 1
  int obstruction_draws = 0;   // constrained coefficient draws checked
  double obstruction_residual = 0.0;  // max |<1_2> coefficient|, must be 0
  bool passed = false;
};

/**
 * @brief Randomized and deterministic evidence that the target core state
 * (|20> + |01>)/sqrt(2) is not the compiled core of any 2-mode, 2-addition
 * interleaved circuit.
 *
 * The randomized part compiles `samples` random circuits and records the
 * maximum fidelity with the target. The deterministic part draws random
 * degree-2 coefficient families constrained so the |2_1> coefficient is
 * nonzero while all |1_k + 1_l> (k != l) coefficients vanish, and verifies
 * the |1_2> coefficient is then exactly zero.
 */
WitnessReport two_addition_witness(int samples, unsigned seed);

}  // namespace gcore

#endif
