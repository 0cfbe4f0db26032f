// Seeded random matrices, gates, states and circuits shared by the unit and
// acceptance suites.
#ifndef GCORE_TESTS_RANDOM_INPUTS_HPP
#define GCORE_TESTS_RANDOM_INPUTS_HPP

#include <random>

#include "gcore/circuit.hpp"
#include "gcore/corestate.hpp"
#include "gcore/gaussian.hpp"

namespace gcore_tests {

using gcore::cplx;

inline cplx random_unit_cplx(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

inline gcore::Mat random_symmetric(int n, std::mt19937_64& rng) {
  gcore::Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = random_unit_cplx(rng);
  return a;
}

struct GateBounds {
  double max_disp = 1.0;
  double max_squeeze = 0.5;
};

// Random gate sequence touching every mode; suitable both for direct
// composition and for oracle replay.
inline std::vector<gcore::ElementaryGate> random_gate_sequence(
    int modes, std::mt19937_64& rng, const GateBounds& bounds = {}) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  std::vector<gcore::ElementaryGate> gates;
  for (int k = 0; k < modes; ++k) {
    gates.push_back(gcore::rotation(angle(rng), k));
    gates.push_back(gcore::squeeze(bounds.max_squeeze * mag(rng), angle(rng), k));
    gates.push_back(gcore::displacement(
        std::polar(bounds.max_disp * mag(rng), angle(rng)), k));
  }
  for (int k = 0; k + 1 < modes; ++k)
    gates.push_back(gcore::beamsplitter(angle(rng), angle(rng), k, k + 1));
  return gates;
}

inline gcore::GaussianUnitary random_gaussian(int modes, std::mt19937_64& rng,
                                              const GateBounds& bounds = {}) {
  gcore::GaussianUnitary g = gcore::GaussianUnitary::identity(modes);
  for (const auto& gate : random_gate_sequence(modes, rng, bounds))
    g = gcore::compose(gcore::GaussianUnitary::from_gate(gate, modes), g);
  return g;
}

// Random normalized core state with bounded degree and support.
inline gcore::CoreState random_core_state(int modes, int max_degree,
                                          int max_support,
                                          std::mt19937_64& rng) {
  std::uniform_int_distribution<int> supp(1, max_support);
  std::uniform_int_distribution<int> deg(0, max_degree);
  const int support = supp(rng);
  std::vector<std::pair<gcore::FockIndex, cplx>> terms;
  for (int t = 0; t < support; ++t) {
    gcore::FockIndex occ(size_t(modes), 0);
    int budget = deg(rng);
    std::uniform_int_distribution<int> mode_pick(0, modes - 1);
    while (budget > 0) {
      occ[size_t(mode_pick(rng))] += 1;
      --budget;
    }
    terms.emplace_back(occ, random_unit_cplx(rng));
  }
  return gcore::CoreState(modes, terms, /*normalize=*/true);
}

inline gcore::OutcomeVector random_outcome(int modes, double radius,
                                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.0, radius);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  gcore::OutcomeVector alpha;
  for (int k = 0; k < modes; ++k)
    alpha.push_back(std::polar(mag(rng), angle(rng)));
  return alpha;
}

// Random ladder-free circuit over the same gate family.
inline gcore::Circuit random_gaussian_circuit(int modes, std::mt19937_64& rng,
                                              const GateBounds& bounds = {}) {
  gcore::Circuit c;
  c.modes = modes;
  c.input = gcore::VacuumInput{};
  for (const auto& g : random_gate_sequence(modes, rng, bounds))
    c.ops.emplace_back(g);
  return c;
}

}  // namespace gcore_tests

#endif
