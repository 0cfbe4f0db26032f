#ifndef GCORE_CIRCUIT_HPP
#define GCORE_CIRCUIT_HPP

#include <optional>
#include <string>
#include <variant>

#include "gcore/corestate.hpp"
#include "gcore/gaussian.hpp"

namespace gcore {

// Photon addition/subtraction marker inside a gate sequence.
struct LadderEvent {
  enum class Kind { Addition, Subtraction };
  Kind kind;
  int mode;
};

using CircuitOp = std::variant<ElementaryGate, LadderEvent>;

struct VacuumInput {};
struct FockInput {
  FockIndex occ;
};
struct CoreInput {
  std::vector<std::pair<FockIndex, cplx>> terms;
};
using InputSpec = std::variant<VacuumInput, FockInput, CoreInput>;

// A parsed circuit file: input state, ordered operations and an optional
// measured-mode subset (absent means all modes are measured).
struct Circuit {
  int modes = 0;
  InputSpec input;
  std::vector<CircuitOp> ops;
  std::optional<std::vector<int>> measured_modes;

  bool has_ladder_events() const;
  std::vector<int> measured_or_all() const;
};

/// Materializes the input description as a core state. Core inputs must be
/// normalized within 1e-9.
CoreState input_core_state(const Circuit& c);

/// Composes all Gaussian gates of a ladder-free circuit in order.
GaussianUnitary compose_gaussian(const Circuit& c);

// -- circuit file format -----------------------------------------------------

/// Parses the JSON circuit document; throws ValidationError with a field
/// diagnostic on schema violations.
Circuit parse_circuit(const std::string& json_text);
Circuit load_circuit(const std::string& path);
std::string emit_circuit(const Circuit& c);

/// Parses a comma-separated list of complex literals of the form `a+bi`
/// (signs allowed on both parts, mandatory trailing i, no spaces), one per
/// expected mode.
OutcomeVector parse_outcome(const std::string& text, int expected);
std::string format_complex(cplx z);

}  // namespace gcore

#endif
