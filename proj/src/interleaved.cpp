#include "gcore/interleaved.hpp"

#include <cmath>
#include <random>

namespace gcore {

InterleavedCircuit InterleavedCircuit::from_circuit(const Circuit& c) {
  InterleavedCircuit out;
  out.modes = c.modes;
  GaussianUnitary layer = GaussianUnitary::identity(c.modes);
  for (const auto& op : c.ops) {
    if (const auto* gate = std::get_if<ElementaryGate>(&op)) {
      layer = compose(GaussianUnitary::from_gate(*gate, c.modes), layer);
    } else {
      out.layers.push_back(layer);
      out.events.push_back(std::get<LadderEvent>(op));
      layer = GaussianUnitary::identity(c.modes);
    }
  }
  out.layers.push_back(layer);
  return out;
}

AffineLadderOp commute_ladder_through(const GaussianUnitary& prefix, int mode,
                                      LadderEvent::Kind kind) {
  const int m = prefix.modes();
  if (mode < 0 || mode >= m)
    throw ValidationError("commute_ladder_through: mode index out of range");
  const Mat& s = prefix.matrix();
  AffineLadderOp op;
  op.create = Vec::Zero(m);
  op.annih = Vec::Zero(m);
  if (kind == LadderEvent::Kind::Subtraction) {
    op.scalar = prefix.disp()(mode);
    op.annih = s.row(mode).head(m).transpose();
    op.create = s.row(mode).tail(m).transpose();
  } else {
    op.scalar = std::conj(prefix.disp()(mode));
    op.annih = s.row(m + mode).head(m).transpose();
    op.create = s.row(m + mode).tail(m).transpose();
  }
  return op;
}

CompiledCircuit compile(const InterleavedCircuit& c) {
  if (c.layers.size() != c.events.size() + 1)
    throw ValidationError("compile: circuit needs events.size()+1 layers");
  for (const auto& layer : c.layers)
    if (layer.modes() != c.modes)
      throw ValidationError("compile: layer mode-count mismatch");

  GaussianUnitary prefix = c.layers.front();
  CoreState core = CoreState::vacuum(c.modes);
  for (size_t j = 0; j < c.events.size(); ++j) {
    const AffineLadderOp op =
        commute_ladder_through(prefix, c.events[j].mode, c.events[j].kind);
    core = apply_affine_ladder(core, op);
    prefix = compose(c.layers[j + 1], prefix);
  }

  const double norm = core.norm();
  if (norm < 1e-14)
    throw ValidationError(
        "compile: ladder events annihilate the state (zero core state)");
  return {prefix, core.normalized(), norm};
}

CompiledCircuit compile(const Circuit& c) {
  return compile(InterleavedCircuit::from_circuit(c));
}

Circuit compiled_equivalent(const Circuit& c) {
  const CompiledCircuit comp = compile(c);
  Circuit out;
  out.modes = c.modes;
  CoreInput core;
  for (const auto& [occ, amp] : comp.core.terms()) core.terms.emplace_back(occ, amp);
  out.input = std::move(core);
  for (const auto& op : c.ops)
    if (std::holds_alternative<ElementaryGate>(op)) out.ops.push_back(op);
  out.measured_modes = c.measured_modes;
  return out;
}

namespace {

// Random Gaussian layer: per-mode rotation, squeeze and displacement plus
// beamsplitters on adjacent modes.
GaussianUnitary random_layer(int modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  GaussianUnitary g = GaussianUnitary::identity(modes);
  for (int k = 0; k < modes; ++k) {
    g = compose(GaussianUnitary::from_gate(rotation(angle(rng), k), modes), g);
    g = compose(GaussianUnitary::from_gate(
                    squeeze(0.6 * mag(rng), angle(rng), k), modes),
                g);
    g = compose(GaussianUnitary::from_gate(
                    displacement(std::polar(mag(rng), angle(rng)), k), modes),
                g);
  }
  for (int k = 0; k + 1 < modes; ++k)
    g = compose(GaussianUnitary::from_gate(
                    beamsplitter(angle(rng), angle(rng), k, k + 1), modes),
                g);
  return g;
}

}  // namespace

WitnessReport two_addition_witness(int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  const CoreState target(
      2,
      {{{2, 0}, cplx(1.0 / std::sqrt(2.0), 0.0)},
       {{0, 1}, cplx(1.0 / std::sqrt(2.0), 0.0)}},
      false);

  WitnessReport report;
  report.samples = samples;
  std::uniform_int_distribution<int> mode_pick(0, 1);
  for (int i = 0; i < samples; ++i) {
    InterleavedCircuit c;
    c.modes = 2;
    c.layers = {random_layer(2, rng), random_layer(2, rng),
                random_layer(2, rng)};
    c.events = {{LadderEvent::Kind::Addition, mode_pick(rng)},
                {LadderEvent::Kind::Addition, mode_pick(rng)}};
    const CompiledCircuit comp = compile(c);
    const double fid = std::norm(overlap(target, comp.core));
    report.max_fidelity = std::max(report.max_fidelity, fid);
  }

  // Deterministic obstruction on the generic degree-2 family
  //   (d1 + sum_k s1[k] a_k^dag + t1[k] a_k)(d0 + sum_k s0[k] a_k^dag +
  //    t0[k] a_k)|0>:
  // whenever the |2_1> coefficient is nonzero and every |1_k + 1_l> (k != l)
  // coefficient vanishes, the |1_2> coefficient must be exactly zero. The
  // premises force s0[k] = s1[k] = 0 for k != 0, so draws are sampled in that
  // constrained form and the state is expanded through the ladder algebra.
  std::uniform_real_distribution<double> real(-1.0, 1.0);
  const auto rand_cplx = [&]() { return cplx(real(rng), real(rng)); };
  const auto rand_nonzero = [&]() {
    cplx z = rand_cplx();
    while (std::abs(z) < 0.1) z = rand_cplx();
    return z;
  };
  report.obstruction_draws = 100;
  for (int i = 0; i < report.obstruction_draws; ++i) {
    AffineLadderOp op0, op1;
    op0.scalar = rand_cplx();
    op1.scalar = rand_cplx();
    op0.create = Vec::Zero(2);
    op1.create = Vec::Zero(2);
    op0.create(0) = rand_nonzero();
    op1.create(0) = rand_nonzero();
    op0.annih = Vec::Zero(2);
    op1.annih = Vec::Zero(2);
    op0.annih(0) = rand_cplx();
    op0.annih(1) = rand_cplx();
    op1.annih(0) = rand_cplx();
    op1.annih(1) = rand_cplx();

    const CoreState expanded = apply_affine_ladder(
        apply_affine_ladder(CoreState::vacuum(2), op0), op1);
    if (std::abs(expanded.amplitude({2, 0})) == 0.0)
      throw NumericalError("two_addition_witness: premise violated in draw");
    if (std::abs(expanded.amplitude({1, 1})) != 0.0)
      throw NumericalError("two_addition_witness: cross term not eliminated");
    report.obstruction_residual = std::max(
        report.obstruction_residual, std::abs(expanded.amplitude({0, 1})));
  }

  report.passed = report.max_fidelity < 1.0 - 1e-6 &&
                  report.obstruction_residual == 0.0;
  return report;
}

}  // namespace gcore
