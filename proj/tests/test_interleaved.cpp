#include <doctest.h>

#include <cmath>
#include <random>

#include "gcore/density.hpp"
#include "gcore/interleaved.hpp"
#include "gcore/oracle.hpp"
#include "support/random_inputs.hpp"

using namespace gcore;

namespace {

Circuit with_ops(int modes, std::vector<CircuitOp> ops) {
  Circuit c;
  c.modes = modes;
  c.input = VacuumInput{};
  c.ops = std::move(ops);
  return c;
}

}  // namespace

TEST_CASE("commute through the identity") {
  const auto id = GaussianUnitary::identity(2);
  const auto add = commute_ladder_through(id, 1, LadderEvent::Kind::Addition);
  CHECK(add.scalar == cplx(0.0, 0.0));
  CHECK(std::abs(add.create(1) - cplx(1.0, 0.0)) == 0.0);
  CHECK(add.create(0) == cplx(0.0, 0.0));
  CHECK(add.annih.cwiseAbs().maxCoeff() == 0.0);

  const auto sub = commute_ladder_through(id, 0, LadderEvent::Kind::Subtraction);
  CHECK(std::abs(sub.annih(0) - cplx(1.0, 0.0)) == 0.0);
  CHECK(sub.create.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("commute through a displacement") {
  // a^dag after D(beta) becomes a^dag + beta* at the input.
  const cplx beta(0.3, -0.5);
  const auto d = GaussianUnitary::from_gate(displacement(beta, 0), 1);
  const auto op = commute_ladder_through(d, 0, LadderEvent::Kind::Addition);
  CHECK(std::abs(op.scalar - std::conj(beta)) < 1e-14);
  CHECK(std::abs(op.create(0) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(op.annih.cwiseAbs().maxCoeff() < 1e-14);

  const auto ops = commute_ladder_through(d, 0, LadderEvent::Kind::Subtraction);
  CHECK(std::abs(ops.scalar - beta) < 1e-14);
  CHECK(std::abs(ops.annih(0) - cplx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("commute through a beamsplitter mixes create coefficients") {
  const double theta = 0.3;
  const auto bs =
      GaussianUnitary::from_gate(beamsplitter(theta, 0.0, 0, 1), 2);
  const auto op = commute_ladder_through(bs, 0, LadderEvent::Kind::Addition);
  CHECK(std::abs(op.create(0) - cplx(std::cos(theta), 0.0)) < 1e-12);
  CHECK(std::abs(std::abs(op.create(1)) - std::sin(theta)) < 1e-12);
  CHECK(op.annih.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("compile trivial circuits") {
  // No events: gaussian part is the composed gates, core is vacuum.
  std::mt19937_64 rng(61);
  Circuit plain = with_ops(2, {});
  for (const auto& g : gcore_tests::random_gate_sequence(2, rng))
    plain.ops.emplace_back(g);
  const auto comp = compile(plain);
  const auto direct = compose_gaussian(plain);
  CHECK((comp.gaussian.matrix() - direct.matrix()).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(comp.core.degree() == 0);
  CHECK(comp.discarded_norm == doctest::Approx(1.0));

  // One addition between identities: core |1, 0>.
  const auto one = compile(with_ops(2, {LadderEvent{LadderEvent::Kind::Addition, 0}}));
  CHECK(one.core.support_size() == 1);
  CHECK(std::abs(one.core.amplitude({1, 0}) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(one.gaussian.matrix().isIdentity(1e-12));
}

TEST_CASE("addition after a displacement") {
  const cplx beta(0.4, 0.2);
  const auto comp = compile(with_ops(
      1, {displacement(beta, 0), LadderEvent{LadderEvent::Kind::Addition, 0}}));

  // Unnormalized core is |1> + beta* |0>; compare after normalization.
  const double nrm = std::sqrt(1.0 + std::norm(beta));
  CHECK(comp.discarded_norm == doctest::Approx(nrm).epsilon(1e-12));
  CHECK(std::abs(comp.core.amplitude({1}) - cplx(1.0, 0.0) / nrm) < 1e-12);
  CHECK(std::abs(comp.core.amplitude({0}) - std::conj(beta) / nrm) < 1e-12);
  CHECK((comp.gaussian.disp()(0) - beta) == cplx(0.0, 0.0));

  // End to end: compiled density equals the oracle on the raw circuit.
  Circuit raw = with_ops(
      1, {displacement(beta, 0), LadderEvent{LadderEvent::Kind::Addition, 0}});
  for (const cplx alpha : {cplx(0.0, 0.0), cplx(0.7, -0.3), cplx(-1.0, 0.4)}) {
    const double fast = core_density(comp.gaussian, comp.core, {alpha});
    const double slow = oracle::density(raw, {alpha}, 25).value;
    CHECK(std::abs(fast - slow) < 1e-8);
  }
}

TEST_CASE("pure addition circuits have core degree equal to the event count") {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> modes_pick(1, 4);
  std::uniform_int_distribution<int> events_pick(1, 4);
  for (int rep = 0; rep < 30; ++rep) {
    const int m = modes_pick(rng);
    const int n = events_pick(rng);
    InterleavedCircuit c;
    c.modes = m;
    std::uniform_int_distribution<int> mode_pick(0, m - 1);
    for (int j = 0; j <= n; ++j)
      c.layers.push_back(gcore_tests::random_gaussian(m, rng));
    for (int j = 0; j < n; ++j)
      c.events.push_back({LadderEvent::Kind::Addition, mode_pick(rng)});
    const auto comp = compile(c);
    CHECK(comp.core.degree() == n);
  }
}

TEST_CASE("mixed circuits have core degree at most the event count") {
  std::mt19937_64 rng(63);
  std::uniform_int_distribution<int> kind_pick(0, 1);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2;
    const int n = 3;
    InterleavedCircuit c;
    c.modes = m;
    std::uniform_int_distribution<int> mode_pick(0, m - 1);
    for (int j = 0; j <= n; ++j)
      c.layers.push_back(gcore_tests::random_gaussian(m, rng));
    for (int j = 0; j < n; ++j)
      c.events.push_back({kind_pick(rng) ? LadderEvent::Kind::Addition
                                         : LadderEvent::Kind::Subtraction,
                          mode_pick(rng)});
    const auto comp = compile(c);
    CHECK(comp.core.degree() <= n);
  }
}

TEST_CASE("compiled densities match the oracle on interleaved circuits") {
  std::mt19937_64 rng(64);
  for (int rep = 0; rep < 5; ++rep) {
    const int m = 1 + (rep % 2);
    const int n = 1 + (rep % 3);
    Circuit c;
    c.modes = m;
    c.input = VacuumInput{};
    std::uniform_int_distribution<int> mode_pick(0, m - 1);
    std::uniform_int_distribution<int> kind_pick(0, 3);
    for (int j = 0; j <= n; ++j) {
      for (const auto& g : gcore_tests::random_gate_sequence(
               m, rng, {.max_disp = 0.6, .max_squeeze = 0.4}))
        c.ops.emplace_back(g);
      if (j < n)
        c.ops.emplace_back(LadderEvent{kind_pick(rng) == 0
                                           ? LadderEvent::Kind::Subtraction
                                           : LadderEvent::Kind::Addition,
                                       mode_pick(rng)});
    }
    const auto comp = compile(c);
    const auto alpha = gcore_tests::random_outcome(m, 1.0, rng);
    const double fast = core_density(comp.gaussian, comp.core, alpha);
    const double slow = oracle::density(c, alpha, 25).value;
    CHECK(std::abs(fast - slow) < 1e-6);
  }
}

TEST_CASE("merging adjacent layers does not change the compilation") {
  std::mt19937_64 rng(65);
  const auto g1a = gcore_tests::random_gaussian(2, rng);
  const auto g1b = gcore_tests::random_gaussian(2, rng);
  const auto g2 = gcore_tests::random_gaussian(2, rng);
  const auto g3 = gcore_tests::random_gaussian(2, rng);

  // A layer written as two back-to-back unitaries compiles like its
  // composition.
  InterleavedCircuit merged;
  merged.modes = 2;
  merged.layers = {compose(g1b, g1a), g2, g3};
  merged.events = {{LadderEvent::Kind::Addition, 0},
                   {LadderEvent::Kind::Subtraction, 1}};

  InterleavedCircuit padded;
  padded.modes = 2;
  // The same circuit with an explicit identity layer squeezed between the
  // pieces of the first layer and a vacuous trailing identity.
  padded.layers = {compose(g1b, compose(GaussianUnitary::identity(2), g1a)),
                   g2, compose(GaussianUnitary::identity(2), g3)};
  padded.events = merged.events;

  const auto a = compile(merged);
  const auto b = compile(padded);
  CHECK((a.gaussian.matrix() - b.gaussian.matrix()).cwiseAbs().maxCoeff() <
        1e-10);
  for (const auto& [occ, amp] : a.core.terms())
    CHECK(std::abs(b.core.amplitude(occ) - amp) < 1e-10);
  CHECK(a.discarded_norm == doctest::Approx(b.discarded_norm).epsilon(1e-10));

  // The op-list path merges consecutive Gaussian gates into one layer.
  Circuit c;
  c.modes = 2;
  c.input = VacuumInput{};
  c.ops = {rotation(0.4, 0), squeeze(0.3, 0.1, 1),
           LadderEvent{LadderEvent::Kind::Addition, 0},
           beamsplitter(0.7, 0.2, 0, 1)};
  const auto via_ops = compile(c);

  InterleavedCircuit manual;
  manual.modes = 2;
  manual.layers = {
      compose(GaussianUnitary::from_gate(squeeze(0.3, 0.1, 1), 2),
              GaussianUnitary::from_gate(rotation(0.4, 0), 2)),
      GaussianUnitary::from_gate(beamsplitter(0.7, 0.2, 0, 1), 2)};
  manual.events = {{LadderEvent::Kind::Addition, 0}};
  const auto direct = compile(manual);
  CHECK((via_ops.gaussian.matrix() - direct.gaussian.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  for (const auto& [occ, amp] : via_ops.core.terms())
    CHECK(std::abs(direct.core.amplitude(occ) - amp) < 1e-12);
}

TEST_CASE("subtraction from vacuum reports a zero state") {
  CHECK_THROWS_AS(
      compile(with_ops(1, {LadderEvent{LadderEvent::Kind::Subtraction, 0}})),
      ValidationError);
}

TEST_CASE("two-addition witness") {
  // A |20>-only compilation has fidelity exactly 1/2 with the target.
  InterleavedCircuit c;
  c.modes = 2;
  c.layers = {GaussianUnitary::identity(2), GaussianUnitary::identity(2),
              GaussianUnitary::identity(2)};
  c.events = {{LadderEvent::Kind::Addition, 0},
              {LadderEvent::Kind::Addition, 0}};
  const auto comp = compile(c);
  const CoreState target(
      2,
      {{{2, 0}, cplx(1.0 / std::sqrt(2.0), 0.0)},
       {{0, 1}, cplx(1.0 / std::sqrt(2.0), 0.0)}},
      false);
  CHECK(std::norm(overlap(target, comp.core)) ==
        doctest::Approx(0.5).epsilon(1e-12));

  const auto report = two_addition_witness(200, 7);
  CHECK(report.passed);
  CHECK(report.max_fidelity < 1.0 - 1e-6);
  CHECK(report.obstruction_residual == 0.0);
}
