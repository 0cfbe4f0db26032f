#include "gcore/oracle.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace gcore {
namespace oracle {

namespace {

// Truncated single-mode ladder matrices.
Mat lowering(int cutoff) {
  Mat a = Mat::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Mat single_mode_exp(const Mat& generator) { return generator.exp(); }

// Two-mode generator exponential, exploiting the conserved quantity of the
// gate: beamsplitters preserve n_a + n_b and two-mode squeezers preserve
// n_a - n_b, so the exponential splits into small blocks along those
// sectors instead of one dense (cutoff+1)^2 exponential.
Mat sector_exp(const Mat& generator, int cutoff, bool conserve_sum) {
  const int d = cutoff + 1;
  Mat out = Mat::Zero(d * d, d * d);
  const int lo = conserve_sum ? 0 : -cutoff;
  const int hi = conserve_sum ? 2 * cutoff : cutoff;
  for (int sector = lo; sector <= hi; ++sector) {
    std::vector<int> members;  // flattened indices na * d + nb
    for (int na = 0; na <= cutoff; ++na) {
      const int nb = conserve_sum ? sector - na : na - sector;
      if (nb >= 0 && nb <= cutoff) members.push_back(na * d + nb);
    }
    if (members.empty()) continue;
    const int s = static_cast<int>(members.size());
    Mat block(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        block(i, j) = generator(members[size_t(i)], members[size_t(j)]);
    const Mat eblock = block.exp();
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        out(members[size_t(i)], members[size_t(j)]) = eblock(i, j);
  }
  return out;
}

Eigen::Index flat_dim(int modes, int cutoff) {
  Eigen::Index d = 1;
  for (int k = 0; k < modes; ++k) d *= (cutoff + 1);
  return d;
}

}  // namespace

cplx TruncatedState::amplitude(const FockIndex& occ) const {
  if (static_cast<int>(occ.size()) != modes)
    throw ValidationError("TruncatedState: occupation length mismatch");
  Eigen::Index idx = 0;
  for (int k = 0; k < modes; ++k) {
    const int n = occ[size_t(k)];
    if (n < 0 || n > cutoff)
      throw ValidationError("TruncatedState: occupation outside cutoff");
    idx = idx * (cutoff + 1) + n;
  }
  return amps(idx);
}

Mat gate_matrix(const ElementaryGate& g, int cutoff) {
  if (cutoff < 1) throw ValidationError("gate_matrix: cutoff must be >= 1");
  const int d = cutoff + 1;
  const Mat a = lowering(cutoff);
  const Mat ad = a.adjoint();

  switch (g.kind) {
    case GateKind::Displacement:
      return single_mode_exp(g.amplitude * ad - std::conj(g.amplitude) * a);
    case GateKind::Rotation: {
      Mat r = Mat::Zero(d, d);
      for (int n = 0; n < d; ++n) r(n, n) = std::polar(1.0, g.angle_a * n);
      return r;
    }
    case GateKind::Squeeze:
      return single_mode_exp(0.5 * (std::conj(g.amplitude) * a * a -
                                    g.amplitude * ad * ad));
    case GateKind::Beamsplitter: {
      const cplx ph = std::polar(1.0, g.angle_b);
      const Mat gen =
          g.angle_a *
          (ph * Eigen::kroneckerProduct(ad, a).eval() -
           std::conj(ph) * Eigen::kroneckerProduct(a, ad).eval());
      return sector_exp(gen, cutoff, /*conserve_sum=*/true);
    }
    case GateKind::TwoModeSqueeze: {
      const Mat gen = std::conj(g.amplitude) *
                          Eigen::kroneckerProduct(a, a).eval() -
                      g.amplitude * Eigen::kroneckerProduct(ad, ad).eval();
      return sector_exp(gen, cutoff, /*conserve_sum=*/false);
    }
    case GateKind::ModeSwap: {
      Mat sw = Mat::Zero(d * d, d * d);
      for (int na = 0; na < d; ++na)
        for (int nb = 0; nb < d; ++nb) sw(nb * d + na, na * d + nb) = 1.0;
      return sw;
    }
  }
  throw ValidationError("gate_matrix: unknown gate kind");
}

namespace {

void apply_single(TruncatedState& st, const Mat& op, int mode) {
  const Eigen::Index d = st.dim_per_mode();
  Eigen::Index inner = 1;  // stride of the target mode (modes after it)
  for (int k = mode + 1; k < st.modes; ++k) inner *= d;
  const Eigen::Index outer = st.amps.size() / (inner * d);
  Vec slice(d), result(d);
  for (Eigen::Index o = 0; o < outer; ++o) {
    for (Eigen::Index in = 0; in < inner; ++in) {
      const Eigen::Index base = o * d * inner + in;
      for (Eigen::Index n = 0; n < d; ++n) slice(n) = st.amps(base + n * inner);
      result.noalias() = op * slice;
      for (Eigen::Index n = 0; n < d; ++n) st.amps(base + n * inner) = result(n);
    }
  }
}

// Applies a two-mode operator indexed as (na * d + nb) over (mode_a, mode_b).
void apply_pair(TruncatedState& st, const Mat& op, int mode_a, int mode_b) {
  const Eigen::Index d = st.dim_per_mode();
  const Eigen::Index total = st.amps.size();
  std::vector<Eigen::Index> stride(size_t(st.modes));
  Eigen::Index acc = 1;
  for (int k = st.modes - 1; k >= 0; --k) {
    stride[size_t(k)] = acc;
    acc *= d;
  }
  const Eigen::Index sa = stride[size_t(mode_a)], sb = stride[size_t(mode_b)];

  Vec in_vec(d * d), out_vec(d * d);
  // Iterate over all configurations of the remaining modes.
  std::vector<Eigen::Index> rest_strides;
  for (int k = 0; k < st.modes; ++k)
    if (k != mode_a && k != mode_b) rest_strides.push_back(stride[size_t(k)]);
  const int rest = static_cast<int>(rest_strides.size());
  std::vector<int> counter(size_t(rest), 0);
  while (true) {
    Eigen::Index base = 0;
    for (int k = 0; k < rest; ++k) base += counter[size_t(k)] * rest_strides[size_t(k)];
    for (Eigen::Index na = 0; na < d; ++na)
      for (Eigen::Index nb = 0; nb < d; ++nb)
        in_vec(na * d + nb) = st.amps(base + na * sa + nb * sb);
    out_vec.noalias() = op * in_vec;
    for (Eigen::Index na = 0; na < d; ++na)
      for (Eigen::Index nb = 0; nb < d; ++nb)
        st.amps(base + na * sa + nb * sb) = out_vec(na * d + nb);

    int k = rest - 1;
    while (k >= 0 && ++counter[size_t(k)] == d) {
      counter[size_t(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  (void)total;
}

void apply_ladder(TruncatedState& st, const LadderEvent& ev) {
  const Eigen::Index d = st.dim_per_mode();
  Eigen::Index inner = 1;
  for (int k = ev.mode + 1; k < st.modes; ++k) inner *= d;
  const Eigen::Index outer = st.amps.size() / (inner * d);
  Vec slice(d), result(d);
  for (Eigen::Index o = 0; o < outer; ++o) {
    for (Eigen::Index in = 0; in < inner; ++in) {
      const Eigen::Index base = o * d * inner + in;
      for (Eigen::Index n = 0; n < d; ++n) slice(n) = st.amps(base + n * inner);
      result.setZero();
      if (ev.kind == LadderEvent::Kind::Addition) {
        for (Eigen::Index n = 0; n + 1 < d; ++n)
          result(n + 1) = std::sqrt(double(n + 1)) * slice(n);
      } else {
        for (Eigen::Index n = 1; n < d; ++n)
          result(n - 1) = std::sqrt(double(n)) * slice(n);
      }
      for (Eigen::Index n = 0; n < d; ++n) st.amps(base + n * inner) = result(n);
    }
  }
}

}  // namespace

TruncatedState simulate(const Circuit& c, int cutoff) {
  if (c.modes > 3)
    throw ValidationError("oracle: dense simulation restricted to <= 3 modes");
  if (cutoff < 1) throw ValidationError("oracle: cutoff must be >= 1");

  TruncatedState st;
  st.modes = c.modes;
  st.cutoff = cutoff;
  st.amps = Vec::Zero(flat_dim(c.modes, cutoff));

  // Input state.
  const CoreState input = input_core_state(c);
  if (input.degree() >= cutoff)
    throw ValidationError("oracle: cutoff too small for the input state");
  for (const auto& [occ, amp] : input.terms()) {
    Eigen::Index idx = 0;
    for (int k = 0; k < c.modes; ++k) idx = idx * (cutoff + 1) + occ[size_t(k)];
    st.amps(idx) = amp;
  }

  for (const auto& op : c.ops) {
    if (const auto* ev = std::get_if<LadderEvent>(&op)) {
      apply_ladder(st, *ev);
      if (st.norm() < 1e-12)
        throw NumericalError("oracle: ladder events annihilated the state");
      continue;
    }
    const auto& gate = std::get<ElementaryGate>(op);
    const Mat m = gate_matrix(gate, cutoff);
    if (gate.mode_b < 0)
      apply_single(st, m, gate.mode_a);
    else
      apply_pair(st, m, gate.mode_a, gate.mode_b);
  }
  return st;
}

double coherent_tail(double abs_alpha, int cutoff) {
  const double x = abs_alpha * abs_alpha;
  double term = std::exp(-x);
  double head = 0.0;
  for (int n = 0; n <= cutoff; ++n) {
    head += term;
    term *= x / double(n + 1);
  }
  return std::max(0.0, 1.0 - head);
}

OracleDensity density(const Circuit& c, const OutcomeVector& alpha,
                      int cutoff) {
  if (static_cast<int>(alpha.size()) != c.modes)
    throw ValidationError("oracle: outcome dimension mismatch");

  OracleDensity out;
  for (const cplx& a : alpha)
    out.truncation_bound += coherent_tail(std::abs(a), cutoff);
  if (out.truncation_bound > 1e-8)
    throw NumericalError(
        "oracle: cutoff insufficient for this outcome (coherent tail " +
        std::to_string(out.truncation_bound) + ")");

  const TruncatedState st = simulate(c, cutoff);
  const double nrm = st.norm();
  if (nrm < 1e-12)
    throw NumericalError("oracle: simulated state has zero norm");

  // <alpha| psi> via per-mode coherent coefficient tables.
  std::vector<Vec> tables;
  for (const cplx& a : alpha) {
    Vec t(cutoff + 1);
    cplx pow(1.0, 0.0);
    double fact = 1.0;
    for (int n = 0; n <= cutoff; ++n) {
      if (n > 0) {
        pow *= std::conj(a);
        fact *= n;
      }
      t(n) = std::exp(-0.5 * std::norm(a)) * pow / std::sqrt(fact);
    }
    tables.push_back(std::move(t));
  }

  cplx ov(0.0, 0.0);
  const Eigen::Index d = cutoff + 1;
  std::vector<int> occ(size_t(c.modes), 0);
  for (Eigen::Index idx = 0; idx < st.amps.size(); ++idx) {
    Eigen::Index rem = idx;
    cplx coeff(1.0, 0.0);
    for (int k = c.modes - 1; k >= 0; --k) {
      const int n = static_cast<int>(rem % d);
      rem /= d;
      coeff *= tables[size_t(k)](n);
    }
    ov += coeff * st.amps(idx);
  }
  out.value = std::norm(ov) / (std::pow(M_PI, c.modes) * nrm * nrm);
  return out;
}

}  // namespace oracle
}  // namespace gcore
