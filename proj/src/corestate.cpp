#include "gcore/corestate.hpp"

#include <cmath>

namespace gcore {

CoreState::CoreState(int modes,
                     const std::vector<std::pair<FockIndex, cplx>>& terms,
                     bool normalize)
    : modes_(modes) {
  if (modes < 1) throw ValidationError("CoreState: need at least one mode");
  if (terms.empty()) throw ValidationError("CoreState: no terms given");
  for (const auto& [occ, amp] : terms) {
    if (static_cast<int>(occ.size()) != modes)
      throw ValidationError("CoreState: occupation length mismatch");
    occupation_total(occ);  // rejects negative entries
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
      throw ValidationError("CoreState: non-finite amplitude");
    terms_[occ] += amp;
  }
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == cplx(0.0, 0.0)) ? terms_.erase(it) : std::next(it);
  if (terms_.empty())
    throw ValidationError("CoreState: all amplitudes are zero");
  if (normalize) {
    const double n = norm();
    for (auto& [occ, amp] : terms_) amp /= n;
  }
  refresh_metadata();
}

CoreState CoreState::vacuum(int modes) {
  return CoreState(modes, {{FockIndex(static_cast<size_t>(modes), 0),
                            cplx(1.0, 0.0)}},
                   false);
}

CoreState CoreState::fock(const FockIndex& occ) {
  return CoreState(static_cast<int>(occ.size()), {{occ, cplx(1.0, 0.0)}},
                   false);
}

void CoreState::refresh_metadata() {
  degree_ = 0;
  for (const auto& [occ, amp] : terms_)
    degree_ = std::max(degree_, occupation_total(occ));
}

cplx CoreState::amplitude(const FockIndex& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
}

double CoreState::norm() const {
  double n2 = 0.0;
  for (const auto& [occ, amp] : terms_) n2 += std::norm(amp);
  return std::sqrt(n2);
}

bool CoreState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

CoreState CoreState::normalized() const {
  CoreState out = *this;
  const double n = norm();
  if (n == 0.0) throw ValidationError("CoreState: cannot normalize zero state");
  for (auto& [occ, amp] : out.terms_) amp /= n;
  return out;
}

cplx CoreState::stellar_eval(const std::vector<cplx>& z) const {
  if (static_cast<int>(z.size()) != modes_)
    throw ValidationError("stellar_eval: argument dimension mismatch");
  cplx total(0.0, 0.0);
  for (const auto& [occ, amp] : terms_) {
    cplx mono(1.0, 0.0);
    for (int k = 0; k < modes_; ++k)
      for (int j = 0; j < occ[static_cast<size_t>(k)]; ++j)
        mono *= z[static_cast<size_t>(k)];
    total += amp * mono / std::sqrt(occupation_factorial(occ));
  }
  return total;
}

cplx overlap(const CoreState& c1, const CoreState& c2) {
  if (c1.modes() != c2.modes())
    throw ValidationError("overlap: mode-count mismatch");
  cplx total(0.0, 0.0);
  for (const auto& [occ, amp] : c1.terms()) {
    const cplx other = c2.amplitude(occ);
    if (other != cplx(0.0, 0.0)) total += std::conj(amp) * other;
  }
  return total;
}

CoreState apply_affine_ladder(const CoreState& c, const AffineLadderOp& op) {
  const int m = c.modes();
  if (op.create.size() != m || op.annih.size() != m)
    throw ValidationError("apply_affine_ladder: coefficient length mismatch");

  CoreState out;
  out.modes_ = m;
  auto& acc = out.terms_;
  for (const auto& [occ, amp] : c.terms()) {
    if (op.scalar != cplx(0.0, 0.0)) acc[occ] += op.scalar * amp;
    for (int l = 0; l < m; ++l) {
      const cplx s = op.create(l);
      if (s != cplx(0.0, 0.0)) {
        FockIndex up = occ;
        up[static_cast<size_t>(l)] += 1;
        acc[up] += s * std::sqrt(static_cast<double>(up[static_cast<size_t>(l)])) * amp;
      }
      const cplx t = op.annih(l);
      if (t != cplx(0.0, 0.0) && occ[static_cast<size_t>(l)] > 0) {
        FockIndex down = occ;
        down[static_cast<size_t>(l)] -= 1;
        acc[down] += t * std::sqrt(static_cast<double>(occ[static_cast<size_t>(l)])) * amp;
      }
    }
  }
  for (auto it = acc.begin(); it != acc.end();)
    it = (it->second == cplx(0.0, 0.0)) ? acc.erase(it) : std::next(it);
  out.refresh_metadata();
  return out;
}

}  // namespace gcore
