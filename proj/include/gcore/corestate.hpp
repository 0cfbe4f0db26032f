#ifndef GCORE_CORESTATE_HPP
#define GCORE_CORESTATE_HPP

#include <map>
#include <utility>

#include "gcore/types.hpp"

namespace gcore {

// An affine combination of ladder operators acting on all modes:
// scalar + sum_l (create[l] a_l^dag + annih[l] a_l).
struct AffineLadderOp {
  cplx scalar{0.0, 0.0};
  Vec create;
  Vec annih;
};

/**
 * @brief A pure state with finite support over the Fock basis, stored as a
 * sparse map from occupation vectors to complex amplitudes.
 *
 * Exact zeros are pruned; epsilon pruning is deliberately avoided so the
 * cached support size and degree are never silently changed. Term order is
 * lexicographic on the occupation vector, which makes summation order and
 * all printed output deterministic.
 */
class CoreState {
 public:
  using TermMap = std::map<FockIndex, cplx>;

  /// Builds a core state from (occupation, amplitude) pairs; amplitudes on
  /// equal indices accumulate. Throws on inconsistent index lengths or an
  /// all-zero state.
  CoreState(int modes, const std::vector<std::pair<FockIndex, cplx>>& terms,
            bool normalize);

  static CoreState vacuum(int modes);
  static CoreState fock(const FockIndex& occ);

  int modes() const { return modes_; }
  /// Max total occupation over the support.
  int degree() const { return degree_; }
  /// Number of stored (nonzero) terms.
  int support_size() const { return static_cast<int>(terms_.size()); }
  const TermMap& terms() const { return terms_; }
  cplx amplitude(const FockIndex& p) const;
  double norm() const;
  bool is_normalized(double tol = kNumericTol) const;
  CoreState normalized() const;

  /// Stellar function F(z) = sum_p c_p z^p / sqrt(p!).
  cplx stellar_eval(const std::vector<cplx>& z) const;

 private:
  CoreState() = default;
  void refresh_metadata();

  int modes_ = 0;
  int degree_ = 0;
  TermMap terms_;

  friend CoreState apply_affine_ladder(const CoreState&, const AffineLadderOp&);
};

/// <C1|C2>; throws on mode mismatch.
cplx overlap(const CoreState& c1, const CoreState& c2);

/// Applies (scalar + sum_l create[l] a_l^dag + annih[l] a_l) exactly.
/// The result is unnormalized and may be the zero state, which is reported
/// as a ValidationError by downstream consumers requiring states.
CoreState apply_affine_ladder(const CoreState& c, const AffineLadderOp& op);

}  // namespace gcore

#endif
