// Test-only reference for the reduced Gaussian moments: extracts mixed
// partial derivatives of exp(w^T V w / 2 + D^T w) at w = 0 by expanding the
// exponential as a truncated sparse multivariate polynomial. Entirely
// independent of the hafnian code paths it is used to check.
#ifndef GCORE_TESTS_TAYLOR_ORACLE_HPP
#define GCORE_TESTS_TAYLOR_ORACLE_HPP

#include <map>
#include <vector>

#include "gcore/types.hpp"

namespace gcore_tests {

using gcore::cplx;

// Sparse multivariate polynomial keyed by exponent vectors.
class Poly {
 public:
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, cplx c) {
    Poly p(nvars);
    if (c != cplx(0.0, 0.0)) p.coeffs_[std::vector<int>(size_t(nvars), 0)] = c;
    return p;
  }

  void add_monomial(const std::vector<int>& expo, cplx c) {
    coeffs_[expo] += c;
  }

  Poly multiply(const Poly& other, int max_degree) const {
    Poly out(nvars_);
    for (const auto& [ea, ca] : coeffs_) {
      for (const auto& [eb, cb] : other.coeffs_) {
        std::vector<int> e(static_cast<size_t>(nvars_));
        int total = 0;
        for (int i = 0; i < nvars_; ++i) {
          e[size_t(i)] = ea[size_t(i)] + eb[size_t(i)];
          total += e[size_t(i)];
        }
        if (total <= max_degree) out.coeffs_[e] += ca * cb;
      }
    }
    return out;
  }

  void add_in_place(const Poly& other, cplx scale) {
    for (const auto& [e, c] : other.coeffs_) coeffs_[e] += scale * c;
  }

  cplx coefficient(const std::vector<int>& expo) const {
    const auto it = coeffs_.find(expo);
    return it == coeffs_.end() ? cplx(0.0, 0.0) : it->second;
  }

 private:
  int nvars_;
  std::map<std::vector<int>, cplx> coeffs_;
};

// d^{|e|} / prod dw_i^{e_i} of exp(w^T V w / 2 + D^T w) at w = 0.
inline cplx exp_kernel_derivative(const gcore::Mat& v, const gcore::Vec& d,
                                  const std::vector<int>& expo) {
  const int n = static_cast<int>(v.rows());
  int order = 0;
  for (int e : expo) order += e;

  Poly base(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (v(i, j) == cplx(0.0, 0.0)) continue;
      std::vector<int> e(size_t(n), 0);
      e[size_t(i)] += 1;
      e[size_t(j)] += 1;
      base.add_monomial(e, 0.5 * v(i, j));
    }
    if (d(i) != cplx(0.0, 0.0)) {
      std::vector<int> e(size_t(n), 0);
      e[size_t(i)] = 1;
      base.add_monomial(e, d(i));
    }
  }

  // exp(base) truncated at the requested total degree.
  Poly series = Poly::constant(n, cplx(1.0, 0.0));
  Poly power = Poly::constant(n, cplx(1.0, 0.0));
  double factorial = 1.0;
  for (int j = 1; j <= order; ++j) {
    power = power.multiply(base, order);
    factorial *= j;
    series.add_in_place(power, cplx(1.0 / factorial, 0.0));
  }

  double multiplicity = 1.0;
  for (int e : expo)
    for (int j = 2; j <= e; ++j) multiplicity *= j;
  return series.coefficient(expo) * multiplicity;
}

// Derivative orders for the repeated-index reduction: index k carries p_k and
// index m+k carries q_k.
inline std::vector<int> reduction_orders(const gcore::FockIndex& p,
                                         const gcore::FockIndex& q) {
  const int m = static_cast<int>(p.size());
  std::vector<int> expo(size_t(2 * m), 0);
  for (int k = 0; k < m; ++k) {
    expo[size_t(k)] = p[size_t(k)];
    expo[size_t(m + k)] = q[size_t(k)];
  }
  return expo;
}

}  // namespace gcore_tests

#endif
