#ifndef GCORE_TYPES_HPP
#define GCORE_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcore {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

// Occupation-number multi-index (one entry per mode).
using FockIndex = std::vector<int>;

// Heterodyne outcome: one complex amplitude per measured mode.
using OutcomeVector = std::vector<cplx>;

// Structural tolerances used across the library.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kNumericTol = 1e-9;

// Invalid inputs: malformed circuits, dimension mismatches, bad parameters.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown: failed factorizations, residues beyond tolerance,
// insufficient cutoffs.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int occupation_total(const FockIndex& p) {
  int total = 0;
  for (int v : p) {
    if (v < 0) throw ValidationError("negative occupation number");
    total += v;
  }
  return total;
}

// p! = p_1! p_2! ... p_m! as a double.
inline double occupation_factorial(const FockIndex& p) {
  double f = 1.0;
  for (int v : p)
    for (int j = 2; j <= v; ++j) f *= j;
  return f;
}

// Doubled vector (z, z*) of length 2m.
inline Vec doubled(const Vec& z) {
  Vec out(2 * z.size());
  out.head(z.size()) = z;
  out.tail(z.size()) = z.conjugate();
  return out;
}

inline Vec to_eigen(const OutcomeVector& a) {
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = a[static_cast<size_t>(i)];
  return v;
}

// Block swap [[0, I], [I, 0]] acting on doubled vectors.
inline Mat block_swap(Eigen::Index m) {
  Mat x = Mat::Zero(2 * m, 2 * m);
  x.topRightCorner(m, m).setIdentity();
  x.bottomLeftCorner(m, m).setIdentity();
  return x;
}

}  // namespace gcore

#endif
