#ifndef GCORE_GAUSSIAN_HPP
#define GCORE_GAUSSIAN_HPP

#include "gcore/types.hpp"

namespace gcore {

// Elementary Gaussian gates. Mode indices are 0-based; pair gates act on two
// distinct modes.
enum class GateKind {
  Displacement,    // D(beta) = exp(beta a^dag - beta* a)
  Rotation,        // R(phi) = exp(i phi a^dag a)
  Squeeze,         // S(xi) = exp((xi* a^2 - xi a^dag^2)/2), xi = r e^{i theta}
  Beamsplitter,    // B(theta, phi) = exp(theta (e^{i phi} a^dag b - h.c.))
  TwoModeSqueeze,  // S2(xi) = exp(xi* a b - xi a^dag b^dag)
  ModeSwap,
};

struct ElementaryGate {
  GateKind kind;
  int mode_a = 0;
  int mode_b = -1;     // second mode for pair gates
  cplx amplitude{0.0, 0.0};  // beta for displacement, xi for squeezers
  double angle_a = 0.0;      // phi (rotation), theta (beamsplitter)
  double angle_b = 0.0;      // phi (beamsplitter)
};

ElementaryGate displacement(cplx beta, int mode);
ElementaryGate rotation(double phi, int mode);
ElementaryGate squeeze(double r, double theta, int mode);
ElementaryGate squeeze(cplx xi, int mode);
ElementaryGate beamsplitter(double theta, double phi, int mode_a, int mode_b);
ElementaryGate two_mode_squeeze(double r, double theta, int mode_a, int mode_b);
ElementaryGate two_mode_squeeze(cplx xi, int mode_a, int mode_b);
ElementaryGate mode_swap(int mode_a, int mode_b);

/// True iff S is 2m x 2m with block-conjugate structure [[A, B], [B*, A*]]
/// and satisfies A A^dag - B B^dag = I, A B^T = B A^T within 1e-10.
/// Throws ValidationError on odd dimension.
bool validate_symplectic(const Mat& s);

/**
 * @brief A multimode Gaussian unitary in its complex symplectic (Bogoliubov)
 * representation.
 *
 * The stored matrix S and displacement d describe how the unitary transports
 * doubled amplitude vectors (z, z*): a coherent state of amplitude z is
 * mapped to the Gaussian state with doubled displacement S (z, z*) + (d, d*).
 * Blocks are ordered as [[A, B], [B*, A*]]; global phases are not tracked.
 * Composition is matrix composition in circuit order, so this convention is
 * fixed once here and everything downstream (pullbacks, Q functions, density
 * kernels, the truncated-Fock reference) is expressed in it.
 */
class GaussianUnitary {
 public:
  static GaussianUnitary identity(int modes);
  static GaussianUnitary from_gate(const ElementaryGate& g, int modes);
  // Raw constructor; validates the symplectic structure.
  GaussianUnitary(Mat s, Vec d);

  int modes() const { return static_cast<int>(disp_.size()); }
  const Mat& matrix() const { return s_; }
  const Vec& disp() const { return disp_; }
  Vec doubled_disp() const { return doubled(disp_); }

 private:
  Mat s_;
  Vec disp_;
};

/// Applying g1 first, then g2: S = S2 S1 and the displacement composes
/// affinely. Throws ValidationError on mode-count mismatch.
GaussianUnitary compose(const GaussianUnitary& g2, const GaussianUnitary& g1);

/// Inverse element under compose; uses S^{-1} = K S^dag K with
/// K = diag(I, -I), exact for symplectic S.
GaussianUnitary dagger(const GaussianUnitary& g);

// The Gaussian state G^dag |alpha>: covariance matrix plus doubled
// displacement (d, d*).
struct GaussianState {
  Mat cov;
  Vec disp;  // doubled, length 2m
  int modes() const { return static_cast<int>(cov.rows() / 2); }
};

/// Pulls the measured coherent projector back through the circuit:
/// returns the Gaussian state G^dag |alpha> with covariance S S^dag / 2 and
/// displacement S alpha~ + d~, where (S, d~) represent dagger(G).
GaussianState heterodyne_pullback(const GaussianUnitary& g,
                                  const OutcomeVector& alpha);

/// Husimi Q function of a Gaussian state at beta, with respect to the
/// measure dRe(beta) dIm(beta) per mode. Strictly positive for valid states.
double q_function(const GaussianState& st, const OutcomeVector& beta);

}  // namespace gcore

#endif
