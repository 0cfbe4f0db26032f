#include "gcore/gaussian.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace gcore {

namespace {

void require_finite(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ValidationError(std::string(what) + ": non-finite parameter");
}

void require_mode(int mode, int modes, const char* what) {
  if (mode < 0 || mode >= modes)
    throw ValidationError(std::string(what) + ": mode index out of range");
}

void require_pair(int a, int b, int modes, const char* what) {
  require_mode(a, modes, what);
  require_mode(b, modes, what);
  if (a == b)
    throw ValidationError(std::string(what) +
                          ": pair gate needs two distinct modes");
}

}  // namespace

ElementaryGate displacement(cplx beta, int mode) {
  require_finite(beta, "displacement");
  return {GateKind::Displacement, mode, -1, beta, 0.0, 0.0};
}

ElementaryGate rotation(double phi, int mode) {
  if (!std::isfinite(phi)) throw ValidationError("rotation: non-finite angle");
  return {GateKind::Rotation, mode, -1, {0.0, 0.0}, phi, 0.0};
}

ElementaryGate squeeze(double r, double theta, int mode) {
  return squeeze(std::polar(r, theta), mode);
}

ElementaryGate squeeze(cplx xi, int mode) {
  require_finite(xi, "squeeze");
  return {GateKind::Squeeze, mode, -1, xi, 0.0, 0.0};
}

ElementaryGate beamsplitter(double theta, double phi, int mode_a, int mode_b) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw ValidationError("beamsplitter: non-finite angle");
  return {GateKind::Beamsplitter, mode_a, mode_b, {0.0, 0.0}, theta, phi};
}

ElementaryGate two_mode_squeeze(double r, double theta, int mode_a,
                                int mode_b) {
  return two_mode_squeeze(std::polar(r, theta), mode_a, mode_b);
}

ElementaryGate two_mode_squeeze(cplx xi, int mode_a, int mode_b) {
  require_finite(xi, "two_mode_squeeze");
  return {GateKind::TwoModeSqueeze, mode_a, mode_b, xi, 0.0, 0.0};
}

ElementaryGate mode_swap(int mode_a, int mode_b) {
  return {GateKind::ModeSwap, mode_a, mode_b, {0.0, 0.0}, 0.0, 0.0};
}

bool validate_symplectic(const Mat& s) {
  if (s.rows() != s.cols())
    throw ValidationError("validate_symplectic: matrix must be square");
  if (s.rows() % 2 != 0)
    throw ValidationError("validate_symplectic: dimension must be even");
  const Eigen::Index m = s.rows() / 2;
  if (m == 0) return true;

  const Mat a = s.topLeftCorner(m, m);
  const Mat b = s.topRightCorner(m, m);
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  const double tol = kStructuralTol * scale;

  if ((s.bottomLeftCorner(m, m) - b.conjugate()).cwiseAbs().maxCoeff() > tol)
    return false;
  if ((s.bottomRightCorner(m, m) - a.conjugate()).cwiseAbs().maxCoeff() > tol)
    return false;
  const Mat comm = a * a.adjoint() - b * b.adjoint() - Mat::Identity(m, m);
  if (comm.cwiseAbs().maxCoeff() > tol * scale) return false;
  const Mat sym = a * b.transpose() - b * a.transpose();
  if (sym.cwiseAbs().maxCoeff() > tol * scale) return false;
  return true;
}

GaussianUnitary::GaussianUnitary(Mat s, Vec d) : s_(std::move(s)), disp_(std::move(d)) {
  if (s_.rows() != 2 * disp_.size())
    throw ValidationError("GaussianUnitary: matrix/displacement size mismatch");
  for (Eigen::Index i = 0; i < disp_.size(); ++i)
    require_finite(disp_(i), "GaussianUnitary displacement");
  if (!s_.allFinite())
    throw ValidationError("GaussianUnitary: non-finite matrix entry");
  if (!validate_symplectic(s_))
    throw ValidationError("GaussianUnitary: matrix is not complex symplectic");
}

GaussianUnitary GaussianUnitary::identity(int modes) {
  if (modes < 1) throw ValidationError("identity: need at least one mode");
  return GaussianUnitary(Mat::Identity(2 * modes, 2 * modes),
                         Vec::Zero(modes));
}

GaussianUnitary GaussianUnitary::from_gate(const ElementaryGate& g, int modes) {
  if (modes < 1) throw ValidationError("from_gate: need at least one mode");
  Mat s = Mat::Identity(2 * modes, 2 * modes);
  Vec d = Vec::Zero(modes);
  const int m = modes;

  switch (g.kind) {
    case GateKind::Displacement: {
      require_mode(g.mode_a, m, "displacement");
      d(g.mode_a) = g.amplitude;
      break;
    }
    case GateKind::Rotation: {
      require_mode(g.mode_a, m, "rotation");
      const cplx ph = std::polar(1.0, g.angle_a);
      s(g.mode_a, g.mode_a) = ph;
      s(m + g.mode_a, m + g.mode_a) = std::conj(ph);
      break;
    }
    case GateKind::Squeeze: {
      require_mode(g.mode_a, m, "squeeze");
      const double r = std::abs(g.amplitude);
      const cplx phase = (r == 0.0) ? cplx(1.0, 0.0) : g.amplitude / r;
      const int k = g.mode_a;
      s(k, k) = std::cosh(r);
      s(k, m + k) = -phase * std::sinh(r);
      s(m + k, k) = std::conj(s(k, m + k));
      s(m + k, m + k) = std::cosh(r);
      break;
    }
    case GateKind::Beamsplitter: {
      require_pair(g.mode_a, g.mode_b, m, "beamsplitter");
      const int j = g.mode_a, k = g.mode_b;
      const double c = std::cos(g.angle_a), sn = std::sin(g.angle_a);
      const cplx ph = std::polar(1.0, g.angle_b);
      s(j, j) = c;
      s(j, k) = ph * sn;
      s(k, j) = -std::conj(ph) * sn;
      s(k, k) = c;
      s(m + j, m + j) = c;
      s(m + j, m + k) = std::conj(ph) * sn;
      s(m + k, m + j) = -ph * sn;
      s(m + k, m + k) = c;
      break;
    }
    case GateKind::TwoModeSqueeze: {
      require_pair(g.mode_a, g.mode_b, m, "two_mode_squeeze");
      const double r = std::abs(g.amplitude);
      const cplx phase = (r == 0.0) ? cplx(1.0, 0.0) : g.amplitude / r;
      const int j = g.mode_a, k = g.mode_b;
      const double ch = std::cosh(r), sh = std::sinh(r);
      s(j, j) = ch;
      s(k, k) = ch;
      s(j, m + k) = -phase * sh;
      s(k, m + j) = -phase * sh;
      s(m + j, k) = -std::conj(phase) * sh;
      s(m + k, j) = -std::conj(phase) * sh;
      s(m + j, m + j) = ch;
      s(m + k, m + k) = ch;
      break;
    }
    case GateKind::ModeSwap: {
      require_pair(g.mode_a, g.mode_b, m, "mode_swap");
      const int j = g.mode_a, k = g.mode_b;
      s(j, j) = s(k, k) = s(m + j, m + j) = s(m + k, m + k) = 0.0;
      s(j, k) = s(k, j) = 1.0;
      s(m + j, m + k) = s(m + k, m + j) = 1.0;
      break;
    }
  }
  return GaussianUnitary(std::move(s), std::move(d));
}

GaussianUnitary compose(const GaussianUnitary& g2, const GaussianUnitary& g1) {
  if (g1.modes() != g2.modes())
    throw ValidationError("compose: mode-count mismatch");
  Mat s = g2.matrix() * g1.matrix();
  Vec dd = g2.matrix() * g1.doubled_disp() + g2.doubled_disp();
  return GaussianUnitary(std::move(s), dd.head(g1.modes()));
}

GaussianUnitary dagger(const GaussianUnitary& g) {
  const Eigen::Index m = g.modes();
  // K S^dag K with K = diag(I, -I).
  Mat inv = g.matrix().adjoint();
  inv.topRightCorner(m, m) *= -1.0;
  inv.bottomLeftCorner(m, m) *= -1.0;
  Vec dd = -(inv * g.doubled_disp());
  return GaussianUnitary(std::move(inv), dd.head(m));
}

GaussianState heterodyne_pullback(const GaussianUnitary& g,
                                  const OutcomeVector& alpha) {
  if (static_cast<int>(alpha.size()) != g.modes())
    throw ValidationError("heterodyne_pullback: outcome dimension mismatch");
  const GaussianUnitary gd = dagger(g);
  GaussianState st;
  st.cov = 0.5 * gd.matrix() * gd.matrix().adjoint();
  st.disp = gd.matrix() * doubled(to_eigen(alpha)) + gd.doubled_disp();
  return st;
}

double q_function(const GaussianState& st, const OutcomeVector& beta) {
  const Eigen::Index m = st.modes();
  if (static_cast<Eigen::Index>(beta.size()) != m)
    throw ValidationError("q_function: argument dimension mismatch");
  Mat sigma = st.cov + 0.5 * Mat::Identity(2 * m, 2 * m);
  Eigen::LLT<Mat> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NumericalError("q_function: covariance + I/2 not positive definite");
  const Vec delta = doubled(to_eigen(beta)) - st.disp;
  const cplx quad = delta.dot(llt.solve(delta));  // delta^dag solve
  if (std::abs(quad.imag()) > kNumericTol * std::max(1.0, std::abs(quad)))
    throw NumericalError("q_function: quadratic form has imaginary residue");
  double det = 1.0;
  const auto& l_mat = llt.matrixLLT();
  for (Eigen::Index i = 0; i < 2 * m; ++i) {
    const double diag = l_mat(i, i).real();
    det *= diag * diag;
  }
  return std::exp(-0.5 * quad.real()) /
         (std::pow(M_PI, static_cast<double>(m)) * std::sqrt(det));
}

}  // namespace gcore
