#include "gcore/density.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "gcore/hafnian.hpp"

namespace gcore {

namespace {

struct GaussianData {
  Mat inv_sigma;     // (cov + I/2)^{-1}
  double sqrt_det;   // sqrt(det(cov + I/2)), positive
  Vec disp;          // doubled displacement of the pulled-back state
};

GaussianData pullback_data(const GaussianUnitary& g,
                           const OutcomeVector& alpha) {
  const GaussianState st = heterodyne_pullback(g, alpha);
  const Eigen::Index n = st.cov.rows();
  Mat sigma = st.cov + 0.5 * Mat::Identity(n, n);
  Eigen::LLT<Mat> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NumericalError("density: covariance + I/2 not positive definite");
  GaussianData out;
  out.inv_sigma = llt.solve(Mat::Identity(n, n));
  double det = 1.0;
  const auto& l_mat = llt.matrixLLT();
  for (Eigen::Index i = 0; i < n; ++i) det *= l_mat(i, i).real();
  out.sqrt_det = det;
  out.disp = st.disp;
  return out;
}

double real_checked(cplx z, const char* what) {
  if (std::abs(z.imag()) > kNumericTol * std::max(1.0, std::abs(z)))
    throw NumericalError(std::string(what) + ": imaginary residue " +
                         std::to_string(z.imag()));
  return z.real();
}

double prefactor_from(const GaussianData& gd, int modes) {
  const cplx quad = gd.disp.dot(gd.inv_sigma * gd.disp);
  const double exponent = real_checked(quad, "gaussian_prefactor");
  return std::exp(-0.5 * exponent) /
         (std::pow(M_PI, static_cast<double>(modes)) * gd.sqrt_det);
}

// Loop-hafnian sum over support pairs of the input state against the
// quadratic kernel (v, d). Diagonal pairs contribute real terms; each
// off-diagonal pair is counted once via 2 Re.
double pair_sum(const Mat& v, const Vec& d, const CoreState& input) {
  double total = 0.0;
  const auto& terms = input.terms();
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    const auto& [p, cp] = *it;
    const cplx diag = loop_hafnian(reduced_matrix(v, d, p, p));
    total += std::norm(cp) / occupation_factorial(p) *
             real_checked(diag, "core_density diagonal term");
    const double fp = occupation_factorial(p);
    for (auto jt = std::next(it); jt != terms.end(); ++jt) {
      const auto& [q, cq] = *jt;
      const cplx cross = loop_hafnian(reduced_matrix(v, d, p, q));
      total += 2.0 *
               (cp * std::conj(cq) * cross).real() /
               std::sqrt(fp * occupation_factorial(q));
    }
  }
  return total;
}

double clamp_density(double value) {
  if (value < -kNumericTol)
    throw NumericalError("density: negative value " + std::to_string(value) +
                         " beyond roundoff tolerance");
  return std::max(value, 0.0);
}

void require_normalized(const CoreState& input) {
  if (!input.is_normalized())
    throw ValidationError("density: input core state is not normalized");
}

GaussianUnitary permutation_to_front(const std::vector<int>& measured, int m) {
  std::vector<char> seen(static_cast<size_t>(m), 0);
  for (int mode : measured) {
    if (mode < 0 || mode >= m)
      throw ValidationError("marginal_density: measured mode out of range");
    if (seen[static_cast<size_t>(mode)])
      throw ValidationError("marginal_density: duplicate measured mode");
    seen[static_cast<size_t>(mode)] = 1;
  }
  std::vector<int> order = measured;
  for (int mode = 0; mode < m; ++mode)
    if (!seen[static_cast<size_t>(mode)]) order.push_back(mode);
  Mat s = Mat::Zero(2 * m, 2 * m);
  Vec d = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    s(i, order[static_cast<size_t>(i)]) = 1.0;
    s(m + i, m + order[static_cast<size_t>(i)]) = 1.0;
  }
  return GaussianUnitary(std::move(s), std::move(d));
}

}  // namespace

double gaussian_prefactor(const GaussianUnitary& g,
                          const OutcomeVector& alpha) {
  return prefactor_from(pullback_data(g, alpha), g.modes());
}

KernelMatrices kernel_matrices(const GaussianUnitary& g,
                               const OutcomeVector& alpha) {
  const GaussianData gd = pullback_data(g, alpha);
  const Eigen::Index m = g.modes();
  const Mat x = block_swap(m);
  KernelMatrices out;
  out.v = x * (Mat::Identity(2 * m, 2 * m) - gd.inv_sigma);
  const double dev = (out.v - out.v.transpose()).cwiseAbs().maxCoeff();
  if (dev > kNumericTol)
    throw NumericalError("kernel_matrices: V asymmetry " + std::to_string(dev));
  out.v = 0.5 * (out.v + out.v.transpose());
  out.d = x * (gd.inv_sigma * gd.disp);
  return out;
}

DensityDetail core_density_detail(const GaussianUnitary& g,
                                  const CoreState& input,
                                  const OutcomeVector& alpha) {
  if (g.modes() != input.modes())
    throw ValidationError("core_density: mode-count mismatch");
  require_normalized(input);
  const KernelMatrices km = kernel_matrices(g, alpha);
  DensityDetail out;
  out.prefactor = gaussian_prefactor(g, alpha);
  out.term_pairs = static_cast<std::int64_t>(input.support_size()) *
                   static_cast<std::int64_t>(input.support_size());
  out.density = clamp_density(out.prefactor * pair_sum(km.v, km.d, input));
  return out;
}

double core_density(const GaussianUnitary& g, const CoreState& input,
                    const OutcomeVector& alpha) {
  return core_density_detail(g, input, alpha).density;
}

double fock_density(const GaussianUnitary& g, const FockIndex& n,
                    const OutcomeVector& alpha) {
  if (static_cast<int>(n.size()) != g.modes())
    throw ValidationError("fock_density: occupation length mismatch");
  const KernelMatrices km = kernel_matrices(g, alpha);
  const double kappa = gaussian_prefactor(g, alpha);
  const cplx lh = loop_hafnian(reduced_matrix(km.v, km.d, n, n));
  const double value = kappa / occupation_factorial(n) *
                       real_checked(lh, "fock_density");
  return clamp_density(value);
}

DensityDetail marginal_density_detail(const GaussianUnitary& g,
                                      const CoreState& input,
                                      const std::vector<int>& measured_modes,
                                      const OutcomeVector& alpha) {
  const int m = g.modes();
  const int k = static_cast<int>(measured_modes.size());
  if (g.modes() != input.modes())
    throw ValidationError("marginal_density: mode-count mismatch");
  if (k < 1 || k > m)
    throw ValidationError("marginal_density: need 1..m measured modes");
  if (static_cast<int>(alpha.size()) != k)
    throw ValidationError("marginal_density: outcome dimension mismatch");
  require_normalized(input);

  // Relabel so the measured modes sit first; the input state is untouched.
  const GaussianUnitary gp = compose(permutation_to_front(measured_modes, m), g);
  OutcomeVector padded(static_cast<size_t>(m), cplx(0.0, 0.0));
  for (int i = 0; i < k; ++i) padded[static_cast<size_t>(i)] = alpha[static_cast<size_t>(i)];

  const GaussianData gd = pullback_data(gp, padded);
  const Mat x = block_swap(m);
  const Mat& inv_sigma = gd.inv_sigma;
  const Vec& ctil = gd.disp;  // S alpha~ + d~ of the pulled-back state

  Mat v_eff = x * (Mat::Identity(2 * m, 2 * m) - inv_sigma);
  Vec d_eff = x * (inv_sigma * ctil);
  double log_extra = 0.0;
  double extra_norm = 1.0;

  const int nu = m - k;  // unmeasured modes
  if (nu > 0) {
    const Mat sd = dagger(gp).matrix();
    // Rows/columns of the unmeasured modes in the doubled index space.
    std::vector<int> keep;
    keep.reserve(static_cast<size_t>(2 * nu));
    for (int l = k; l < m; ++l) keep.push_back(l);
    for (int l = k; l < m; ++l) keep.push_back(m + l);

    const Mat h_full = sd.adjoint() * inv_sigma * sd;
    Mat v_int(2 * nu, 2 * nu);
    for (int i = 0; i < 2 * nu; ++i) {
      // X' H: swap within the reduced doubled space.
      const int si = (i < nu) ? i + nu : i - nu;
      for (int j = 0; j < 2 * nu; ++j)
        v_int(i, j) = h_full(keep[static_cast<size_t>(si)],
                             keep[static_cast<size_t>(j)]);
    }

    // Real-coordinate form of the closed Gaussian integral over the
    // unmeasured outcomes: Q_r = T^T V_int T with gamma = x + i y.
    Mat t_mat = Mat::Zero(2 * nu, 2 * nu);
    for (int i = 0; i < nu; ++i) {
      t_mat(i, i) = 1.0;
      t_mat(i, nu + i) = cplx(0.0, 1.0);
      t_mat(nu + i, i) = 1.0;
      t_mat(nu + i, nu + i) = cplx(0.0, -1.0);
    }
    const Mat q_complex = t_mat.transpose() * v_int * t_mat;
    if (q_complex.imag().cwiseAbs().maxCoeff() >
        kNumericTol * std::max(1.0, q_complex.cwiseAbs().maxCoeff()))
      throw NumericalError("marginal_density: integral kernel not real");
    const RealMat q_r = q_complex.real();
    Eigen::LLT<RealMat> llt_q(q_r);
    if (llt_q.info() != Eigen::Success)
      throw NumericalError("marginal_density: singular integral kernel");
    double sqrt_det_q = 1.0;
    for (int i = 0; i < 2 * nu; ++i) sqrt_det_q *= llt_q.matrixLLT()(i, i);

    // G maps full doubled arguments to the reduced linear coefficient of the
    // integrated Gaussian; W = G^T V_int^{-1} G folds the integral back into
    // an effective kernel on the measured problem.
    const Mat sxm = sd.transpose() * x * inv_sigma;
    Mat g_mat(2 * nu, 2 * m);
    for (int i = 0; i < 2 * nu; ++i)
      g_mat.row(i) = sxm.row(keep[static_cast<size_t>(i)]);

    Eigen::PartialPivLU<Mat> lu(v_int);
    const Mat vinv_g = lu.solve(g_mat);
    const Mat w = g_mat.transpose() * vinv_g;
    v_eff += w;
    d_eff -= w * ctil;

    const Vec gc = g_mat * ctil;
    const cplx quad = (gc.transpose() * lu.solve(gc)).value();
    log_extra = 0.5 * real_checked(quad, "marginal_density integral exponent");
    extra_norm = std::pow(2.0 * M_PI, static_cast<double>(nu)) / sqrt_det_q;
  }

  const double dev = (v_eff - v_eff.transpose()).cwiseAbs().maxCoeff();
  if (dev > kNumericTol)
    throw NumericalError("marginal_density: kernel asymmetry " +
                         std::to_string(dev));
  v_eff = 0.5 * (v_eff + v_eff.transpose());

  const cplx quad0 = ctil.dot(inv_sigma * ctil);
  const double kappaocc =
      std::exp(-0.5 * real_checked(quad0, "marginal_density prefactor") +
               log_extra) /
      (std::pow(M_PI, static_cast<double>(m)) * gd.sqrt_det) *
      extra_norm;

  DensityDetail out;
  out.prefactor = kappaocc;
  out.term_pairs = static_cast<std::int64_t>(input.support_size()) *
                   static_cast<std::int64_t>(input.support_size());
  out.density = clamp_density(kappaocc * pair_sum(v_eff, d_eff, input));
  return out;
}

double marginal_density(const GaussianUnitary& g, const CoreState& input,
                        const std::vector<int>& measured_modes,
                        const OutcomeVector& alpha) {
  return marginal_density_detail(g, input, measured_modes, alpha).density;
}

}  // namespace gcore
