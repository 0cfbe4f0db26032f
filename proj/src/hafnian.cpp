#include "gcore/hafnian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>

namespace gcore {

namespace {

void require_square(const Mat& a, const char* what) {
  if (a.rows() != a.cols())
    throw ValidationError(std::string(what) + ": matrix must be square");
}

void require_symmetric(const Mat& a, const char* what) {
  require_square(a, what);
  if (a.rows() == 0) return;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double dev = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (dev > kStructuralTol * scale)
    throw ValidationError(std::string(what) +
                          ": matrix not symmetric (deviation " +
                          std::to_string(dev) + ")");
}

// Recursive enumeration over partitions of {idx} into singletons and pairs.
// The first remaining index is matched as a loop, then paired with each
// later index in ascending order, which yields a deterministic
// lexicographic generation order.
cplx lhaf_enum_rec(const Mat& a, std::vector<int>& idx) {
  if (idx.empty()) return cplx(1.0, 0.0);
  const int i = idx.front();
  std::vector<int> rest(idx.begin() + 1, idx.end());
  cplx total = a(i, i) * lhaf_enum_rec(a, rest);
  for (size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> sub;
    sub.reserve(rest.size() - 1);
    for (size_t l = 0; l < rest.size(); ++l)
      if (l != j) sub.push_back(rest[l]);
    total += a(i, rest[j]) * lhaf_enum_rec(a, sub);
  }
  return total;
}

// Coefficients h_k of exp(sum_k g_k eta^k) truncated at degree deg, via the
// logarithmic-derivative recurrence k h_k = sum_j j g_j h_{k-j}.
std::vector<cplx> exp_series(const std::vector<cplx>& g, int deg) {
  std::vector<cplx> h(static_cast<size_t>(deg) + 1, cplx(0.0, 0.0));
  h[0] = cplx(1.0, 0.0);
  for (int k = 1; k <= deg; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 1; j <= k; ++j)
      acc += static_cast<double>(j) * g[static_cast<size_t>(j)] *
             h[static_cast<size_t>(k - j)];
    h[static_cast<size_t>(k)] = acc / static_cast<double>(k);
  }
  return h;
}

}  // namespace

cplx permanent(const Mat& b) {
  require_square(b, "permanent");
  const int k = static_cast<int>(b.rows());
  if (k == 0) return cplx(1.0, 0.0);
  if (k > 30) throw ValidationError("permanent: size too large");

  // Ryser with Gray-code subset updates of the row sums.
  Vec row_sums = Vec::Zero(k);
  cplx total(0.0, 0.0);
  std::uint64_t prev = 0;
  const std::uint64_t count = (1ull << k);
  for (std::uint64_t t = 1; t < count; ++t) {
    const std::uint64_t gray = t ^ (t >> 1);
    const std::uint64_t changed = gray ^ prev;
    int j = 0;
    while (!((changed >> j) & 1ull)) ++j;
    if (gray & changed)
      row_sums += b.col(j);
    else
      row_sums -= b.col(j);
    prev = gray;
    cplx prod(1.0, 0.0);
    for (int i = 0; i < k; ++i) prod *= row_sums(i);
    const int popcount = __builtin_popcountll(gray);
    total += ((k - popcount) % 2 == 0) ? prod : -prod;
  }
  return total;
}

cplx hafnian(const Mat& a) {
  require_symmetric(a, "hafnian");
  if (a.rows() == 0) return cplx(1.0, 0.0);
  if (a.rows() % 2 == 1) return cplx(0.0, 0.0);
  Mat z = a;
  z.diagonal().setZero();
  return loop_hafnian(z);
}

cplx loop_hafnian_enum(const Mat& r) {
  require_symmetric(r, "loop_hafnian");
  const int n = static_cast<int>(r.rows());
  if (n == 0) return cplx(1.0, 0.0);
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  return lhaf_enum_rec(r, idx);
}

cplx loop_hafnian(const Mat& r_in) {
  require_symmetric(r_in, "loop_hafnian");
  int n = static_cast<int>(r_in.rows());
  if (n == 0) return cplx(1.0, 0.0);

  // Symmetrize roundoff and pad odd sizes with a unit loop, which leaves
  // the loop hafnian unchanged.
  Mat a = 0.5 * (r_in + r_in.transpose());
  if (n % 2 == 1) {
    Mat padded = Mat::Zero(n + 1, n + 1);
    padded.topLeftCorner(n, n) = a;
    padded(n, n) = cplx(1.0, 0.0);
    a.swap(padded);
    ++n;
  }
  const int m = n / 2;

  const Vec diag = a.diagonal();
  Mat offdiag = a;
  offdiag.diagonal().setZero();

  // Inclusion-exclusion over subsets of index pairs {2i, 2i+1}. For each
  // subset, the contribution is the degree-m coefficient of
  //   exp(sum_k [tr(B^k)/(2k) + v^T (XA)^{k-1} X v / 2] eta^k),
  // with A the subset submatrix (diagonal zeroed), v its diagonal and X the
  // pairwise swap. Power traces come from the eigenvalues of B = X A.
  cplx total(0.0, 0.0);
  std::vector<int> ids;
  ids.reserve(static_cast<size_t>(n));
  for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
    const int npairs = __builtin_popcountll(mask);
    if (npairs == 0) continue;  // coefficient of eta^m vanishes (m >= 1)
    ids.clear();
    for (int b = 0; b < m; ++b) {
      if ((mask >> b) & 1ull) {
        ids.push_back(2 * b);
        ids.push_back(2 * b + 1);
      }
    }
    const int s = 2 * npairs;
    Mat sub(s, s);
    Vec v(s);
    for (int i = 0; i < s; ++i) {
      v(i) = diag(ids[static_cast<size_t>(i)]);
      for (int j = 0; j < s; ++j)
        sub(i, j) = offdiag(ids[static_cast<size_t>(i)],
                            ids[static_cast<size_t>(j)]);
    }
    // B = X * sub: swap row partners within each pair.
    Mat b_mat(s, s);
    for (int i = 0; i < s; ++i) b_mat.row(i) = sub.row(i ^ 1);
    Vec xv(s);
    for (int i = 0; i < s; ++i) xv(i) = v(i ^ 1);

    Eigen::ComplexEigenSolver<Mat> eig(b_mat, /*computeEigenvectors=*/false);
    const Vec lambda = eig.eigenvalues();

    std::vector<cplx> g(static_cast<size_t>(m) + 1, cplx(0.0, 0.0));
    Vec lambda_pow = Vec::Ones(s);
    Vec y = xv;  // (XA)^{k-1} X v, advanced once per k
    for (int k = 1; k <= m; ++k) {
      lambda_pow.array() *= lambda.array();
      const cplx trace = lambda_pow.sum();
      const cplx loop_term = v.cwiseProduct(y).sum();  // v^T y, no conjugation
      g[static_cast<size_t>(k)] = trace / (2.0 * k) + 0.5 * loop_term;
      if (k < m) y = b_mat * y;
    }
    const std::vector<cplx> h = exp_series(g, m);
    const cplx coeff = h[static_cast<size_t>(m)];
    total += ((m - npairs) % 2 == 0) ? coeff : -coeff;
  }
  return total;
}

Mat reduced_matrix(const Mat& v, const Vec& d, const FockIndex& p,
                   const FockIndex& q) {
  require_symmetric(v, "reduced_matrix");
  const Eigen::Index two_m = v.rows();
  if (two_m % 2 != 0)
    throw ValidationError("reduced_matrix: kernel must have even dimension");
  const Eigen::Index m = two_m / 2;
  if (d.size() != two_m)
    throw ValidationError("reduced_matrix: vector length mismatch");
  if (static_cast<Eigen::Index>(p.size()) != m ||
      static_cast<Eigen::Index>(q.size()) != m)
    throw ValidationError("reduced_matrix: index length mismatch");

  std::vector<int> rep;
  rep.reserve(static_cast<size_t>(occupation_total(p) + occupation_total(q)));
  for (Eigen::Index k = 0; k < m; ++k)
    for (int c = 0; c < p[static_cast<size_t>(k)]; ++c)
      rep.push_back(static_cast<int>(k));
  for (Eigen::Index k = 0; k < m; ++k)
    for (int c = 0; c < q[static_cast<size_t>(k)]; ++c)
      rep.push_back(static_cast<int>(m + k));

  const int r = static_cast<int>(rep.size());
  Mat out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      out(i, j) = (i == j) ? d(rep[static_cast<size_t>(i)])
                           : v(rep[static_cast<size_t>(i)],
                               rep[static_cast<size_t>(j)]);
  return out;
}

cplx reduced_moment(const Mat& v, const Vec& d, const FockIndex& p,
                    const FockIndex& q) {
  const int order = occupation_total(p) + occupation_total(q);
  const cplx lh = loop_hafnian(reduced_matrix(v, d, p, q));
  return (order % 2 == 0) ? lh : -lh;
}

}  // namespace gcore
