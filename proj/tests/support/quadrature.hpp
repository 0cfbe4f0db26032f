// Simpson-rule integration over the complex plane (dRe dIm) for test use.
#ifndef GCORE_TESTS_QUADRATURE_HPP
#define GCORE_TESTS_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace gcore_tests {

// Integrates f over [-radius, radius]^2 with a Simpson grid of the given
// step; n is rounded up to an even interval count.
inline double integrate_plane(const std::function<double(double, double)>& f,
                              double radius, double step) {
  int n = static_cast<int>(2.0 * radius / step);
  if (n % 2 == 1) ++n;
  const double h = 2.0 * radius / n;

  std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);
  w[0] = w[static_cast<size_t>(n)] = 1.0;
  for (int i = 1; i < n; ++i) w[static_cast<size_t>(i)] = (i % 2 == 1) ? 4.0 : 2.0;

  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -radius + i * h;
    double row = 0.0;
    for (int j = 0; j <= n; ++j)
      row += w[static_cast<size_t>(j)] * f(x, -radius + j * h);
    total += w[static_cast<size_t>(i)] * row;
  }
  return total * h * h / 9.0;
}

}  // namespace gcore_tests

#endif
