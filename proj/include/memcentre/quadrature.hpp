#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace memcentre {

/// Thrown when adaptive refinement stalls before reaching its stopping
/// tolerance.  Carries the best estimate reached so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved estimate " +
                           std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1], positive half; mirrored at use.
inline constexpr std::array<std::array<double, 2>, 8> kGauss16{{
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037},
}};

template <class F>
double gauss16(F&& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const double mid = 0.5 * (lo + hi);
  const double rad = 0.5 * (hi - lo);
  double sum = 0.0;
  for (const auto& [x, w] : kGauss16) {
    sum += w * (f(mid - rad * x) + f(mid + rad * x));
  }
  return rad * sum;
}

// Panel edges for [lo, hi], geometrically graded (ratio 1/2) toward the
// endpoint that touches the singularity.  The panels stop one eps-scaled
// sliver short of that endpoint, so no node can land on the singular point;
// the omitted mass of an integrable log singularity over the sliver is
// O(eps |ln eps|), far below the stopping tolerance.
inline std::vector<std::pair<double, double>> graded_panels(double lo,
                                                            double hi,
                                                            bool toward_lo) {
  std::vector<std::pair<double, double>> panels;
  const double width = hi - lo;
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double sliver = 1024.0 * std::numeric_limits<double>::epsilon() * scale;
  if (!(width > sliver)) return panels;

  std::vector<double> offsets;  // distance from the singular end, descending
  for (double o = width; o > sliver; o *= 0.5) offsets.push_back(o);
  offsets.push_back(sliver);

  std::vector<double> edges;
  edges.reserve(offsets.size());
  if (toward_lo) {
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it)
      edges.push_back(lo + *it);
    edges.back() = hi;
  } else {
    for (double o : offsets) edges.push_back(hi - o);
    edges.front() = lo;
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] > edges[i]) panels.emplace_back(edges[i], edges[i + 1]);
  }
  return panels;
}

}  // namespace detail

/// Integrates f over [lo, hi] when f has (at most) an integrable logarithmic
/// singularity or kink at `splitPoint`.  The domain is split there, panels
/// are graded geometrically toward the split, and every panel uses 16-point
/// Gauss-Legendre.  Each refinement round halves all panels; refinement stops
/// once two successive estimates differ by less than `tol`.
template <class F>
double integrate_with_split(F&& f, double lo, double hi, double splitPoint,
                            double tol = 1e-9, int initial_subdivision = 1,
                            int max_rounds = 8) {
  if (!(hi >= lo)) throw std::invalid_argument("integration bounds reversed");
  const double s = std::min(std::max(splitPoint, lo), hi);
  auto panels = detail::graded_panels(lo, s, false);
  auto right = detail::graded_panels(s, hi, true);
  panels.insert(panels.end(), right.begin(), right.end());
  if (panels.empty()) return 0.0;

  double prev = std::numeric_limits<double>::quiet_NaN();
  int k = std::max(1, initial_subdivision);
  for (int round = 0; round < max_rounds; ++round, k *= 2) {
    double cur = 0.0;
    for (const auto& [e0, e1] : panels) {
      const double step = (e1 - e0) / k;
      for (int j = 0; j < k; ++j) {
        cur += detail::gauss16(f, e0 + j * step, e0 + (j + 1) * step);
      }
    }
    if (round > 0 && std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  throw QuadratureError("quadrature did not reach tolerance", prev);
}

}  // namespace memcentre
