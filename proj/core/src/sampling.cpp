#include <algorithm>
#include <random>
#include <string>

#include "moyalkit/states.hpp"

namespace moyalkit {

std::vector<JointSample> sample_joint(const JointDistribution& F, std::size_t count,
                                      std::uint64_t seed) {
  if (count == 0) throw InvalidArgument("sample_joint needs count >= 1");
  const RealField& f = F.field();
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  if (*lo < -1e-9 * *hi) {
    throw SignedDensity("joint distribution has negative lobes (min " + format_value(*lo) +
                        ", max " + format_value(*hi) + "); no sampling interpretation");
  }

  std::vector<double> cdf(f.size());
  double running = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    running += std::max(f[i], 0.0);
    cdf[i] = running;
  }

  const std::size_t np = f.extent(1), nr = f.extent(2);
  const Grid1D& gR = F.grid_R();
  const Grid1D& gp = F.grid_p();
  const Grid1D& gr = F.grid_r();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<JointSample> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double target = unit(rng) * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.end()) --it;
    const auto flat = static_cast<std::size_t>(it - cdf.begin());
    const std::size_t ir = flat % nr;
    const std::size_t ip = (flat / nr) % np;
    const std::size_t iR = flat / (nr * np);
    const double jR = unit(rng) - 0.5;
    const double jp = unit(rng) - 0.5;
    const double jr = unit(rng) - 0.5;
    out.push_back({gR.point(iR) + jR * gR.step(), gp.point(ip) + jp * gp.step(),
                   gr.point(ir) + jr * gr.step()});
  }
  return out;
}

}  // namespace moyalkit
