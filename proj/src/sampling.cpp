#include "coarsegeo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "coarsegeo/normed_space.hpp"

namespace coarsegeo {

std::string to_string(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::kFullBall: return "full-ball";
    case SampleStrategy::kAnnulusShells: return "annulus-shells";
    case SampleStrategy::kSeededRandom: return "seeded-random";
  }
  return "?";
}

SampleStrategy sample_strategy_from_string(const std::string& s) {
  if (s == "full-ball") return SampleStrategy::kFullBall;
  if (s == "annulus-shells") return SampleStrategy::kAnnulusShells;
  if (s == "seeded-random") return SampleStrategy::kSeededRandom;
  throw SpecError("sample.strategy: unknown strategy '" + s + "'");
}

namespace {

std::vector<double> shell_radii(double r_in, double r_out, double step) {
  if (step <= 0.0) step = (r_out - r_in) / 8.0;
  std::vector<double> radii;
  if (step <= 0.0) {
    radii.push_back(r_in);
    return radii;
  }
  double start = r_in < kRadiusTol ? step : r_in;
  for (double r = start; r <= r_out + kRadiusTol; r += step) radii.push_back(r);
  if (radii.empty()) radii.push_back(r_out);
  return radii;
}

void sort_canonical(const MetricSpace& space, std::vector<PointId>& pts) {
  std::sort(pts.begin(), pts.end(), [&](PointId a, PointId b) {
    return space.point_less(a, b);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

std::vector<PointId> band_filter(const MetricSpace& space,
                                 const std::vector<PointId>& pts, double lo,
                                 double hi) {
  std::vector<PointId> out;
  for (PointId p : pts) {
    double d = space.base_distance(p);
    if (d >= lo - kRadiusTol && d <= hi + kRadiusTol) out.push_back(p);
  }
  return out;
}

// Equally spaced directions on each shell for the plane; seeded directions
// in higher dimensions.
std::vector<PointId> normed_shells(const NormedSpace& space, double r_in,
                                   double r_out, const SampleSpec& spec) {
  std::vector<PointId> out;
  std::vector<double> base(space.coords(space.basepoint()).begin(),
                           space.coords(space.basepoint()).end());
  for (double r : shell_radii(r_in, r_out, spec.shell_step)) {
    if (r < kRadiusTol) {
      out.push_back(space.basepoint());
      continue;
    }
    if (r > r_out + kRadiusTol) break;
    if (space.dim() == 2) {
      for (int j = 0; j < spec.per_shell; ++j) {
        double th = 2.0 * std::numbers::pi * j / spec.per_shell;
        std::vector<double> u = {std::cos(th), std::sin(th)};
        double nu = space.norm(u);
        std::vector<double> pt = {base[0] + r * u[0] / nu,
                                  base[1] + r * u[1] / nu};
        out.push_back(space.intern(pt));
      }
    } else {
      std::mt19937_64 rng(spec.seed ^
                          (0x9e3779b97f4a7c15ULL *
                           (static_cast<std::uint64_t>(r * 4096.0) + 1)));
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int j = 0; j < spec.per_shell; ++j) {
        std::vector<double> u(space.dim());
        double nu = 0.0;
        while (nu == 0.0) {
          for (auto& c : u) c = gauss(rng);
          nu = space.norm(u);
        }
        std::vector<double> pt(space.dim());
        for (int i = 0; i < space.dim(); ++i) {
          pt[i] = base[i] + r * u[i] / nu;
        }
        out.push_back(space.intern(pt));
      }
    }
  }
  if (r_in < kRadiusTol &&
      std::find(out.begin(), out.end(), space.basepoint()) == out.end()) {
    out.push_back(space.basepoint());
  }
  return out;
}

std::vector<PointId> normed_random(const NormedSpace& space, double r_in,
                                   double r_out, const SampleSpec& spec) {
  std::vector<PointId> out;
  std::vector<double> base(space.coords(space.basepoint()).begin(),
                           space.coords(space.basepoint()).end());
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> rad(r_in, r_out);
  for (int j = 0; j < spec.per_shell; ++j) {
    double r = rad(rng);
    if (r < kRadiusTol) {
      out.push_back(space.basepoint());
      continue;
    }
    std::vector<double> u(space.dim());
    double nu = 0.0;
    while (nu == 0.0) {
      for (auto& c : u) c = gauss(rng);
      nu = space.norm(u);
    }
    std::vector<double> pt(space.dim());
    for (int i = 0; i < space.dim(); ++i) pt[i] = base[i] + r * u[i] / nu;
    out.push_back(space.intern(pt));
  }
  return out;
}

}  // namespace

std::vector<PointId> annulus_sample(const MetricSpace& space, double r_in,
                                    double r_out, const SampleSpec& spec) {
  if (r_in < 0.0 || r_in > r_out) {
    throw DomainError("annulus bounds must satisfy 0 <= r_in <= r_out");
  }
  if (spec.strategy != SampleStrategy::kFullBall && spec.per_shell <= 0) {
    throw DomainError("sample budget must be positive");
  }

  std::vector<PointId> out;
  const auto* normed = dynamic_cast<const NormedSpace*>(&space);

  switch (spec.strategy) {
    case SampleStrategy::kFullBall:
      out = band_filter(space, space.ball(r_out), r_in, r_out);
      break;
    case SampleStrategy::kAnnulusShells: {
      if (normed) {
        out = normed_shells(*normed, r_in, r_out, spec);
        break;
      }
      // Enumerable spaces: thin each one-step band to the shell budget,
      // keeping canonical order.
      auto all = band_filter(space, space.ball(r_out), r_in, r_out);
      auto radii = shell_radii(r_in, r_out, spec.shell_step);
      radii.push_back(r_out + 1.0);
      for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        auto band = band_filter(space, all, radii[i],
                                radii[i + 1] - 2.0 * kRadiusTol);
        sort_canonical(space, band);
        if (band.size() > static_cast<std::size_t>(spec.per_shell)) {
          band.resize(static_cast<std::size_t>(spec.per_shell));
        }
        out.insert(out.end(), band.begin(), band.end());
      }
      if (r_in < kRadiusTol) out.push_back(space.basepoint());
      break;
    }
    case SampleStrategy::kSeededRandom: {
      if (normed) {
        out = normed_random(*normed, r_in, r_out, spec);
        break;
      }
      auto all = band_filter(space, space.ball(r_out), r_in, r_out);
      sort_canonical(space, all);
      std::mt19937_64 rng(spec.seed);
      std::shuffle(all.begin(), all.end(), rng);
      if (all.size() > static_cast<std::size_t>(spec.per_shell)) {
        all.resize(static_cast<std::size_t>(spec.per_shell));
      }
      out = std::move(all);
      break;
    }
  }

  sort_canonical(space, out);
  return out;
}

std::vector<PointId> sample(const MetricSpace& space, const SampleSpec& spec) {
  return annulus_sample(space, spec.r_in, spec.r_out, spec);
}

}  // namespace coarsegeo
