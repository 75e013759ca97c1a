#pragma once

#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarsegeo/products.hpp"

namespace coarsegeo {

// Embedding of a normed space into a precompact model with a fixed
// diameter. "ball" is x -> x/(1+|x|) into the closed unit ball; "square"
// is coordinatewise x_i -> x_i/(1+|x_i|) into [-1,1]^dim. The model metric
// d_c is Euclidean on the embedded coordinates.
class CompactModelEmbedding {
public:
  static CompactModelEmbedding ball(const NormedSpace& space);
  static CompactModelEmbedding square(const NormedSpace& space);

  std::vector<double> embed(const NormedSpace& space, PointId p) const;
  double model_distance(const NormedSpace& space, PointId x, PointId y) const;
  double diameter() const { return diam_; }
  const std::string& name() const { return name_; }

private:
  CompactModelEmbedding(std::string name, double diam)
      : name_(std::move(name)), diam_(diam) {}
  std::string name_;
  double diam_;
};

// Product induced by a compact model:
//   n(x,y) = max{n >= 0 : d_c(e(x), e(y)) <= 2^-n diam},
//   (x|y)^c = min{d(x0,x), d(x0,y), n(x,y)}.
// n is found by exact repeated halving of diam; coincident images make the
// min fall to the distance terms.
class CompactificationProduct final : public ProductOracle {
public:
  CompactificationProduct(SpacePtr space, CompactModelEmbedding model);
  double value(PointId x, PointId y) const override;
  nlohmann::ordered_json descriptor() const override;

  // The dyadic level n(x,y); returns -1 as the +infinity sentinel for
  // coincident images.
  long long dyadic_level(PointId x, PointId y) const;

  const CompactModelEmbedding& model() const { return model_; }

private:
  struct Cached {
    std::vector<double> image;
    double d0;
  };
  const Cached& cached(PointId p) const;

  const NormedSpace* normed_;
  CompactModelEmbedding model_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<PointId, Cached> memo_;
};

}  // namespace coarsegeo
