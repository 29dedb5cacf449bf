#include "losdof/model.hpp"

#include <cmath>
#include <string>

#include "losdof/error.hpp"
#include "losdof/rng.hpp"

namespace losdof {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ClusterParams::validate() const
{
  if (n < 1) throw InvalidParameter("cluster size n must be >= 1");
  if (!positive_finite(area_A)) throw InvalidParameter("area_A must be positive and finite");
  if (!positive_finite(dist_d)) throw InvalidParameter("dist_d must be positive and finite");
  if (!positive_finite(lambda)) throw InvalidParameter("lambda must be positive and finite");
}

bool ClusterParams::in_regime() const
{
  return std::sqrt(area_A) <= dist_d && dist_d <= area_A / lambda;
}

DerivedParams derive(const ClusterParams& params)
{
  params.validate();
  const double reach = params.dist_d + std::sqrt(params.area_A);
  return {params.area_A / (params.lambda * params.dist_d),
          reach * reach / static_cast<double>(params.n)};
}

ClusterParams power_law_params(std::size_t n, double beta, double gamma, double lambda)
{
  if (!(beta > 0.0) || !(gamma > 0.0))
    throw InvalidParameter("power-law exponents beta and gamma must be > 0");
  const double nn = static_cast<double>(n);
  ClusterParams p{n, std::pow(nn, beta), std::pow(nn, gamma), lambda};
  p.validate();
  return p;
}

NodePositions sample_network(std::size_t n, std::uint64_t seed)
{
  if (n < 1) throw InvalidParameter("cluster size n must be >= 1");
  Rng rng(seed);
  NodePositions pos;
  pos.seed = seed;
  for (auto* coord : {&pos.x, &pos.w, &pos.y, &pos.z}) {
    coord->resize(n);
    for (auto& v : *coord) v = rng.uniform01();
  }
  return pos;
}

NodePositions sample_network(const ClusterParams& params, std::uint64_t seed)
{
  params.validate();
  return sample_network(params.n, seed);
}

double pairwise_distance(const NodePositions& pos, const ClusterParams& params, std::size_t j,
                         std::size_t k)
{
  if (j >= pos.size() || k >= pos.size())
    throw IndexOutOfRange("node index (" + std::to_string(j) + ", " + std::to_string(k) +
                          ") out of range for n = " + std::to_string(pos.size()));
  const double side = std::sqrt(params.area_A);
  const double along = params.dist_d + side * (pos.x[j] + pos.w[k]);
  const double across = pos.y[j] - pos.z[k];
  return std::sqrt(along * along + params.area_A * across * across);
}

}  // namespace losdof
