#include "losdof/rng.hpp"

#include <limits>

namespace losdof {

std::uint64_t Rng::below(std::uint64_t bound)
{
  // Largest multiple of bound that fits; draws above it are rejected so the
  // result is exactly uniform.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % bound;
}

}  // namespace losdof
