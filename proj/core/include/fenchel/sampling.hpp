#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fenchel/linalg.hpp"

namespace fenchel {

/// Halton points in [-radius, radius]^dim with a Cranley-Patterson shift drawn
/// from `seed`. Same arguments, same points.
std::vector<Vector> sample_box(std::size_t dim, std::size_t count, std::uint64_t seed, double radius = 1.0);

/// The box points pushed radially onto the ball of the given radius.
std::vector<Vector> sample_ball(std::size_t dim, std::size_t count, std::uint64_t seed, double radius = 1.0);

} // namespace fenchel
