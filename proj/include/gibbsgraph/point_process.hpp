#pragma once

#include <cstdint>

#include "gibbsgraph/geometry.hpp"
#include "gibbsgraph/model.hpp"

namespace gibbsgraph {

/// Homogeneous Poisson process with intensity `intensity` on `box`:
/// Poisson(intensity * volume) many points, i.i.d. uniform.  Coordinates are
/// drawn axis by axis, point by point, so output is reproducible per seed.
PointSet sample_poisson(const BoxRegion& box, double intensity, std::uint64_t seed);

/// Matern type-II hard-core thinning of a Poisson parent process: every
/// parent gets an independent uniform mark, and a parent survives iff no
/// other parent within distance < eps0 carries a smaller mark.  Survivors
/// are pairwise >= eps0 apart exactly.
PointSet sample_hardcore(const BoxRegion& box, double intensity, double eps0, std::uint64_t seed);

/// Local exponential mass of vertex v: T(v) = sum over other vertices w of
/// exp(-beta * |x_v - x_w|).  This is the quantity the degree and offspring
/// bounds are driven by.
double t_gamma(const PointSet& points, int v, const ModelParams& params);

/// max_v T(v); 0 for point sets with fewer than 2 vertices.
double t_sup(const PointSet& points, const ModelParams& params);

} // namespace gibbsgraph
