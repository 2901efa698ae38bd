#pragma once

#include <cstdint>
#include <random>

#include "orbihear/minkowski.hpp"
#include "orbihear/polytope.hpp"

namespace orbihear {

/// Random rational simple polytope with no parallel facets and no
/// subpolytopes; facet count in [min_facets, max_facets], labels uniform in
/// [1, max_label]. Supports dim 2 and 3.
LabeledPolytope random_generic_polytope(int dim, int min_facets, int max_facets, int max_label,
                                        std::mt19937_64& rng);

/// Facet data of a random polytope with real unit normals.
MinkowskiInput random_balanced_input(int dim, int facets, std::mt19937_64& rng);

}  // namespace orbihear
