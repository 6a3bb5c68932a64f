#pragma once

#include "rigidlab/cifs.hpp"

namespace rigidlab {

// Chain of n_links similar solid tori inside a big torus (major radius R,
// minor radius r), link centers equally spaced on the core circle and
// alternately rotated 90 degrees about the core tangent. Feasibility
// (pairwise disjointness + containment) is certified with bounding balls.
CIFS make_antoine(int n_links, double link_ratio, double torus_major = 1.0,
                  double torus_minor = 0.28);

}  // namespace rigidlab
