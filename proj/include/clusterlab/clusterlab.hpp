#pragma once

#include "clusterlab/cluster_core.hpp"
#include "clusterlab/dirichlet.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/exactlinalg.hpp"
#include "clusterlab/finite_field.hpp"
#include "clusterlab/grothendieck.hpp"
#include "clusterlab/isolated_hodge.hpp"
#include "clusterlab/laurent.hpp"
#include "clusterlab/point_count.hpp"
#include "clusterlab/quasi_polynomial.hpp"
#include "clusterlab/quiver_struct.hpp"
#include "clusterlab/standard_cohomology.hpp"
#include "clusterlab/symmetry_cover.hpp"
