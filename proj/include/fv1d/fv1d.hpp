#pragma once

// Umbrella header pulling in the whole library.  diagnostics.hpp is
// left out because it requires Eigen; include it directly when needed.

#include "fv1d/assembly.hpp"
#include "fv1d/banded.hpp"
#include "fv1d/basis.hpp"
#include "fv1d/errors.hpp"
#include "fv1d/expr.hpp"
#include "fv1d/harness.hpp"
#include "fv1d/mesh.hpp"
#include "fv1d/norms.hpp"
#include "fv1d/postprocess.hpp"
#include "fv1d/problems.hpp"
#include "fv1d/quadrature.hpp"
