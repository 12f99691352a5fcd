#pragma once

#include "becell/barratt_eccles.hpp"
#include "becell/cell_algebra.hpp"
#include "becell/constructions.hpp"
#include "becell/f2_matrix.hpp"
#include "becell/free_algebra.hpp"
#include "becell/model_io.hpp"
#include "becell/perm.hpp"
#include "becell/solver.hpp"
