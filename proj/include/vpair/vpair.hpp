#pragma once

#include "vpair/constants.hpp"
#include "vpair/dispersion.hpp"
#include "vpair/errors.hpp"
#include "vpair/io.hpp"
#include "vpair/numerics/quadrature.hpp"
#include "vpair/numerics/roots.hpp"
#include "vpair/species.hpp"
#include "vpair/statmech.hpp"
#include "vpair/vacuum_response.hpp"
