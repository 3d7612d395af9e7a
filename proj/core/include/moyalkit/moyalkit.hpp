#pragma once

#include "moyalkit/coupling.hpp"
#include "moyalkit/cumulants.hpp"
#include "moyalkit/dynamics.hpp"
#include "moyalkit/error.hpp"
#include "moyalkit/field.hpp"
#include "moyalkit/grid.hpp"
#include "moyalkit/spectral.hpp"
#include "moyalkit/states.hpp"
