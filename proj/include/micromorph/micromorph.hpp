#pragma once

#include "micromorph/assembly.hpp"
#include "micromorph/bandgap.hpp"
#include "micromorph/core.hpp"
#include "micromorph/dispersion.hpp"
#include "micromorph/eigensolve.hpp"
#include "micromorph/errors.hpp"
#include "micromorph/linalg.hpp"
