#pragma once

#include "spectral_indep/basis.hpp"
#include "spectral_indep/copula.hpp"
#include "spectral_indep/datagen.hpp"
#include "spectral_indep/errors.hpp"
#include "spectral_indep/independence.hpp"
#include "spectral_indep/matrix.hpp"
#include "spectral_indep/null_cache.hpp"
#include "spectral_indep/numerics.hpp"
#include "spectral_indep/parallel.hpp"
#include "spectral_indep/power.hpp"
#include "spectral_indep/rng.hpp"
#include "spectral_indep/structures.hpp"
#include "spectral_indep/transform.hpp"
