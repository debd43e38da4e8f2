#pragma once

#include "gaugeprob/error.hpp"
#include "gaugeprob/interval.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/families.hpp"
#include "gaugeprob/tagged_division.hpp"
#include "gaugeprob/cousin.hpp"
#include "gaugeprob/quadrature.hpp"
#include "gaugeprob/scalar_catalog.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/sampling.hpp"
#include "gaugeprob/random_function.hpp"
#include "gaugeprob/stochastic.hpp"
#include "gaugeprob/uniqueness.hpp"
#include "gaugeprob/fubini.hpp"
#include "gaugeprob/derivative.hpp"
#include "gaugeprob/random_catalog.hpp"
