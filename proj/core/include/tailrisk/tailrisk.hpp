#pragma once

#include "tailrisk/copula.hpp"
#include "tailrisk/distributions.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/estimate.hpp"
#include "tailrisk/expectile.hpp"
#include "tailrisk/inference.hpp"
#include "tailrisk/level.hpp"
#include "tailrisk/mes.hpp"
#include "tailrisk/normal.hpp"
#include "tailrisk/rng.hpp"
#include "tailrisk/series.hpp"
#include "tailrisk/simulate.hpp"
#include "tailrisk/tail_index.hpp"
