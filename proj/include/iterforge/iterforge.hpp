#pragma once

#include "iterforge/bigint.hpp"
#include "iterforge/cache.hpp"
#include "iterforge/catalan.hpp"
#include "iterforge/error.hpp"
#include "iterforge/incidence.hpp"
#include "iterforge/polynomial.hpp"
#include "iterforge/semantics.hpp"
#include "iterforge/series.hpp"
#include "iterforge/skein.hpp"
#include "iterforge/tableaux.hpp"
#include "iterforge/term.hpp"
#include "iterforge/report.hpp"
#include "iterforge/verify.hpp"
