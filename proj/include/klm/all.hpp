#pragma once

#include "klm/bundle.hpp"
#include "klm/dual.hpp"
#include "klm/gram.hpp"
#include "klm/harness.hpp"
#include "klm/klm.hpp"
#include "klm/oracle.hpp"
#include "klm/problem.hpp"
#include "klm/problems.hpp"
#include "klm/rng.hpp"
#include "klm/simplex_min.hpp"
#include "klm/trace.hpp"
#include "klm/vector_ops.hpp"
#include "klm/worstcase.hpp"
