#pragma once

#include "expdomain/bitset.hpp"
#include "expdomain/context.hpp"
#include "expdomain/domain.hpp"
#include "expdomain/errors.hpp"
#include "expdomain/expr.hpp"
#include "expdomain/parser.hpp"
#include "expdomain/report.hpp"
#include "expdomain/simulate.hpp"
#include "expdomain/space.hpp"
#include "expdomain/statement.hpp"
#include "expdomain/version.hpp"
