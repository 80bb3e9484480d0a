#pragma once

#include "cubicfe/classic_solver.hpp"
#include "cubicfe/expr_parser.hpp"
#include "cubicfe/fe_solver.hpp"
#include "cubicfe/oracle.hpp"
#include "cubicfe/polynomial.hpp"
#include "cubicfe/root_set.hpp"
