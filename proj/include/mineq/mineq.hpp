#pragma once

#include "mineq/bipartite.hpp"
#include "mineq/demand.hpp"
#include "mineq/errors.hpp"
#include "mineq/extended_rational.hpp"
#include "mineq/mechanism.hpp"
#include "mineq/model.hpp"
#include "mineq/oracle.hpp"
#include "mineq/raise.hpp"
#include "mineq/solver.hpp"
#include "mineq/verify.hpp"
