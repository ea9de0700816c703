#pragma once

#include "parikh/decompose.hpp"
#include "parikh/enumerate.hpp"
#include "parikh/errors.hpp"
#include "parikh/grammar.hpp"
#include "parikh/oracle.hpp"
#include "parikh/semilinear.hpp"
#include "parikh/tree.hpp"
#include "parikh/vector.hpp"
