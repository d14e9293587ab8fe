#pragma once

// Exact-arithmetic toolkit for variable-length code theory: factorizations
// of cyclic groups (Krasner, Hajos), good arrangements, positively
// factorizing codes, and the left-set/right-set analysis of finite maximal
// codes.

#include "hajos/analysis.hpp"
#include "hajos/arrangement.hpp"
#include "hajos/base.hpp"
#include "hajos/code.hpp"
#include "hajos/corpus.hpp"
#include "hajos/errors.hpp"
#include "hajos/factorization.hpp"
#include "hajos/intpoly.hpp"
#include "hajos/json_io.hpp"
#include "hajos/polynomial.hpp"
#include "hajos/recognizer.hpp"
