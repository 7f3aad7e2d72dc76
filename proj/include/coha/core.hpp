#pragma once

#include "coha/core/equality.hpp"
#include "coha/core/error.hpp"
#include "coha/core/factored_rational.hpp"
#include "coha/core/linear_form.hpp"
#include "coha/core/polynomial.hpp"
#include "coha/core/rational.hpp"
#include "coha/core/series.hpp"
#include "coha/core/text.hpp"
#include "coha/core/variable.hpp"
