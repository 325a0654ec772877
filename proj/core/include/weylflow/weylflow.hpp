#pragma once

#include "weylflow/applications.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/expression.hpp"
#include "weylflow/flows.hpp"
#include "weylflow/graded_series.hpp"
#include "weylflow/multi_index.hpp"
#include "weylflow/oracle.hpp"
#include "weylflow/realization.hpp"
#include "weylflow/realization_spec.hpp"
#include "weylflow/scalar.hpp"
#include "weylflow/series_io.hpp"
#include "weylflow/weyl_algebra.hpp"
