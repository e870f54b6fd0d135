#pragma once

#include "excir/accumulate.hpp"
#include "excir/agreement.hpp"
#include "excir/centering.hpp"
#include "excir/csv.hpp"
#include "excir/data_table.hpp"
#include "excir/errors.hpp"
#include "excir/gk_sketch.hpp"
#include "excir/quantiles.hpp"
#include "excir/report_io.hpp"
#include "excir/scores.hpp"
#include "excir/summation.hpp"
#include "excir/transfer.hpp"
