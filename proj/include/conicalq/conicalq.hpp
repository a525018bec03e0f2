#pragma once

#include "conicalq/bessel.hpp"
#include "conicalq/dispatcher.hpp"
#include "conicalq/errors.hpp"
#include "conicalq/evaluation.hpp"
#include "conicalq/io.hpp"
#include "conicalq/kummer.hpp"
#include "conicalq/scalar_kernels.hpp"
#include "conicalq/scaled_value.hpp"
#include "conicalq/series_large_x.hpp"
#include "conicalq/series_near_one.hpp"
#include "conicalq/truncated_series.hpp"
