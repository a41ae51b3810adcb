#pragma once

// Umbrella header for the balanced_f1 library: time-series anomaly-detection
// evaluation with pointwise, point-adjusted, K%-adjusted, and
// balanced-adjusted F1 scores, closed-form random-scorer oracles, and a
// controlled simulation harness.

#include "balanced_f1/adjustment.hpp"
#include "balanced_f1/csv.hpp"
#include "balanced_f1/metrics.hpp"
#include "balanced_f1/report.hpp"
#include "balanced_f1/rng.hpp"
#include "balanced_f1/series.hpp"
#include "balanced_f1/simulator.hpp"
#include "balanced_f1/sweep.hpp"
#include "balanced_f1/svg.hpp"
#include "balanced_f1/theory.hpp"
