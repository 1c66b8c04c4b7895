#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lullslew/parallel.hpp"
#include "lullslew/scenario.hpp"

namespace lullslew {

// One 5-minute interval of the compound model. On the quantized power grid:
//   accepted + curtailed    == offered
//   accepted + dispatchable == hdrm
// hold exactly.
struct IntervalDispatch {
  double offered = 0.0;  // wind + solar, quantized
  double accepted = 0.0;
  double curtailed = 0.0;
  double dispatchable = 0.0;
};

/// Accepts renewables up to the headroom. Inputs are quantized first.
/// Throws DomainError for negative or non-finite w_s, or hdrm <= 0.
IntervalDispatch dispatch_interval(double w_s, double hdrm);

struct DispatchAverages {
  double offered = 0.0;
  double accepted = 0.0;
  double curtailed = 0.0;
  double dispatchable = 0.0;
};

/// Mean of each component over one weekly block (or any span).
DispatchAverages dispatch_week(std::span<const double> w_s, double hdrm);

struct DispatchResult {
  double hdrm = 0.0;
  std::vector<IntervalDispatch> intervals;
  std::vector<DispatchAverages> weekly;  // one per block
  DispatchAverages annual;               // mean of the weekly means
  double dispatchable_ratio = 0.0;       // annual dispatchable / hdrm
};

DispatchResult run_dispatch(const ScaledYear& year, Execution exec = Execution::parallel);

// Half-open bins [k*w, (k+1)*w) from zero up to the bin holding the maximum.
struct GenHistogram {
  double bin_width = 5.0;
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  double lower(std::size_t bin) const { return static_cast<double>(bin) * bin_width; }
  double upper(std::size_t bin) const { return static_cast<double>(bin + 1) * bin_width; }
};

GenHistogram histogram(std::span<const double> samples, double bin_width);

void write_histogram_csv(std::ostream& out, const GenHistogram& h);
void write_intervals_csv(std::ostream& out, const ScaledYear& year, const DispatchResult& result);

}  // namespace lullslew
