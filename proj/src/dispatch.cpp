#include "lullslew/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lullslew/error.hpp"
#include "lullslew/power.hpp"

namespace lullslew {

IntervalDispatch dispatch_interval(double w_s, double hdrm) {
  if (!(w_s >= 0.0)) throw DomainError("negative or non-finite wind+solar sample");
  if (!(hdrm > 0.0)) throw DomainError("headroom must be positive");
  IntervalDispatch d;
  d.offered = quantize_power(w_s);
  const double h = quantize_power(hdrm);
  d.accepted = std::min(d.offered, h);
  d.curtailed = d.offered - d.accepted;
  d.dispatchable = h - d.accepted;
  return d;
}

namespace {

DispatchAverages average_of(std::span<const IntervalDispatch> intervals) {
  DispatchAverages sum;
  for (const auto& d : intervals) {
    sum.offered += d.offered;
    sum.accepted += d.accepted;
    sum.curtailed += d.curtailed;
    sum.dispatchable += d.dispatchable;
  }
  const auto n = static_cast<double>(intervals.size());
  return {sum.offered / n, sum.accepted / n, sum.curtailed / n, sum.dispatchable / n};
}

}  // namespace

DispatchAverages dispatch_week(std::span<const double> w_s, double hdrm) {
  if (w_s.empty()) throw EmptyInputError("no intervals to dispatch");
  std::vector<IntervalDispatch> intervals;
  intervals.reserve(w_s.size());
  for (double v : w_s) intervals.push_back(dispatch_interval(v, hdrm));
  return average_of(intervals);
}

DispatchResult run_dispatch(const ScaledYear& year, Execution exec) {
  DispatchResult r;
  r.hdrm = year.hdrm();
  r.intervals.resize(kSamplesPerYear);
  r.weekly.resize(kBlocksPerYear);
  const auto combined = year.combined();

  for_each_index(kBlocksPerYear, exec, [&](std::size_t b) {
    const std::size_t begin = b * kSamplesPerBlock;
    for (std::size_t i = begin; i < begin + kSamplesPerBlock; ++i) {
      r.intervals[i] = dispatch_interval(combined[i], r.hdrm);
    }
    r.weekly[b] = average_of(std::span(r.intervals).subspan(begin, kSamplesPerBlock));
  });

  DispatchAverages sum;
  for (const auto& w : r.weekly) {
    sum.offered += w.offered;
    sum.accepted += w.accepted;
    sum.curtailed += w.curtailed;
    sum.dispatchable += w.dispatchable;
  }
  const auto weeks = static_cast<double>(kBlocksPerYear);
  r.annual = {sum.offered / weeks, sum.accepted / weeks, sum.curtailed / weeks,
              sum.dispatchable / weeks};
  r.dispatchable_ratio = r.annual.dispatchable / r.hdrm;
  return r;
}

GenHistogram histogram(std::span<const double> samples, double bin_width) {
  if (!(bin_width > 0.0)) throw ConfigError("histogram bin width must be positive");
  if (samples.empty()) throw EmptyInputError("histogram of an empty series");
  GenHistogram h;
  h.bin_width = bin_width;
  for (double v : samples) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("histogram sample must be finite and >= 0");
    const auto bin = static_cast<std::size_t>(std::floor(v / bin_width));
    if (bin >= h.counts.size()) h.counts.resize(bin + 1, 0);
    ++h.counts[bin];
  }
  h.total = samples.size();
  return h;
}

void write_histogram_csv(std::ostream& out, const GenHistogram& h) {
  out << "lower_gw,upper_gw,count\n";
  char buf[96];
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu\n", h.lower(k), h.upper(k), h.counts[k]);
    out << buf;
  }
}

void write_intervals_csv(std::ostream& out, const ScaledYear& year, const DispatchResult& result) {
  out << "timestamp,w_plus_s_gw,accepted_gw,curtailed_gw,dispatchable_gw\n";
  char buf[160];
  for (std::size_t i = 0; i < result.intervals.size(); ++i) {
    const auto& d = result.intervals[i];
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g\n", d.offered, d.accepted,
                  d.curtailed, d.dispatchable);
    out << format_iso8601(year.time_at(i)) << buf;
  }
}

}  // namespace lullslew
