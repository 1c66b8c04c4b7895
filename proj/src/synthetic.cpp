#include "lullslew/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "lullslew/power.hpp"

namespace lullslew::synthetic {
namespace {

using namespace std::chrono;

// Calm spells as (first day of year, length in days); mirrors the shape of a
// windy-winter year with one long winter lull and two shorter ones.
constexpr struct {
  double first_day;
  double days;
} kLulls[] = {{15.0, 8.0}, {127.0, 3.0}, {240.5, 3.0}, {60.0, 1.2}, {300.0, 1.5}};

void rescale(std::vector<double>& v, double target_mean) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double m = sum / static_cast<double>(v.size());
  if (m <= 0.0) return;
  for (double& x : v) x *= target_mean / m;
}

}  // namespace

SyntheticYear generate(const YearProfile& profile) {
  SyntheticYear y;
  y.start = start_of_year(profile.year);
  const auto n = static_cast<std::size_t>((start_of_year(profile.year + 1) - y.start) / kStep);
  y.wind.resize(n);
  y.solar.resize(n);

  std::mt19937_64 rng(profile.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Wind: AR(1) in log space, correlation time of roughly a day.
  const double phi = 0.9965;
  const double log_sd = 0.85;
  const double step_sd = log_sd * std::sqrt(1.0 - phi * phi);
  double x = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    x = phi * x + step_sd * normal(rng);
    const double day = static_cast<double>(t) / (24.0 * kStepsPerHour);
    const double seasonal = 1.0 + 0.35 * std::cos(2.0 * std::numbers::pi * day / 365.0);
    double w = seasonal * std::exp(x - 0.5 * log_sd * log_sd);
    if (profile.inject_lulls) {
      for (const auto& lull : kLulls) {
        const double into = day - lull.first_day;
        if (into >= 0.0 && into < lull.days) {
          // Smooth dip to a few percent of normal output.
          const double edge = std::min(into, lull.days - into);
          const double depth = std::min(1.0, edge / 0.25);
          w *= 1.0 - 0.97 * depth;
        }
      }
    }
    y.wind[t] = std::min(w, 2.6);
  }
  rescale(y.wind, profile.wind_average_gw);

  // Solar: seasonal day length and peak, AR(1) cloud cover.
  double cloud = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    cloud = 0.995 * cloud + 0.1 * normal(rng);
    const double day = static_cast<double>(t) / (24.0 * kStepsPerHour);
    const double hour = std::fmod(static_cast<double>(t) / kStepsPerHour, 24.0);
    const double season = -std::cos(2.0 * std::numbers::pi * (day + 10.0) / 365.0);  // -1 Dec, +1 Jun
    const double day_length = 12.3 + 4.3 * season;
    const double sunrise = 12.5 - day_length / 2.0;
    const double peak = 4.5 + 2.8 * season;
    const double phase = (hour - sunrise) / day_length;
    double s = 0.0;
    if (phase > 0.0 && phase < 1.0) {
      const double clear = std::pow(std::sin(std::numbers::pi * phase), 1.5);
      s = peak * clear * std::clamp(0.75 + 0.25 * cloud, 0.2, 1.0);
    }
    y.solar[t] = s;
  }
  rescale(y.solar, profile.solar_average_gw);
  return y;
}

YearBlocks make_blocks(Timestamp year_start, const std::vector<double>& wind,
                       const std::vector<double>& solar) {
  const auto quantized = [](const std::vector<double>& v) {
    std::vector<double> out(kSamplesPerYear);
    std::transform(v.begin(), v.begin() + static_cast<long>(kSamplesPerYear), out.begin(),
                   quantize_power);
    return out;
  };
  YearBlocks blocks;
  blocks.year_start = year_start;
  blocks.channels.emplace(Channel::wind, ChannelBlocks(quantized(wind)));
  blocks.channels.emplace(Channel::solar, ChannelBlocks(quantized(solar)));
  return blocks;
}

YearBlocks generate_blocks(const YearProfile& profile) {
  const auto y = generate(profile);
  return make_blocks(y.start, y.wind, y.solar);
}

void write_gridwatch_csv(std::ostream& out, const SyntheticYear& year, const YearProfile& profile) {
  out << "id,timestamp,demand,nuclear,wind,solar\n";
  char buf[128];
  for (std::size_t t = 0; t < year.wind.size(); ++t) {
    std::snprintf(buf, sizeof buf, ",%.3f,%.3f,%.3f,%.3f\n", profile.demand_gw * 1000.0,
                  profile.nuclear_gw * 1000.0, year.wind[t] * 1000.0, year.solar[t] * 1000.0);
    std::string ts = format_iso8601(year.start + kStep * static_cast<long>(t));
    ts[10] = ' ';
    ts.pop_back();
    out << t + 1 << ',' << ts << buf;
  }
}

}  // namespace lullslew::synthetic
