// Writes a Gridwatch-style CSV for a synthetic base year, for demos and tests.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lullslew/synthetic.hpp"

int main(int argc, char** argv) {
  lullslew::synthetic::YearProfile profile;
  std::string out_path;
  CLI::App app{"Synthetic 5-minute wind/solar year"};
  app.add_option("--out", out_path, "CSV to write")->required();
  app.add_option("--year", profile.year)->capture_default_str();
  app.add_option("--seed", profile.seed)->capture_default_str();
  app.add_option("--wind-gw", profile.wind_average_gw, "Annual average wind")->capture_default_str();
  app.add_option("--solar-gw", profile.solar_average_gw, "Annual average solar")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << '\n';
    return 2;
  }
  lullslew::synthetic::write_gridwatch_csv(out, lullslew::synthetic::generate(profile), profile);
  return 0;
}
