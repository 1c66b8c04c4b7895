#include <gtest/gtest.h>

#include <random>

#include "lullslew/error.hpp"
#include "lullslew/fleet.hpp"

using namespace lullslew;

namespace {

FleetUnit unit(Technology tech, double capacity, double ramp, double energy = 0.0) {
  FleetUnit u;
  u.name = std::string(technology_name(tech));
  u.technology = tech;
  u.capacity_gw = capacity;
  u.ramp_rate = ramp;
  u.energy_gwh = energy;
  return u;
}

}  // namespace

TEST(Technology, NamesRoundTripCaseInsensitively) {
  EXPECT_EQ(technology_from_name("ocgt"), Technology::ocgt);
  EXPECT_EQ(technology_from_name("Storage"), Technology::storage);
  EXPECT_EQ(technology_name(Technology::icgr), "ICGR");
  EXPECT_FALSE(technology_from_name("coal"));
}

TEST(Ramp, SingleOpenCycleUnit) {
  const std::vector<FleetUnit> f{unit(Technology::ocgt, 1.0, 30.0)};
  EXPECT_EQ(ramp_capability(f).ramp_gw_per_h, 30.0);
  EXPECT_EQ(ramp_capability(f).instantaneous_gw, 0.0);
}

TEST(Ramp, EmptyFleet) {
  const auto r = ramp_capability({});
  EXPECT_EQ(r.ramp_gw_per_h, 0.0);
  EXPECT_EQ(r.instantaneous_gw, 0.0);
}

TEST(Ramp, StorageCountsAsInstantaneousPower) {
  const std::vector<FleetUnit> f{unit(Technology::ccgt, 10.0, 3.0),
                                 unit(Technology::storage, 0.5, 0.0, 5.0)};
  const auto r = ramp_capability(f);
  EXPECT_EQ(r.ramp_gw_per_h, 30.0);
  EXPECT_EQ(r.instantaneous_gw, 0.5);
}

TEST(Ramp, AdditiveOverFleetUnion) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> cap(0.0, 20.0), ramp(0.0, 40.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FleetUnit> a, b;
    for (int i = 0; i < 4; ++i) {
      a.push_back(unit(i % 3 ? Technology::ocgt : Technology::storage, cap(rng), ramp(rng), 1.0));
      b.push_back(unit(i % 2 ? Technology::ccgt : Technology::storage, cap(rng), ramp(rng), 1.0));
    }
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    const auto ra = ramp_capability(a), rb = ramp_capability(b), r = ramp_capability(both);
    EXPECT_NEAR(r.ramp_gw_per_h, ra.ramp_gw_per_h + rb.ramp_gw_per_h, 1e-9);
    EXPECT_NEAR(r.instantaneous_gw, ra.instantaneous_gw + rb.instantaneous_gw, 1e-9);
  }
}

TEST(Adequacy, ExactlySufficientFleetPasses) {
  const std::vector<FleetUnit> f{unit(Technology::ocgt, 48.5, 30.0)};
  const auto r = check_adequacy(f, 30.0, 48.5);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.lull.margin, 0.0);
  EXPECT_EQ(r.slew.capability, 48.5 * 30.0);
}

TEST(Adequacy, EmptyFleetFailsBothByTheFullRequirement) {
  const auto r = check_adequacy({}, 20.1, 48.5);
  EXPECT_FALSE(r.slew.pass);
  EXPECT_FALSE(r.lull.pass);
  EXPECT_EQ(r.slew.margin, -20.1);
  EXPECT_EQ(r.lull.margin, -48.5);
}

TEST(Adequacy, CombinedCycleOnly) {
  const std::vector<FleetUnit> f{unit(Technology::ccgt, 25.0, 3.0)};
  const auto r = check_adequacy(f, 20.04, 48.5);
  EXPECT_TRUE(r.slew.pass);
  EXPECT_FALSE(r.lull.pass);
  EXPECT_EQ(r.lull.margin, -23.5);
  EXPECT_FALSE(r.pass());
}

TEST(Adequacy, StoragePowerHelpsSlewButNotLull) {
  const std::vector<FleetUnit> f{unit(Technology::ccgt, 5.0, 3.0),
                                 unit(Technology::storage, 20.0, 0.0, 150.0)};
  const auto r = check_adequacy(f, 30.0, 10.0);
  EXPECT_TRUE(r.slew.pass);
  EXPECT_EQ(r.firm_capacity_gw, 5.0);
  EXPECT_FALSE(r.lull.pass);
}

TEST(Adequacy, AddingUnitsNeverHurts) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> cap(0.0, 10.0), ramp(0.0, 30.0);
  std::vector<FleetUnit> f;
  AdequacyReport last = check_adequacy(f, 25.0, 40.0);
  for (int i = 0; i < 30; ++i) {
    f.push_back(unit(i % 4 == 3 ? Technology::storage : Technology::ocgt, cap(rng), ramp(rng), 2.0));
    const auto r = check_adequacy(f, 25.0, 40.0);
    EXPECT_GE(r.slew.margin, last.slew.margin);
    EXPECT_GE(r.lull.margin, last.lull.margin);
    EXPECT_GE(r.pass(), last.pass());
    last = r;
  }
  EXPECT_THROW(check_adequacy(f, -1.0, 40.0), DomainError);
}

TEST(Storage, ExhaustionUnderConstantDeficit) {
  const std::vector<double> deficit(288, 26.1);
  const auto h = storage_exhaustion(150.0, deficit);
  ASSERT_TRUE(h);
  EXPECT_NEAR(*h, 150.0 / 26.1, 1e-9);
  EXPECT_NEAR(*h, 5.747, 0.001);
}

TEST(Storage, NeverEmptiesWithoutDeficit) {
  EXPECT_FALSE(storage_exhaustion(150.0, std::vector<double>(1000, 0.0)));
  EXPECT_FALSE(storage_exhaustion(150.0, std::vector<double>(12, 26.1)));
}

TEST(Storage, LargerStoreLastsLonger) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(0.0, 40.0);
  std::vector<double> deficit(5000);
  for (auto& x : deficit) x = d(rng);
  double last = 0.0;
  for (double e : {1.0, 10.0, 50.0, 150.0, 400.0}) {
    const auto h = storage_exhaustion(e, deficit);
    ASSERT_TRUE(h);
    EXPECT_GT(*h, last);
    last = *h;
  }
}

TEST(Costs, StorageCost) {
  EXPECT_DOUBLE_EQ(storage_cost(5020.0, 150.0), 7.53e11);
  EXPECT_DOUBLE_EQ(storage_cost(1.0, 150.0), 1.5e8);
  EXPECT_THROW(storage_cost(-1.0, 150.0), DomainError);
}

TEST(Costs, Emissions) {
  EXPECT_NEAR(annual_emissions(7.44, 0.5, 0.185), 24.11, 0.01);
  EXPECT_NEAR(annual_emissions(16.0, 0.5, 0.185), 51.9, 0.05);
  EXPECT_EQ(annual_emissions(0.0, 0.5, 0.185), 0.0);
  for (double g : {1.0, 3.0, 11.0}) {
    EXPECT_NEAR(annual_emissions(2 * g, 0.5, 0.185), 2 * annual_emissions(g, 0.5, 0.185), 1e-9);
  }
  EXPECT_THROW(annual_emissions(1.0, 0.0, 0.185), DomainError);
  EXPECT_THROW(annual_emissions(-1.0, 0.5, 0.185), DomainError);
  DispatchResult d;
  d.annual.dispatchable = 7.44;
  EXPECT_EQ(annual_emissions(d, 0.5, 0.185), annual_emissions(7.44, 0.5, 0.185));
}

TEST(FleetFile, ParsesUnitsAndParameters) {
  const auto f = parse_fleet(R"(
storage_cost_usd_per_kwh: 200
emissions: { efficiency: 0.45, tco2_per_mwh_thermal: 0.2 }
units:
  - { name: gas, technology: ccgt, capacity_gw: 25, ramp_gw_per_h_per_gw: 3, efficiency_full: 0.55 }
  - { name: batteries, technology: storage, capacity_gw: 20, energy_gwh: 150 }
)");
  ASSERT_EQ(f.units.size(), 2u);
  EXPECT_EQ(f.units[0].technology, Technology::ccgt);
  EXPECT_EQ(f.units[0].efficiency_full, 0.55);
  EXPECT_TRUE(f.units[1].is_storage());
  EXPECT_EQ(f.storage_energy_gwh(), 150.0);
  EXPECT_EQ(f.storage_cost_per_kwh, 200.0);
  EXPECT_EQ(f.emissions.efficiency, 0.45);
}

TEST(FleetFile, RejectsBadUnits) {
  EXPECT_THROW(parse_fleet("units: [{technology: coal, capacity_gw: 1}]"), ConfigError);
  EXPECT_THROW(parse_fleet("units: [{technology: ocgt}]"), ConfigError);
  EXPECT_THROW(parse_fleet("units: [{technology: ocgt, capacity_gw: -1}]"), ConfigError);
  EXPECT_THROW(parse_fleet("units: [{technology: storage, capacity_gw: 1}]"), ConfigError);
  EXPECT_THROW(parse_fleet("units: [{technology: ocgt, capacity_gw: 1, efficiency_full: 1.5}]"),
               ConfigError);
  EXPECT_THROW(parse_fleet("units: 3"), ConfigError);
  EXPECT_THROW(parse_fleet("emissions: {efficiency: 0}"), ConfigError);
  EXPECT_THROW(load_fleet("/nonexistent/fleet.yaml"), IoError);
}

TEST(FleetFile, BundledFleets) {
  const std::filesystem::path dir = LULLSLEW_CONFIG_DIR;
  const auto f = load_fleet(dir / "fleet-2035.yaml");
  const auto r = ramp_capability(f.units);
  EXPECT_EQ(r.instantaneous_gw, 20.0);
  EXPECT_EQ(r.ramp_gw_per_h, 25.0 * 3 + 15.0 * 30 + 9.0 * 30);
  EXPECT_EQ(f.storage_energy_gwh(), 150.0);
  EXPECT_TRUE(load_fleet(dir / "fleet-empty.yaml").units.empty());
}
