// Copyright 2026 The PDPCD Solver Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdpcd/instance.h"

#include <cmath>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace pdpcd {
namespace {

using ::pdpcd::testing::DataPath;
using ::pdpcd::testing::MatrixInstance;
using ::pdpcd::testing::PointInstance;
using ::pdpcd::testing::ToyInstance;

bool HasMessage(const std::vector<Diagnostic>& diags, Severity severity,
                const std::string& text) {
  for (const Diagnostic& d : diags) {
    if (d.severity == severity && d.message.find(text) != std::string::npos) {
      return true;
    }
  }
  return false;
}

TEST(InstanceTest, ToyParametersAreValid) {
  const Instance toy = ToyInstance();
  EXPECT_TRUE(ValidateInstance(toy).empty());
  EXPECT_EQ(toy.n(), 4);
  EXPECT_EQ(toy.num_vehicles(), 2);
  for (const Vehicle& v : toy.vehicles) {
    EXPECT_EQ(v.capacity, 20.0);
    EXPECT_EQ(v.max_route_duration, 480.0);
  }
  EXPECT_EQ(toy.fixed_time, 10.0);
  EXPECT_EQ(toy.per_unit_time, 1.0);
  EXPECT_EQ(toy.max_ride_time, 550.0);
  EXPECT_EQ(toy.depot_window.earliest, 360.0);
  EXPECT_EQ(toy.depot_window.latest, 1320.0);
  const double demands[] = {16, 10, 4, 4};
  for (int i = 1; i <= 4; ++i) {
    EXPECT_EQ(toy.Demand(i), demands[i - 1]);
    EXPECT_EQ(toy.Demand(4 + i), demands[i - 1]);
  }
}

TEST(InstanceTest, NegativeDemandIsAnError) {
  Instance inst = MatrixInstance(2, 1, Matrix(5, std::vector<double>(5, 1.0)));
  inst.pickups[0].demand = -1.0;
  const auto diags = ValidateInstance(inst);
  EXPECT_TRUE(HasErrors(diags));
  EXPECT_TRUE(HasMessage(diags, Severity::kError, "negative demand"));
}

TEST(InstanceTest, MoreVehiclesThanRequestsWarns) {
  Instance inst = MatrixInstance(1, 2, Matrix(3, std::vector<double>(3, 1.0)));
  const auto diags = ValidateInstance(inst);
  EXPECT_FALSE(HasErrors(diags));
  EXPECT_TRUE(HasMessage(
      diags, Severity::kWarning,
      "more vehicles than requests: model infeasible by arc-set structure"));
}

TEST(InstanceTest, InvertedWindowIsAnError) {
  Instance inst = MatrixInstance(1, 1, Matrix(3, std::vector<double>(3, 1.0)));
  inst.deliveries[0].window = {10.0, 5.0};
  EXPECT_TRUE(HasErrors(ValidateInstance(inst)));
}

TEST(InstanceTest, LoadsToyFile) {
  const Instance toy = ReadInstanceFile(DataPath("toy.json"));
  EXPECT_EQ(toy.max_ride_time, 550.0);
  EXPECT_EQ(toy.vehicles[0].max_route_duration, 480.0);
  EXPECT_EQ(toy.depot_window.earliest, 360.0);
  EXPECT_EQ(toy.depot_window.latest, 1320.0);
}

TEST(InstanceTest, RoundTripIsIdentity) {
  const Instance toy = ToyInstance();
  const std::string once = StoreInstance(toy);
  EXPECT_EQ(StoreInstance(LoadInstance(once)), once);

  const Instance pts = PointInstance(
      1, {{0.5, 0.25}, {3.0, 4.0}, {-1.0, 2.0}}, 100.0);
  const std::string text = StoreInstance(pts);
  const Instance back = LoadInstance(text);
  EXPECT_EQ(StoreInstance(back), text);
  EXPECT_DOUBLE_EQ(back.TravelTime(0, 1), std::hypot(2.5, 3.75));
}

TEST(InstanceTest, EmptyFileIsAParseError) {
  try {
    LoadInstance("");
    FAIL() << "expected InstanceError";
  } catch (const InstanceError& e) {
    EXPECT_NE(std::string(e.what()).find("parse error"), std::string::npos);
  }
}

TEST(InstanceTest, PickupDeliveryCountMismatchIsRejected) {
  nlohmann::json doc = nlohmann::json::parse(StoreInstance(ToyInstance()));
  doc["num_requests"] = 3;
  doc["pickups"].erase(3);
  doc["travel_time_matrix"].erase(8);
  for (auto& row : doc["travel_time_matrix"]) row.erase(8);
  EXPECT_THROW(LoadInstance(doc.dump()), InstanceError);
}

TEST(InstanceTest, UnknownFieldIsRejected) {
  nlohmann::json doc = nlohmann::json::parse(StoreInstance(ToyInstance()));
  doc["colour"] = "blue";
  try {
    LoadInstance(doc.dump());
    FAIL() << "expected InstanceError";
  } catch (const InstanceError& e) {
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
}

TEST(InstanceTest, MatrixOfWrongSizeIsRejected) {
  nlohmann::json doc = nlohmann::json::parse(StoreInstance(ToyInstance()));
  doc["travel_time_matrix"].erase(8);
  EXPECT_THROW(LoadInstance(doc.dump()), InstanceError);
}

TEST(InstanceTest, DepotCopiesShareLocationAndWindow) {
  const Instance toy = ToyInstance();
  for (int v : {toy.o1(), toy.o2(), toy.o3(), toy.o4()}) {
    EXPECT_EQ(toy.Location(v), 0);
    EXPECT_EQ(toy.Window(v).earliest, 360.0);
    EXPECT_EQ(toy.Window(v).latest, 1320.0);
  }
  EXPECT_EQ(toy.TravelTime(3, toy.o2()), toy.TravelTime(3, toy.o1()));
}

TEST(InstanceTest, CostDefaultsToTravelTime) {
  Instance inst = PointInstance(1, {{0, 0}, {3, 4}, {6, 8}});
  EXPECT_DOUBLE_EQ(inst.TravelTime(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(inst.Cost(0, 1), 5.0);
  inst.cost_matrix = Matrix{{0, 7, 9}, {7, 0, 1}, {9, 1, 0}};
  EXPECT_DOUBLE_EQ(inst.Cost(0, 1), 7.0);
  EXPECT_DOUBLE_EQ(inst.TravelTime(0, 1), 5.0);
}

}  // namespace
}  // namespace pdpcd
