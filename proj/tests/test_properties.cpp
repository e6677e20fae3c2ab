#include <gtest/gtest.h>

#include "property_checks.hpp"

namespace {

constexpr int kInstances = 24;

std::string joined(const props::Failures& f) {
  std::string s;
  for (const auto& m : f) s += m + "\n";
  return s;
}

}  // namespace

TEST(Property, ContractionIsBilinear) {
  const auto f = props::contraction_bilinear(kInstances);
  EXPECT_TRUE(f.empty()) << joined(f);
}

TEST(Property, ContractionComposes) {
  const auto f = props::contraction_composes(kInstances);
  EXPECT_TRUE(f.empty()) << joined(f);
}

TEST(Property, PairingIsPerfect) {
  const auto f = props::pairing_perfect(kInstances);
  EXPECT_TRUE(f.empty()) << joined(f);
}

TEST(Property, CatalecticantRankSymmetry) {
  const auto f = props::catalecticant_symmetric(kInstances);
  EXPECT_TRUE(f.empty()) << joined(f);
}

TEST(Property, FermatDetectionIsCoordinateInvariant) {
  const auto f = props::fermat_coordinate_invariant(kInstances);
  EXPECT_TRUE(f.empty()) << joined(f);
}

TEST(Property, SampledCurvePointsSatisfyEquationsExactly) {
  const auto f = props::curve_points_exact(kInstances);
  EXPECT_TRUE(f.empty()) << joined(f);
}
