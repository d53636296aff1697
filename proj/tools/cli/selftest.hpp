#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diamond/measure.hpp"

namespace diamond::cli {

struct SelftestOptions {
  int max_level = 6;
  std::vector<double> ws{0.1, 0.3, 0.5, 0.7, 0.9};
  std::size_t random_addresses = 10000;
  // Overrides one digit's density factor in the measure checks.
  std::optional<int> corrupt_digit;
  double corrupt_factor = 0.0;
};

struct SelftestCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // largest residual seen (0 for exact checks)
  std::string detail;  // first violation, if any
};

struct SelftestResult {
  bool passed = true;
  std::vector<SelftestCheck> checks;

  const SelftestCheck* find(const std::string& name) const;
};

SelftestResult run_selftest(const SelftestOptions& options = {});

}  // namespace diamond::cli
