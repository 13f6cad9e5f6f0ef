#pragma once

#include <string>
#include <vector>

#include "taskfile.hpp"

namespace upic {

struct Fixture {
  std::string name;
  std::string description;
  TaskFile task;

  /// The frozen task expectations joined by "; ".
  std::string expected() const;
};

/// Built once, in a fixed order.
const std::vector<Fixture>& bundled_fixtures();
const Fixture* find_fixture(const std::string& name);

}  // namespace upic
