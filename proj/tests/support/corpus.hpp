#pragma once

#include <string>
#include <vector>

#include "nbcrw.hpp"

namespace nbcrw::testing {

struct CorpusGraph {
  std::string name;
  Graph graph;
  bool regular = false;
};

/// Connected, non-tree graphs covering roses, random models and the small
/// symmetric families. Built once.
const std::vector<CorpusGraph>& corpus();

}  // namespace nbcrw::testing
