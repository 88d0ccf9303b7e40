#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nls/ground_state.hpp"

namespace nls {

// Regenerated numeric table entries compared against the published values
// kept in data/paper_reference.kv.
struct TableEntry {
  std::string table;
  std::string param_name;
  double param = 0.0;
  std::string quantity;
  double computed = 0.0;
  std::optional<double> reference;
  bool suspect = false;  // reference marked as a suspected misprint
};

std::vector<std::string> table_ids();

std::vector<TableEntry> generate_table(const std::string& id, const GroundState& ground,
                                       const std::string& reference_path);

std::string table_csv(const std::vector<TableEntry>& entries);

std::string default_reference_path();

}  // namespace nls
