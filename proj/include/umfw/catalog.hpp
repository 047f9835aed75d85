#pragma once

#include <string>
#include <vector>

#include "umfw/dynamics.hpp"
#include "umfw/perm.hpp"
#include "umfw/samuel.hpp"

namespace umfw {

struct CatalogGroup {
  std::string name;
  PermGroup group;
};

// Groups of order up to 12 (cyclics, dihedrals, V4, S3, A4, Q8), loaded from
// the checked-in generator file; falls back to the built-in copy of the same
// data when the file is not reachable.
std::vector<CatalogGroup> catalog_groups(const std::string& data_path = "");
CatalogGroup catalog_group(const std::string& name, const std::string& data_path = "");

// Named finite actions used by the minimality test suite: order flows of
// symmetric groups, natural and coset actions of catalog groups, padded
// intransitive variants.
struct CatalogAction {
  std::string name;
  GroupAction action;
  bool expect_minimal = false;
};
std::vector<CatalogAction> catalog_action_suite();

}  // namespace umfw
