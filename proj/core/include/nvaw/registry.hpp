#pragma once
// Built-in example instances, stored as .nva text.

#include <string>
#include <vector>

#include "nvaw/workbench.hpp"

namespace nvaw {

/// One suite an instance is declared to pass (or, with expect_pass false, to fail).
struct SuiteRequest {
  std::string suite;
  std::string twist;
  std::string smap;
  bool expect_pass = true;
};

struct RegistryEntry {
  std::string name;
  std::string summary;
  std::string text;
  std::vector<SuiteRequest> suites;
};

const std::vector<RegistryEntry>& registry();
/// nullptr when absent.
const RegistryEntry* find_registry_entry(const std::string& name);

/// A registry name or a path to a .nva file. Throws WorkbenchError for an unreadable path and
/// ParseError for malformed text.
WorkbenchFile load_input(const std::string& input, const Window& window = Window::uniform(1, -8, 8));

}  // namespace nvaw
