#pragma once
// Named check suites over a parsed workbench file.

#include <string>
#include <vector>

#include "nvaw/workbench.hpp"

namespace nvaw {

struct SuiteOptions {
  CheckOptions check;
  std::string twist;    ///< twist name for the twist and product-props suites
  std::string smap;     ///< S-map name for the qva suite
  std::string algebra;  ///< defaults to the file's primary algebra
};

const std::vector<std::string>& suite_names();

/// Resolves a twist block by name; "flip" also names the flip of the algebra with itself when no
/// block of that name exists.
TwistOp resolve_twist(const WorkbenchFile& f, const std::string& name, const std::string& algebra,
                      const CheckOptions& opts = {});
/// Resolves an smap block by name; "identity" also names the identity S-map.
SMap resolve_smap(const WorkbenchFile& f, const std::string& name, const std::string& algebra,
                  const CheckOptions& opts = {});

/// Runs one suite and returns its reports in a fixed order. Throws WorkbenchError for an unknown
/// suite or a missing declaration; construction failures (PreconditionFail, NotInvertible)
/// propagate.
std::vector<CheckReport> run_suite(const WorkbenchFile& f, const std::string& suite, const SuiteOptions& opts);

/// True when every identity in every report passed.
bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace nvaw
