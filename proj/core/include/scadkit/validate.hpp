#pragma once

#include <vector>

#include "scadkit/error.hpp"
#include "scadkit/model.hpp"

namespace scadkit {

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;

  bool ok() const { return errors.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

/// Checks every structural invariant of the design. Never throws; problems
/// are reported as findings whose paths look like `strands[1].domains[0]`.
ValidationReport validate(const Design& design);

/// Throws InvalidDesign listing the errors when `validate` finds any.
void require_valid(const Design& design);

}  // namespace scadkit
