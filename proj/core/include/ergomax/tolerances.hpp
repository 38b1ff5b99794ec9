#pragma once

// Named tolerance registry used by the CLI. Every comparison threshold is
// declared here and overridable via --tol NAME=VALUE or the
// ERGOMAX_TOL_OVERRIDES environment variable.

#include <map>
#include <string>

#include "ergomax/errors.hpp"

namespace ergomax {

class Tolerances {
 public:
  Tolerances();

  double get(const std::string& name) const;       // throws DomainError
  void set(const std::string& name, double value);  // throws DomainError

  // Comma-separated "name=value" pairs, e.g. "vp1_gap=1e-7,identity=1e-9".
  void apply_overrides(const std::string& csv);

  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace ergomax
