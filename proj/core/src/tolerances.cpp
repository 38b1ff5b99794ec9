#include "ergomax/tolerances.hpp"

#include <cstdlib>
#include <sstream>

namespace ergomax {

Tolerances::Tolerances()
    : values_{
          {"alpha_pair", 1e-12},   // karp vs brute force
          {"duality_gap", 1e-9},   // sub-action dual vs alpha
          {"feasibility", 1e-9},   // sub-action slack floor
          {"sup_inf", 1e-10},      // periodic sup-inf vs alpha
          {"horizon", 1e-10},      // sandwich / convergence slack
          {"identity", 1e-10},     // worked-example structural identities
          {"vp1_gap", 1e-8},
          {"vp2_tol", 1e-7},       // gradient stopping threshold
          {"entropy", 1e-5},       // entropy recovery
          {"axiom", 1e-9},
          {"minimax", 1e-12},
          {"cyclic", 1e-12},
      } {}

double Tolerances::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw DomainError("unknown tolerance '" + name + "'");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  auto it = values_.find(name);
  if (it == values_.end()) throw DomainError("unknown tolerance '" + name + "'");
  it->second = value;
}

void Tolerances::apply_overrides(const std::string& csv) {
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw DomainError("tolerance override must look like name=value");
    }
    std::string name = item.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw DomainError("bad tolerance value in '" + item + "'");
    }
    set(name, value);
  }
}

}  // namespace ergomax
