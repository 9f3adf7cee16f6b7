#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace gastar {

// Deterministic generator for the randomized suites (splitmix64).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  int range(int lo, int hi);  // inclusive bounds
  Rational rational(int max_abs_num, int max_den);
  double real(double lo, double hi);

 private:
  uint64_t state_;
};

struct ReportResult {
  bool passed = true;
  std::string payload;
  std::vector<std::string> failures;
};

// name: so3 | lorentz:std | lorentz:nonstd | un:N | gln:N |
//       clifford:D:euclid | clifford:D:minkowski
ReportResult algebra_report(const std::string& name, const std::string& format);
// {"dof": d, "terms": [{"coeff": "num/den", "q": [...], "p": [...]}]}
ReportResult brst_report(const std::string& hamiltonian_json);
// chart spec JSON with "grid": [n1, n2]
ReportResult geometry_report(const std::string& chart_json);
// {"inertia": [i1,i2,i3], "l0": [a,b,c], "dt": t, "steps": n}
ReportResult rigid_body_report(const std::string& config_json);
// {"suite": "kernel"|"moyal"|"brst"|"symplectic"|"all", "seed": n, ...}
ReportResult property_suite_report(const std::string& config_json);

}  // namespace gastar
