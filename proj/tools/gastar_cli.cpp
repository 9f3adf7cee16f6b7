// Command-line front end for the gastar shared library. Every subcommand
// builds a request, calls the C API, and writes the payload to stdout or a
// file. Exit code 0 means all in-run checks passed; on failure a
// machine-readable list is printed to stderr and the exit code is nonzero.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gastar/gastar.h"
#include "json.hpp"

namespace {

struct ContextDeleter {
  void operator()(gastar_context* c) const { gastar_context_free(c); }
};
using ContextPtr = std::unique_ptr<gastar_context, ContextDeleter>;

struct StringDeleter {
  void operator()(char* s) const { gastar_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

int emit(gastar_context* ctx, gastar_status status, const char* payload,
         const std::string& out_path) {
  if (status != GASTAR_OK && status != GASTAR_ERROR_CHECK_FAILED) {
    nlohmann::ordered_json err;
    err["error"] = gastar_last_error(ctx);
    err["status"] = static_cast<int>(status);
    std::cerr << err.dump() << "\n";
    return 2;
  }
  if (payload) {
    if (out_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << R"({"error":"cannot open output file"})" << "\n";
        return 2;
      }
      f << payload;
    }
  }
  if (status == GASTAR_ERROR_CHECK_FAILED) {
    nlohmann::ordered_json err;
    err["error"] = "checks failed";
    err["detail"] = gastar_last_error(ctx);
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}

std::vector<double> parse_triple(const std::string& text, const char* what) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(std::stod(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != 3) throw CLI::ValidationError(std::string(what) + " needs three comma-separated values");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gastar: exact Clifford/Moyal star-product engine"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  // algebra
  auto* algebra = app.add_subcommand("algebra", "generator tables and structure constants");
  std::string algebra_name;
  std::string algebra_format = "json";
  algebra->add_option("name", algebra_name,
                      "so3 | lorentz:std | lorentz:nonstd | un:<n> | gln:<n> | "
                      "clifford:<dim>:<euclid|minkowski>")
      ->required();
  algebra->add_option("--format", algebra_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // brst
  auto* brst = app.add_subcommand("brst", "extended Hamiltonian and ghost-charge report");
  std::string h_spec;
  std::string h_file;
  brst->add_option("--hamiltonian", h_spec, "Hamiltonian spec as inline JSON");
  brst->add_option("--hamiltonian-file", h_file, "Hamiltonian spec from a JSON file");

  // geometry
  auto* geometry = app.add_subcommand("geometry", "pointwise chart geometry table (CSV)");
  std::string family = "sphere";
  double radius = 1.0, ring = 2.0, tube = 0.5;
  int dof = 1;
  std::vector<int> grid = {20, 20};
  geometry->add_option("--chart", family, "plane | sphere | torus | cotangent");
  geometry->add_option("--radius", radius, "sphere radius");
  geometry->add_option("--ring", ring, "torus ring radius");
  geometry->add_option("--tube", tube, "torus tube radius");
  geometry->add_option("--dof", dof, "degrees of freedom for cotangent charts");
  geometry->add_option("--grid", grid, "grid resolution n1 n2")->expected(2);

  // rigid-body
  auto* rigid = app.add_subcommand("rigid-body", "free rigid body trajectory (CSV)");
  std::string inertia_text = "1,2,3";
  std::string l0_text = "0.8,0.4,1.2";
  double dt = 1e-3;
  int steps = 10000;
  rigid->add_option("--inertia", inertia_text, "principal moments I1,I2,I3")->required();
  rigid->add_option("--L0", l0_text, "initial body angular momentum a,b,c")->required();
  rigid->add_option("--dt", dt, "time step");
  rigid->add_option("--steps", steps, "number of steps");

  // property-suite
  auto* suite = app.add_subcommand("property-suite", "randomized verification suites (JSON)");
  std::string suite_name = "all";
  std::uint64_t seed = 12345;
  double tol = 1e-10;
  int kernel_samples = 1000, moyal_samples = 40, brst_samples = 20;
  suite->add_option("--suite", suite_name, "kernel | moyal | brst | symplectic | all");
  suite->add_option("--seed", seed, "random seed (fixed seed gives byte-identical output)");
  suite->add_option("--tol", tol, "tolerance for the float-mode residual checks");
  suite->add_option("--kernel-samples", kernel_samples, "triples per signature");
  suite->add_option("--moyal-samples", moyal_samples, "random polynomial triples");
  suite->add_option("--brst-samples", brst_samples, "random Hamiltonians");

  CLI11_PARSE(app, argc, argv);

  ContextPtr ctx(gastar_context_new());
  if (!ctx) {
    std::cerr << R"({"error":"cannot create context"})" << "\n";
    return 2;
  }

  char* raw = nullptr;
  gastar_status status = GASTAR_ERROR_INTERNAL;

  try {
    if (*algebra) {
      status = gastar_algebra_report(ctx.get(), algebra_name.c_str(), algebra_format.c_str(), &raw);
    } else if (*brst) {
      std::string spec = h_spec;
      if (spec.empty() && !h_file.empty()) {
        std::ifstream f(h_file);
        if (!f) {
          std::cerr << R"({"error":"cannot open Hamiltonian file"})" << "\n";
          return 2;
        }
        spec.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
      }
      if (spec.empty()) {
        std::cerr << R"({"error":"brst needs --hamiltonian or --hamiltonian-file"})" << "\n";
        return 2;
      }
      status = gastar_brst_report(ctx.get(), spec.c_str(), &raw);
    } else if (*geometry) {
      nlohmann::ordered_json spec;
      spec["family"] = family;
      if (family == "sphere") spec["radius"] = radius;
      if (family == "torus") {
        spec["ring"] = ring;
        spec["tube"] = tube;
      }
      if (family == "cotangent") spec["dof"] = dof;
      spec["grid"] = grid;
      std::string text = spec.dump();
      status = gastar_geometry_table(ctx.get(), text.c_str(), &raw);
    } else if (*rigid) {
      nlohmann::ordered_json spec;
      spec["inertia"] = parse_triple(inertia_text, "--inertia");
      spec["l0"] = parse_triple(l0_text, "--L0");
      spec["dt"] = dt;
      spec["steps"] = steps;
      std::string text = spec.dump();
      status = gastar_rigid_body_run(ctx.get(), text.c_str(), &raw);
    } else if (*suite) {
      nlohmann::ordered_json spec;
      spec["suite"] = suite_name;
      spec["seed"] = seed;
      spec["tolerance"] = tol;
      spec["kernel_samples"] = kernel_samples;
      spec["moyal_samples"] = moyal_samples;
      spec["brst_samples"] = brst_samples;
      std::string text = spec.dump();
      status = gastar_property_suite(ctx.get(), text.c_str(), &raw);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << nlohmann::ordered_json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::ordered_json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }

  ApiString payload(raw);
  return emit(ctx.get(), status, payload.get(), out_path);
}
