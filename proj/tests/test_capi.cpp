#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <string>

#include "gastar/gastar.h"
#include "json.hpp"

namespace {

struct Ctx {
  gastar_context* c;
  Ctx() : c(gastar_context_new()) {}
  ~Ctx() { gastar_context_free(c); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  gastar_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("context lifecycle and version") {
  Ctx ctx;
  REQUIRE(ctx.c != nullptr);
  CHECK(std::string(gastar_version()) == "0.1.0");
  CHECK(std::string(gastar_last_error(ctx.c)).empty());
}

TEST_CASE("algebra endpoint") {
  Ctx ctx;
  char* out = nullptr;
  CHECK(gastar_algebra_report(ctx.c, "so3", "json", &out) == GASTAR_OK);
  auto j = nlohmann::json::parse(take(out));
  CHECK(j.at("name") == "so3");

  CHECK(gastar_algebra_report(ctx.c, "nope", "json", &out) == GASTAR_ERROR_DOMAIN);
  CHECK(out == nullptr);
  CHECK(!std::string(gastar_last_error(ctx.c)).empty());

  CHECK(gastar_algebra_report(ctx.c, nullptr, "json", &out) == GASTAR_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("brst endpoint") {
  Ctx ctx;
  char* out = nullptr;
  const char* osc =
      R"({"dof":1,"terms":[{"coeff":"1/2","q":[2],"p":[0]},{"coeff":"1/2","q":[0],"p":[2]}]})";
  CHECK(gastar_brst_report(ctx.c, osc, &out) == GASTAR_OK);
  auto j = nlohmann::json::parse(take(out));
  CHECK(j.at("passed") == true);
  CHECK(gastar_brst_report(ctx.c, "{broken", &out) == GASTAR_ERROR_PARSE);
}

TEST_CASE("geometry and rigid body endpoints") {
  Ctx ctx;
  char* out = nullptr;
  CHECK(gastar_geometry_table(ctx.c, R"({"family":"sphere","radius":1.0,"grid":[3,3]})", &out) ==
        GASTAR_OK);
  std::string csv = take(out);
  CHECK(csv.rfind("u1,u2,", 0) == 0);

  CHECK(gastar_rigid_body_run(ctx.c,
                              R"({"inertia":[1,2,3],"l0":[0.8,0.4,1.2],"dt":0.001,"steps":500})",
                              &out) == GASTAR_OK);
  std::string traj = take(out);
  CHECK(traj.rfind("t,LB1,", 0) == 0);

  CHECK(gastar_rigid_body_run(ctx.c, R"({"inertia":[0,2,3],"l0":[1,1,1]})", &out) ==
        GASTAR_ERROR_DOMAIN);
}

TEST_CASE("property suite endpoint is deterministic") {
  Ctx ctx;
  char* out1 = nullptr;
  char* out2 = nullptr;
  const char* config = R"({"suite":"moyal","seed":3,"moyal_samples":5})";
  CHECK(gastar_property_suite(ctx.c, config, &out1) == GASTAR_OK);
  CHECK(gastar_property_suite(ctx.c, config, &out2) == GASTAR_OK);
  std::string a = take(out1), b = take(out2);
  CHECK(a == b);
  CHECK(nlohmann::json::parse(a).at("passed") == true);
}
