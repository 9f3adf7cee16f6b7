#include "gastar/gastar.h"

#include <cstring>
#include <string>

#include "core/reports.hpp"
#include "json.hpp"

struct gastar_context {
  std::string last_error;
};

namespace {

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gastar_status deliver(gastar_context* ctx, const gastar::ReportResult& res, char** out) {
  if (out) {
    *out = copy_string(res.payload);
    if (!*out) {
      ctx->last_error = "out of memory";
      return GASTAR_ERROR_INTERNAL;
    }
  }
  if (!res.passed) {
    std::string msg = "checks failed:";
    for (const auto& f : res.failures) msg += " " + f + ";";
    ctx->last_error = msg;
    return GASTAR_ERROR_CHECK_FAILED;
  }
  ctx->last_error.clear();
  return GASTAR_OK;
}

template <class Fn>
gastar_status guarded(gastar_context* ctx, char** out, Fn&& fn) {
  if (!ctx) return GASTAR_ERROR_INVALID_ARGUMENT;
  if (out) *out = nullptr;
  try {
    return deliver(ctx, fn(), out);
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = e.what();
    return GASTAR_ERROR_PARSE;
  } catch (const gastar::math_error& e) {
    ctx->last_error = e.what();
    return GASTAR_ERROR_DOMAIN;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return GASTAR_ERROR_INTERNAL;
  }
}

}  // namespace

extern "C" {

gastar_context* gastar_context_new(void) {
  try {
    return new gastar_context();
  } catch (...) {
    return nullptr;
  }
}

void gastar_context_free(gastar_context* ctx) { delete ctx; }

const char* gastar_last_error(const gastar_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

const char* gastar_version(void) { return "0.1.0"; }

gastar_status gastar_algebra_report(gastar_context* ctx, const char* name, const char* format,
                                    char** out) {
  if (!name) {
    if (ctx) ctx->last_error = "name is null";
    return GASTAR_ERROR_INVALID_ARGUMENT;
  }
  std::string fmt = format ? format : "json";
  return guarded(ctx, out, [&] { return gastar::algebra_report(name, fmt); });
}

gastar_status gastar_brst_report(gastar_context* ctx, const char* hamiltonian_json, char** out) {
  if (!hamiltonian_json) {
    if (ctx) ctx->last_error = "hamiltonian json is null";
    return GASTAR_ERROR_INVALID_ARGUMENT;
  }
  return guarded(ctx, out, [&] { return gastar::brst_report(hamiltonian_json); });
}

gastar_status gastar_geometry_table(gastar_context* ctx, const char* chart_json, char** out) {
  if (!chart_json) {
    if (ctx) ctx->last_error = "chart json is null";
    return GASTAR_ERROR_INVALID_ARGUMENT;
  }
  return guarded(ctx, out, [&] { return gastar::geometry_report(chart_json); });
}

gastar_status gastar_rigid_body_run(gastar_context* ctx, const char* config_json, char** out) {
  if (!config_json) {
    if (ctx) ctx->last_error = "config json is null";
    return GASTAR_ERROR_INVALID_ARGUMENT;
  }
  return guarded(ctx, out, [&] { return gastar::rigid_body_report(config_json); });
}

gastar_status gastar_property_suite(gastar_context* ctx, const char* config_json, char** out) {
  std::string config = config_json ? config_json : "{}";
  return guarded(ctx, out, [&] { return gastar::property_suite_report(config); });
}

void gastar_string_free(char* s) { std::free(s); }

}  // extern "C"
