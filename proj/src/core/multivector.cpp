#include "core/multivector.hpp"

#include "json.hpp"

namespace gastar {

namespace {

nlohmann::ordered_json signature_json(const Signature& sig) {
  nlohmann::ordered_json j;
  j["id"] = sig.name();
  j["dim"] = sig.dim();
  switch (sig.kind()) {
    case SignatureKind::symmetric: j["kind"] = "symmetric"; break;
    case SignatureKind::antisymmetric: j["kind"] = "antisymmetric"; break;
    case SignatureKind::pairing: j["kind"] = "pairing"; break;
  }
  return j;
}

}  // namespace

std::string multivector_to_json(const PolyMv& m) {
  nlohmann::ordered_json j;
  j["signature"] = signature_json(*m.signature());
  auto& blades = j["blades"] = nlohmann::ordered_json::array();
  for (const auto& [mask, c] : m.blades()) {
    nlohmann::ordered_json b;
    b["mask"] = mask;
    b["coeff"] = nlohmann::ordered_json::parse(c.to_json());
    blades.push_back(std::move(b));
  }
  return j.dump();
}

std::string multivector_to_json(const RealMv& m) {
  nlohmann::ordered_json j;
  j["signature"] = signature_json(*m.signature());
  auto& blades = j["blades"] = nlohmann::ordered_json::array();
  for (const auto& [mask, c] : m.blades()) {
    nlohmann::ordered_json b;
    b["mask"] = mask;
    b["coeff"] = c;
    blades.push_back(std::move(b));
  }
  return j.dump();
}

PolyMv multivector_from_json(const SignaturePtr& sig, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("signature").at("id").get<std::string>() != sig->name())
    throw math_error("multivector signature id mismatch");
  PolyMv out(sig);
  for (const auto& b : j.at("blades")) {
    uint32_t mask = b.at("mask").get<uint32_t>();
    out.accumulate(mask, PolyScalar::from_json(b.at("coeff").dump()));
  }
  return out;
}

}  // namespace gastar
