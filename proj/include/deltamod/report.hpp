#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace deltamod {

// Ordered so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

struct Verdict {
  std::string claim;   // stable identifier of the checked statement
  std::string anchor;  // one-line description of the claim
  bool pass = false;
  Json witness = Json::object();
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::vector<Verdict> verdicts;
  long long runtime_ms = 0;

  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["verdicts"] = Json::array();
    for (const auto& v : verdicts) {
      Json o;
      o["claim"] = v.claim;
      o["anchor"] = v.anchor;
      o["pass"] = v.pass;
      o["witness"] = v.witness;
      j["verdicts"].push_back(o);
    }
    j["runtime_ms"] = runtime_ms;
    return j;
  }
};

}  // namespace deltamod
