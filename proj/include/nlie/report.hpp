#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace nlie {

using nlohmann::json;

enum class Status { pass, fail, not_decided };

std::string to_string(Status s);

/// Outcome of one named check. A witness is attached exactly when it fails.
struct CheckRecord {
  CheckRecord() = default;
  explicit CheckRecord(std::string n) : name(std::move(n)) {}

  std::string name;
  Status status = Status::pass;
  json dims = json::object();
  std::string witness;
  json details = json::object();
  double seconds = 0;

  bool passed() const { return status == Status::pass; }
  void fail(std::string why) {
    status = Status::fail;
    if (witness.empty()) witness = std::move(why);
  }
};

json to_json(const CheckRecord& c, bool timings);
CheckRecord check_from_json(const json& j);

}  // namespace nlie
