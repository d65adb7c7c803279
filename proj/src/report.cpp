#include "nlie/report.hpp"

#include <stdexcept>

namespace nlie {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::not_decided:
      return "not_decided";
  }
  return "?";
}

json to_json(const CheckRecord& c, bool timings) {
  json j;
  j["name"] = c.name;
  j["status"] = to_string(c.status);
  j["dims"] = c.dims;
  if (c.status == Status::fail) j["witness"] = c.witness;
  j["details"] = c.details;
  if (timings) j["seconds"] = c.seconds;
  return j;
}

CheckRecord check_from_json(const json& j) {
  CheckRecord c;
  c.name = j.at("name").get<std::string>();
  const auto s = j.at("status").get<std::string>();
  if (s == "pass")
    c.status = Status::pass;
  else if (s == "fail")
    c.status = Status::fail;
  else if (s == "not_decided")
    c.status = Status::not_decided;
  else
    throw std::invalid_argument("unknown status '" + s + "'");
  if (j.contains("dims")) c.dims = j["dims"];
  if (j.contains("witness")) c.witness = j["witness"].get<std::string>();
  if (j.contains("details")) c.details = j["details"];
  if (j.contains("seconds")) c.seconds = j["seconds"].get<double>();
  return c;
}

}  // namespace nlie
