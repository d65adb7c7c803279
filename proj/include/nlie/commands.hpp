#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlie/field.hpp"
#include "nlie/report.hpp"

namespace nlie {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::string command;
  /// O, S, W, SW or empty with a table for verify; i..iv for pairs.
  std::string selector;
  int n = 3;
  std::optional<std::uint64_t> p;
  std::optional<int> s;
  int window = 3;
  int xwindow = 2;
  std::optional<int> cap;
  FieldSpec field;
  std::string table;
  std::string form;
  std::string json_path;
  std::uint64_t seed = 1;
  bool timings = false;

  json to_json() const;
};

struct Report {
  json config;
  std::vector<CheckRecord> checks;

  Status overall() const;
  /// 0 when nothing failed, 1 otherwise.
  int exit_code() const;
  json to_json(bool timings) const;
  /// One line per check plus a closing verdict.
  std::string summary() const;
};

Report cmd_verify(const RunConfig& c);
Report cmd_pairs(const RunConfig& c);
Report cmd_charp(const RunConfig& c);
/// Every suite at its default size: verify O, the four pairs, the
/// decompositions and the char-p lab.
Report cmd_report(const RunConfig& c);
Report run_command(const RunConfig& c);

/// "i".."iv" -> 1..4; throws otherwise.
int parse_pair_name(const std::string& s);

}  // namespace nlie
