#include "nlie/commands.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "nlie/catalog.hpp"
#include "nlie/charp.hpp"
#include "nlie/derivations.hpp"
#include "nlie/liegen.hpp"
#include "nlie/superalgebras.hpp"

namespace nlie {

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["selector"] = selector;
  j["n"] = n;
  j["field"] = field.to_string();
  j["window"] = window;
  j["xwindow"] = xwindow;
  j["seed"] = seed;
  if (p) j["p"] = *p;
  if (s) j["s"] = *s;
  if (cap) j["cap"] = *cap;
  if (!table.empty()) j["table"] = table;
  if (!form.empty()) j["form"] = form;
  return j;
}

Status Report::overall() const {
  for (const auto& c : checks)
    if (c.status == Status::fail) return Status::fail;
  return Status::pass;
}

int Report::exit_code() const { return overall() == Status::fail ? 1 : 0; }

json Report::to_json(bool timings) const {
  json j;
  j["tool"] = "nlie";
  j["version"] = kToolVersion;
  j["config"] = config;
  j["checks"] = json::array();
  std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"not_decided", 0}};
  for (const auto& c : checks) {
    j["checks"].push_back(nlie::to_json(c, timings));
    ++counts[nlie::to_string(c.status)];
  }
  j["summary"] = counts;
  j["status"] = nlie::to_string(overall());
  return j;
}

std::string Report::summary() const {
  std::ostringstream out;
  int undecided = 0;
  for (const auto& c : checks) {
    std::string tag = c.status == Status::pass ? "PASS" : c.status == Status::fail ? "FAIL" : "----";
    out << tag << "  " << c.name;
    if (!c.dims.empty()) out << "  " << c.dims.dump();
    if (c.status == Status::fail) out << "\n      " << c.witness;
    out << "\n";
    undecided += c.status == Status::not_decided;
  }
  out << (overall() == Status::fail ? "FAIL" : "PASS") << ": " << checks.size() << " checks";
  if (undecided) out << ", " << undecided << " not decided";
  out << "\n";
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

class Suite {
 public:
  explicit Suite(Report& r) : r_(r) {}

  void add(const std::string& prefix, std::vector<CheckRecord> recs, double seconds) {
    for (auto& c : recs) {
      c.name = prefix + "/" + c.name;
      c.seconds = seconds / static_cast<double>(recs.size());
      r_.checks.push_back(std::move(c));
    }
  }

  template <class F>
  void run(const std::string& prefix, F&& fn) {
    const auto t0 = Clock::now();
    std::vector<CheckRecord> recs = fn();
    add(prefix, std::move(recs), std::chrono::duration<double>(Clock::now() - t0).count());
  }

 private:
  Report& r_;
};

CheckRecord identity_record(const std::string& name, const IdentityCheck& ic) {
  CheckRecord c(name);
  c.dims["samples"] = ic.samples;
  if (!ic.pass) c.fail(ic.witness);
  return c;
}

json dims_json(const std::map<int, int>& dims) {
  json j = json::object();
  for (const auto& [d, k] : dims) j[std::to_string(d)] = k;
  return j;
}

void sort_checks(Report& r) {
  std::stable_sort(r.checks.begin(), r.checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

void finite_suite(Suite& suite, const StructureConstants& sc, const std::string& label, std::optional<int> cap_opt) {
  const NAryAlgebra alg = sc.to_nary(label);
  const int n = sc.arity;
  suite.run("identities", [&] {
    return std::vector<CheckRecord>{identity_record("anticommutativity", check_anticommutativity(alg)),
                                    identity_record("filippov_jacobi", check_fj(alg))};
  });

  const int cap = cap_opt.value_or(n + 1);
  if (cap < n - 1) throw std::invalid_argument("cap must be at least n-1");
  std::optional<Generated> gen;
  suite.run("generation", [&] {
    const WElement mu = anticomm_to_comm(sc.space, n, sc.parity, sc.bracket());
    gen = generate_lie(mu.space(), mu, cap);
    CheckRecord c("graded_dims");
    c.dims = dims_json(gen->algebra.dims());
    c.details["trace"] = gen->trace.to_json();
    if (!gen->trace.fixpoint()) c.status = Status::not_decided;
    return std::vector<CheckRecord>{c};
  });
  suite.run("admissible", [&] { return check_admissible(*gen).records(); });
  suite.run("structure", [&] {
    if (sc.space->field().characteristic() != 0 || cap < n + 1) {
      CheckRecord c("pair_shape");
      c.status = Status::not_decided;
      c.details["reason"] = "needs characteristic 0 and cap >= n+1";
      return std::vector<CheckRecord>{c};
    }
    return check_theorem_0_2(*gen);
  });
  suite.run("structure", [&] { return std::vector<CheckRecord>{check_lemma_3_1(*gen)}; });
  suite.run("derivations", [&] { return derivation_report(sc); });
}

StructureConstants structure_for(const RunConfig& c, std::string& label) {
  if (!c.table.empty()) {
    label = "table";
    return StructureConstants::read_file(c.table);
  }
  const BilinearForm form = c.form.empty() ? BilinearForm::identity(c.field, c.n + 1) : BilinearForm::read_file(c.field, c.form);
  if (!c.form.empty() && form.dim() != c.n + 1)
    throw std::invalid_argument("form has dimension " + std::to_string(form.dim()) + ", expected n+1");
  label = "O^" + std::to_string(c.n);
  return on_structure(form);
}

}  // namespace

int parse_pair_name(const std::string& s) {
  static const std::map<std::string, int> names{{"i", 1}, {"ii", 2}, {"iii", 3}, {"iv", 4}};
  auto it = names.find(s);
  if (it == names.end()) throw std::invalid_argument("pair must be one of i, ii, iii, iv");
  return it->second;
}

Report cmd_verify(const RunConfig& c) {
  Report r;
  r.config = c.to_json();
  Suite suite(r);
  if (c.n < 2) throw std::invalid_argument("n must be at least 2");
  if (!c.table.empty() || c.selector == "O") {
    if (!c.table.empty() && !c.selector.empty()) throw std::invalid_argument("give either a selector or --table");
    std::string label;
    const StructureConstants sc = structure_for(c, label);
    finite_suite(suite, sc, label, c.cap);
  } else if (c.selector == "S" || c.selector == "W" || c.selector == "SW") {
    CarrierOptions opts;
    opts.window = c.window;
    const NAryAlgebra alg = c.selector == "S"   ? sn_algebra(c.field, c.n, opts)
                            : c.selector == "W" ? wn_algebra(c.field, c.n, opts)
                                                : swn_algebra(c.field, c.n, opts);
    suite.run("identities", [&] {
      auto a = identity_record("anticommutativity", check_anticommutativity(alg));
      auto f = identity_record("filippov_jacobi", check_fj(alg));
      f.dims["sample_basis"] = alg.sample_basis().size();
      f.details["algebra"] = alg.name();
      return std::vector<CheckRecord>{a, f};
    });
  } else {
    throw std::invalid_argument("verify needs one of O, S, W, SW or --table");
  }
  sort_checks(r);
  return r;
}

Report cmd_pairs(const RunConfig& c) {
  Report r;
  r.config = c.to_json();
  Suite suite(r);
  const int which = parse_pair_name(c.selector);
  suite.run("pair_" + c.selector, [&] {
    std::vector<CheckRecord> parts;
    CheckRecord overall = verify_pair(which, c.n, c.xwindow, &parts);
    parts.insert(parts.begin(), overall);
    parts.front().name = "overall";
    return parts;
  });
  sort_checks(r);
  return r;
}

Report cmd_charp(const RunConfig& c) {
  Report r;
  r.config = c.to_json();
  Suite suite(r);
  if (!c.p) throw std::invalid_argument("charp needs --p");
  const int n = c.s ? *c.s * static_cast<int>(*c.p) + 1 : c.n;
  const int cap = c.cap.value_or(2 * n);
  r.config["n"] = n;
  r.config["cap"] = cap;
  suite.run("charp", [&] { return charp_report(*c.p, n, cap); });
  sort_checks(r);
  return r;
}

Report cmd_report(const RunConfig& c) {
  Report r;
  r.config = c.to_json();
  Suite suite(r);
  RunConfig v = c;
  v.selector = "O";
  v.table.clear();
  for (auto& rec : cmd_verify(v).checks) {
    rec.name = "verify_O/" + rec.name;
    r.checks.push_back(std::move(rec));
  }
  for (const char* name : {"i", "ii", "iii", "iv"}) {
    RunConfig pc = c;
    pc.selector = name;
    for (auto& rec : cmd_pairs(pc).checks) {
      rec.name = "pairs/" + rec.name;
      r.checks.push_back(std::move(rec));
    }
  }
  suite.run("decompositions", [&] {
    std::vector<CheckRecord> out;
    for (const auto& spec : {s_prime_spec(2), hamiltonian_spec(4), odd_hamiltonian_spec(3), odd_contact_spec(3),
                             odd_contact_critical_spec(3)})
      out.push_back(check_decomposition(spec));
    return out;
  });
  RunConfig cp = c;
  cp.p = c.p.value_or(3);
  cp.s = c.s.value_or(2);
  cp.cap.reset();
  for (auto& rec : cmd_charp(cp).checks) {
    rec.name = "charp_lab/" + rec.name;
    r.checks.push_back(std::move(rec));
  }
  sort_checks(r);
  return r;
}

Report run_command(const RunConfig& c) {
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "pairs") return cmd_pairs(c);
  if (c.command == "charp") return cmd_charp(c);
  if (c.command == "report") return cmd_report(c);
  throw std::invalid_argument("unknown command '" + c.command + "'");
}

}  // namespace nlie
