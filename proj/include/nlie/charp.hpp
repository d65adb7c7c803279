#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nlie/nary.hpp"
#include "nlie/report.hpp"

namespace nlie {

/// One odd basis vector a with [a,...,a] = a (n slots).
struct CharPSeed {
  FieldSpec field;
  int n = 0;

  /// Requires p prime and n = 1 mod p.
  static CharPSeed make(std::uint64_t p, int n);
  static CharPSeed from_s(std::uint64_t p, int s) { return make(p, static_cast<int>(s * p + 1)); }
  /// Same bracket shape over any field, without the congruence requirement.
  static CharPSeed over(FieldSpec field, int n);

  /// Parity of the bracket: n + parity = 1 mod 2.
  int bracket_parity() const { return (n + 1) % 2; }
  NAryAlgebra algebra() const;
};

struct CharPFJResult {
  bool pass = false;
  Element residue;
  std::string formatted;
};

CharPFJResult charp_fj_check(const CharPSeed& seed);

/// Closure of {d, x^n d} among polynomial vector fields in one variable,
/// x^k d having degree k-1, up to the cap.
struct DegreeProfile {
  int cap = 0;
  /// Degree -> coefficient of the spanning field x^{deg+1} d.
  std::map<int, Scalar> components;
  int max_degree() const { return components.empty() ? -2 : components.rbegin()->first; }
  std::vector<int> degrees() const;
};

DegreeProfile charp_generation(const CharPSeed& seed, int cap);

/// The seed transported to a supersymmetric map on the reversed space.
SuperMultiMap w_model_mu(const CharPSeed& seed);
/// Graded dims of Lie(g) computed with the box product in W(Pi g), where
/// Hom(S^{k+1} V, V) is not identified with polynomial vector fields.
std::map<int, int> w_model_profile(const CharPSeed& seed, int cap);

/// FJ, generation above n-1, and the characteristic 0 control with n = 3.
std::vector<CheckRecord> charp_report(std::uint64_t p, int n, int cap);

}  // namespace nlie
