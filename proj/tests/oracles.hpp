#pragma once

// Brute-force reference computations used to cross-check the library.

#include <algorithm>
#include <vector>

namespace oracle {

// Sign of a permutation of distinct values, by counting cycles.
inline int perm_sign(const std::vector<int>& v) {
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pos(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    pos[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v[i]) - sorted.begin());
  std::vector<char> seen(v.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = static_cast<int>(i); !seen[j]; j = pos[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Koszul sign of bubble-sorting `args`, one adjacent swap at a time; 0 if
// two equal odd entries meet.
template <class ParityFn>
int koszul_bubble(std::vector<int> args, ParityFn parity) {
  int sign = 1;
  for (std::size_t pass = 0; pass < args.size(); ++pass)
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == args[i + 1] && parity(args[i])) return 0;
      if (args[i] > args[i + 1]) {
        if (parity(args[i]) && parity(args[i + 1])) sign = -sign;
        std::swap(args[i], args[i + 1]);
      }
    }
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == args[i + 1] && parity(args[i])) return 0;
  return sign;
}

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
