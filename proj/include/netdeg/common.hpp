#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace netdeg {

// Exact arithmetic used throughout the combinatorial pipeline. Degrees grow
// like 2^N, so fixed-width integers are not an option.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Input failed a structural precondition (bad topology, bad file, ...).
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Instance exceeds a hard size cap of an exact algorithm.
class cap_error : public std::runtime_error {
 public:
  explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Payoffs produced a cancelled equation; degree formulas assume genericity.
class non_generic_error : public std::runtime_error {
 public:
  explicit non_generic_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Hard caps for the exponential-time exact routines.
constexpr int kMaxPermanentDim = 30;       // Ryser / cycle-cover DP
constexpr int kMaxNaivePermanentDim = 10;  // permutation-sum oracle
constexpr int kMaxTransferVertices = 12;   // transfer matrix is 2^m x 2^m
constexpr int kMaxMixedCellDim = 16;       // exhaustive mixed-cell enumeration
constexpr int kMaxSolveDim = 10;           // homotopy tracker
constexpr int kTransferSubsetEdgeLimit = 20;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw validation_error(msg);
}

inline Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace netdeg
