#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orthograd {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;

// Malformed external input: files, argument strings, out-of-range values.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Extended gcd: g = s*a + t*b with g >= 0 (g > 0 unless a = b = 0).
struct Xgcd {
  Int g, s, t;
};

inline Xgcd xgcd(Int a, Int b) {
  Int s0 = 1, t0 = 0, s1 = 0, t1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = std::move(b);
    b = std::move(r);
    Int s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    t0 = std::move(t1);
    s1 = std::move(s2);
    t1 = std::move(t2);
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  return {std::move(a), std::move(s0), std::move(t0)};
}

// Floor division (b > 0 expected by callers).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace orthograd
