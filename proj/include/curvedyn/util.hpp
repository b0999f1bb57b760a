#pragma once
// Shared small pieces: error type, validation report, exact rational angles.

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvedyn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

// Outcome of the report-style validators: pass iff no failures.
struct Report {
  std::vector<std::string> failures;
  std::vector<std::string> warnings;

  bool pass() const { return failures.empty(); }
  void fail(std::string m) { failures.push_back(std::move(m)); }
  void warn(std::string m) { warnings.push_back(std::move(m)); }
  std::string joined() const {
    std::string s;
    for (auto& f : failures) s += (s.empty() ? "" : "; ") + f;
    return s;
  }
};

// Exact rational in lowest terms, denominator > 0. Angles live in [0,1);
// denominators stay tiny (divisors of d^k * small), so long long is plenty.
struct Frac {
  long long n = 0;
  long long d = 1;

  Frac() = default;
  Frac(long long num, long long den) : n(num), d(den) {
    if (d == 0) throw Error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
  }

  Frac mod1() const {
    long long m = n % d;
    if (m < 0) m += d;
    return Frac(m, d);
  }

  double to_double() const { return double(n) / double(d); }
  std::string str() const {
    return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
  }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac(a.n * b.d + b.n * a.d, a.d * b.d);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return Frac(a.n * b.d - b.n * a.d, a.d * b.d);
  }
  friend Frac operator*(long long k, const Frac& a) { return Frac(k * a.n, a.d); }
  friend Frac operator/(const Frac& a, long long k) { return Frac(a.n, a.d * k); }
  friend bool operator==(const Frac& a, const Frac& b) { return a.n == b.n && a.d == b.d; }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
  friend bool operator<(const Frac& a, const Frac& b) { return a.n * b.d < b.n * a.d; }
  friend bool operator<=(const Frac& a, const Frac& b) { return a.n * b.d <= b.n * a.d; }
};

// Parse "p/q" or "p". Throws on garbage.
inline Frac parse_frac(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Frac(std::stoll(s), 1);
    return Frac(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error("bad fraction: " + s);
  }
}

// Strictly inside the ccw arc from a to b on R/Z. Needs a != b (mod 1).
inline bool ccw_between(const Frac& a, const Frac& x, const Frac& b) {
  Frac a1 = a.mod1(), x1 = x.mod1(), b1 = b.mod1();
  if (a1 == b1) throw Error("degenerate arc");
  if (a1 < b1) return a1 < x1 && x1 < b1;
  return a1 < x1 || x1 < b1;
}

// ccw distance from a to b on R/Z, in [0,1).
inline Frac ccw_dist(const Frac& a, const Frac& b) { return (b - a).mod1(); }

}  // namespace curvedyn
