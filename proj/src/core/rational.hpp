#ifndef CQE_CORE_RATIONAL_HPP
#define CQE_CORE_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cqe {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

inline int sign_of(const Int& z) { return z.sign(); }
inline int sign_of(const Rat& q) { return q.sign(); }

// Number of bits of |z|; 0 for z = 0.
inline long bit_length(const Int& z) {
  if (z == 0) return 0;
  return static_cast<long>(msb(abs(z))) + 1;
}

// Parses "p", "p/q" or a plain decimal like "-1.25". Throws on malformed input.
Rat parse_rational(const std::string& text);

std::string rational_to_string(const Rat& q);

// Error used for every "exceeded the hard precision cap" situation.
// The cap converts a potentially wrong answer into an explicit failure.
class PrecisionExceeded : public std::runtime_error {
public:
  explicit PrecisionExceeded(const std::string& what) : std::runtime_error(what) {}
};

constexpr long kPrecisionCapBits = 4096;

// Deterministic 64-bit stream (splitmix64); the only RNG in the project.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Rational in [-bound, bound] with small denominator.
  Rat next_rational(long bound = 1 << 12, long max_den = 32) {
    long n = static_cast<long>(next() % (2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
    long d = static_cast<long>(next() % static_cast<std::uint64_t>(max_den)) + 1;
    return Rat(n, d);
  }
  SeededRng split() { return SeededRng(next() ^ 0xa02bdbf7bb3c0a7ULL); }

private:
  std::uint64_t state_;
};

// Decimal-only integer parse; a leading zero must not trigger the octal
// convention of the underlying string constructor.
inline Int parse_decimal_int(const std::string& text) {
  std::string t = text;
  bool neg = !t.empty() && t[0] == '-';
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) t = t.substr(1);
  if (t.empty()) throw std::invalid_argument("malformed integer: " + text);
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed integer: " + text);
  size_t nz = t.find_first_not_of('0');
  t = nz == std::string::npos ? "0" : t.substr(nz);
  Int v(t);
  return neg ? Int(-v) : v;
}

inline Rat parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Int n = parse_decimal_int(t.substr(0, slash));
    Int d = parse_decimal_int(t.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(n, d);
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string head = t.substr(0, dot), tail = t.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    Int n = parse_decimal_int(head + tail);
    Int d = 1;
    for (size_t i = 0; i < tail.size(); ++i) d *= 10;
    Rat q(n, d);
    return neg ? Rat(-q) : q;
  }
  return Rat(parse_decimal_int(t));
}

inline std::string rational_to_string(const Rat& q) {
  std::string s = rat_num(q).str();
  if (rat_den(q) != 1) s += "/" + rat_den(q).str();
  return s;
}

}  // namespace cqe

#endif
