#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace treebed {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using Rational = boost::rational<std::int64_t>;

inline constexpr Vertex kUnmapped = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// Raised when a computed object fails one of the bounds it is supposed to certify.
class PostconditionViolated : public Error {
 public:
  using Error::Error;
};

class ExactCapExceeded : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class OverlappingComponents : public Error {
 public:
  using Error::Error;
};

class OracleBudget : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  NotFound(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// count >= q, exactly
inline bool at_least(std::int64_t count, const Rational& q) {
  return Rational(count) >= q;
}

inline std::int64_t ceil_of(const Rational& q) {
  std::int64_t f = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0 && q.numerator() > 0) ++f;
  return f;
}

inline std::int64_t floor_of(const Rational& q) {
  std::int64_t f = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0 && q.numerator() < 0) --f;
  return f;
}

std::string to_string(const Rational& q);
// Accepts "p/q", an integer, or a decimal such as "0.25".
Rational parse_rational(std::string_view text);

}  // namespace treebed
