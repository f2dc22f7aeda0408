#include "sixv/real.hpp"

#include <cctype>
#include <iomanip>
#include <ios>
#include <sstream>

namespace sixv {

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

unsigned working_digits() { return Real::default_precision(); }

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

Real parse_decimal(const std::string& s, std::string_view original) {
  if (s.empty()) return Real(1);
  try {
    std::size_t used = 0;
    (void)std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DomainError("cannot parse angle '" + std::string(original) + "'");
  }
  return Real(s);
}

}  // namespace

Real parse_angle(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw DomainError("empty angle");
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_decimal(s, text);

  std::string head = s.substr(0, at);
  std::string tail = s.substr(at + 2);
  bool negative = false;
  if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
    negative = head.front() == '-';
    head.erase(0, 1);
  }
  if (!head.empty() && head.back() == '*') head.pop_back();
  Real value = parse_decimal(head, text) * pi();
  if (!tail.empty()) {
    if (tail.front() != '/') throw DomainError("cannot parse angle '" + std::string(text) + "'");
    Real den = parse_decimal(tail.substr(1), text);
    if (den == 0) throw DomainError("zero denominator in angle '" + std::string(text) + "'");
    value /= den;
  }
  return negative ? Real(-value) : value;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  const int d = digits > 0 ? digits : static_cast<int>(x.precision());
  os << std::scientific << std::setprecision(d) << x;
  return os.str();
}

}  // namespace sixv
