#include "rational.hpp"

namespace dca {

std::int64_t floor_to_int(const Rat& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!z.fits_slong_p()) throw std::overflow_error("rational floor out of range");
  return z.get_si();
}

std::int64_t ceil_to_int(const Rat& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!z.fits_slong_p()) throw std::overflow_error("rational ceil out of range");
  return z.get_si();
}

bool is_integral(const Rat& q) { return q.get_den() == 1; }

Rat make_ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("make_ratio: zero denominator");
  Rat q((long)num, (long)den);
  q.canonicalize();
  return q;
}

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  // mpq_class's own string constructor accepts forms we do not want
  // (whitespace, hex); validate the shape first.
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string num = text, den = "1";
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  bool neg = false;
  if (!num.empty() && num[0] == '-') {
    neg = true;
    num = num.substr(1);
  }
  if (!digits(num) || !digits(den)) return std::nullopt;
  // Reject leading zeros beyond a lone "0" so that canonical text is unique.
  if (num.size() > 1 && num[0] == '0') return std::nullopt;
  if (den.size() > 1 && den[0] == '0') return std::nullopt;
  Rat q(num + "/" + den);
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

std::string format_rational(const Rat& q) {
  Rat r = q;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string format_ext(const Ext& v) {
  return v.finite() ? format_rational(v.value()) : "+inf";
}

}  // namespace dca
