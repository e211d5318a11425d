#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dca {

// Exact rational scalar. All geometric and value arithmetic in this library
// goes through mpq_class so that every comparison is decided exactly.
using Rat = mpq_class;

std::int64_t floor_to_int(const Rat& q);
std::int64_t ceil_to_int(const Rat& q);
bool is_integral(const Rat& q);

// Reduced fraction num/den. The two-argument mpq_class constructor keeps the
// operands as given, and GMP comparisons assume canonical form, so callers
// building a rational from computed integers should come through here.
Rat make_ratio(std::int64_t num, std::int64_t den);

// Accepts "n" or "n/d" with optional leading minus; the denominator must be
// positive and the fraction is reduced on input. Returns nullopt on any
// malformed text (shared by the JSON reader, which attaches positions).
std::optional<Rat> parse_rational(const std::string& text);

// Canonical form: reduced, "n" when the denominator is 1, else "n/d".
std::string format_rational(const Rat& q);

// Function value in the extended reals: a rational or +infinity. Addition
// treats +infinity as absorbing; value() on an infinite element throws.
class Ext {
 public:
  Ext() : finite_(true), value_(0) {}
  Ext(Rat v) : finite_(true), value_(std::move(v)) {}
  Ext(int v) : finite_(true), value_(v) {}
  Ext(long v) : finite_(true), value_((long)v) {}

  static Ext infinity() {
    Ext e;
    e.finite_ = false;
    e.value_ = 0;
    return e;
  }

  bool finite() const { return finite_; }

  const Rat& value() const {
    if (!finite_) throw std::logic_error("value() called on +infinity");
    return value_;
  }

  friend Ext operator+(const Ext& a, const Ext& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Ext(a.value_ + b.value_);
  }

  friend Ext operator*(const Rat& a, const Ext& b) {
    if (!b.finite_) return infinity();
    return Ext(a * b.value_);
  }

  // Total order with +infinity as the greatest element; two infinities
  // compare equal.
  friend bool operator==(const Ext& a, const Ext& b) {
    if (a.finite_ != b.finite_) return false;
    if (!a.finite_) return true;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Ext& a, const Ext& b) { return !(a == b); }
  friend bool operator<(const Ext& a, const Ext& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Ext& a, const Ext& b) { return a < b || a == b; }
  friend bool operator>(const Ext& a, const Ext& b) { return b < a; }
  friend bool operator>=(const Ext& a, const Ext& b) { return b <= a; }

 private:
  bool finite_;
  Rat value_;
};

std::string format_ext(const Ext& v);

}  // namespace dca
