#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "renyi/errors.hpp"
#include "renyi/numeric.hpp"

namespace renyi {

// Extended non-negative real order with exact tags for the special values
// 0, 1 and infinity. Finite values within 1e-9 of 1 are snapped to the
// exact order-one tag so that all order-one formulas go through their
// dedicated branch instead of the cancellation-prone (1/(a-1))*log(1+x)
// expressions.
class Order {
 public:
  enum class Tag { Zero, One, Infinity, FiniteGeneral };

  static constexpr double kOneSnapTolerance = 1e-9;

  static Order zero() { return Order(Tag::Zero, 0.0); }
  static Order one() { return Order(Tag::One, 1.0); }
  static Order infinity() { return Order(Tag::Infinity, kInf); }

  static Order make(double value) {
    if (std::isnan(value) || value < 0.0)
      throw OrderOutOfRange("order must be a non-negative extended real");
    if (value == 0.0) return zero();
    if (std::isinf(value)) return infinity();
    if (std::abs(value - 1.0) < kOneSnapTolerance) return one();
    return Order(Tag::FiniteGeneral, value);
  }

  static Order parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity")
      return infinity();
    try {
      return make(std::stod(std::string(text)));
    } catch (const std::invalid_argument&) {
      throw ParseError("cannot parse order: " + std::string(text));
    } catch (const std::out_of_range&) {
      throw ParseError("order out of range: " + std::string(text));
    }
  }

  Tag tag() const { return tag_; }
  double value() const { return value_; }

  bool is_zero() const { return tag_ == Tag::Zero; }
  bool is_one() const { return tag_ == Tag::One; }
  bool is_infinity() const { return tag_ == Tag::Infinity; }
  bool is_finite_positive() const {
    return tag_ == Tag::One || tag_ == Tag::FiniteGeneral;
  }

  bool operator==(const Order& other) const {
    return tag_ == other.tag_ && value_ == other.value_;
  }

  std::string str() const {
    if (is_infinity()) return "inf";
    if (is_zero()) return "0";
    if (is_one()) return "1";
    return std::to_string(value_);
  }

 private:
  Order(Tag tag, double value) : tag_(tag), value_(value) {}
  Tag tag_;
  double value_;
};

}  // namespace renyi
