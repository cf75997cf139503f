#pragma once

#include <string>
#include <vector>

#include "charclass/errors.hpp"
#include "charclass/scalar.hpp"

namespace charclass {

// Truncated univariate series a_0 + a_1 x + ... + a_order x^order. Binary
// operations return the smaller of the two orders.
template <class Field = RationalField>
class PowerSeries {
 public:
  using Scalar = typename Field::value_type;

  PowerSeries() = default;
  PowerSeries(int order, Field field = {}) : field_(field), coeffs_(check_order(order) + 1, field.zero()) {}
  PowerSeries(std::vector<Scalar> coeffs, int order, Field field = {})
      : field_(field), coeffs_(check_order(order) + 1, field.zero()) {
    for (std::size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k) coeffs_[k] = coeffs[k];
  }

  // x^k with coefficient c, truncated at `order`.
  static PowerSeries monomial(int k, const Scalar& c, int order, Field field = {}) {
    PowerSeries s(order, field);
    if (k <= order) s.coeffs_[k] = c;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Field& field() const { return field_; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  Scalar operator[](int k) const { return k >= 0 && k <= order() ? coeffs_[k] : field_.zero(); }
  void set(int k, const Scalar& c) {
    if (k < 0 || k > order()) throw InvalidArgument("coefficient index beyond series order");
    coeffs_[k] = c;
  }

  PowerSeries truncated(int order) const {
    PowerSeries out(std::min(order, this->order()), field_);
    for (int k = 0; k <= out.order(); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()), a.field_);
    for (int k = 0; k <= out.order(); ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return out;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(std::min(a.order(), b.order()), a.field_);
    for (int k = 0; k <= out.order(); ++k) out.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
    return out;
  }
  friend PowerSeries operator*(const Scalar& s, PowerSeries a) {
    for (auto& c : a.coeffs_) c = s * c;
    return a;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return multiply(a, b); }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string(const std::string& var = "x") const {
    std::string out;
    for (int k = 0; k <= order(); ++k) {
      const Scalar& c = coeffs_[k];
      if (field_.is_zero(c)) continue;
      const bool negative = field_.is_negative(c);
      out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
      out += field_.format(negative ? Scalar(-c) : c);
      if (k >= 1) out += "*" + var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
    out += out.empty() ? "O(" : " + O(";
    out += var + "^" + std::to_string(order() + 1) + ")";
    return out;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw InvalidArgument("series order must be nonnegative");
    return order;
  }

  Field field_{};
  std::vector<Scalar> coeffs_;

  template <class F>
  friend PowerSeries<F> multiply(const PowerSeries<F>&, const PowerSeries<F>&);
};

template <class Field>
PowerSeries<Field> multiply(const PowerSeries<Field>& a, const PowerSeries<Field>& b) {
  const int n = std::min(a.order(), b.order());
  PowerSeries<Field> out(n, a.field());
  for (int i = 0; i <= n; ++i) {
    if (a.field().is_zero(a[i])) continue;
    for (int j = 0; i + j <= n; ++j) out.coeffs_[i + j] = out.coeffs_[i + j] + a[i] * b[j];
  }
  return out;
}

// Multiplicative inverse; the constant term must be a unit.
template <class Field>
PowerSeries<Field> invert(const PowerSeries<Field>& a) {
  const Field& f = a.field();
  if (f.is_zero(a[0])) throw NonInvertible("series with zero constant term is not invertible");
  using Scalar = typename Field::value_type;
  const Scalar inv0 = f.one() / a[0];
  PowerSeries<Field> out(a.order(), f);
  out.set(0, inv0);
  for (int n = 1; n <= a.order(); ++n) {
    Scalar acc = f.zero();
    for (int k = 1; k <= n; ++k) acc = acc + a[k] * out[n - k];
    out.set(n, Scalar(-acc * inv0));
  }
  return out;
}

// a(b(x)); requires b(0) = 0.
template <class Field>
PowerSeries<Field> compose(const PowerSeries<Field>& a, const PowerSeries<Field>& b) {
  const Field& f = a.field();
  if (!f.is_zero(b[0])) throw InvalidArgument("inner series of a composition must have zero constant term");
  const int n = std::min(a.order(), b.order());
  PowerSeries<Field> out(n, f);
  // Horner in b.
  for (int k = a.order(); k >= 0; --k) {
    out = multiply(out, b.truncated(n));
    out.set(0, out[0] + a[k]);
  }
  return out.truncated(n);
}

enum class SeriesOp { multiply, invert, compose };

template <class Field>
PowerSeries<Field> series_arith(SeriesOp op, const PowerSeries<Field>& a,
                                const PowerSeries<Field>* b = nullptr) {
  switch (op) {
    case SeriesOp::multiply:
      if (!b) throw InvalidArgument("multiply needs two series");
      return multiply(a, *b);
    case SeriesOp::invert:
      return invert(a);
    case SeriesOp::compose:
      if (!b) throw InvalidArgument("compose needs two series");
      return compose(a, *b);
  }
  throw InvalidArgument("unknown series operation");
}

}  // namespace charclass
