#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>

namespace deadend {

/// Integer Laurent polynomial, stored sparsely (degree -> nonzero coefficient).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<const long long, long long>> terms) {
    for (const auto& [d, c] : terms) add_term(d, c);
  }
  static LaurentPoly monomial(long long degree, long long coeff = 1) {
    LaurentPoly p;
    p.add_term(degree, coeff);
    return p;
  }
  static LaurentPoly constant(long long c) { return monomial(0, c); }

  const std::map<long long, long long>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  long long coeff(long long degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? 0 : it->second;
  }

  /// M(p); undefined (nullopt) for the zero polynomial.
  std::optional<long long> top() const {
    if (empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }
  /// m(p)
  std::optional<long long> bottom() const {
    if (empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  /// ‖p‖, the sum of absolute coefficients.
  long long norm() const {
    long long s = 0;
    for (const auto& [d, c] : terms_) s += std::llabs(c);
    return s;
  }

  void add_term(long long degree, long long coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(degree, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [d, c] : o.terms_) add_term(d, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [d, c] : o.terms_) add_term(d, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [da, ca] : a.terms_)
      for (const auto& [db, cb] : b.terms_) r.add_term(da + db, ca * cb);
    return r;
  }
  friend LaurentPoly operator*(long long s, const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [d, c] : a.terms_) r.add_term(d, s * c);
    return r;
  }
  LaurentPoly shift(long long s) const {
    LaurentPoly r;
    for (const auto& [d, c] : terms_) r.terms_.emplace(d + s, c);
    return r;
  }
  LaurentPoly pow(unsigned e) const {
    LaurentPoly r = constant(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  /// p(sign / t)
  LaurentPoly bar(int sign) const {
    LaurentPoly r;
    for (const auto& [d, c] : terms_) r.add_term(-d, (sign < 0 && (d % 2 != 0)) ? -c : c);
    return r;
  }

  std::string render() const {
    if (empty()) return "0";
    std::string s;
    for (const auto& [d, c] : terms_) {
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      s += std::to_string(std::llabs(c)) + "t^" + std::to_string(d);
    }
    return s;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  friend auto operator<=>(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ <=> b.terms_; }

 private:
  std::map<long long, long long> terms_;
};

/// (p1, p2): the element p1 x + p2 y.
struct SupportVector {
  LaurentPoly p1, p2;

  long long length() const { return p1.norm() + p2.norm(); }
  bool empty() const { return p1.empty() && p2.empty(); }
  const LaurentPoly& operator[](int i) const { return i == 0 ? p1 : p2; }
  LaurentPoly& operator[](int i) { return i == 0 ? p1 : p2; }

  std::optional<long long> top() const {
    auto a = p1.top(), b = p2.top();
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
  }
  std::optional<long long> bottom() const {
    auto a = p1.bottom(), b = p2.bottom();
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }
  std::string render() const { return "(" + p1.render() + ", " + p2.render() + ")"; }

  friend bool operator==(const SupportVector&, const SupportVector&) = default;
  friend auto operator<=>(const SupportVector& a, const SupportVector& b) {
    if (auto c = a.p1 <=> b.p1; c != 0) return c;
    return a.p2 <=> b.p2;
  }
};

}  // namespace deadend
