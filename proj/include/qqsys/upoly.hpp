#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qqsys/ints.hpp"

namespace qqsys {

// Laurent polynomial in a single formal variable with exact integer
// coefficients.  The variable is written `u` throughout; graded series in
// q^{1/(2*delta)} are stored by integer exponent of u = q^{1/(2*delta)}.
// Terms are kept as a sorted (ascending exponent) vector of nonzero entries.
class UPoly {
 public:
  using Term = std::pair<long long, Int>;
  using Terms = std::vector<Term>;

  UPoly() = default;
  explicit UPoly(Int c) {
    if (c != 0) terms_.emplace_back(0, std::move(c));
  }
  static UPoly monomial(long long e, Int c = Int(1)) {
    UPoly p;
    if (c != 0) p.terms_.emplace_back(e, std::move(c));
    return p;
  }
  static UPoly zero() { return UPoly(); }
  static UPoly one() { return UPoly(Int(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  long long degree() const {
    if (is_zero()) throw std::domain_error("UPoly::degree of zero");
    return terms_.back().first;
  }
  long long trail() const {
    if (is_zero()) throw std::domain_error("UPoly::trail of zero");
    return terms_.front().first;
  }
  const Int& leading_coeff() const {
    if (is_zero()) throw std::domain_error("UPoly::leading_coeff of zero");
    return terms_.back().second;
  }

  UPoly& operator+=(const UPoly& o) { return merge(o, +1, 0); }
  UPoly& operator-=(const UPoly& o) { return merge(o, -1, 0); }
  // In-place merge of sign * u^shift * o; avoids temporaries in hot loops.
  UPoly& add_shifted(const UPoly& o, long long shift, int sign = +1) {
    return merge(o, sign, shift);
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  UPoly operator-() const {
    UPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) r.terms_.emplace_back(e, -c);
    return r;
  }

  // Largest |coefficient| as a machine integer, or -1 when any coefficient
  // needs more than 31 bits.  Used to select the multiplication path.
  long long max_abs_small() const {
    long long m = 0;
    for (const auto& [e, c] : terms_) {
      const auto& bk = c.backend();
      if (bk.size() > 1) return -1;
      auto v = bk.limbs()[0];
      if (v >= (1ull << 31)) return -1;
      if (static_cast<long long>(v) > m) m = static_cast<long long>(v);
    }
    return m;
  }

  // Product with precomputed smallness hints (from max_abs_small of each
  // factor); uses a machine-integer convolution when every partial sum
  // provably fits in 64 bits, exact big-integer accumulation otherwise.
  static UPoly mul_hinted(const UPoly& a, const UPoly& b, long long ma, long long mb) {
    UPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.is_monomial()) return b.scaled_shifted(a.terms_[0].second, a.terms_[0].first);
    if (b.is_monomial()) return a.scaled_shifted(b.terms_[0].second, b.terms_[0].first);
    long long lo = a.trail() + b.trail();
    long long span = (a.degree() - a.trail()) + (b.degree() - b.trail()) + 1;
    if (ma >= 0 && mb >= 0 && span <= (1 << 22)) {
      unsigned __int128 bound = static_cast<unsigned __int128>(ma) * static_cast<unsigned __int128>(mb) *
                                std::min(a.terms_.size(), b.terms_.size());
      if (bound < (static_cast<unsigned __int128>(1) << 62)) {
        static thread_local std::vector<long long> dense;
        dense.assign(static_cast<std::size_t>(span), 0);
        for (const auto& [ea, ca] : a.terms_) {
          long long va = static_cast<long long>(ca);
          for (const auto& [eb, cb] : b.terms_)
            dense[static_cast<std::size_t>(ea + eb - lo)] += va * static_cast<long long>(cb);
        }
        for (long long i = 0; i < span; ++i)
          if (dense[static_cast<std::size_t>(i)] != 0)
            r.terms_.emplace_back(lo + i, Int(dense[static_cast<std::size_t>(i)]));
        return r;
      }
    }
    std::vector<Int> dense(static_cast<std::size_t>(span));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        dense[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    for (long long i = 0; i < span; ++i)
      if (dense[static_cast<std::size_t>(i)] != 0)
        r.terms_.emplace_back(lo + i, std::move(dense[static_cast<std::size_t>(i)]));
    return r;
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    return mul_hinted(a, b, a.max_abs_small(), b.max_abs_small());
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  bool operator==(const UPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  // c * u^e * this.
  UPoly scaled_shifted(const Int& c, long long e) const {
    UPoly r;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [k, v] : terms_) r.terms_.emplace_back(k + e, v * c);
    return r;
  }
  // Multiply by u^e.
  UPoly shifted(long long e) const {
    UPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& [k, c] : terms_) r.terms_.emplace_back(k + e, c);
    return r;
  }
  // Substitute u -> u^k (k may be negative: u -> u^{-1} mirrors the grading).
  UPoly inflated(long long k) const {
    if (k == 0) throw std::domain_error("UPoly::inflated by 0");
    UPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) r.terms_.emplace_back(e * k, c);
    if (k < 0) std::reverse(r.terms_.begin(), r.terms_.end());
    return r;
  }

  Int eval_at_one() const {
    Int s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  // Exact division; throws std::domain_error when the quotient does not
  // exist in integer Laurent polynomials.
  static UPoly exact_div(const UPoly& f, const UPoly& g) {
    if (g.is_zero()) throw std::domain_error("UPoly: division by zero");
    if (f.is_zero()) return UPoly();
    UPoly r = f, q;
    long long span = (f.degree() - f.trail()) - (g.degree() - g.trail());
    if (span < 0) throw std::domain_error("UPoly: non-exact division");
    for (long long step = 0; step <= span; ++step) {
      if (r.is_zero()) return q;
      Int c = r.leading_coeff();
      if (c % g.leading_coeff() != 0)
        throw std::domain_error("UPoly: non-exact division");
      UPoly t = monomial(r.degree() - g.degree(), c / g.leading_coeff());
      q += t;
      r -= t * g;
    }
    if (!r.is_zero()) throw std::domain_error("UPoly: non-exact division");
    return q;
  }

  std::string str(const std::string& var = "u") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      Int a = abs(c);
      if (a != 1 || e == 0) os << a.str();
      if (e != 0) {
        if (a != 1) os << "*";
        os << var;
        if (e != 1) os << "^" << e;
      }
      first = false;
    }
    return os.str();
  }

 private:
  UPoly& merge(const UPoly& o, int sign, long long shift) {
    if (o.is_zero()) return *this;
    if (&o == this) {
      UPoly copy = o;
      return merge(copy, sign, shift);
    }
    static thread_local Terms scratch;
    scratch.clear();
    scratch.reserve(terms_.size() + o.terms_.size());
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    while (it != terms_.end() || jt != o.terms_.end()) {
      long long je = jt == o.terms_.end() ? 0 : jt->first + shift;
      if (jt == o.terms_.end() || (it != terms_.end() && it->first < je)) {
        scratch.push_back(std::move(*it++));
      } else if (it == terms_.end() || je < it->first) {
        scratch.emplace_back(je, jt->second);
        if (sign < 0) scratch.back().second.backend().negate();
        ++jt;
      } else {
        scratch.push_back(std::move(*it++));
        Int& c = scratch.back().second;
        if (sign > 0)
          c += jt->second;
        else
          c -= jt->second;
        if (c == 0) scratch.pop_back();
        ++jt;
      }
    }
    terms_.swap(scratch);  // scratch keeps the old buffer for reuse
    return *this;
  }
  Terms terms_;
};

// Gaussian binomial [m+p choose m]_q as a Laurent polynomial in q,
// defined for m >= 0 and arbitrary integer p by
//   prod_{j=1}^{m} (1 - q^{p+j}) / (1 - q^j).
// It vanishes exactly when -m <= p <= -1.
inline UPoly qbinom(long long m, long long p) {
  if (m < 0) throw std::domain_error("qbinom: negative lower index");
  UPoly num = UPoly::one(), den = UPoly::one();
  for (long long j = 1; j <= m; ++j) {
    num *= (UPoly::one() - UPoly::monomial(p + j));
    den *= (UPoly::one() - UPoly::monomial(j));
  }
  return UPoly::exact_div(num, den);
}

}  // namespace qqsys
