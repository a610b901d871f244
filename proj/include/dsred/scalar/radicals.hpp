#pragma once

// Global registry of square-root symbols.  Each radical r carries a radicand q = num/den
// (radical-free, den monic) and the reduction rule r^2 -> q.  Indices are stable for the
// life of the process; the first four are fixed.

#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "dsred/error.hpp"
#include "dsred/scalar/poly.hpp"

namespace dsred {

inline constexpr int kMaxRadicals = 64;
enum FixedRadical : int { kI = 0, kSqrtK = 1, kMu = 2, kRho = 3 };

struct RadicalInfo {
  std::string name;
  Poly num;
  Poly den;
  long prime = 0;  // > 0 for SQRT<p>
};

// Makes den monic and cancels the common factor; throws on den = 0.
inline void normalize_fraction(Poly& num, Poly& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero denominator");
  if (num.is_zero()) {
    den = Poly(1);
    return;
  }
  Poly g = gcd(num, den);
  if (!g.is_constant()) {
    num = *divide_exact(num, g);
    den = *divide_exact(den, g);
  }
  Rational lc = den.lead().coef;
  num *= Rational(1 / lc);
  den *= Rational(1 / lc);
}

class RadicalRegistry {
 public:
  static RadicalRegistry& instance() {
    static RadicalRegistry reg;
    return reg;
  }

  int size() const { return count_.load(std::memory_order_acquire); }
  const RadicalInfo& info(int i) const { return *slots_[i]; }

  int find(const std::string& name) const {
    std::shared_lock lk(mu_);
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
  }

  // Registers a named radical; an existing name must carry the same radicand.
  int intern(const std::string& name, Poly num, Poly den) {
    normalize_fraction(num, den);
    if (num.is_zero()) throw Error(ErrorCode::RadicandZero, "radicand of " + name + " is zero");
    std::unique_lock lk(mu_);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
      const auto& r = *slots_[it->second];
      if (r.num != num || r.den != den)
        throw Error(ErrorCode::InconsistentRadical, "radical " + name + " already has a different radicand");
      return it->second;
    }
    return add_locked(name, std::move(num), std::move(den), 0);
  }

  // Returns an existing radical with this radicand, or a fresh one named R<n>.
  int intern_radicand(Poly num, Poly den) {
    normalize_fraction(num, den);
    if (num.is_zero()) throw Error(ErrorCode::RadicandZero, "radicand is zero");
    std::unique_lock lk(mu_);
    int n = count_.load(std::memory_order_relaxed);
    for (int i = 0; i < n; ++i)
      if (slots_[i]->num == num && slots_[i]->den == den) return i;
    return add_locked("R" + std::to_string(n), std::move(num), std::move(den), 0);
  }

  int prime(long p) {
    std::string name = "SQRT" + std::to_string(p);
    {
      std::shared_lock lk(mu_);
      auto it = by_name_.find(name);
      if (it != by_name_.end()) return it->second;
    }
    std::unique_lock lk(mu_);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) return it->second;
    return add_locked(name, Poly(Rational(p)), Poly(1), p);
  }

  // Product of the radicands of every radical in mask, as num/den.
  std::pair<Poly, Poly> radicand_product(std::uint64_t mask) {
    {
      std::shared_lock lk(mu_);
      auto it = products_.find(mask);
      if (it != products_.end()) return it->second;
    }
    Poly num(1), den(1);
    for (int i = 0; i < kMaxRadicals; ++i)
      if (mask >> i & 1) {
        num *= slots_[i]->num;
        den *= slots_[i]->den;
      }
    normalize_fraction(num, den);
    std::unique_lock lk(mu_);
    products_.emplace(mask, std::make_pair(num, den));
    return {num, den};
  }

 private:
  RadicalRegistry() {
    Poly a = Poly::var(kA), k = Poly::var(kK), c = Poly::var(kC), e = Poly::var(kEps);
    add_locked("I", Poly(-1), Poly(1), 0);
    add_locked("SQRTK", k, Poly(1), 0);
    Poly mn = Rational(9) * c * (Poly(4) + e * e), md = Poly(2) * (Poly(27) - Poly(2) * c);
    normalize_fraction(mn, md);
    add_locked("MU", mn, md, 0);
    Poly rn = Poly(Rational(-3, 2)) * (Poly(2) * k - Poly(1)) * a * a * (Poly(1) + a) * (Poly(1) + a) *
              (Poly(4) * k * k + Poly(2) * k - a - a * a);
    add_locked("RHO", rn, Poly(1), 0);
  }

  int add_locked(const std::string& name, Poly num, Poly den, long p) {
    int n = count_.load(std::memory_order_relaxed);
    if (n >= kMaxRadicals) throw Error(ErrorCode::Unsupported, "too many radicals");
    slots_[n] = std::make_unique<RadicalInfo>(RadicalInfo{name, std::move(num), std::move(den), p});
    by_name_[name] = n;
    count_.store(n + 1, std::memory_order_release);
    return n;
  }

  mutable std::shared_mutex mu_;
  std::array<std::unique_ptr<RadicalInfo>, kMaxRadicals> slots_;
  std::atomic<int> count_{0};
  std::unordered_map<std::string, int> by_name_;
  std::unordered_map<std::uint64_t, std::pair<Poly, Poly>> products_;
};

}  // namespace dsred
