#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>

#include "spicy/error.hpp"
#include "spicy/rational.hpp"

namespace spicy {

/// Runtime description of the coefficient field: Q or F_p.
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return {Kind::rationals, 0}; }
    static FieldSpec prime(std::uint64_t p) { return {Kind::prime, p}; }

    bool operator==(const FieldSpec&) const = default;

    std::string str() const {
        return kind == Kind::rationals ? "Q" : "Fp:" + std::to_string(p);
    }

    /// Accepts "Q" or "Fp:<p>".
    static FieldSpec parse(const std::string& s) {
        if (s == "Q")
            return rationals();
        if (s.rfind("Fp:", 0) == 0) {
            try {
                std::size_t pos = 0;
                unsigned long long v = std::stoull(s.substr(3), &pos);
                if (pos == s.size() - 3)
                    return prime(v);
            } catch (...) {
            }
        }
        throw SchemaError("bad field spec '" + s + "' (want \"Q\" or \"Fp:<p>\")");
    }
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// F_p with p < 2^31. Elements are canonical representatives in [0, p);
/// the headroom keeps c*x + y inside 64 bits for the row kernels.
class PrimeField {
  public:
    using Element = std::uint64_t;
    static constexpr std::uint64_t max_modulus = (1ull << 31) - 1;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p > max_modulus)
            throw SchemaError("modulus " + std::to_string(p) + " exceeds 2^31-1");
        if (!is_prime_u64(p))
            throw SchemaError("modulus " + std::to_string(p) + " is not prime");
    }

    std::uint64_t modulus() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Element zero() const { return 0; }
    Element one() const { return 1 % p_; }
    bool is_zero(Element a) const { return a == 0; }

    Element add(Element a, Element b) const {
        Element s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }

    Element inv(Element a) const {
        if (a == 0)
            throw Error(Diag::precondition, "inverse of 0 in F_" + std::to_string(p_));
        // extended Euclid on (a, p)
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t q = r / newr;
            t = std::exchange(newt, t - q * newt);
            r = std::exchange(newr, r - q * newr);
        }
        return t < 0 ? static_cast<Element>(t + static_cast<std::int64_t>(p_))
                     : static_cast<Element>(t);
    }
    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    Element from_int(long v) const {
        long m = v % static_cast<long>(p_);
        return m < 0 ? static_cast<Element>(m + static_cast<long>(p_)) : static_cast<Element>(m);
    }

    /// Image of an exact rational; the denominator must be a unit mod p.
    Element from_rat(const Rat& q) const {
        Int num = q.get_num(), den = q.get_den();
        Int pm(static_cast<unsigned long>(p_));
        Int n = num % pm;
        if (n < 0)
            n += pm;
        Int d = den % pm;
        if (d == 0)
            throw Error(Diag::precondition,
                        "denominator of " + spicy::to_string(q) + " vanishes mod " + std::to_string(p_));
        return mul(n.get_ui(), inv(d.get_ui()));
    }

    std::string str(Element a) const { return std::to_string(a); }
    Element parse(const std::string& s) const { return from_rat(rat_from_string(s)); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  private:
    std::uint64_t p_;
};

/// Exact rationals (arbitrary precision, normalized).
class RationalField {
  public:
    using Element = Rat;

    FieldSpec spec() const { return FieldSpec::rationals(); }

    Element zero() const { return Rat(0); }
    Element one() const { return Rat(1); }
    bool is_zero(const Element& a) const { return a == 0; }

    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element neg(const Element& a) const { return -a; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element inv(const Element& a) const {
        if (a == 0)
            throw Error(Diag::precondition, "inverse of 0 in Q");
        return 1 / a;
    }
    Element div(const Element& a, const Element& b) const { return a / inv_guard(b); }

    Element from_int(long v) const { return Rat(v); }
    Element from_rat(const Rat& q) const { return q; }

    std::string str(const Element& a) const { return spicy::to_string(a); }
    Element parse(const std::string& s) const { return rat_from_string(s); }

    bool operator==(const RationalField&) const { return true; }

  private:
    Element inv_guard(const Element& b) const {
        if (b == 0)
            throw Error(Diag::precondition, "division by 0 in Q");
        return b;
    }
};

template <class F>
inline constexpr bool is_prime_field_v = std::is_same_v<F, PrimeField>;

/// Runs fn with the concrete field named by the spec. fn must be callable
/// with both PrimeField and RationalField and agree on the return type.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::prime)
        return fn(PrimeField(spec.p));
    return fn(RationalField());
}

}  // namespace spicy
